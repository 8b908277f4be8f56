//------------------------------------------------------------------------------
//
//   Copyright 2026 The qdist Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "qdist/distributions.hpp"

namespace qdist {

/// Photon-number statistics of single-mode states of light.
///
/// Every generator truncates adaptively: the stored range ends at the first
/// index where certified bounds on the remaining mass (< 1e-15) and on the
/// remaining first moment (< 1e-13) both hold. `min_length` forces a longer
/// table, e.g. to cover the support of another PMF.
namespace photon {

inline constexpr std::size_t kMaxTruncation   = std::size_t{1} << 16;
inline constexpr double      kTailMassTarget  = 1e-15;
inline constexpr double      kTailMeanTarget  = 1e-13;

/// Raised when the tail targets cannot be met below kMaxTruncation.
class TruncationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Coherent state |alpha>; only |alpha|^2 enters the photon statistics.
struct CoherentParams
{
  double mean_photons = 0.0;
};

/// Squeezed vacuum with squeezing magnitude r = |zeta|.
struct SqueezeParams
{
  double r = 0.0;
};

struct ThermalParams
{
  double mean_photons = 0.0;
};

/// Displaced thermal state D(alpha) rho_th D(alpha)^dagger.
struct GlauberLachsParams
{
  double coherent_mean = 0.0;  ///< |alpha|^2
  double thermal_mean  = 0.0;  ///< nbar
};

DiscretePmf fock_pmf(int j);
DiscretePmf coherent_pmf(CoherentParams params, std::size_t min_length = 0);
DiscretePmf squeezed_vacuum_pmf(SqueezeParams params, std::size_t min_length = 0);
DiscretePmf thermal_pmf(ThermalParams params, std::size_t min_length = 0);

/**
 * Displaced-thermal photon statistics. The PMF is computed twice: from the
 * closed form
 *
 *   p(n) = nbar^n / (1 + nbar)^(n+1) exp(-|a|^2 / (1 + nbar)) L_n(-|a|^2 / (nbar (1 + nbar)))
 *
 * and by quadrature of the coherent-state mixture with Gaussian weight
 * exp(-|b - a|^2 / nbar) / (pi nbar), reduced to a radial integral with a
 * Bessel I_0 kernel. The two must agree to 1e-9 elementwise, the result must
 * be normalized to 1e-10 and its mean equal |a|^2 + nbar to 1e-8; otherwise
 * ConsistencyError is thrown. nbar = 0 is exactly the coherent state.
 */
DiscretePmf glauber_lachs_pmf(GlauberLachsParams params, std::size_t min_length = 0);

/// Closed-form branch of glauber_lachs_pmf, element n.
double glauber_lachs_closed_form(GlauberLachsParams params, int n);

/// Mixture-quadrature branch of glauber_lachs_pmf, element n.
double glauber_lachs_mixture(GlauberLachsParams params, int n);

/// Fock state |j>.
struct FockParams
{
  int j = 0;
};

/// Any of the supported single-mode states.
using PhotonState = std::variant<FockParams, CoherentParams, SqueezeParams, ThermalParams, GlauberLachsParams>;

DiscretePmf pmf(PhotonState const &state, std::size_t min_length = 0);

/// Closed-form mean photon number of the state.
double analytic_mean(PhotonState const &state);

/// Canonical descriptor text, e.g. "vacuum", "coherent:2.5", "glauber_lachs:1,2".
std::string describe(PhotonState const &state);

bool is_vacuum(PhotonState const &state);

/// Bose-Einstein occupation 1/(exp(h nu / k T) - 1); nu in Hz, T in kelvin.
double thermal_mean_from_temperature(double frequency_hz, double temperature_k);

/// Same occupation expressed through the ratio x = h nu / (k T).
double thermal_mean_from_ratio(double x);

}  // namespace photon
}  // namespace qdist
