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
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdist {

using RealFunction = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed or open interval on the extended real line; either end may be infinite.
struct Interval
{
  double lo = 0.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  bool is_finite() const;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

struct QuadratureConfig
{
  double      rel_tol          = 1e-10;
  double      abs_tol          = 1e-12;
  std::size_t max_subdivisions = 10'000;

  void validate() const;
};

/// Raised when the adaptive integrator runs out of subdivisions.
class IntegrationError : public std::runtime_error
{
public:
  IntegrationError(std::string const &what, double partial_estimate, double error_estimate);

  double partial_estimate() const { return partial_; }
  double error_estimate() const { return error_; }

private:
  double partial_;
  double error_;
};

/// An internal cross-check between two independent routes failed.
class ConsistencyError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult
{
  double      value       = 0.0;
  double      error       = 0.0;
  std::size_t evaluations = 0;
};

/**
 * Globally adaptive Gauss-Kronrod (21 point) quadrature.
 *
 * Infinite endpoints are mapped onto a finite parameter interval before
 * subdivision: x = a + c t/(1-t) for [a, inf), x = b - c t/(1-t) for
 * (-inf, b] and x = t/(1-t^2) for the whole line, with c = max(1, |a|).
 * Endpoints are never evaluated, so integrable endpoint singularities
 * are resolved by subdivision alone.
 */
QuadratureResult integrate_adaptive_ex(RealFunction const &f, Interval domain,
                                       QuadratureConfig const &cfg = {});

double integrate_adaptive(RealFunction const &f, Interval domain, QuadratureConfig const &cfg = {});

/// Fixed 10-point Gauss-Legendre rule on [a, b].
double gauss_legendre_10(RealFunction const &f, double a, double b);

/// Integrates piecewise between the sorted breakpoints that fall strictly inside the domain.
double integrate_with_breaks(RealFunction const &f, Interval domain, std::span<double const> breaks,
                             QuadratureConfig const &cfg = {});

/**
 * Locates sign changes of f on a uniform grid of `cells` cells over a finite
 * interval and refines each by bisection to full double precision.
 */
std::vector<double> sign_change_points(RealFunction const &f, Interval domain, std::size_t cells);

/// Integral of |f| over the domain, split at the sign changes of f.
double integrate_abs(RealFunction const &f, Interval domain, std::size_t cells,
                     QuadratureConfig const &cfg = {});

/// Integral of |f|^p, split at sign changes of f.
double integrate_abs_pow(RealFunction const &f, double p, Interval domain, std::size_t cells,
                         QuadratureConfig const &cfg = {});

/**
 * Generalized inverse inf{x : F(x) >= q} of a non-decreasing function by
 * bracketing bisection. Infinite support ends are bracketed by doubling.
 */
double invert_cdf(RealFunction const &cdf, Interval support, double q);

// ---------------------------------------------------------------------------
// Special functions

/// ln n! for integer n >= 0.
double log_factorial(int n);

/// Normalized Hermite function psi_n(x), psi_n^2 integrates to one.
double hermite_psi(int n, double x);

/// ln |psi_n(x)|; finite even where psi_n(x) underflows. -inf exactly at a zero.
double hermite_log_abs_psi(int n, double x);

/// psi_0(x) .. psi_n(x) in one recurrence pass (underflowed entries are 0).
std::vector<double> hermite_psi_all(int n, double x);

/// The floor(n/2) strictly positive zeros of H_n, ascending.
std::vector<double> hermite_positive_zeros(int n);

/// ln L_n(-y) for y >= 0 (all terms of the recurrence are positive there).
double log_laguerre_negative_arg(int n, double y);

/// Exponentially scaled modified Bessel function exp(-z) I_0(z), z >= 0.
double bessel_i0_scaled(double z);

// ---------------------------------------------------------------------------
// Asymptotic fits

enum class FitModel
{
  log_linear,  ///< y = a ln n + b, params = (a, b)
  power_law,   ///< y = c n^gamma, params = (c, gamma)
};

struct FitResult
{
  FitModel                  model = FitModel::log_linear;
  std::pair<double, double> params{0.0, 0.0};
  double                    residual_rms = 0.0;
  std::pair<int, int>       n_range{0, 0};

  /// residual_rms divided by the mean |y| of the fitted points.
  double relative_residual = 0.0;

  double evaluate(double n) const;
};

struct FitPoint
{
  int    n;
  double y;
};

FitResult fit_log_linear(std::span<FitPoint const> points);
FitResult fit_power_law(std::span<FitPoint const> points);

}  // namespace qdist
