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

#include "qdist/photon_states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qdist/constants.hpp"
#include "qdist/core_dist.hpp"
#include "qdist/numerics.hpp"

namespace qdist::photon {

namespace {

void require_non_negative(double v, char const *what)
{
  if (!(v >= 0.0) || !std::isfinite(v))
  {
    std::ostringstream msg;
    msg << what << " must be finite and non-negative, got " << v;
    throw std::domain_error(msg.str());
  }
}

[[noreturn]] void truncation_failure(char const *family)
{
  std::ostringstream msg;
  msg << family << ": tail targets not reached below " << kMaxTruncation << " photons";
  throw TruncationError(msg.str());
}

DiscretePmf vacuum(std::size_t min_length)
{
  std::vector<double> probs(std::max<std::size_t>(min_length, 1), 0.0);
  probs[0] = 1.0;
  return DiscretePmf{std::move(probs)};
}

double log_cosh(double r)
{
  return r + std::log1p(std::exp(-2.0 * r)) - std::numbers::ln2;
}

}  // namespace

DiscretePmf fock_pmf(int j)
{
  if (j < 0)
  {
    throw std::domain_error("fock_pmf: photon number must be non-negative");
  }
  std::vector<double> probs(static_cast<std::size_t>(j) + 1, 0.0);
  probs.back() = 1.0;
  return DiscretePmf{std::move(probs)};
}

DiscretePmf coherent_pmf(CoherentParams params, std::size_t min_length)
{
  double const lambda = params.mean_photons;
  require_non_negative(lambda, "coherent_pmf: mean photon number");
  if (lambda == 0.0)
  {
    return vacuum(min_length);
  }

  double const        log_lambda = std::log(lambda);
  auto                prob       = [&](std::size_t n) {
    auto const k = static_cast<int>(n);
    return std::exp(-lambda + k * log_lambda - log_factorial(k));
  };
  std::vector<double> probs;
  for (std::size_t n = 0; n <= kMaxTruncation; ++n)
  {
    double const pn = prob(n);
    auto const   nd = static_cast<double>(n);
    // For k >= n > lambda the ratios p(k+1)/p(k) and (k+1)p(k+1)/(k p(k))
    // are bounded by lambda/(n+1) and lambda/n, giving geometric tails.
    if (nd > lambda + 1.0 && n >= min_length)
    {
      double const mass_bound = pn / (1.0 - lambda / (nd + 1.0));
      double const mean_bound = nd * pn / (1.0 - lambda / nd);
      if (mass_bound < kTailMassTarget && mean_bound < kTailMeanTarget)
      {
        return DiscretePmf{std::move(probs), mass_bound, mean_bound};
      }
    }
    probs.push_back(pn);
  }
  truncation_failure("coherent_pmf");
}

DiscretePmf squeezed_vacuum_pmf(SqueezeParams params, std::size_t min_length)
{
  double const r = params.r;
  require_non_negative(r, "squeezed_vacuum_pmf: squeezing magnitude");
  if (r == 0.0)
  {
    return vacuum(min_length);
  }

  double const t          = std::tanh(r);
  double const t2         = t * t;
  double const log_t      = std::log(t);
  double const log_cosh_r = log_cosh(r);
  // Probability of 2m photons; odd photon numbers never occur.
  auto pair_prob = [&](int m) {
    return std::exp(-log_cosh_r + log_factorial(2 * m) - 2.0 * log_factorial(m) -
                    2.0 * m * std::numbers::ln2 + 2.0 * m * log_t);
  };

  std::vector<double> probs;
  for (int m = 0; 2 * static_cast<std::size_t>(m) <= kMaxTruncation; ++m)
  {
    double const pm = pair_prob(m);
    if (m >= 1 && 2 * static_cast<std::size_t>(m) >= min_length)
    {
      // p(2m+2)/p(2m) = t^2 (2m+1)/(2m+2) < t^2.
      double const mass_bound  = pm / (1.0 - t2);
      double const mean_ratio  = t2 * (2.0 * m + 1.0) / (2.0 * m);
      if (mean_ratio < 1.0)
      {
        double const mean_bound = 2.0 * m * pm / (1.0 - mean_ratio);
        if (mass_bound < kTailMassTarget && mean_bound < kTailMeanTarget)
        {
          return DiscretePmf{std::move(probs), mass_bound, mean_bound};
        }
      }
    }
    probs.push_back(pm);
    probs.push_back(0.0);
  }
  truncation_failure("squeezed_vacuum_pmf");
}

DiscretePmf thermal_pmf(ThermalParams params, std::size_t min_length)
{
  double const nbar = params.mean_photons;
  require_non_negative(nbar, "thermal_pmf: mean photon number");
  if (nbar == 0.0)
  {
    return vacuum(min_length);
  }

  double const log_q    = std::log(nbar) - std::log1p(nbar);
  double const log_1mq  = -std::log1p(nbar);
  std::vector<double> probs;
  for (std::size_t n = 0; n <= kMaxTruncation; ++n)
  {
    auto const   nd   = static_cast<double>(n);
    double const q_n  = std::exp(nd * log_q);
    if (n >= min_length)
    {
      // Geometric tails are exact: sum_{k>=n} p(k) = q^n and
      // sum_{k>=n} k p(k) = q^n (n + q/(1-q)) = q^n (n + nbar).
      double const mass_tail = q_n;
      double const mean_tail = q_n * (nd + nbar);
      if (mass_tail < kTailMassTarget && mean_tail < kTailMeanTarget)
      {
        return DiscretePmf{std::move(probs), mass_tail, mean_tail};
      }
    }
    probs.push_back(std::exp(nd * log_q + log_1mq));
  }
  truncation_failure("thermal_pmf");
}

// ---------------------------------------------------------------------------

double glauber_lachs_closed_form(GlauberLachsParams params, int n)
{
  double const a2   = params.coherent_mean;
  double const nbar = params.thermal_mean;
  require_non_negative(a2, "glauber_lachs: coherent mean");
  require_non_negative(nbar, "glauber_lachs: thermal mean");
  if (n < 0)
  {
    throw std::domain_error("glauber_lachs_closed_form: n must be non-negative");
  }
  if (nbar == 0.0)
  {
    if (a2 == 0.0)
    {
      return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(-a2 + n * std::log(a2) - log_factorial(n));
  }
  double const y        = a2 / (nbar * (1.0 + nbar));
  double const log_nbar = n == 0 ? 0.0 : n * std::log(nbar);
  return std::exp(log_nbar - (n + 1.0) * std::log1p(nbar) - a2 / (1.0 + nbar) +
                  log_laguerre_negative_arg(n, y));
}

double glauber_lachs_mixture(GlauberLachsParams params, int n)
{
  double const a2   = params.coherent_mean;
  double const nbar = params.thermal_mean;
  require_non_negative(a2, "glauber_lachs: coherent mean");
  require_non_negative(nbar, "glauber_lachs: thermal mean");
  if (!(nbar > 0.0))
  {
    throw std::domain_error("glauber_lachs_mixture: needs a positive thermal mean");
  }
  if (n < 0)
  {
    throw std::domain_error("glauber_lachs_mixture: n must be non-negative");
  }
  double const a        = std::sqrt(a2);
  double const log_norm = -log_factorial(n);

  // Angular integral of exp(2 a rho cos(phi) / nbar) is 2 pi I_0(2 a rho / nbar);
  // the scaled Bessel function absorbs exp(2 a rho / nbar) into (rho - a)^2.
  auto integrand = [&](double rho) {
    if (!(rho > 0.0))
    {
      return 0.0;
    }
    double const log_power = n == 0 ? 0.0 : 2.0 * n * std::log(rho);
    double const exponent  = -(rho - a) * (rho - a) / nbar - rho * rho + log_power + log_norm;
    return 2.0 / nbar * rho * std::exp(exponent) * bessel_i0_scaled(2.0 * a * rho / nbar);
  };

  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-15;
  std::vector<double> breaks{a, std::sqrt(static_cast<double>(n))};
  return integrate_with_breaks(integrand, Interval{0.0, kInf}, breaks, cfg);
}

namespace {

// Chernoff bounds from the generating function
// E[z^N] = exp(|a|^2 u / (1 - nbar u)) / (1 - nbar u), u = z - 1 < 1/nbar.
struct GlauberLachsTail
{
  double mass;
  double mean;
};

GlauberLachsTail glauber_lachs_tail(double a2, double nbar, std::size_t n)
{
  double best_mass = kInf;
  double best_mean = kInf;
  auto const nd = static_cast<double>(n);
  constexpr int kSamples = 400;
  for (int i = 1; i < kSamples; ++i)
  {
    double const u     = (static_cast<double>(i) / kSamples) / nbar;
    double const d     = 1.0 - nbar * u;
    double const log_g = a2 * u / d - std::log(d);
    double const log_z = std::log1p(u);
    double const mass  = std::exp(log_g - nd * log_z);
    // sum_{k>=n} k p(k) <= z^(1-n) G'(z), G'(z) = G(z) (nbar/d + a2/d^2).
    double const mean = std::exp(log_g + (1.0 - nd) * log_z) * (nbar / d + a2 / (d * d));
    best_mass = std::min(best_mass, mass);
    best_mean = std::min(best_mean, mean);
  }
  return {best_mass, best_mean};
}

}  // namespace

DiscretePmf glauber_lachs_pmf(GlauberLachsParams params, std::size_t min_length)
{
  double const a2   = params.coherent_mean;
  double const nbar = params.thermal_mean;
  require_non_negative(a2, "glauber_lachs_pmf: coherent mean");
  require_non_negative(nbar, "glauber_lachs_pmf: thermal mean");
  if (nbar == 0.0)
  {
    return coherent_pmf(CoherentParams{a2}, min_length);
  }

  auto length = static_cast<std::size_t>(std::ceil(a2 + nbar)) + 1;
  length      = std::max(length, min_length);
  GlauberLachsTail tail{};
  for (;; ++length)
  {
    if (length > kMaxTruncation)
    {
      truncation_failure("glauber_lachs_pmf");
    }
    tail = glauber_lachs_tail(a2, nbar, length);
    if (tail.mass < kTailMassTarget && tail.mean < kTailMeanTarget)
    {
      break;
    }
  }

  std::vector<double> probs(length);
  double              worst = 0.0;
  double              sum   = 0.0;
  double              mean  = 0.0;
  for (std::size_t n = 0; n < length; ++n)
  {
    auto const   k       = static_cast<int>(n);
    double const closed  = glauber_lachs_closed_form(params, k);
    double const mixture = glauber_lachs_mixture(params, k);
    worst                = std::max(worst, std::abs(closed - mixture));
    probs[n]             = closed;
    sum += closed;
    mean += static_cast<double>(n) * closed;
  }

  std::ostringstream msg;
  msg.precision(3);
  if (worst > 1e-9)
  {
    msg << "glauber_lachs_pmf: closed form and mixture quadrature differ by " << worst;
    throw ConsistencyError(msg.str());
  }
  if (std::abs(sum + tail.mass - 1.0) > 1e-10)
  {
    msg << "glauber_lachs_pmf: normalization off by " << sum - 1.0;
    throw ConsistencyError(msg.str());
  }
  if (std::abs(mean - (a2 + nbar)) > 1e-8)
  {
    msg << "glauber_lachs_pmf: mean " << mean << " differs from " << a2 + nbar;
    throw ConsistencyError(msg.str());
  }
  return DiscretePmf{std::move(probs), tail.mass, tail.mean};
}

// ---------------------------------------------------------------------------

namespace {

template <typename... Fs>
struct Overloaded : Fs...
{
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string shortest(double v)
{
  char       buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

DiscretePmf pmf(PhotonState const &state, std::size_t min_length)
{
  return std::visit(
      Overloaded{
          [&](FockParams const &p) {
            DiscretePmf const base = fock_pmf(p.j);
            if (base.size() >= min_length)
            {
              return base;
            }
            std::vector<double> probs(base.probs().begin(), base.probs().end());
            probs.resize(min_length, 0.0);
            return DiscretePmf{std::move(probs)};
          },
          [&](CoherentParams const &p) { return coherent_pmf(p, min_length); },
          [&](SqueezeParams const &p) { return squeezed_vacuum_pmf(p, min_length); },
          [&](ThermalParams const &p) { return thermal_pmf(p, min_length); },
          [&](GlauberLachsParams const &p) { return glauber_lachs_pmf(p, min_length); },
      },
      state);
}

double analytic_mean(PhotonState const &state)
{
  return std::visit(
      Overloaded{
          [](FockParams const &p) { return static_cast<double>(p.j); },
          [](CoherentParams const &p) { return p.mean_photons; },
          [](SqueezeParams const &p) {
            double const s = std::sinh(p.r);
            return s * s;
          },
          [](ThermalParams const &p) { return p.mean_photons; },
          [](GlauberLachsParams const &p) { return p.coherent_mean + p.thermal_mean; },
      },
      state);
}

std::string describe(PhotonState const &state)
{
  return std::visit(
      Overloaded{
          [](FockParams const &p) { return p.j == 0 ? std::string("vacuum") : "fock:" + std::to_string(p.j); },
          [](CoherentParams const &p) { return "coherent:" + shortest(p.mean_photons); },
          [](SqueezeParams const &p) { return "squeezed:" + shortest(p.r); },
          [](ThermalParams const &p) { return "thermal:" + shortest(p.mean_photons); },
          [](GlauberLachsParams const &p) {
            return "glauber_lachs:" + shortest(p.coherent_mean) + "," + shortest(p.thermal_mean);
          },
      },
      state);
}

bool is_vacuum(PhotonState const &state)
{
  auto const *fock = std::get_if<FockParams>(&state);
  return fock != nullptr && fock->j == 0;
}

double thermal_mean_from_ratio(double x)
{
  if (!(x > 0.0))
  {
    throw std::domain_error("thermal_mean_from_ratio: h nu / k T must be positive");
  }
  if (std::isinf(x))
  {
    return 0.0;
  }
  return 1.0 / std::expm1(x);
}

double thermal_mean_from_temperature(double frequency_hz, double temperature_k)
{
  if (!(frequency_hz > 0.0) || !(temperature_k > 0.0))
  {
    throw std::domain_error("thermal_mean_from_temperature: frequency and temperature must be positive");
  }
  return thermal_mean_from_ratio(constants::planck * frequency_hz /
                                 (constants::boltzmann * temperature_k));
}

}  // namespace qdist::photon
