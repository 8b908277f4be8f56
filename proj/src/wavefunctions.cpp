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

#include "qdist/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qdist/constants.hpp"
#include "qdist/core_dist.hpp"

namespace qdist::wave {

namespace {

constexpr double kPi  = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

void require_box_state(int n)
{
  if (n < 1)
  {
    throw std::domain_error("box states are labelled n >= 1");
  }
}

void require_osc_state(int n)
{
  if (n < 0)
  {
    throw std::domain_error("oscillator states are labelled n >= 0");
  }
}

// Process-wide memo keyed by n. Values are built outside the lock; a racing
// duplicate is discarded in favour of the first insertion.
template <typename Value>
class PerStateCache
{
public:
  template <typename Build>
  std::shared_ptr<Value const> get(int n, Build &&build)
  {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto const it = entries_.find(n);
      if (it != entries_.end())
      {
        return it->second;
      }
    }
    auto fresh = std::make_shared<Value const>(build());
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.emplace(n, std::move(fresh)).first->second;
  }

private:
  std::mutex                                   mutex_;
  std::map<int, std::shared_ptr<Value const>> entries_;
};

}  // namespace

// ---------------------------------------------------------------------------

double BoxState::energy() const
{
  require_box_state(n);
  return 0.5 * n * n * kPi2;
}

Density1D pbox_pdf(BoxState s)
{
  require_box_state(s.n);
  int const n = s.n;
  Density1D d;
  d.pdf = [n](double x) {
    double const v = std::sin(n * kPi * x);
    return 2.0 * v * v;
  };
  d.log_pdf = [n](double x) {
    return std::numbers::ln2 + 2.0 * std::log(std::abs(std::sin(n * kPi * x)));
  };
  d.support = Interval{0.0, 1.0};
  for (int k = 1; k < n; ++k)
  {
    d.breakpoints.push_back(static_cast<double>(k) / n);
  }
  d.normalization_checked = true;
  return d;
}

Cdf1D pbox_cdf(BoxState s)
{
  require_box_state(s.n);
  int const n = s.n;
  Cdf1D c;
  c.cdf        = [n](double x) { return x - std::sin(2.0 * n * kPi * x) / (2.0 * n * kPi); };
  c.support    = Interval{0.0, 1.0};
  c.resolution = std::max<std::size_t>(64, 8 * static_cast<std::size_t>(n));
  return c;
}

Density1D classical_box_pdf()
{
  Density1D d;
  d.pdf                   = [](double) { return 1.0; };
  d.log_pdf               = [](double) { return 0.0; };
  d.support               = Interval{0.0, 1.0};
  d.normalization_checked = true;
  return d;
}

Cdf1D classical_box_cdf()
{
  Cdf1D c;
  c.cdf      = [](double x) { return x; };
  c.quantile = [](double q) { return q; };
  c.support  = Interval{0.0, 1.0};
  return c;
}

double pbox_w1_classical(int n)
{
  require_box_state(n);
  double const closed  = 1.0 / (n * kPi2);
  double const numeric = wasserstein1_cdf(classical_box_cdf(), pbox_cdf(BoxState{n}));
  if (std::abs(closed - numeric) > 1e-9)
  {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pbox_w1_classical(" << n << "): closed form " << closed << " vs numeric " << numeric;
    throw ConsistencyError(msg.str());
  }
  return closed;
}

double pbox_pair_w1(int m, int n)
{
  require_box_state(m);
  require_box_state(n);
  if (m == n)
  {
    return 0.0;
  }
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-13;
  return wasserstein1_cdf(pbox_cdf(BoxState{m}), pbox_cdf(BoxState{n}), cfg);
}

namespace {

struct BoxDivergenceCheck
{
  double      worst = 0.0;
  std::string detail;
};

BoxDivergenceCheck const &box_divergence_check()
{
  static BoxDivergenceCheck const check = [] {
    BoxDivergenceCheck out;
    Density1D const    uniform = classical_box_pdf();
    for (int n : {1, 5, 20})
    {
      Density1D const g = pbox_pdf(BoxState{n});
      double const    deviations[] = {
          std::abs(kl_continuous(uniform, g).as_double() - std::numbers::ln2),
          std::abs(kl_continuous(g, uniform).as_double() - (1.0 - std::numbers::ln2)),
          std::abs(bhattacharyya_continuous(uniform, g).as_double() - std::log(kPi / std::sqrt(8.0))),
      };
      for (double dev : deviations)
      {
        if (dev > out.worst)
        {
          out.worst = dev;
          std::ostringstream msg;
          msg << "n = " << n << " deviates by " << dev;
          out.detail = msg.str();
        }
      }
    }
    return out;
  }();
  if (check.worst > 1e-8)
  {
    throw ConsistencyError("box-state divergences are not n-independent: " + check.detail);
  }
  return check;
}

}  // namespace

double pbox_kl_classical(KlDirection direction)
{
  box_divergence_check();
  return direction == KlDirection::classical_to_state ? std::numbers::ln2 : 1.0 - std::numbers::ln2;
}

double pbox_bhatt_classical()
{
  box_divergence_check();
  return std::log(kPi / std::sqrt(8.0));
}

// ---------------------------------------------------------------------------

double osc_domain_half_width(int n)
{
  require_osc_state(n);
  return std::sqrt(2.0 * n + 1.0) + 10.0;
}

namespace {

std::vector<double> const &osc_positive_zeros(int n)
{
  static PerStateCache<std::vector<double>> cache;
  return *cache.get(n, [n] { return hermite_positive_zeros(n); });
}

std::vector<double> osc_all_zeros(int n)
{
  std::vector<double> const &pos = osc_positive_zeros(n);
  std::vector<double>        out;
  out.reserve(2 * pos.size() + 1);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it)
  {
    out.push_back(-*it);
  }
  if (n % 2 == 1)
  {
    out.push_back(0.0);
  }
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

std::shared_ptr<TabulatedCdf const> osc_table(int n)
{
  static PerStateCache<TabulatedCdf> cache;
  return cache.get(n, [n] {
    double const L    = osc_domain_half_width(n);
    double const step = std::min(0.05, 0.125 * kPi / std::sqrt(2.0 * n + 1.0));
    auto const   cells = static_cast<std::size_t>(std::ceil(2.0 * L / step));
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-14;
    return TabulatedCdf([n](double x) {
      double const v = hermite_psi(n, x);
      return v * v;
    }, Interval{-L, L}, cells, cfg);
  });
}

}  // namespace

Density1D osc_pdf(OscState s)
{
  require_osc_state(s.n);
  int const n = s.n;
  Density1D d;
  d.pdf = [n](double x) {
    double const v = hermite_psi(n, x);
    return v * v;
  };
  d.log_pdf               = [n](double x) { return 2.0 * hermite_log_abs_psi(n, x); };
  d.support               = Interval{-kInf, kInf};
  d.breakpoints           = osc_all_zeros(n);
  d.normalization_checked = true;
  return d;
}

Cdf1D osc_cdf(OscState s)
{
  require_osc_state(s.n);
  auto         table = osc_table(s.n);
  double const total = table->total_mass();
  Cdf1D        c;
  c.cdf     = [table, total](double x) { return (*table)(x) / total; };
  c.support = table->range();
  c.resolution = std::max<std::size_t>(64, 4 * static_cast<std::size_t>(s.n));
  return c;
}

double osc_w1_vacuum(int n)
{
  require_osc_state(n);
  if (n == 0)
  {
    return 0.0;
  }
  return wasserstein1_cdf(osc_cdf(OscState{0}), osc_cdf(OscState{n}));
}

namespace {

// ln(2^n n! sqrt(pi)), the squared normalization of H_n against exp(-x^2).
double log_hermite_norm(int n)
{
  return n * std::numbers::ln2 + log_factorial(n) + 0.5 * std::log(kPi);
}

}  // namespace

double osc_kl_vacuum(int n)
{
  require_osc_state(n);
  if (n == 0)
  {
    return 0.0;
  }
  double const norm = log_hermite_norm(n);
  auto integrand = [n, norm](double x) {
    double const weight = std::exp(-x * x);
    if (weight == 0.0)
    {
      return 0.0;
    }
    double const log_h2 = 2.0 * hermite_log_abs_psi(n, x) + x * x + norm;
    return weight * log_h2;
  };
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-13;
  double const integral = integrate_with_breaks(integrand, Interval{0.0, kInf}, osc_positive_zeros(n), cfg);
  return n * std::numbers::ln2 + log_factorial(n) - 2.0 / std::sqrt(kPi) * integral;
}

double osc_bhatt_vacuum(int n)
{
  require_osc_state(n);
  if (n == 0)
  {
    return 0.0;
  }
  double const norm = log_hermite_norm(n);
  // exp(-x^2) |H_n(x)| = exp(-x^2/2 + ln|psi_n| + norm/2); the exp(norm/2)
  // factor is carried in log space.
  auto integrand = [n](double x) {
    double const log_psi = hermite_log_abs_psi(n, x);
    if (std::isinf(log_psi))
    {
      return 0.0;
    }
    return std::exp(-0.5 * x * x + log_psi);
  };
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  double const reduced = integrate_with_breaks(integrand, Interval{0.0, kInf}, osc_positive_zeros(n), cfg);
  double const log_integral  = std::log(reduced) + 0.5 * norm;
  double const log_prefactor = std::numbers::ln2 - 0.5 * (n * std::numbers::ln2 + log_factorial(n) + std::log(kPi));
  return -(log_prefactor + log_integral);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kPlanckCutoff = 80.0;  // upper u for tabulation; mass beyond ~1e-29

double planck_u_unnormalized(double u)
{
  if (!(u > 0.0))
  {
    return 0.0;
  }
  return u * u * u / std::expm1(u);
}

double planck_w_unnormalized(double w)
{
  // Below w = 1e-3 the density is under exp(-1000).
  if (!(w > 1e-3))
  {
    return 0.0;
  }
  double const inv = 1.0 / w;
  return inv * inv * inv * inv * inv / std::expm1(inv);
}

QuadratureConfig planck_cfg()
{
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-14;
  return cfg;
}

std::shared_ptr<TabulatedCdf const> planck_u_table()
{
  static auto const table = std::make_shared<TabulatedCdf const>(
      [](double u) { return planck_u_unnormalized(u) / planck_normalization(); },
      Interval{0.0, kPlanckCutoff}, 1600, planck_cfg());
  return table;
}

void require_temperature(double t)
{
  if (!(t > 0.0) || !std::isfinite(t))
  {
    throw std::domain_error("blackbody temperature must be positive and finite");
  }
}

}  // namespace

double planck_normalization()
{
  static double const z = [] {
    std::vector<double> const hints{1.0, 3.0, 10.0};
    return integrate_with_breaks(planck_u_unnormalized, Interval{0.0, kInf}, hints, planck_cfg());
  }();
  return z;
}

double planck_mean_constant(Representation rep)
{
  static double const mean_u = [] {
    std::vector<double> const hints{1.0, 4.0, 10.0};
    return integrate_with_breaks([](double u) { return u * planck_u_unnormalized(u); },
                                 Interval{0.0, kInf}, hints, planck_cfg()) /
           planck_normalization();
  }();
  static double const mean_w = [] {
    std::vector<double> const hints{0.1, 0.3, 1.0};
    return integrate_with_breaks([](double w) { return w * planck_w_unnormalized(w); },
                                 Interval{0.0, kInf}, hints, planck_cfg()) /
           planck_normalization();
  }();
  return rep == Representation::frequency ? mean_u : mean_w;
}

double planck_scale(BlackbodyParams params)
{
  require_temperature(params.temperature);
  double const kt = constants::boltzmann * params.temperature;
  if (params.representation == Representation::frequency)
  {
    return kt / constants::planck;
  }
  return constants::planck * constants::speed_of_light / kt;
}

Density1D planck_pdf(BlackbodyParams params)
{
  double const scale = planck_scale(params);
  double const z     = planck_normalization();
  Density1D    d;
  d.support = Interval{0.0, kInf};
  if (params.representation == Representation::frequency)
  {
    d.pdf         = [scale, z](double nu) { return planck_u_unnormalized(nu / scale) / (z * scale); };
    d.breakpoints = {scale, 3.0 * scale, 10.0 * scale};
  }
  else
  {
    d.pdf         = [scale, z](double lam) { return planck_w_unnormalized(lam / scale) / (z * scale); };
    d.breakpoints = {0.1 * scale, 0.3 * scale, scale};
  }
  d.normalization_checked = true;
  return d;
}

Cdf1D planck_cdf(BlackbodyParams params)
{
  double const scale = planck_scale(params);
  auto         table = planck_u_table();
  double const total = table->total_mass();
  Cdf1D        c;
  c.resolution = 256;
  if (params.representation == Representation::frequency)
  {
    c.cdf     = [table, total, scale](double nu) { return (*table)(nu / scale) / total; };
    c.support = Interval{0.0, kPlanckCutoff * scale};
  }
  else
  {
    // lambda <= x exactly when u >= scale / x.
    c.cdf = [table, total, scale](double lam) {
      if (!(lam > 0.0))
      {
        return 0.0;
      }
      return 1.0 - (*table)(scale / lam) / total;
    };
    c.support = Interval{scale / kPlanckCutoff, kInf};
  }
  return c;
}

double planck_mean(BlackbodyParams params)
{
  return planck_mean_constant(params.representation) * planck_scale(params);
}

double blackbody_w1(double t1, double t2, Representation rep)
{
  require_temperature(t1);
  require_temperature(t2);
  if (t1 == t2)
  {
    return 0.0;
  }
  Cdf1D first  = planck_cdf({t1, rep});
  Cdf1D second = planck_cdf({t2, rep});
  if (rep == Representation::wavelength)
  {
    // Restrict to a finite window for the grid check; beyond it both CDFs
    // are within 1e-9 of one.
    double const upper = 1e3 * std::max(planck_scale({t1, rep}), planck_scale({t2, rep}));
    first.support      = Interval{first.support.lo, upper};
    second.support     = Interval{second.support.lo, upper};
  }
  DominanceReport const report = check_dominance(first, second, 4096);
  if (report.dominant == Dominance::neither)
  {
    throw ConsistencyError("blackbody_w1: spectra CDFs cross; the mean difference does not apply");
  }
  return std::abs(planck_mean({t1, rep}) - planck_mean({t2, rep}));
}

}  // namespace qdist::wave
