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

#include "qdist/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <tuple>

#include "qdist/core_dist.hpp"
#include "qdist/experiments.hpp"
#include "qdist/photon_states.hpp"
#include "qdist/wavefunctions.hpp"

namespace qdist::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits = 6)
{
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Tracks the largest deviation seen against one tolerance.
struct MaxDeviation
{
  double tolerance;
  double worst = 0.0;

  void add(double numeric, double expected) { worst = std::max(worst, std::abs(numeric - expected)); }
  bool ok() const { return worst <= tolerance; }
  std::string text() const { return "max dev " + sci(worst) + " (tol " + sci(tolerance) + ")"; }
};

CriterionResult make(bool passed, std::string detail)
{
  return {0, {}, passed, std::move(detail)};
}

// Composite Simpson rule, deliberately unrelated to the adaptive integrator.
template <typename F>
double simpson(F f, double a, double b, int panels)
{
  double const h   = (b - a) / panels;
  double       sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i)
  {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// ---------------------------------------------------------------------------

CriterionResult box_classical()
{
  MaxDeviation dev{1e-9};
  Cdf1D const  F = wave::classical_box_cdf();
  for (int n = 1; n <= 50; ++n)
  {
    dev.add(wasserstein1_cdf(F, wave::pbox_cdf({n})), 1.0 / (n * kPi * kPi));
  }
  return make(dev.ok(), "n=1..50 " + dev.text());
}

CriterionResult box_n_independence()
{
  MaxDeviation    dev{1e-8};
  Density1D const f = wave::classical_box_pdf();
  for (int n : {1, 5, 20})
  {
    Density1D const g = wave::pbox_pdf({n});
    dev.add(kl_continuous(f, g).as_double(), std::numbers::ln2);
    dev.add(kl_continuous(g, f).as_double(), 1.0 - std::numbers::ln2);
    dev.add(bhattacharyya_continuous(f, g).as_double(), std::log(kPi / std::sqrt(8.0)));
  }
  return make(dev.ok(), "n in {1,5,20} " + dev.text());
}

CriterionResult box_parity()
{
  MaxDeviation even{1e-8};
  double const plateau = 1.0 / (kPi * kPi);
  for (int n = 2; n <= 20; n += 2)
  {
    even.add(wave::pbox_pair_w1(1, n), plateau);
  }
  bool   monotone = true;
  bool   below    = true;
  double previous = 0.0;
  double largest  = 0.0;
  for (int n = 3; n <= 19; n += 2)
  {
    double const w = wave::pbox_pair_w1(1, n);
    monotone       = monotone && w > previous;
    below          = below && w < plateau;
    previous       = w;
    largest        = w;
  }
  return make(even.ok() && monotone && below,
              "even " + even.text() + "; odd increasing=" + (monotone ? "yes" : "no") +
                  ", gap at n=19 " + sci(plateau - largest));
}

CriterionResult box_limit()
{
  double worst = 0.0;
  for (int m : {2, 3})
  {
    worst = std::max(worst, std::abs(wave::pbox_pair_w1(m, 600) - 1.0 / (m * kPi * kPi)));
  }
  return make(worst < 2e-3, "m in {2,3}, n=600 max dev " + sci(worst) + " (tol 2.000e-03)");
}

CriterionResult photon_vacuum_w1()
{
  using namespace photon;
  DiscretePmf const vacuum = fock_pmf(0);
  MaxDeviation      dev{1e-8};
  auto check = [&](DiscretePmf const &p, double mean) {
    dev.add(wasserstein1_discrete(vacuum, p), mean);
    dev.add(emd_oracle(vacuum, p), mean);
  };
  for (double m : {0.5, 2.5})
  {
    check(coherent_pmf({m}), m);
  }
  for (double r : {0.5, 1.0})
  {
    check(squeezed_vacuum_pmf({r}), std::sinh(r) * std::sinh(r));
  }
  for (double nbar : {1.0, 2.0})
  {
    check(thermal_pmf({nbar}), nbar);
  }
  check(glauber_lachs_pmf({1.0, 2.0}), 3.0);
  return make(dev.ok(), "CDF sum and EMD oracle " + dev.text());
}

CriterionResult photon_kl()
{
  using namespace photon;
  DiscretePmf const vacuum = fock_pmf(0);
  MaxDeviation      dev{1e-10};
  for (double m : {0.5, 2.5})
  {
    dev.add(kl_discrete(vacuum, coherent_pmf({m})).as_double(), m);
  }
  for (double r : {0.5, 1.0})
  {
    dev.add(kl_discrete(vacuum, squeezed_vacuum_pmf({r})).as_double(), std::log(std::cosh(r)));
  }
  std::string note;
  for (double nbar : {1.0, 2.0})
  {
    double const kl = kl_discrete(vacuum, thermal_pmf({nbar})).as_double();
    dev.add(kl, std::log(nbar + 1.0));
    note += "; thermal nbar=" + fixed(nbar, 0) + ": " + fixed(kl, 10) + " vs alternative form nbar+1 = " + fixed(nbar + 1, 1) +
            " (recorded, not checked)";
  }
  return make(dev.ok(), dev.text() + note);
}

CriterionResult coherent_shortcut()
{
  std::mt19937_64                        rng(20260101);
  std::uniform_real_distribution<double> mean(0.0, 10.0);
  MaxDeviation                           dev{1e-10};
  for (int trial = 0; trial < 10; ++trial)
  {
    double const      a = mean(rng);
    double const      b = mean(rng);
    DiscretePmf const q = photon::coherent_pmf({b});
    DiscretePmf const p = photon::coherent_pmf({a}, q.size());
    DiscretePmf const r = photon::coherent_pmf({b}, p.size());
    double const      expected = std::abs(a - b);
    dev.add(mean_shortcut_w1(p, r), expected);
    dev.add(wasserstein1_discrete(p, r), expected);
  }
  return make(dev.ok(), "10 random pairs " + dev.text());
}

DiscretePmf random_pmf(std::mt19937_64 &rng)
{
  std::uniform_int_distribution<int>     length(1, 64);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double>                    probs(static_cast<std::size_t>(length(rng)));
  double                                 total = 0.0;
  for (auto &p : probs)
  {
    // About a quarter of the entries are empty so supports differ.
    p = unit(rng) < 0.25 ? 0.0 : -std::log(1.0 - unit(rng));
    total += p;
  }
  if (total == 0.0)
  {
    probs.back() = 1.0;
    total        = 1.0;
  }
  for (auto &p : probs)
  {
    p /= total;
  }
  return DiscretePmf{std::move(probs)};
}

CriterionResult emd_equivalence()
{
  std::mt19937_64 rng(424242);
  MaxDeviation    dev{1e-12};
  for (int trial = 0; trial < 100; ++trial)
  {
    DiscretePmf const p = random_pmf(rng);
    DiscretePmf const q = random_pmf(rng);
    dev.add(emd_oracle(p, q), wasserstein1_discrete(p, q));
  }
  return make(dev.ok(), "100 random pairs " + dev.text());
}

CriterionResult metric_properties()
{
  std::vector<Cdf1D> pool;
  pool.push_back(wave::classical_box_cdf());
  for (int n = 1; n <= 6; ++n)
  {
    pool.push_back(wave::pbox_cdf({n}));
  }
  for (int n = 0; n <= 3; ++n)
  {
    pool.push_back(wave::osc_cdf({n}));
  }

  std::map<std::tuple<std::size_t, std::size_t, int>, double> cache;
  auto distance = [&](std::size_t i, std::size_t j, int p) {
    auto const key = std::make_tuple(i, j, p);
    auto       it  = cache.find(key);
    if (it == cache.end())
    {
      it = cache.emplace(key, wasserstein_p_quantile(pool[i], pool[j], p)).first;
    }
    return it->second;
  };

  std::mt19937_64                            rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  double                                     triangle = 0.0;
  double                                     symmetry = 0.0;
  for (int trial = 0; trial < 100; ++trial)
  {
    std::size_t const i = pick(rng);
    std::size_t const j = pick(rng);
    std::size_t const k = pick(rng);
    for (int p : {1, 2})
    {
      triangle = std::max(triangle, distance(i, k, p) - distance(i, j, p) - distance(j, k, p));
      symmetry = std::max(symmetry, std::abs(distance(i, j, p) - distance(j, i, p)));
    }
  }
  bool const ok = triangle <= 1e-8 && symmetry <= 1e-8;
  return make(ok, "100 triples, p in {1,2}: worst triangle excess " + sci(std::max(triangle, 0.0)) +
                      ", worst asymmetry " + sci(symmetry) + " (tol 1.000e-08)");
}

CriterionResult osc_asymptotics()
{
  experiments::ExperimentSpec spec;
  spec.id             = "acceptance-osc";
  spec.n_min          = 10;
  spec.n_max          = 400;
  spec.n_step         = 10;
  spec.fit_window     = {50, 400};
  spec.log_fit_window = {10, 200};
  experiments::ExperimentTable const table = experiments::run_osc_scan(spec);

  FitResult const &w1    = table.fits.at(0).fit;
  FitResult const &kl    = table.fits.at(1).fit;
  FitResult const &bhatt = table.fits.at(2).fit;
  double const     gamma = w1.params.second;
  bool const       fits_ok =
      std::abs(gamma - 0.5) <= 0.03 && kl.relative_residual < 0.05 && bhatt.relative_residual < 0.05;

  MaxDeviation    dual{1e-6};
  Density1D const ground = wave::osc_pdf({0});
  for (int n : {1, 5, 20})
  {
    Density1D const g = wave::osc_pdf({n});
    dual.add(wave::osc_kl_vacuum(n), kl_continuous(ground, g).as_double());
    dual.add(wave::osc_bhatt_vacuum(n), bhattacharyya_continuous(ground, g).as_double());
  }
  return make(fits_ok && dual.ok(), "gamma=" + fixed(gamma, 4) + " (0.5 +- 0.03), KL rel resid " +
                                        sci(kl.relative_residual) + ", D_B rel resid " +
                                        sci(bhatt.relative_residual) + " (< 5e-2); dual route " + dual.text());
}

CriterionResult blackbody_scaling()
{
  experiments::ExperimentSpec spec;
  spec.id           = "acceptance-blackbody";
  spec.temperatures = {100.0, 200.0, 300.0, 500.0};
  experiments::ExperimentTable const table = experiments::run_blackbody_scan(spec);

  double residual = 0.0;
  for (auto const &row : table.rows)
  {
    residual = std::max({residual, row[8], row[9], row[10]});
  }

  // Independent reference for the mean of u^3 / (e^u - 1).
  auto const moment = [](int k) {
    return simpson([k](double u) { return u <= 0.0 ? 0.0 : std::pow(u, k) / std::expm1(u); }, 0.0, 80.0, 400000);
  };
  double const c_ref = moment(4) / moment(3);
  double const c     = wave::planck_mean_constant(wave::Representation::frequency);
  double const c_dev = std::abs(c - c_ref) / c_ref;

  bool const ok = table.passed() && residual < 1e-6 && c_dev <= 1e-6;
  return make(ok, "T in {100,200,300,500}: worst relative residual " + sci(residual) + " (tol 1.000e-06); C=" +
                      fixed(c, 10) + " vs Simpson " + fixed(c_ref, 10) + " rel dev " + sci(c_dev));
}

CriterionResult glauber_lachs_consistency()
{
  using namespace photon;
  MaxDeviation routes{1e-9};
  for (GlauberLachsParams const params : {GlauberLachsParams{1.0, 2.0}, GlauberLachsParams{2.0, 0.5}})
  {
    std::size_t const count = glauber_lachs_pmf(params).size();
    for (std::size_t n = 0; n < count; ++n)
    {
      int const k = static_cast<int>(n);
      routes.add(glauber_lachs_closed_form(params, k), glauber_lachs_mixture(params, k));
    }
  }

  // Geometric and Poisson references written out directly.
  MaxDeviation limits{1e-10};
  double const nbar = 1.5;
  DiscretePmf const thermal_limit = glauber_lachs_pmf({0.0, nbar});
  for (std::size_t n = 0; n < thermal_limit.size(); ++n)
  {
    limits.add(thermal_limit[n], std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1.0));
  }
  double const      mean          = 2.0;
  DiscretePmf const coherent_limit = glauber_lachs_pmf({mean, 0.0});
  for (std::size_t n = 0; n < coherent_limit.size(); ++n)
  {
    limits.add(coherent_limit[n], std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0)));
  }
  // Approach to the Poisson limit through the closed form itself.
  for (int n = 0; n < 30; ++n)
  {
    limits.add(glauber_lachs_closed_form({mean, 1e-12}, n), std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0)));
  }
  return make(routes.ok() && limits.ok(), "routes " + routes.text() + "; limits " + limits.text());
}

}  // namespace

std::vector<Criterion> const &criteria()
{
  static std::vector<Criterion> const list = {
      {1, "box classical W1 = 1/(n pi^2)", box_classical},
      {2, "box KL and Bhattacharyya n-independence", box_n_independence},
      {3, "box parity plateau", box_parity},
      {4, "box limit law", box_limit},
      {5, "photon vacuum W1 = mean", photon_vacuum_w1},
      {6, "photon KL identities", photon_kl},
      {7, "two-coherent-state shortcut", coherent_shortcut},
      {8, "EMD oracle equivalence", emd_equivalence},
      {9, "Wp metric properties", metric_properties},
      {10, "oscillator asymptotics", osc_asymptotics},
      {11, "blackbody scaling", blackbody_scaling},
      {12, "Glauber-Lachs consistency", glauber_lachs_consistency},
  };
  return list;
}

CriterionResult run_criterion(Criterion const &criterion)
{
  CriterionResult result;
  try
  {
    result = criterion.run();
  }
  catch (std::exception const &e)
  {
    result = make(false, std::string("exception: ") + e.what());
  }
  result.id    = criterion.id;
  result.title = criterion.title;
  return result;
}

std::string format_line(CriterionResult const &result)
{
  char id[8];
  std::snprintf(id, sizeof id, "%2d", result.id);
  return std::string(result.passed ? "PASS" : "FAIL") + "  " + id + "  " + result.title + ": " + result.detail;
}

bool run_all(std::ostream &out, std::span<int const> ids)
{
  bool all = true;
  for (auto const &c : criteria())
  {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end())
    {
      continue;
    }
    CriterionResult const r = run_criterion(c);
    out << format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all;
}

}  // namespace qdist::acceptance
