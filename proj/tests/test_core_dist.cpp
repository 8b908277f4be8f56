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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qdist/core_dist.hpp"
#include "qdist/photon_states.hpp"
#include "qdist/wavefunctions.hpp"

using namespace qdist;

namespace {

constexpr double kPi = std::numbers::pi;

Density1D exponential(double rate)
{
  return make_checked_density([rate](double x) { return x < 0 ? 0.0 : rate * std::exp(-rate * x); }, {0.0, kInf}, {},
                              [rate](double x) { return std::log(rate) - rate * x; });
}

Density1D normal(double mu, double sigma)
{
  auto pdf = [=](double x) {
    double const z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * kPi));
  };
  auto log_pdf = [=](double x) {
    double const z = (x - mu) / sigma;
    return -0.5 * z * z - std::log(sigma * std::sqrt(2 * kPi));
  };
  return make_checked_density(pdf, {-kInf, kInf}, {mu}, log_pdf);
}

Cdf1D normal_cdf(double mu)
{
  Cdf1D F;
  F.cdf     = [mu](double x) { return 0.5 * std::erfc(-(x - mu) / std::sqrt(2.0)); };
  F.support = {-kInf, kInf};
  return F;
}

Cdf1D uniform_cdf(double lo, double hi)
{
  Cdf1D F;
  F.cdf      = [=](double x) { return (x - lo) / (hi - lo); };
  F.support  = {lo, hi};
  F.quantile = [=](double q) { return lo + q * (hi - lo); };
  return F;
}

DiscretePmf random_pmf(std::mt19937_64 &rng, std::size_t max_length = 64)
{
  std::uniform_int_distribution<std::size_t> length(1, max_length);
  std::uniform_real_distribution<double>      unit(0.0, 1.0);
  std::vector<double>                         probs(length(rng));
  double                                      total = 0.0;
  for (auto &p : probs)
  {
    p = unit(rng) < 0.3 ? 0.0 : unit(rng);
    total += p;
  }
  if (total == 0.0)
  {
    probs[0] = total = 1.0;
  }
  for (auto &p : probs)
  {
    p /= total;
  }
  return DiscretePmf{probs};
}

}  // namespace

TEST_CASE("KL between exponentials")
{
  for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{3.0, 0.5}, std::pair{1.0, 1.0}})
  {
    double const expected = std::log(a / b) + b / a - 1.0;
    Divergence const d    = kl_continuous(exponential(a), exponential(b));
    CHECK_FALSE(d.unbounded);
    CHECK(d.value == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("Bhattacharyya between equal-width normals")
{
  double const mu = 1.7;
  Divergence const d = bhattacharyya_continuous(normal(0.0, 1.0), normal(mu, 1.0));
  CHECK(d.value == doctest::Approx(mu * mu / 8.0).epsilon(1e-10));
  CHECK(bhattacharyya_continuous(normal(0.3, 2.0), normal(0.3, 2.0)).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("support mismatch is unbounded, not overflow")
{
  Density1D const wide   = make_checked_density([](double) { return 0.5; }, {0.0, 2.0});
  Density1D const narrow = make_checked_density([](double) { return 1.0; }, {0.0, 1.0});
  CHECK(kl_continuous(wide, narrow).unbounded);
  CHECK_FALSE(kl_continuous(narrow, wide).unbounded);
  CHECK(kl_continuous(narrow, wide).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Density1D const left  = make_checked_density([](double) { return 1.0; }, {0.0, 1.0});
  Density1D const right = make_checked_density([](double) { return 1.0; }, {2.0, 3.0});
  CHECK(bhattacharyya_continuous(left, right).unbounded);
  CHECK(std::isinf(bhattacharyya_continuous(left, right).as_double()));
}

TEST_CASE("make_checked_density rejects unnormalized input")
{
  CHECK_THROWS_AS(make_checked_density([](double) { return 1.0; }, {0.0, 2.0}), std::invalid_argument);
}

TEST_CASE("Wasserstein of translated normals equals the shift")
{
  for (double mu : {0.0, 0.25, 3.0})
  {
    CHECK(wasserstein1_cdf(normal_cdf(0.0), normal_cdf(mu)) == doctest::Approx(mu).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("Wasserstein-p of uniforms via quantiles")
{
  // Q_F(q) = q, Q_G(q) = 2q: W1 = 1/2, W2 = 1/sqrt(3).
  Cdf1D const F = uniform_cdf(0.0, 1.0);
  Cdf1D const G = uniform_cdf(0.0, 2.0);
  CHECK(wasserstein_p_quantile(F, G, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wasserstein_p_quantile(F, G, 2.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(wasserstein1_cdf(F, G) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(wasserstein_p_quantile(F, G, 0.5), std::domain_error);
}

TEST_CASE("quantile route without a closed-form quantile")
{
  Cdf1D F = uniform_cdf(0.0, 1.0);
  Cdf1D G = uniform_cdf(0.5, 1.5);
  F.quantile = nullptr;
  G.quantile = nullptr;
  CHECK(wasserstein_p_quantile(F, G, 2.0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("discrete divergences")
{
  DiscretePmf const p({0.5, 0.5});
  DiscretePmf const q({0.25, 0.25, 0.5});
  CHECK(kl_discrete(p, q).value == doctest::Approx(std::log(2.0)));
  CHECK(kl_discrete(q, p).unbounded);
  CHECK(bhattacharyya_discrete(p, q).value == doctest::Approx(-std::log(2 * std::sqrt(0.125))));
  // CDFs 0.5, 1 vs 0.25, 0.5, 1.
  CHECK(wasserstein1_discrete(p, q) == doctest::Approx(0.75));
  CHECK(bhattacharyya_discrete(DiscretePmf({1.0}), DiscretePmf({0.0, 1.0})).unbounded);
}

TEST_CASE("kl_discrete refuses a q truncated below p's support")
{
  DiscretePmf const p({0.5, 0.0, 0.5});
  DiscretePmf const q({0.5, 0.5 - 1e-13}, 1e-13);
  CHECK_THROWS_AS(kl_discrete(p, q), std::domain_error);
}

TEST_CASE("dominance and the mean shortcut")
{
  DiscretePmf const low({0.7, 0.2, 0.1});
  DiscretePmf const high({0.1, 0.2, 0.7});
  auto const        report = check_dominance(low, high);
  CHECK(report.dominant == Dominance::first);
  CHECK_FALSE(report.first_crossing.has_value());
  CHECK(mean_shortcut_w1(low, high) == doctest::Approx(1.2));
  CHECK(wasserstein1_discrete(low, high) == doctest::Approx(1.2));

  DiscretePmf const middle({0.0, 1.0});
  DiscretePmf const spread({0.5, 0.0, 0.5});
  auto const        crossed = check_dominance(middle, spread);
  CHECK(crossed.dominant == Dominance::neither);
  REQUIRE(crossed.first_crossing.has_value());
  CHECK(*crossed.first_crossing == 1);
  CHECK_THROWS_AS(mean_shortcut_w1(middle, spread), std::logic_error);
  CHECK(to_string(Dominance::neither) == "neither");
}

TEST_CASE("mean_photon carries the tail bound")
{
  DiscretePmf const p({0.5, 0.5 - 1e-13}, 1e-13, 5e-12);
  Estimate const    m = mean_photon(p);
  CHECK(m.value == doctest::Approx(0.5));
  CHECK(m.error == 5e-12);
  CHECK(wasserstein1_truncation_error(p, DiscretePmf({1.0})) > 0.0);
}

TEST_CASE("property: EMD oracle equals the CDF formula")
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial)
  {
    DiscretePmf const p = random_pmf(rng);
    DiscretePmf const q = random_pmf(rng);
    CHECK(emd_oracle(p, q) == doctest::Approx(wasserstein1_discrete(p, q)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("property: W1 on PMFs is a metric bounded below by the mean gap")
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial)
  {
    DiscretePmf const a = random_pmf(rng, 20);
    DiscretePmf const b = random_pmf(rng, 20);
    DiscretePmf const c = random_pmf(rng, 20);
    double const      ab = wasserstein1_discrete(a, b);
    CHECK(ab == wasserstein1_discrete(b, a));
    CHECK(wasserstein1_discrete(a, a) == 0.0);
    CHECK(wasserstein1_discrete(a, c) <= ab + wasserstein1_discrete(b, c) + 1e-12);
    CHECK(ab + 1e-12 >= std::abs(mean_photon(a).value - mean_photon(b).value));
  }
}

TEST_CASE("property: KL is non-negative and Bhattacharyya symmetric")
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial)
  {
    DiscretePmf const a = random_pmf(rng, 16);
    DiscretePmf const b = random_pmf(rng, 16);
    Divergence const  kl = kl_discrete(a, b);
    CHECK((kl.unbounded || kl.value >= -1e-14));
    CHECK(bhattacharyya_discrete(a, b).as_double() == bhattacharyya_discrete(b, a).as_double());
  }
}

TEST_CASE("box-state examples")
{
  Density1D const f  = wave::classical_box_pdf();
  Density1D const g3 = wave::pbox_pdf({3});
  CHECK(kl_continuous(g3, g3).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(bhattacharyya_continuous(g3, g3).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  // KL is not symmetric here: ln 2 one way, 1 - ln 2 the other.
  CHECK(kl_continuous(f, g3).value == doctest::Approx(std::numbers::ln2).epsilon(1e-10));
  CHECK(kl_continuous(g3, f).value == doctest::Approx(1.0 - std::numbers::ln2).epsilon(1e-10));

  Cdf1D const F  = wave::classical_box_cdf();
  Cdf1D const G1 = wave::pbox_cdf({1});
  Cdf1D const G2 = wave::pbox_cdf({2});
  CHECK(wasserstein1_cdf(G2, G2) == 0.0);
  CHECK(wasserstein_p_quantile(G2, G2, 2.0) == 0.0);
  CHECK(wasserstein_p_quantile(F, G1, 1.0) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-10));
  CHECK(wasserstein1_cdf(F, G2) == doctest::Approx(1.0 / (2 * kPi * kPi)).epsilon(1e-10));
  CHECK(wasserstein1_cdf(G1, G2) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-10));
}

TEST_CASE("property: quantile and CDF routes agree for p = 1")
{
  std::vector<Cdf1D> pool{wave::classical_box_cdf()};
  for (int n = 1; n <= 5; ++n)
  {
    pool.push_back(wave::pbox_cdf({n}));
  }
  for (int n = 0; n <= 3; ++n)
  {
    pool.push_back(wave::osc_cdf({n}));
  }
  std::mt19937_64                            rng(31);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 50; ++trial)
  {
    Cdf1D const &F = pool[pick(rng)];
    Cdf1D const &G = pool[pick(rng)];
    double const q = wasserstein_p_quantile(F, G, 1.0);
    CHECK(q == doctest::Approx(wasserstein1_cdf(F, G)).scale(1.0).epsilon(1e-7));
    CHECK(q >= 0.0);
    CHECK(wasserstein_p_quantile(F, G, 2.0) + 1e-12 >= q);
  }
}

TEST_CASE("photon-state examples")
{
  using namespace photon;
  DiscretePmf const vacuum = fock_pmf(0);
  CHECK(wasserstein1_discrete(fock_pmf(3), fock_pmf(7)) == 4.0);
  CHECK(wasserstein1_discrete(vacuum, thermal_pmf({2.0})) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(wasserstein1_discrete(vacuum, squeezed_vacuum_pmf({1.0})) ==
        doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
  CHECK(kl_discrete(vacuum, coherent_pmf({2.5})).value == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(kl_discrete(vacuum, squeezed_vacuum_pmf({1.0})).value == doctest::Approx(0.4337808304830271).epsilon(1e-12));
  CHECK(kl_discrete(coherent_pmf({2.0}), coherent_pmf({2.0})).value == 0.0);
  CHECK(bhattacharyya_discrete(vacuum, fock_pmf(1)).unbounded);
  CHECK(emd_oracle(DiscretePmf({1.0, 0.0}), DiscretePmf({0.0, 1.0})) == 1.0);
  CHECK(emd_oracle(vacuum, coherent_pmf({2.0})) == doctest::Approx(2.0).epsilon(1e-12));

  DiscretePmf const c4 = coherent_pmf({4.0});
  DiscretePmf const c1 = coherent_pmf({1.0}, c4.size());
  CHECK(check_dominance(c1, c4).dominant == Dominance::first);
  CHECK(check_dominance(c4, c4).dominant == Dominance::first);
  CHECK(mean_shortcut_w1(c4, c1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mean_shortcut_w1(c4, c4) == 0.0);
  CHECK(mean_shortcut_w1(glauber_lachs_pmf({1.0, 2.0}), vacuum) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("Bhattacharyya is stable under deeper truncation")
{
  using namespace photon;
  double const shallow = bhattacharyya_discrete(coherent_pmf({1.0}), thermal_pmf({1.0})).value;
  double const deep    = bhattacharyya_discrete(coherent_pmf({1.0}, 400), thermal_pmf({1.0}, 400)).value;
  CHECK(std::isfinite(shallow));
  CHECK(shallow > 0.0);
  CHECK(std::abs(shallow - deep) < 1e-10);
}

TEST_CASE("property: the mean shortcut matches the CDF sum whenever dominance holds")
{
  std::mt19937_64 rng(77);
  int             dominated = 0;
  for (int trial = 0; trial < 400; ++trial)
  {
    DiscretePmf const a = random_pmf(rng, 6);
    DiscretePmf const b = random_pmf(rng, 6);
    if (check_dominance(a, b).dominant == Dominance::neither)
    {
      CHECK_THROWS_AS(mean_shortcut_w1(a, b), std::logic_error);
      continue;
    }
    ++dominated;
    CHECK(mean_shortcut_w1(a, b) == doctest::Approx(wasserstein1_discrete(a, b)).scale(1.0).epsilon(1e-10));
  }
  CHECK(dominated > 10);
}
