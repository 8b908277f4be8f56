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

#include <boost/math/special_functions/zeta.hpp>

#include "qdist/constants.hpp"
#include "qdist/core_dist.hpp"
#include "qdist/wavefunctions.hpp"

using namespace qdist;
using namespace qdist::wave;

namespace {

constexpr double kPi    = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;

double zeta(double s)
{
  return boost::math::zeta(s);
}

// Central difference of a CDF compared against its density.
void check_derivative(Cdf1D const &G, Density1D const &g, double x, double h, double tol)
{
  double const slope = (G(x + h) - G(x - h)) / (2 * h);
  CHECK(slope == doctest::Approx(g(x)).epsilon(tol).scale(1.0));
}

// Five-point stencil; truncation ~ (2 pi n h)^4 / 30, so h = 1e-3 / n keeps it near 5e-11.
double five_point(Cdf1D const &G, double x, double h)
{
  return (G(x - 2 * h) - 8 * G(x - h) + 8 * G(x + h) - G(x + 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("box densities and CDFs")
{
  for (int n : {1, 2, 7, 30})
  {
    Density1D const g = pbox_pdf({n});
    Cdf1D const     G = pbox_cdf({n});
    CHECK(integrate_adaptive(g.pdf, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-13));
    for (double x : {0.05, 0.3, 0.5, 0.77})
    {
      CHECK(G(x) == doctest::Approx(integrate_adaptive(g.pdf, {0.0, x})).epsilon(1e-12).scale(1.0));
      CHECK(G(1.0 - x) == doctest::Approx(1.0 - G(x)).epsilon(1e-14).scale(1.0));
      CHECK(std::abs(five_point(G, x, 1e-3 / n) - g(x)) < 1e-10);
    }
    CHECK(G(-1.0) == 0.0);
    CHECK(G(2.0) == 1.0);
  }
  CHECK(BoxState{3}.energy() == doctest::Approx(9 * kPi * kPi / 2));
  CHECK_THROWS_AS(pbox_pdf({0}), std::domain_error);
}

TEST_CASE("box distances")
{
  for (int n : {1, 2, 9, 40})
  {
    CHECK(pbox_w1_classical(n) == doctest::Approx(1.0 / (n * kPi * kPi)).epsilon(1e-12));
  }
  CHECK(pbox_pair_w1(1, 4) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-10));
  CHECK(pbox_pair_w1(3, 5) == doctest::Approx(pbox_pair_w1(5, 3)).epsilon(1e-14));
  CHECK(pbox_pair_w1(4, 4) == 0.0);
  CHECK(pbox_kl_classical(KlDirection::classical_to_state) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
  CHECK(pbox_kl_classical(KlDirection::state_to_classical) == doctest::Approx(1 - std::numbers::ln2).epsilon(1e-14));
  CHECK(pbox_bhatt_classical() == doctest::Approx(std::log(kPi / std::sqrt(8.0))).epsilon(1e-14));
}

TEST_CASE("box W2 via quantiles is at least W1")
{
  Cdf1D const F = classical_box_cdf();
  for (int n : {1, 3, 8})
  {
    Cdf1D const  G  = pbox_cdf({n});
    double const w1 = wasserstein_p_quantile(F, G, 1.0);
    CHECK(w1 == doctest::Approx(1.0 / (n * kPi * kPi)).epsilon(1e-9));
    CHECK(wasserstein_p_quantile(F, G, 2.0) >= w1);
  }
}

TEST_CASE("oscillator densities and CDFs")
{
  for (int n : {0, 1, 6, 25})
  {
    Density1D const g = osc_pdf({n});
    Cdf1D const     G = osc_cdf({n});
    CHECK(integrate_adaptive(g.pdf, {-kInf, kInf}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(G(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.13, 0.9, 2.4, 4.0})
    {
      CHECK(G(-x) == doctest::Approx(1.0 - G(x)).epsilon(1e-12).scale(1.0));
      check_derivative(G, g, x, 1e-4, 1e-6);
    }
  }
  CHECK_THROWS_AS(osc_pdf({-1}), std::domain_error);
}

TEST_CASE("oscillator n = 1 closed forms")
{
  // |G_0 - G_1| = |x| exp(-x^2) / sqrt(pi)  =>  W1 = 1/sqrt(pi).
  CHECK(osc_w1_vacuum(1) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-11));
  // g_1 = 2 x^2 g_0: D_KL = ln 2 + gamma, overlap sqrt(2/pi).
  CHECK(osc_kl_vacuum(1) == doctest::Approx(std::numbers::ln2 + kEuler).epsilon(1e-11));
  CHECK(osc_bhatt_vacuum(1) == doctest::Approx(0.5 * std::log(kPi / 2)).epsilon(1e-11));
}

TEST_CASE("oscillator specialised routes match the generic divergences")
{
  Density1D const g0 = osc_pdf({0});
  for (int n : {2, 5, 20})
  {
    Density1D const gn = osc_pdf({n});
    CHECK(osc_kl_vacuum(n) == doctest::Approx(kl_continuous(g0, gn).value).epsilon(1e-9));
    CHECK(osc_bhatt_vacuum(n) == doctest::Approx(bhattacharyya_continuous(g0, gn).value).epsilon(1e-9));
    CHECK(osc_w1_vacuum(n) == doctest::Approx(wasserstein_p_quantile(osc_cdf({0}), osc_cdf({n}), 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("Planck constants against zeta values")
{
  CHECK(planck_normalization() == doctest::Approx(6 * zeta(4.0)).epsilon(1e-13));
  CHECK(planck_mean_constant(Representation::frequency) == doctest::Approx(4 * zeta(5.0) / zeta(4.0)).epsilon(1e-12));
  CHECK(planck_mean_constant(Representation::wavelength) == doctest::Approx(zeta(3.0) / (3 * zeta(4.0))).epsilon(1e-12));
}

TEST_CASE("Planck densities are normalized in both representations")
{
  for (auto rep : {Representation::frequency, Representation::wavelength})
  {
    Density1D const f = planck_pdf({300.0, rep});
    CHECK(integrate_with_breaks(f.pdf, f.support, f.breakpoints) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(planck_pdf({0.0, Representation::frequency}), std::domain_error);
}

TEST_CASE("Planck spectra form a scale family")
{
  Cdf1D const f1 = planck_cdf({250.0, Representation::frequency});
  Cdf1D const f2 = planck_cdf({500.0, Representation::frequency});
  Cdf1D const w1 = planck_cdf({250.0, Representation::wavelength});
  Cdf1D const w2 = planck_cdf({500.0, Representation::wavelength});
  double const nu_scale = constants::boltzmann * 250.0 / constants::planck;
  double const la_scale = constants::planck * constants::speed_of_light / (constants::boltzmann * 250.0);
  for (double s : {0.5, 1.0, 2.8, 6.0})
  {
    CHECK(f1(s * nu_scale) == doctest::Approx(f2(2 * s * nu_scale)).epsilon(1e-13));
    CHECK(w1(s * la_scale) == doctest::Approx(w2(0.5 * s * la_scale)).epsilon(1e-13));
    // A spectrum seen in frequency or wavelength: F_nu(c/lambda) = 1 - F_lambda(lambda).
    CHECK(f1(constants::speed_of_light / (s * la_scale)) == doctest::Approx(1.0 - w1(s * la_scale)).epsilon(1e-12));
  }
  CHECK(planck_mean({300.0, Representation::frequency}) ==
        doctest::Approx(4 * zeta(5.0) / zeta(4.0) * constants::boltzmann * 300.0 / constants::planck).epsilon(1e-12));
}

TEST_CASE("Planck CDF derivative is the density")
{
  Density1D const f = planck_pdf({300.0, Representation::frequency});
  Cdf1D const     F = planck_cdf({300.0, Representation::frequency});
  double const    s = planck_scale({300.0, Representation::frequency});
  for (double u : {0.7, 2.8, 9.0})
  {
    double const x     = u * s;
    double const h     = 1e-4 * s;
    double const slope = (F(x + h) - F(x - h)) / (2 * h);
    CHECK(slope == doctest::Approx(f(x)).epsilon(1e-6));
  }
}

TEST_CASE("KL between spectra does not depend on the representation")
{
  double const kl_nu = kl_continuous(planck_pdf({200.0, Representation::frequency}),
                                     planck_pdf({300.0, Representation::frequency}))
                           .value;
  double const kl_la = kl_continuous(planck_pdf({200.0, Representation::wavelength}),
                                     planck_pdf({300.0, Representation::wavelength}))
                           .value;
  CHECK(kl_nu > 0.0);
  CHECK(kl_nu == doctest::Approx(kl_la).epsilon(1e-8));
}

TEST_CASE("blackbody W1 is the mean difference")
{
  double const w_nu = blackbody_w1(100.0, 300.0, Representation::frequency);
  CHECK(w_nu == doctest::Approx(planck_mean({300.0, Representation::frequency}) -
                                planck_mean({100.0, Representation::frequency}))
                    .epsilon(1e-14));
  CHECK(w_nu == doctest::Approx(wasserstein1_cdf(planck_cdf({100.0, Representation::frequency}),
                                                 planck_cdf({300.0, Representation::frequency})))
                    .epsilon(1e-9));
  double const w_la = blackbody_w1(100.0, 300.0, Representation::wavelength);
  double const cw   = zeta(3.0) / (3 * zeta(4.0));
  double const hc_k = constants::planck * constants::speed_of_light / constants::boltzmann;
  CHECK(w_la == doctest::Approx(cw * hc_k * (1.0 / 100.0 - 1.0 / 300.0)).epsilon(1e-11));
  CHECK(blackbody_w1(250.0, 250.0, Representation::wavelength) == 0.0);
}

TEST_CASE("blackbody W1 ratios follow the temperature laws")
{
  double const t = 180.0;
  CHECK(blackbody_w1(t, 2 * t, Representation::frequency) / blackbody_w1(t, 3 * t, Representation::frequency) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(blackbody_w1(t, 2 * t, Representation::wavelength) / blackbody_w1(t, 4 * t, Representation::wavelength) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("W1 outgrows the logarithmic divergences")
{
  double previous = 0.0;
  for (int n : {50, 100, 200, 400})
  {
    double const ratio = osc_w1_vacuum(n) / std::log(static_cast<double>(n));
    CHECK(ratio > previous);
    previous = ratio;
  }
}
