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

#include "qdist/distributions.hpp"

namespace qdist::wave {

// Particle in the unit box ---------------------------------------------------

/// Stationary state n >= 1 of a particle in [0, 1] with m = hbar = 1.
struct BoxState
{
  int n = 1;

  double energy() const;
};

/// g_n(x) = 2 sin^2(n pi x); nodes at k/n are recorded as breakpoints.
Density1D pbox_pdf(BoxState s);

/// G_n(x) = x - sin(2 n pi x) / (2 n pi), exact.
Cdf1D pbox_cdf(BoxState s);

/// The uniform density on [0, 1] and its CDF F(x) = x.
Density1D classical_box_pdf();
Cdf1D classical_box_cdf();

/// W_1 between the uniform CDF and G_n, 1/(n pi^2). The closed form is
/// checked against the numeric CDF integral to 1e-9 (ConsistencyError otherwise).
double pbox_w1_classical(int n);

/// Numeric W_1(G_m, G_n).
double pbox_pair_w1(int m, int n);

enum class KlDirection
{
  classical_to_state,  ///< D_KL(uniform, g_n) = ln 2
  state_to_classical,  ///< D_KL(g_n, uniform) = 1 - ln 2
};

/// n-independent KL divergence between the uniform density and g_n.
/// The closed forms are checked numerically on g_1, g_5 and g_20 to 1e-8.
double pbox_kl_classical(KlDirection direction);

/// D_B(uniform, g_n) = ln(pi / sqrt(8)), checked like pbox_kl_classical.
double pbox_bhatt_classical();

// Oscillator x-quadrature ---------------------------------------------------------

struct OscState
{
  int n = 0;
};

/// Half width sqrt(2n+1) + 10 of the interval that carries all of g_n's mass.
double osc_domain_half_width(int n);

/// g_n(x) = psi_n(x)^2 over the real line, breakpoints at the Hermite zeros.
Density1D osc_pdf(OscState s);

/// Tabulated CDF of g_n on [-L, L], L = osc_domain_half_width(n). Built once
/// per n and shared.
Cdf1D osc_cdf(OscState s);

/// W_1(G_0, G_n) by numeric integration of |G_0 - G_n|.
double osc_w1_vacuum(int n);

/**
 * D_KL(g_0, g_n) = ln(2^n n!) - (2/sqrt(pi)) int_0^inf exp(-x^2) ln H_n(x)^2 dx.
 * ln H_n^2 is evaluated as 2 ln|psi_n| + x^2 + ln(2^n n! sqrt(pi)); the log
 * singularities at the Hermite zeros sit on subinterval endpoints.
 */
double osc_kl_vacuum(int n);

/// D_B(g_0, g_n) = -ln{ 2/sqrt(2^n n! pi) int_0^inf exp(-x^2) |H_n(x)| dx }, in log space.
double osc_bhatt_vacuum(int n);

// Blackbody spectra ---------------------------------------------------------------

enum class Representation
{
  frequency,   ///< density of nu in Hz
  wavelength,  ///< density of lambda in metres
};

struct BlackbodyParams
{
  double         temperature    = 300.0;  // kelvin
  Representation representation = Representation::frequency;
};

/// int_0^inf u^3 / (e^u - 1) du by quadrature (pi^4/15), computed once.
double planck_normalization();

/// Mean of the dimensionless variable: u = h nu / kT (about 3.83223) or
/// w = lambda kT / (h c).
double planck_mean_constant(Representation rep);

/// Physical scale: kT/h in Hz, or hc/(kT) in metres.
double planck_scale(BlackbodyParams params);

/// Normalized Planck density in the chosen representation.
Density1D planck_pdf(BlackbodyParams params);

Cdf1D planck_cdf(BlackbodyParams params);

/// Mean frequency (Hz) or wavelength (m).
double planck_mean(BlackbodyParams params);

/**
 * W_1 between two blackbody spectra. The spectra form a scale family, so one
 * CDF dominates the other; this is verified on a grid before returning the
 * difference of means.
 */
double blackbody_w1(double t1, double t2, Representation rep);

}  // namespace qdist::wave
