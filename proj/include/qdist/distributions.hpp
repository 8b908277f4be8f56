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
#include <memory>
#include <span>
#include <vector>

#include "qdist/numerics.hpp"

namespace qdist {

/**
 * A continuous probability density with explicit support.
 *
 * `breakpoints` lists interior points where the density vanishes or is not
 * smooth (e.g. nodes of a wavefunction). Integrators split there, which
 * keeps log singularities of ln(f/g) at subinterval endpoints.
 */
struct Density1D
{
  RealFunction        pdf;
  Interval            support;
  std::vector<double> breakpoints;
  bool                normalization_checked = false;
  RealFunction        log_pdf;  // optional; used where pdf would underflow

  double operator()(double x) const { return support.contains(x) ? pdf(x) : 0.0; }
  double log_density(double x) const;
};

/// Builds a density and verifies that it integrates to one within 1e-9.
Density1D make_checked_density(RealFunction pdf, Interval support, std::vector<double> breakpoints = {},
                               RealFunction log_pdf = {});

/// Cumulative distribution; `resolution` is the number of sampling cells
/// used to find crossings against another CDF.
struct Cdf1D
{
  RealFunction cdf;
  Interval     support;
  RealFunction quantile;  // optional closed form
  std::size_t  resolution = 64;

  double operator()(double x) const;
  double inverse(double q) const;
};

/**
 * CDF of a density tabulated on a grid over a finite range. Between nodes the
 * CDF is the node value plus a 10-point Gauss-Legendre integral of the
 * density, so there is no interpolation error beyond the quadrature rule.
 */
class TabulatedCdf
{
public:
  TabulatedCdf(RealFunction pdf, Interval range, std::size_t cells, QuadratureConfig const &cfg = {});

  double operator()(double x) const;
  Interval range() const { return range_; }
  double total_mass() const { return cumulative_.back(); }

private:
  RealFunction        pdf_;
  Interval            range_;
  double              step_;
  std::vector<double> cumulative_;
};

/// CDF obtained by integrating a density over `range`; mass outside `range`
/// must be below 1e-12.
Cdf1D cdf_from_density(Density1D const &density, Interval range, std::size_t cells = 512);

/**
 * Truncated probability mass function on n = 0, 1, 2, ...
 *
 * `tail_bound` is a certified upper bound on the mass at indices >= size(),
 * `tail_mean_bound` one on sum_{n >= size()} n p(n).
 */
class DiscretePmf
{
public:
  explicit DiscretePmf(std::vector<double> probs, double tail_bound = 0.0,
                       double tail_mean_bound = 0.0);

  std::span<double const> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t n) const { return n < probs_.size() ? probs_[n] : 0.0; }
  double tail_bound() const { return tail_bound_; }
  double tail_mean_bound() const { return tail_mean_bound_; }

  /// Running sums P(0), P(1), ... over the stored entries.
  std::vector<double> cumulative() const;

private:
  std::vector<double> probs_;
  double              tail_bound_;
  double              tail_mean_bound_;
};

/**
 * Value of a divergence that may be infinite because of a support mismatch.
 * The unbounded case is tracked separately from floating-point overflow.
 */
struct Divergence
{
  double value     = 0.0;
  bool   unbounded = false;

  static Divergence finite(double v) { return {v, false}; }
  static Divergence infinite() { return {kInf, true}; }

  double as_double() const { return unbounded ? kInf : value; }
};

/// Value with an absolute error bar.
struct Estimate
{
  double value = 0.0;
  double error = 0.0;
};

}  // namespace qdist
