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

#include <optional>
#include <string_view>

#include "qdist/distributions.hpp"
#include "qdist/numerics.hpp"

namespace qdist {

// Continuous distributions ----------------------------------------------------

/// D_KL(f, g) = integral of f ln(f/g). Unbounded when f has mass where g vanishes.
Divergence kl_continuous(Density1D const &f, Density1D const &g, QuadratureConfig const &cfg = {});

/// D_B(f, g) = -ln integral sqrt(f g). Unbounded when the overlap vanishes.
Divergence bhattacharyya_continuous(Density1D const &f, Density1D const &g,
                                    QuadratureConfig const &cfg = {});

/// W_p from the L^p distance between quantile functions, p >= 1.
double wasserstein_p_quantile(Cdf1D const &F, Cdf1D const &G, double p,
                              QuadratureConfig const &cfg = {});

/// W_1 as the area between the two CDFs over the union of their supports.
double wasserstein1_cdf(Cdf1D const &F, Cdf1D const &G, QuadratureConfig const &cfg = {});

// Discrete distributions ------------------------------------------------------

Divergence kl_discrete(DiscretePmf const &p, DiscretePmf const &q);
Divergence bhattacharyya_discrete(DiscretePmf const &p, DiscretePmf const &q);

/// sum_n |P(n) - Q(n)| over the stored range.
double wasserstein1_discrete(DiscretePmf const &p, DiscretePmf const &q);

/// Upper bound on the part of W_1 lost to truncation of p and q.
double wasserstein1_truncation_error(DiscretePmf const &p, DiscretePmf const &q);

enum class Dominance
{
  first,    ///< P(n) >= Q(n) for every n: p is stochastically smaller
  second,   ///< Q(n) >= P(n) for every n
  neither,
};

struct DominanceReport
{
  Dominance                  dominant = Dominance::first;
  std::optional<std::size_t> first_crossing;
};

std::string_view to_string(Dominance d);

/// Cumulative differences within 1e-14 count as ties, not crossings.
DominanceReport check_dominance(DiscretePmf const &p, DiscretePmf const &q);

/// Continuous analogue sampled at `samples` points over the union of supports.
DominanceReport check_dominance(Cdf1D const &F, Cdf1D const &G, std::size_t samples = 2048);

/// Mean of a truncated PMF, with the certified truncation error as the error bar.
Estimate mean_photon(DiscretePmf const &p);

/**
 * |mean(p) - mean(q)|, valid only when one CDF dominates the other.
 * Throws std::logic_error when the CDFs cross.
 */
double mean_shortcut_w1(DiscretePmf const &p, DiscretePmf const &q);

/**
 * W_1 by explicit transport: the mass of p is moved, in index order, onto the
 * mass of q in index order (monotone coupling), and the cost
 * sum(mass * distance) is accumulated. Independent of the CDF formula.
 */
double emd_oracle(DiscretePmf const &p, DiscretePmf const &q);

}  // namespace qdist
