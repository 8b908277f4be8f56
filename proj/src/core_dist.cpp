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

#include "qdist/core_dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdist {

namespace {

std::vector<double> merged_breaks(Density1D const &f, Density1D const &g, Interval domain)
{
  std::vector<double> out;
  for (auto const *d : {&f, &g})
  {
    for (double b : d->breakpoints)
    {
      if (b > domain.lo && b < domain.hi)
      {
        out.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double mass_on(Density1D const &f, double lo, double hi)
{
  if (!(lo < hi))
  {
    return 0.0;
  }
  return integrate_adaptive(f.pdf, Interval{lo, hi});
}

Interval joint_support(Cdf1D const &F, Cdf1D const &G)
{
  return Interval{std::min(F.support.lo, G.support.lo), std::max(F.support.hi, G.support.hi)};
}

}  // namespace

Divergence kl_continuous(Density1D const &f, Density1D const &g, QuadratureConfig const &cfg)
{
  // Mass of f outside the support of g makes the divergence unbounded.
  double const outside = mass_on(f, f.support.lo, std::min(f.support.hi, g.support.lo)) +
                         mass_on(f, std::max(f.support.lo, g.support.hi), f.support.hi);
  if (outside > 0.0)
  {
    return Divergence::infinite();
  }

  Interval const domain{std::max(f.support.lo, g.support.lo), std::min(f.support.hi, g.support.hi)};
  bool           unbounded = false;
  auto integrand = [&](double x) {
    double const fx = f.pdf(x);
    if (!(fx > 0.0))
    {
      return 0.0;
    }
    double const lg = g.log_density(x);
    if (std::isinf(lg))
    {
      unbounded = true;
      return 0.0;
    }
    return fx * (f.log_density(x) - lg);
  };
  std::vector<double> const breaks = merged_breaks(f, g, domain);
  double const              value  = integrate_with_breaks(integrand, domain, breaks, cfg);
  if (unbounded)
  {
    return Divergence::infinite();
  }
  return Divergence::finite(value);
}

Divergence bhattacharyya_continuous(Density1D const &f, Density1D const &g,
                                    QuadratureConfig const &cfg)
{
  double const lo = std::max(f.support.lo, g.support.lo);
  double const hi = std::min(f.support.hi, g.support.hi);
  if (!(lo < hi))
  {
    return Divergence::infinite();
  }
  Interval const domain{lo, hi};
  auto integrand = [&](double x) {
    double const lf = f.log_density(x);
    double const lg = g.log_density(x);
    if (std::isinf(lf) || std::isinf(lg))
    {
      return 0.0;
    }
    return std::exp(0.5 * (lf + lg));
  };
  std::vector<double> const breaks  = merged_breaks(f, g, domain);
  double const              overlap = integrate_with_breaks(integrand, domain, breaks, cfg);
  if (!(overlap > 0.0))
  {
    return Divergence::infinite();
  }
  return Divergence::finite(-std::log(overlap));
}

double wasserstein_p_quantile(Cdf1D const &F, Cdf1D const &G, double p, QuadratureConfig const &cfg)
{
  if (!(p >= 1.0))
  {
    throw std::domain_error("wasserstein_p_quantile: p must be >= 1");
  }
  // The sign scan samples q = 0 and q = 1, where a quantile may be infinite.
  auto difference = [&](double q) {
    if (!(q > 0.0 && q < 1.0))
    {
      return 0.0;
    }
    return F.inverse(q) - G.inverse(q);
  };
  std::size_t const cells    = 2 * std::max(F.resolution, G.resolution);
  double const      integral = integrate_abs_pow(difference, p, Interval{0.0, 1.0}, cells, cfg);
  return p == 1.0 ? integral : std::pow(integral, 1.0 / p);
}

double wasserstein1_cdf(Cdf1D const &F, Cdf1D const &G, QuadratureConfig const &cfg)
{
  auto difference = [&](double x) { return F(x) - G(x); };
  std::size_t const cells = std::max(F.resolution, G.resolution);
  return integrate_abs(difference, joint_support(F, G), cells, cfg);
}

// ---------------------------------------------------------------------------

Divergence kl_discrete(DiscretePmf const &p, DiscretePmf const &q)
{
  double sum = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n)
  {
    double const pn = p[n];
    if (pn == 0.0)
    {
      continue;
    }
    if (n >= q.size() && q.tail_bound() > 0.0)
    {
      std::ostringstream msg;
      msg << "kl_discrete: q is truncated at n = " << q.size()
          << " below the support of p; regenerate q with a larger minimum length";
      throw std::domain_error(msg.str());
    }
    double const qn = q[n];
    if (qn == 0.0)
    {
      return Divergence::infinite();
    }
    sum += pn * (std::log(pn) - std::log(qn));
  }
  return Divergence::finite(sum);
}

Divergence bhattacharyya_discrete(DiscretePmf const &p, DiscretePmf const &q)
{
  double             overlap = 0.0;
  std::size_t const  common  = std::min(p.size(), q.size());
  for (std::size_t n = 0; n < common; ++n)
  {
    overlap += std::sqrt(p[n] * q[n]);
  }
  if (!(overlap > 0.0))
  {
    return Divergence::infinite();
  }
  return Divergence::finite(-std::log(overlap));
}

double wasserstein1_discrete(DiscretePmf const &p, DiscretePmf const &q)
{
  std::size_t const count = std::max(p.size(), q.size());
  double            cp    = 0.0;
  double            cq    = 0.0;
  double            total = 0.0;
  for (std::size_t n = 0; n < count; ++n)
  {
    cp += p[n];
    cq += q[n];
    total += std::abs(cp - cq);
  }
  return total;
}

double wasserstein1_truncation_error(DiscretePmf const &p, DiscretePmf const &q)
{
  std::size_t const count = std::max(p.size(), q.size());
  double            bound = 0.0;
  for (auto const *r : {&p, &q})
  {
    bound += static_cast<double>(count - r->size()) * r->tail_bound() + r->tail_mean_bound();
  }
  return bound;
}

std::string_view to_string(Dominance d)
{
  switch (d)
  {
  case Dominance::first:
    return "first";
  case Dominance::second:
    return "second";
  case Dominance::neither:
    return "neither";
  }
  return "neither";
}

namespace {

// Scans a sequence of CDF differences; ties within `tie` are not crossings.
template <typename Diff>
DominanceReport scan_dominance(std::size_t count, Diff &&diff, double tie)
{
  int established = 0;
  for (std::size_t n = 0; n < count; ++n)
  {
    double const d    = diff(n);
    int const    sign = d > tie ? 1 : (d < -tie ? -1 : 0);
    if (sign == 0)
    {
      continue;
    }
    if (established == 0)
    {
      established = sign;
    }
    else if (sign != established)
    {
      return {Dominance::neither, n};
    }
  }
  return {established >= 0 ? Dominance::first : Dominance::second, std::nullopt};
}

}  // namespace

DominanceReport check_dominance(DiscretePmf const &p, DiscretePmf const &q)
{
  std::size_t const   count = std::max(p.size(), q.size());
  std::vector<double> diff(count);
  double              cp = 0.0;
  double              cq = 0.0;
  for (std::size_t n = 0; n < count; ++n)
  {
    cp += p[n];
    cq += q[n];
    diff[n] = cp - cq;
  }
  return scan_dominance(count, [&diff](std::size_t n) { return diff[n]; }, 1e-14);
}

DominanceReport check_dominance(Cdf1D const &F, Cdf1D const &G, std::size_t samples)
{
  Interval const domain = joint_support(F, G);
  if (!domain.is_finite())
  {
    throw std::invalid_argument("check_dominance: continuous CDFs need a finite joint support");
  }
  samples = std::max<std::size_t>(samples, 2);
  double const step = domain.width() / static_cast<double>(samples - 1);
  return scan_dominance(
      samples,
      [&](std::size_t k) {
        double const x = domain.lo + step * static_cast<double>(k);
        return F(x) - G(x);
      },
      1e-12);
}

Estimate mean_photon(DiscretePmf const &p)
{
  double mean = 0.0;
  for (std::size_t n = 1; n < p.size(); ++n)
  {
    mean += static_cast<double>(n) * p[n];
  }
  return {mean, p.tail_mean_bound()};
}

double mean_shortcut_w1(DiscretePmf const &p, DiscretePmf const &q)
{
  DominanceReport const report = check_dominance(p, q);
  if (report.dominant == Dominance::neither)
  {
    std::ostringstream msg;
    msg << "mean_shortcut_w1: the CDFs cross at n = " << *report.first_crossing
        << "; use wasserstein1_discrete instead";
    throw std::logic_error(msg.str());
  }
  return std::abs(mean_photon(p).value - mean_photon(q).value);
}

double emd_oracle(DiscretePmf const &p, DiscretePmf const &q)
{
  std::size_t i    = 0;
  std::size_t j    = 0;
  double      left = p[0];
  double      need = q[0];
  double      cost = 0.0;
  while (i < p.size() && j < q.size())
  {
    if (left <= 0.0)
    {
      left = (++i < p.size()) ? p[i] : 0.0;
      continue;
    }
    if (need <= 0.0)
    {
      need = (++j < q.size()) ? q[j] : 0.0;
      continue;
    }
    double const moved = std::min(left, need);
    double const dist  = i > j ? static_cast<double>(i - j) : static_cast<double>(j - i);
    cost += moved * dist;
    left -= moved;
    need -= moved;
  }
  return cost;
}

}  // namespace qdist
