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

#include "qdist/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdist {

double Density1D::log_density(double x) const
{
  if (!support.contains(x))
  {
    return -kInf;
  }
  if (log_pdf)
  {
    return log_pdf(x);
  }
  double const v = pdf(x);
  return v > 0.0 ? std::log(v) : -kInf;
}

Density1D make_checked_density(RealFunction pdf, Interval support, std::vector<double> breakpoints,
                               RealFunction log_pdf)
{
  Density1D d{std::move(pdf), support, std::move(breakpoints), false, std::move(log_pdf)};
  std::sort(d.breakpoints.begin(), d.breakpoints.end());

  QuadratureConfig cfg;
  cfg.rel_tol      = 1e-12;
  cfg.abs_tol      = 1e-13;
  double const mass = integrate_with_breaks(d.pdf, d.support, d.breakpoints, cfg);
  if (std::abs(mass - 1.0) > 1e-9)
  {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density is not normalized: integral = " << mass;
    throw std::invalid_argument(msg.str());
  }
  d.normalization_checked = true;
  return d;
}

double Cdf1D::operator()(double x) const
{
  if (x <= support.lo)
  {
    return std::isfinite(support.lo) ? 0.0 : std::clamp(cdf(x), 0.0, 1.0);
  }
  if (x >= support.hi)
  {
    return std::isfinite(support.hi) ? 1.0 : std::clamp(cdf(x), 0.0, 1.0);
  }
  return std::clamp(cdf(x), 0.0, 1.0);
}

double Cdf1D::inverse(double q) const
{
  if (quantile)
  {
    if (!(q > 0.0 && q < 1.0))
    {
      throw std::domain_error("Cdf1D::inverse: probability must lie in (0, 1)");
    }
    return quantile(q);
  }
  return invert_cdf([this](double x) { return (*this)(x); }, support, q);
}

TabulatedCdf::TabulatedCdf(RealFunction pdf, Interval range, std::size_t cells,
                           QuadratureConfig const &cfg)
  : pdf_(std::move(pdf))
  , range_(range)
{
  if (!range.is_finite())
  {
    throw std::invalid_argument("TabulatedCdf requires a finite range");
  }
  cells = std::max<std::size_t>(cells, 1);
  step_ = range.width() / static_cast<double>(cells);

  cumulative_.resize(cells + 1);
  cumulative_[0] = 0.0;
  QuadratureConfig cell_cfg = cfg;
  cell_cfg.abs_tol          = cfg.abs_tol / static_cast<double>(cells);
  for (std::size_t k = 0; k < cells; ++k)
  {
    double const a = range.lo + step_ * static_cast<double>(k);
    double const b = (k + 1 == cells) ? range.hi : range.lo + step_ * static_cast<double>(k + 1);
    cumulative_[k + 1] = cumulative_[k] + integrate_adaptive(pdf_, Interval{a, b}, cell_cfg);
  }
}

double TabulatedCdf::operator()(double x) const
{
  if (x <= range_.lo)
  {
    return 0.0;
  }
  if (x >= range_.hi)
  {
    return cumulative_.back();
  }
  std::size_t const cells = cumulative_.size() - 1;
  auto k = static_cast<std::size_t>((x - range_.lo) / step_);
  k      = std::min(k, cells - 1);
  double const node = range_.lo + step_ * static_cast<double>(k);
  if (x <= node)
  {
    return cumulative_[k];
  }
  double const partial = gauss_legendre_10(pdf_, node, x);
  return std::clamp(cumulative_[k] + partial, cumulative_[k], cumulative_[k + 1]);
}

Cdf1D cdf_from_density(Density1D const &density, Interval range, std::size_t cells)
{
  QuadratureConfig cfg;
  double outside = 0.0;
  if (density.support.lo < range.lo)
  {
    outside += integrate_adaptive(density.pdf, Interval{density.support.lo, range.lo}, cfg);
  }
  if (density.support.hi > range.hi)
  {
    outside += integrate_adaptive(density.pdf, Interval{range.hi, density.support.hi}, cfg);
  }
  if (outside > 1e-12)
  {
    std::ostringstream msg;
    msg << "cdf_from_density: range leaves mass " << outside << " outside";
    throw std::invalid_argument(msg.str());
  }
  auto table = std::make_shared<TabulatedCdf const>(density.pdf, range, cells, cfg);
  Cdf1D out;
  out.cdf        = [table](double x) { return (*table)(x); };
  out.support    = range;
  out.resolution = cells;
  return out;
}

DiscretePmf::DiscretePmf(std::vector<double> probs, double tail_bound, double tail_mean_bound)
  : probs_(std::move(probs))
  , tail_bound_(tail_bound)
  , tail_mean_bound_(tail_mean_bound)
{
  if (probs_.empty())
  {
    throw std::invalid_argument("DiscretePmf: empty probability vector");
  }
  if (!(tail_bound_ >= 0.0 && tail_bound_ <= 1e-12) || !(tail_mean_bound_ >= 0.0))
  {
    throw std::invalid_argument("DiscretePmf: tail bounds must satisfy 0 <= tail_bound <= 1e-12");
  }
  double sum = 0.0;
  for (double p : probs_)
  {
    if (!(p >= 0.0) || !std::isfinite(p))
    {
      throw std::invalid_argument("DiscretePmf: probabilities must be finite and non-negative");
    }
    sum += p;
  }
  double const tol = std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() *
                                         static_cast<double>(probs_.size()));
  if (std::abs(sum + tail_bound_ - 1.0) > tol)
  {
    std::ostringstream msg;
    msg.precision(17);
    msg << "DiscretePmf: probabilities sum to " << sum << " with tail bound " << tail_bound_;
    throw std::invalid_argument(msg.str());
  }
}

std::vector<double> DiscretePmf::cumulative() const
{
  std::vector<double> out(probs_.size());
  double              run = 0.0;
  for (std::size_t n = 0; n < probs_.size(); ++n)
  {
    run += probs_[n];
    out[n] = run;
  }
  return out;
}

}  // namespace qdist
