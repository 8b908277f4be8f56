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

#include "qdist/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace qdist {

Interval::Interval(double lo_, double hi_)
  : lo(lo_)
  , hi(hi_)
{
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
  {
    std::ostringstream msg;
    msg << "Interval requires lo < hi, got [" << lo << ", " << hi << "]";
    throw std::invalid_argument(msg.str());
  }
}

bool Interval::is_finite() const
{
  return std::isfinite(lo) && std::isfinite(hi);
}

void QuadratureConfig::validate() const
{
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
  {
    throw std::invalid_argument("QuadratureConfig: tolerances must be positive and max_subdivisions >= 1");
  }
}

IntegrationError::IntegrationError(std::string const &what, double partial_estimate,
                                   double error_estimate)
  : std::runtime_error(what)
  , partial_(partial_estimate)
  , error_(error_estimate)
{}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae, outermost first; odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980828345, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment
{
  double a;
  double b;
  double value;
  double error;

  bool operator<(Segment const &other) const { return error < other.error; }
};

Segment gauss_kronrod_21(RealFunction const &f, double a, double b)
{
  double const centre = 0.5 * (a + b);
  double const half   = 0.5 * (b - a);

  double const fc   = f(centre);
  double       resg = 0.0;
  double       resk = kWgk[10] * fc;
  double       resabs = std::abs(resk);

  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  for (std::size_t j = 0; j < 10; ++j)
  {
    double const dx = half * kXgk[j];
    double const f1 = f(centre - dx);
    double const f2 = f(centre + dx);
    fv1[j]          = f1;
    fv2[j]          = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1)
    {
      resg += kWg[j / 2] * (f1 + f2);
    }
  }

  double const reskh  = 0.5 * resk;
  double       resasc = kWgk[10] * std::abs(fc - reskh);
  for (std::size_t j = 0; j < 10; ++j)
  {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  double const abs_half = std::abs(half);
  double const result   = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
  {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
  {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {a, b, result, err};
}

// Maps an interval onto a finite parameter range, folding the Jacobian into f.
struct FiniteForm
{
  Interval     range;
  RealFunction integrand;
};

FiniteForm to_finite(RealFunction const &f, Interval domain)
{
  auto guard = [](double x, double jac, RealFunction const &g) {
    if (!std::isfinite(x) || !std::isfinite(jac))
    {
      return 0.0;
    }
    double const v = g(x);
    return v == 0.0 ? 0.0 : v * jac;
  };

  bool const lo_inf = std::isinf(domain.lo);
  bool const hi_inf = std::isinf(domain.hi);
  if (!lo_inf && !hi_inf)
  {
    return {domain, f};
  }
  if (lo_inf && hi_inf)
  {
    return {Interval{-1.0, 1.0}, [f, guard](double t) {
              double const d   = 1.0 - t * t;
              double const x   = t / d;
              double const jac = (1.0 + t * t) / (d * d);
              return guard(x, jac, f);
            }};
  }
  if (!lo_inf)
  {
    double const a = domain.lo;
    double const c = std::max(1.0, std::abs(a));
    return {Interval{0.0, 1.0}, [f, guard, a, c](double t) {
              double const d = 1.0 - t;
              return guard(a + c * t / d, c / (d * d), f);
            }};
  }
  double const b = domain.hi;
  double const c = std::max(1.0, std::abs(b));
  return {Interval{0.0, 1.0}, [f, guard, b, c](double t) {
            double const d = 1.0 - t;
            return guard(b - c * t / d, c / (d * d), f);
          }};
}

// Maps a parameter value back to x, for locating breakpoints found in t-space.
double from_parameter(Interval domain, double t)
{
  bool const lo_inf = std::isinf(domain.lo);
  bool const hi_inf = std::isinf(domain.hi);
  if (!lo_inf && !hi_inf)
  {
    return t;
  }
  if (lo_inf && hi_inf)
  {
    return t / (1.0 - t * t);
  }
  if (!lo_inf)
  {
    return domain.lo + std::max(1.0, std::abs(domain.lo)) * t / (1.0 - t);
  }
  return domain.hi - std::max(1.0, std::abs(domain.hi)) * t / (1.0 - t);
}

QuadratureResult integrate_finite(RealFunction const &f, double a, double b,
                                  QuadratureConfig const &cfg)
{
  std::size_t evaluations = 0;
  RealFunction counted    = [&](double x) {
    ++evaluations;
    double const v = f(x);
    if (!std::isfinite(v))
    {
      std::ostringstream msg;
      msg << "integrate_adaptive: non-finite integrand value at x = " << x;
      throw IntegrationError(msg.str(), 0.0, kInf);
    }
    return v;
  };

  std::priority_queue<Segment> heap;
  Segment const first = gauss_kronrod_21(counted, a, b);
  heap.push(first);
  double total       = first.value;
  double total_error = first.error;

  // Segments too narrow to bisect further still contribute to the totals.
  double frozen_value = 0.0;
  double frozen_error = 0.0;

  std::size_t subdivisions = 0;
  while (!heap.empty())
  {
    double const target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (total_error <= target)
    {
      break;
    }
    if (subdivisions >= cfg.max_subdivisions)
    {
      std::ostringstream msg;
      msg << "integrate_adaptive: no convergence after " << subdivisions
          << " subdivisions (estimate " << total << ", error " << total_error << ")";
      throw IntegrationError(msg.str(), total, total_error);
    }

    Segment const worst = heap.top();
    heap.pop();
    double const mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b)))
    {
      frozen_value += worst.value;
      frozen_error += worst.error;
      if (heap.empty())
      {
        break;
      }
      continue;
    }

    Segment const left  = gauss_kronrod_21(counted, worst.a, mid);
    Segment const right = gauss_kronrod_21(counted, mid, worst.b);
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  double value = frozen_value;
  double error = frozen_error;
  while (!heap.empty())
  {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  double const target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  if (error > target && frozen_error > 0.5 * error)
  {
    std::ostringstream msg;
    msg << "integrate_adaptive: round-off limited at error " << error << " (estimate " << value
        << ")";
    throw IntegrationError(msg.str(), value, error);
  }
  return {value, error, evaluations};
}

}  // namespace

QuadratureResult integrate_adaptive_ex(RealFunction const &f, Interval domain,
                                       QuadratureConfig const &cfg)
{
  cfg.validate();
  FiniteForm const form = to_finite(f, domain);
  return integrate_finite(form.integrand, form.range.lo, form.range.hi, cfg);
}

double integrate_adaptive(RealFunction const &f, Interval domain, QuadratureConfig const &cfg)
{
  return integrate_adaptive_ex(f, domain, cfg).value;
}

double gauss_legendre_10(RealFunction const &f, double a, double b)
{
  double const centre = 0.5 * (a + b);
  double const half   = 0.5 * (b - a);
  double       sum    = 0.0;
  for (std::size_t j = 1; j < 10; j += 2)
  {
    double const dx = half * kXgk[j];
    sum += kWg[j / 2] * (f(centre - dx) + f(centre + dx));
  }
  return sum * half;
}

double integrate_with_breaks(RealFunction const &f, Interval domain, std::span<double const> breaks,
                             QuadratureConfig const &cfg)
{
  std::vector<double> points;
  points.reserve(breaks.size() + 2);
  points.push_back(domain.lo);
  for (double b : breaks)
  {
    if (b > domain.lo && b < domain.hi)
    {
      points.push_back(b);
    }
  }
  points.push_back(domain.hi);
  std::sort(points.begin() + 1, points.end() - 1);
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::size_t const pieces = points.size() - 1;
  QuadratureConfig  piece_cfg = cfg;
  piece_cfg.abs_tol           = cfg.abs_tol / static_cast<double>(pieces);

  double total = 0.0;
  for (std::size_t i = 0; i < pieces; ++i)
  {
    try
    {
      total += integrate_adaptive(f, Interval{points[i], points[i + 1]}, piece_cfg);
    }
    catch (IntegrationError const &e)
    {
      throw IntegrationError(e.what(), total + e.partial_estimate(), e.error_estimate());
    }
  }
  return total;
}

std::vector<double> sign_change_points(RealFunction const &f, Interval domain, std::size_t cells)
{
  if (!domain.is_finite())
  {
    throw std::invalid_argument("sign_change_points requires a finite interval");
  }
  cells = std::max<std::size_t>(cells, 1);

  std::vector<double> roots;
  double const        h  = domain.width() / static_cast<double>(cells);
  double              x0 = domain.lo;
  double              f0 = f(x0);
  for (std::size_t i = 1; i <= cells; ++i)
  {
    double const x1 = (i == cells) ? domain.hi : domain.lo + h * static_cast<double>(i);
    double const f1 = f(x1);
    if (f1 == 0.0 && i != cells)
    {
      roots.push_back(x1);
    }
    else if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0))
    {
      double lo = x0;
      double hi = x1;
      bool const lo_negative = f0 < 0.0;
      for (int it = 0; it < 200; ++it)
      {
        double const mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
        {
          break;
        }
        double const fm = f(mid);
        if (fm == 0.0)
        {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == lo_negative)
        {
          lo = mid;
        }
        else
        {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

double integrate_abs_pow(RealFunction const &f, double p, Interval domain, std::size_t cells,
                         QuadratureConfig const &cfg)
{
  if (!(p >= 1.0))
  {
    throw std::domain_error("integrate_abs_pow requires p >= 1");
  }
  FiniteForm const form = to_finite(f, domain);

  // The Jacobian is positive, so sign changes are the same in either variable.
  std::vector<double> const breaks = sign_change_points(form.integrand, form.range, cells);

  RealFunction magnitude;
  if (p == 1.0)
  {
    magnitude = [&f](double x) { return std::abs(f(x)); };
  }
  else
  {
    magnitude = [&f, p](double x) { return std::pow(std::abs(f(x)), p); };
  }

  if (form.range.lo == domain.lo && form.range.hi == domain.hi)
  {
    return integrate_with_breaks(magnitude, domain, breaks, cfg);
  }
  std::vector<double> mapped;
  mapped.reserve(breaks.size());
  for (double t : breaks)
  {
    mapped.push_back(from_parameter(domain, t));
  }
  return integrate_with_breaks(magnitude, domain, mapped, cfg);
}

double integrate_abs(RealFunction const &f, Interval domain, std::size_t cells,
                     QuadratureConfig const &cfg)
{
  return integrate_abs_pow(f, 1.0, domain, cells, cfg);
}

double invert_cdf(RealFunction const &cdf, Interval support, double q)
{
  if (!(q > 0.0 && q < 1.0))
  {
    std::ostringstream msg;
    msg << "invert_cdf: probability must lie in (0, 1), got " << q;
    throw std::domain_error(msg.str());
  }

  double lo = 0.0;
  double hi = 0.0;
  if (std::isfinite(support.lo))
  {
    lo = support.lo;
    if (cdf(lo) >= q)
    {
      return lo;
    }
  }
  else
  {
    lo = std::isfinite(support.hi) ? support.hi - 1.0 : -1.0;
    for (int it = 0; cdf(lo) >= q; ++it)
    {
      if (it > 1100)
      {
        throw std::domain_error("invert_cdf: lower bracket not found");
      }
      lo -= std::max(1.0, std::abs(lo));
    }
  }
  if (std::isfinite(support.hi))
  {
    hi = support.hi;
    if (cdf(hi) < q)
    {
      return hi;
    }
  }
  else
  {
    hi = std::max(lo + 1.0, 1.0);
    for (int it = 0; cdf(hi) < q; ++it)
    {
      if (it > 1100)
      {
        throw std::domain_error("invert_cdf: upper bracket not found");
      }
      hi += std::max(1.0, std::abs(hi));
    }
  }

  // Invariant: cdf(lo) < q <= cdf(hi).
  for (int it = 0; it < 400; ++it)
  {
    double const tol = 2.0 * kEps * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (hi - lo <= tol)
    {
      break;
    }
    double const mid = lo + 0.5 * (hi - lo);
    if (cdf(mid) >= q)
    {
      hi = mid;
    }
    else
    {
      lo = mid;
    }
  }
  return hi;
}

// ---------------------------------------------------------------------------

double log_factorial(int n)
{
  if (n < 0)
  {
    throw std::domain_error("log_factorial: n must be non-negative");
  }
  if (n < 2)
  {
    return 0.0;
  }
  return boost::math::lgamma(static_cast<double>(n) + 1.0);
}

namespace {

// psi_n(x) = mantissa * exp(log_scale); rescaling by powers of two keeps the
// mantissa exact relative to an unscaled recurrence.
struct ScaledValue
{
  double mantissa;
  double log_scale;
};

constexpr int    kRescaleExponent = 600;
constexpr double kRescaleAbove    = 0x1p+600;

void check_hermite_args(int n)
{
  if (n < 0)
  {
    throw std::domain_error("hermite_psi: n must be non-negative");
  }
}

template <typename Visit>
ScaledValue hermite_recurrence(int n, double x, Visit &&visit)
{
  double prev      = 0.0;
  double curr      = 1.0;
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  visit(0, curr, log_scale);
  for (int k = 0; k < n; ++k)
  {
    double const next = x * std::sqrt(2.0 / (k + 1.0)) * curr - std::sqrt(k / (k + 1.0)) * prev;
    prev              = curr;
    curr              = next;
    if (std::abs(curr) > kRescaleAbove)
    {
      curr      = std::ldexp(curr, -kRescaleExponent);
      prev      = std::ldexp(prev, -kRescaleExponent);
      log_scale += kRescaleExponent * std::numbers::ln2;
    }
    visit(k + 1, curr, log_scale);
  }
  return {curr, log_scale};
}

double unscale(double mantissa, double log_scale)
{
  if (mantissa == 0.0)
  {
    return 0.0;
  }
  if (log_scale > -700.0 && log_scale < 700.0)
  {
    return mantissa * std::exp(log_scale);
  }
  return std::copysign(std::exp(log_scale + std::log(std::abs(mantissa))), mantissa);
}

}  // namespace

double hermite_psi(int n, double x)
{
  check_hermite_args(n);
  ScaledValue const v = hermite_recurrence(n, x, [](int, double, double) {});
  return unscale(v.mantissa, v.log_scale);
}

double hermite_log_abs_psi(int n, double x)
{
  check_hermite_args(n);
  ScaledValue const v = hermite_recurrence(n, x, [](int, double, double) {});
  if (v.mantissa == 0.0)
  {
    return -kInf;
  }
  return v.log_scale + std::log(std::abs(v.mantissa));
}

std::vector<double> hermite_psi_all(int n, double x)
{
  check_hermite_args(n);
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  hermite_recurrence(n, x, [&out](int k, double m, double s) {
    out[static_cast<std::size_t>(k)] = unscale(m, s);
  });
  return out;
}

std::vector<double> hermite_positive_zeros(int n)
{
  check_hermite_args(n);
  std::size_t const expected = static_cast<std::size_t>(n / 2);
  if (expected == 0)
  {
    return {};
  }

  // The sign of the mantissa is the sign of H_n; it never underflows.
  auto sign_fn = [n](double x) {
    return hermite_recurrence(n, x, [](int, double, double) {}).mantissa;
  };

  double const turning = std::sqrt(2.0 * n + 1.0);
  double const spacing = std::numbers::pi / turning;
  for (int refine = 0; refine < 6; ++refine)
  {
    double const step  = spacing * 0.1 / std::pow(4.0, refine);
    // Start just off the origin so the odd-n zero at x = 0 is excluded.
    double const start = 0.5 * step;
    auto const   cells = static_cast<std::size_t>(std::ceil((turning + 1.0 - start) / step));
    std::vector<double> zeros = sign_change_points(sign_fn, Interval{start, turning + 1.0}, cells);
    if (zeros.size() == expected)
    {
      return zeros;
    }
  }
  std::ostringstream msg;
  msg << "hermite_positive_zeros: could not isolate " << expected << " zeros for n = " << n;
  throw ConsistencyError(msg.str());
}

double log_laguerre_negative_arg(int n, double y)
{
  if (n < 0 || !(y >= 0.0))
  {
    throw std::domain_error("log_laguerre_negative_arg: requires n >= 0 and y >= 0");
  }
  double prev      = 1.0;
  double curr      = 1.0;
  double log_scale = 0.0;
  if (n == 0)
  {
    return 0.0;
  }
  curr = 1.0 + y;
  for (int k = 1; k < n; ++k)
  {
    double const next = ((2.0 * k + 1.0 + y) * curr - k * prev) / (k + 1.0);
    prev              = curr;
    curr              = next;
    if (curr > kRescaleAbove)
    {
      curr      = std::ldexp(curr, -kRescaleExponent);
      prev      = std::ldexp(prev, -kRescaleExponent);
      log_scale += kRescaleExponent * std::numbers::ln2;
    }
  }
  return log_scale + std::log(curr);
}

double bessel_i0_scaled(double z)
{
  if (!(z >= 0.0))
  {
    throw std::domain_error("bessel_i0_scaled: z must be non-negative");
  }
  if (z < 700.0)
  {
    return boost::math::cyl_bessel_i(0, z) * std::exp(-z);
  }
  // Hankel expansion; terms decrease well past double precision for z >= 700.
  double sum  = 1.0;
  double term = 1.0;
  for (int k = 1; k < 30; ++k)
  {
    double const odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * z);
    sum += term;
    if (term < 1e-18 * sum)
    {
      break;
    }
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

// ---------------------------------------------------------------------------

double FitResult::evaluate(double n) const
{
  if (model == FitModel::log_linear)
  {
    return params.first * std::log(n) + params.second;
  }
  return params.first * std::pow(n, params.second);
}

namespace {

struct LineFit
{
  double slope;
  double intercept;
  double residual_rms;
};

LineFit least_squares_line(std::span<double const> xs, std::span<double const> ys)
{
  auto const   count = static_cast<double>(xs.size());
  double       mx    = 0.0;
  double       my    = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0)
  {
    throw std::invalid_argument("fit: degenerate abscissae (all n equal)");
  }
  double const slope     = sxy / sxx;
  double const intercept = my - slope * mx;
  double       ss        = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    double const r = ys[i] - (slope * xs[i] + intercept);
    ss += r * r;
  }
  return {slope, intercept, std::sqrt(ss / count)};
}

std::pair<int, int> validate_fit_points(std::span<FitPoint const> points)
{
  if (points.size() < 3)
  {
    throw std::invalid_argument("fit: at least three points are required");
  }
  int lo = points.front().n;
  int hi = points.front().n;
  for (FitPoint const &p : points)
  {
    if (p.n < 1)
    {
      throw std::domain_error("fit: every n must be >= 1");
    }
    if (!std::isfinite(p.y))
    {
      throw std::domain_error("fit: non-finite ordinate");
    }
    lo = std::min(lo, p.n);
    hi = std::max(hi, p.n);
  }
  return {lo, hi};
}

}  // namespace

FitResult fit_log_linear(std::span<FitPoint const> points)
{
  auto const          range = validate_fit_points(points);
  std::vector<double> xs;
  std::vector<double> ys;
  double              mean_abs = 0.0;
  for (FitPoint const &p : points)
  {
    xs.push_back(std::log(static_cast<double>(p.n)));
    ys.push_back(p.y);
    mean_abs += std::abs(p.y);
  }
  mean_abs /= static_cast<double>(points.size());
  LineFit const line = least_squares_line(xs, ys);

  FitResult out;
  out.model             = FitModel::log_linear;
  out.params            = {line.slope, line.intercept};
  out.residual_rms      = line.residual_rms;
  out.n_range           = range;
  out.relative_residual = mean_abs > 0.0 ? line.residual_rms / mean_abs : kInf;
  return out;
}

FitResult fit_power_law(std::span<FitPoint const> points)
{
  auto const          range = validate_fit_points(points);
  std::vector<double> xs;
  std::vector<double> ys;
  for (FitPoint const &p : points)
  {
    if (!(p.y > 0.0))
    {
      throw std::domain_error("fit_power_law: every y must be positive");
    }
    xs.push_back(std::log(static_cast<double>(p.n)));
    ys.push_back(std::log(p.y));
  }
  LineFit const line = least_squares_line(xs, ys);

  FitResult out;
  out.model        = FitModel::power_law;
  out.params       = {std::exp(line.intercept), line.slope};
  out.residual_rms = line.residual_rms;
  out.n_range      = range;
  // Residuals of ln y are already relative deviations.
  out.relative_residual = line.residual_rms;
  return out;
}

}  // namespace qdist
