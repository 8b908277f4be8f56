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

#include "qdist/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qdist/core_dist.hpp"
#include "qdist/wavefunctions.hpp"

namespace qdist::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi  = std::numbers::pi;

std::string format_number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string csv_field(std::string const &text)
{
  if (text.find_first_of(",\"\n") == std::string::npos)
  {
    return text;
  }
  std::string out = "\"";
  for (char c : text)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::string to_text(double v)
{
  return format_number(v);
}

std::string window_text(std::pair<int, int> w)
{
  return std::to_string(w.first) + ":" + std::to_string(w.second);
}

// |a - b| where a, b may be NaN (undefined, skipped) or infinite.
std::optional<double> deviation(double numeric, double reference)
{
  if (std::isnan(numeric) || std::isnan(reference))
  {
    return std::nullopt;
  }
  if (std::isinf(numeric) || std::isinf(reference))
  {
    return numeric == reference ? 0.0 : kInf;
  }
  return std::abs(numeric - reference);
}

void check_range(ExperimentSpec const &spec, int lowest)
{
  if (spec.n_step < 1)
  {
    throw std::invalid_argument("n_step must be >= 1");
  }
  if (spec.n_min < lowest)
  {
    throw std::invalid_argument("n_min must be >= " + std::to_string(lowest));
  }
  if (spec.n_max < spec.n_min)
  {
    throw std::invalid_argument("empty n range: n_max < n_min");
  }
}

void check_window(ExperimentSpec const &spec, std::pair<int, int> window, char const *what)
{
  if (window.first < 1 || window.second <= window.first)
  {
    throw std::invalid_argument(std::string(what) + " must satisfy 1 <= lo < hi");
  }
  if (window.first < spec.n_min || window.second > spec.n_max)
  {
    throw std::invalid_argument(std::string(what) + " " + window_text(window) + " is not inside the n range " +
                                window_text({spec.n_min, spec.n_max}));
  }
}

void add_common_metadata(ExperimentTable &table, ExperimentSpec const &spec, std::optional<double> tolerance)
{
  std::string const id = spec.id.empty() ? table.name : spec.id;
  table.metadata.emplace_back("provenance", "qdist 0.1.0 " + id);
  if (tolerance)
  {
    table.metadata.emplace_back("tolerance", to_text(*tolerance));
  }
}

std::vector<FitPoint> window_points(std::vector<int> const &ns, std::vector<std::vector<double>> const &rows,
                                    std::size_t column, std::pair<int, int> window)
{
  std::vector<FitPoint> points;
  for (std::size_t i = 0; i < ns.size(); ++i)
  {
    if (ns[i] >= window.first && ns[i] <= window.second)
    {
      points.push_back({ns[i], rows[i][column]});
    }
  }
  return points;
}

void record(ExperimentTable &table, std::string const &what, double dev, double tolerance)
{
  if (!(dev <= tolerance))
  {
    table.failures.push_back(what + ": deviation " + format_number(dev) + " exceeds " + format_number(tolerance));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

void ExperimentTable::add_row(std::vector<double> values, std::string label)
{
  if (values.size() != columns.size())
  {
    throw std::invalid_argument("ExperimentTable::add_row: row has " + std::to_string(values.size()) +
                                " values, table has " + std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(values));
  if (!label.empty() || !row_labels.empty())
  {
    row_labels.resize(rows.size() - 1);
    row_labels.push_back(std::move(label));
  }
}

void require_passed(ExperimentTable const &table)
{
  if (table.passed())
  {
    return;
  }
  std::ostringstream msg;
  msg << table.name << ": " << table.failures.size() << " tolerance failure(s)";
  for (std::size_t i = 0; i < std::min<std::size_t>(table.failures.size(), 5); ++i)
  {
    msg << "\n  " << table.failures[i];
  }
  throw ToleranceFailure(msg.str());
}

std::vector<int> ExperimentSpec::n_values() const
{
  std::vector<int> out;
  for (int n = n_min; n <= n_max; n += std::max(n_step, 1))
  {
    out.push_back(n);
  }
  return out;
}

std::size_t resolve_threads(std::size_t requested)
{
  if (requested > 0)
  {
    return requested;
  }
  char const *env = std::getenv("QDIST_THREADS");
  if (env == nullptr || *env == '\0')
  {
    return 1;
  }
  char     *end   = nullptr;
  long const value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1)
  {
    throw std::invalid_argument(std::string("QDIST_THREADS must be an integer >= 1, got '") + env + "'");
  }
  return static_cast<std::size_t>(value);
}

std::vector<std::vector<double>> parallel_rows(std::size_t count, std::size_t threads,
                                               std::function<std::vector<double>(std::size_t)> const &task)
{
  std::vector<std::vector<double>> results(count);
  std::vector<std::exception_ptr>  errors(count);
  std::atomic<std::size_t>         next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++)
    {
      try
      {
        results[i] = task(i);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  };

  std::size_t const workers = std::min(std::max<std::size_t>(threads, 1), count);
  if (workers <= 1)
  {
    worker();
  }
  else
  {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
    {
      pool.emplace_back(worker);
    }
    for (auto &t : pool)
    {
      t.join();
    }
  }
  for (auto const &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
  return results;
}

// ---------------------------------------------------------------------------
// Particle in a box

ExperimentTable run_pbox_scan(ExperimentSpec const &spec)
{
  check_range(spec, 1);
  bool const classical = spec.pbox_mode == PboxMode::classical;
  if (!classical && spec.m < 1)
  {
    throw std::invalid_argument("pbox pair scan needs m >= 1");
  }
  double const     tolerance = spec.tolerance.value_or(classical ? 1e-9 : 1e-8);
  std::vector<int> ns        = spec.n_values();

  ExperimentTable table;
  if (classical)
  {
    table.name    = "pbox_classical";
    table.columns = {{"n", "index"},
                     {"w1", "box lengths"},
                     {"w2", "box lengths"},
                     {"w1_analytic", "box lengths"},
                     {"deviation", "box lengths"}};
  }
  else
  {
    table.name    = "pbox_pair_m" + std::to_string(spec.m);
    table.columns = {{"n", "index"},
                     {"w1", "box lengths"},
                     {"w1_analytic", "box lengths"},
                     {"w1_limit", "box lengths"},
                     {"deviation", "box lengths"}};
  }
  add_common_metadata(table, spec, tolerance);
  table.metadata.emplace_back("n_range", window_text({spec.n_min, spec.n_max}));
  table.metadata.emplace_back("n_step", std::to_string(spec.n_step));
  table.metadata.emplace_back("reference", classical ? "uniform" : "state m=" + std::to_string(spec.m));

  auto task = [&](std::size_t i) -> std::vector<double> {
    int const   n = ns[i];
    Cdf1D const G = wave::pbox_cdf({n});
    if (classical)
    {
      Cdf1D const  F        = wave::classical_box_cdf();
      double const w1       = wasserstein1_cdf(F, G);
      double const w2       = wasserstein_p_quantile(F, G, 2.0);
      double const analytic = 1.0 / (n * kPi * kPi);
      return {static_cast<double>(n), w1, w2, analytic, std::abs(w1 - analytic)};
    }
    double const w1       = wave::pbox_pair_w1(spec.m, n);
    double       analytic = kNaN;
    if (n == spec.m)
    {
      analytic = 0.0;
    }
    else if (spec.m == 1 && n % 2 == 0)
    {
      analytic = 1.0 / (kPi * kPi);
    }
    double const limit = 1.0 / (spec.m * kPi * kPi);
    double const dev   = std::isnan(analytic) ? kNaN : std::abs(w1 - analytic);
    return {static_cast<double>(n), w1, analytic, limit, dev};
  };

  auto rows = parallel_rows(ns.size(), resolve_threads(spec.threads), task);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    double const dev = rows[i].back();
    if (!std::isnan(dev))
    {
      record(table, "n=" + std::to_string(ns[i]), dev, tolerance);
    }
    table.add_row(std::move(rows[i]));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Harmonic oscillator

ExperimentTable run_osc_scan(ExperimentSpec const &spec)
{
  check_range(spec, 0);
  check_window(spec, spec.fit_window, "fit window");
  check_window(spec, spec.log_fit_window, "log fit window");
  std::vector<int> const ns = spec.n_values();

  ExperimentTable table;
  table.name    = "osc_vacuum";
  table.columns = {{"n", "index"}, {"w1", "x units"}, {"kl", "nats"}, {"bhatt", "nats"}};
  add_common_metadata(table, spec, std::nullopt);
  table.metadata.emplace_back("n_range", window_text({spec.n_min, spec.n_max}));
  table.metadata.emplace_back("n_step", std::to_string(spec.n_step));
  table.metadata.emplace_back("fit_window", window_text(spec.fit_window));
  table.metadata.emplace_back("log_fit_window", window_text(spec.log_fit_window));

  auto task = [&](std::size_t i) -> std::vector<double> {
    int const n = ns[i];
    if (n == 0)
    {
      return {0.0, 0.0, 0.0, 0.0};
    }
    return {static_cast<double>(n), wave::osc_w1_vacuum(n), wave::osc_kl_vacuum(n), wave::osc_bhatt_vacuum(n)};
  };
  auto rows = parallel_rows(ns.size(), resolve_threads(spec.threads), task);

  auto fit = [&](std::size_t column, std::pair<int, int> window, bool power) {
    std::vector<FitPoint> const points = window_points(ns, rows, column, window);
    if (points.size() < 3)
    {
      throw std::invalid_argument("window " + window_text(window) + " holds fewer than 3 scanned n values");
    }
    return power ? fit_power_law(points) : fit_log_linear(points);
  };
  table.fits.push_back({"w1_power_law", fit(1, spec.fit_window, true)});
  table.fits.push_back({"kl_log_linear", fit(2, spec.log_fit_window, false)});
  table.fits.push_back({"bhatt_log_linear", fit(3, spec.log_fit_window, false)});

  for (auto &row : rows)
  {
    table.add_row(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Photon-number states

std::vector<StatePair> default_photon_pairs()
{
  using namespace photon;
  PhotonState const vacuum = FockParams{0};
  return {
      {vacuum, CoherentParams{0.5}},
      {vacuum, CoherentParams{2.5}},
      {vacuum, SqueezeParams{0.5}},
      {vacuum, SqueezeParams{1.0}},
      {vacuum, ThermalParams{1.0}},
      {vacuum, ThermalParams{2.0}},
      {vacuum, GlauberLachsParams{1.0, 2.0}},
      {CoherentParams{4.0}, CoherentParams{1.0}},
  };
}

namespace {

double analytic_w1(photon::PhotonState const &a, photon::PhotonState const &b)
{
  using namespace photon;
  if (auto const *fa = std::get_if<FockParams>(&a))
  {
    if (auto const *fb = std::get_if<FockParams>(&b))
    {
      return std::abs(fa->j - fb->j);
    }
  }
  if (is_vacuum(a))
  {
    return analytic_mean(b);
  }
  if (is_vacuum(b))
  {
    return analytic_mean(a);
  }
  auto const *ca = std::get_if<CoherentParams>(&a);
  auto const *cb = std::get_if<CoherentParams>(&b);
  if (ca != nullptr && cb != nullptr)
  {
    return std::abs(ca->mean_photons - cb->mean_photons);
  }
  return kNaN;
}

// D_KL(vacuum, b) where a closed form is known; NaN otherwise.
double analytic_kl(photon::PhotonState const &a, photon::PhotonState const &b)
{
  using namespace photon;
  if (!is_vacuum(a))
  {
    return kNaN;
  }
  if (auto const *f = std::get_if<FockParams>(&b))
  {
    return f->j == 0 ? 0.0 : kInf;
  }
  if (auto const *c = std::get_if<CoherentParams>(&b))
  {
    return c->mean_photons;
  }
  if (auto const *s = std::get_if<SqueezeParams>(&b))
  {
    return std::log(std::cosh(s->r));
  }
  if (auto const *t = std::get_if<ThermalParams>(&b))
  {
    return std::log1p(t->mean_photons);
  }
  return kNaN;
}

}  // namespace

ExperimentTable run_photon_table(ExperimentSpec const &spec)
{
  std::vector<StatePair> const pairs = spec.state_pairs.empty() ? default_photon_pairs() : spec.state_pairs;
  double const                 tolerance = spec.tolerance.value_or(1e-8);

  ExperimentTable table;
  table.name             = "photon_states";
  table.row_label_header = "pair";
  table.columns          = {{"w1", "photons"},          {"w1_emd", "photons"}, {"w1_shortcut", "photons"},
                            {"w1_analytic", "photons"}, {"kl", "nats"},        {"kl_analytic", "nats"},
                            {"kl_nbar_plus_one", "nats"},     {"bhatt", "nats"},     {"deviation", "mixed"}};
  add_common_metadata(table, spec, tolerance);

  bool any_thermal = false;
  auto task        = [&](std::size_t i) -> std::vector<double> {
    auto const &[a, b]      = pairs[i];
    DiscretePmf const first  = photon::pmf(a);
    DiscretePmf const second = photon::pmf(b, first.size());
    DiscretePmf const p      = first.size() < second.size() ? photon::pmf(a, second.size()) : first;

    double const w1  = wasserstein1_discrete(p, second);
    double const emd = emd_oracle(p, second);
    double const cut = check_dominance(p, second).dominant == Dominance::neither ? kNaN : mean_shortcut_w1(p, second);
    double const w1_ref  = analytic_w1(a, b);
    double const kl      = kl_discrete(p, second).as_double();
    double const kl_ref  = analytic_kl(a, b);
    double const bhatt   = bhattacharyya_discrete(p, second).as_double();
    double       alt_kl = kNaN;
    if (auto const *t = std::get_if<photon::ThermalParams>(&b); t != nullptr && photon::is_vacuum(a))
    {
      alt_kl = t->mean_photons + 1.0;
    }

    double worst = 0.0;
    for (auto dev : {deviation(w1, emd), deviation(w1, cut), deviation(w1, w1_ref), deviation(emd, w1_ref),
                     deviation(kl, kl_ref)})
    {
      if (dev)
      {
        worst = std::max(worst, *dev);
      }
    }
    return {w1, emd, cut, w1_ref, kl, kl_ref, alt_kl, bhatt, worst};
  };

  auto rows = parallel_rows(pairs.size(), resolve_threads(spec.threads), task);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    std::string const label = photon::describe(pairs[i].first) + "|" + photon::describe(pairs[i].second);
    any_thermal             = any_thermal || !std::isnan(rows[i][6]);
    record(table, label, rows[i].back(), tolerance);
    table.add_row(std::move(rows[i]), label);
  }
  if (any_thermal)
  {
    table.metadata.emplace_back("kl_nbar_plus_one_note",
                                "thermal rows: kl_analytic is ln(nbar+1) from the KL definition; kl_nbar_plus_one is the "
                                "alternative closed form nbar+1, which the definition does not reproduce");
  }
  return table;
}

// ---------------------------------------------------------------------------
// Blackbody spectra

ExperimentTable run_blackbody_scan(ExperimentSpec const &spec)
{
  if (spec.temperatures.size() < 3)
  {
    throw std::invalid_argument("blackbody scan needs at least 3 temperatures");
  }
  for (double t : spec.temperatures)
  {
    if (!(t > 0.0) || !std::isfinite(t))
    {
      throw std::invalid_argument("temperatures must be positive and finite");
    }
  }
  double const tolerance = spec.tolerance.value_or(1e-6);

  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < spec.temperatures.size(); ++i)
  {
    for (std::size_t j = i + 1; j < spec.temperatures.size(); ++j)
    {
      pairs.emplace_back(spec.temperatures[i], spec.temperatures[j]);
    }
  }

  ExperimentTable table;
  table.name    = "blackbody";
  table.columns = {{"t1", "K"},
                   {"t2", "K"},
                   {"w1_frequency", "Hz"},
                   {"w1_frequency_cdf", "Hz"},
                   {"w1_wavelength", "m"},
                   {"w1_wavelength_cdf", "m"},
                   {"abs_delta_t", "K"},
                   {"abs_delta_inv_t", "1/K"},
                   {"frequency_residual", "relative"},
                   {"wavelength_residual", "relative"},
                   {"route_deviation", "relative"}};
  add_common_metadata(table, spec, tolerance);

  auto relative = [](double a, double b) {
    double const scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
  };

  auto task = [&](std::size_t i) -> std::vector<double> {
    auto const [t1, t2] = pairs[i];
    using wave::Representation;
    double const wf = wave::blackbody_w1(t1, t2, Representation::frequency);
    double const ww = wave::blackbody_w1(t1, t2, Representation::wavelength);
    double wf_cdf = 0.0;
    double ww_cdf = 0.0;
    if (t1 != t2)
    {
      wf_cdf = wasserstein1_cdf(wave::planck_cdf({t1, Representation::frequency}),
                                wave::planck_cdf({t2, Representation::frequency}));
      ww_cdf = wasserstein1_cdf(wave::planck_cdf({t1, Representation::wavelength}),
                                wave::planck_cdf({t2, Representation::wavelength}));
    }
    double const route = std::max(relative(wf, wf_cdf), relative(ww, ww_cdf));
    return {t1, t2, wf, wf_cdf, ww, ww_cdf, std::abs(t1 - t2), std::abs(1.0 / t1 - 1.0 / t2), 0.0, 0.0, route};
  };
  auto rows = parallel_rows(pairs.size(), resolve_threads(spec.threads), task);

  // Least-squares slope through the origin, then residuals relative to the
  // largest distance in the scan.
  auto collinearity = [&](std::size_t value_col, std::size_t abscissa_col, std::size_t residual_col) {
    double sxy   = 0.0;
    double sxx   = 0.0;
    double max_y = 0.0;
    for (auto const &r : rows)
    {
      sxy += r[abscissa_col] * r[value_col];
      sxx += r[abscissa_col] * r[abscissa_col];
      max_y = std::max(max_y, std::abs(r[value_col]));
    }
    double const slope = sxx > 0.0 ? sxy / sxx : 0.0;
    for (auto &r : rows)
    {
      r[residual_col] = max_y > 0.0 ? std::abs(r[value_col] - slope * r[abscissa_col]) / max_y : 0.0;
    }
    return slope;
  };
  double const slope_f = collinearity(2, 6, 8);
  double const slope_w = collinearity(4, 7, 9);
  table.metadata.emplace_back("slope_frequency_hz_per_k", to_text(slope_f));
  table.metadata.emplace_back("slope_wavelength_m_k", to_text(slope_w));
  table.metadata.emplace_back("mean_u", to_text(wave::planck_mean_constant(wave::Representation::frequency)));
  table.metadata.emplace_back("mean_w", to_text(wave::planck_mean_constant(wave::Representation::wavelength)));

  for (auto &row : rows)
  {
    std::string const tag = "T=" + format_number(row[0]) + "," + format_number(row[1]);
    record(table, tag + " frequency collinearity", row[8], tolerance);
    record(table, tag + " wavelength collinearity", row[9], tolerance);
    record(table, tag + " mean vs CDF route", row[10], tolerance);
    table.add_row(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Output

std::string to_csv(ExperimentTable const &table)
{
  std::ostringstream out;
  bool const         labelled = !table.row_labels.empty();
  bool               first    = true;
  if (labelled)
  {
    out << csv_field(table.row_label_header.empty() ? "label" : table.row_label_header);
    first = false;
  }
  for (auto const &c : table.columns)
  {
    out << (first ? "" : ",") << csv_field(c.label + " (" + c.unit + ")");
    first = false;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.rows.size(); ++i)
  {
    first = true;
    if (labelled)
    {
      out << csv_field(table.row_labels[i]);
      first = false;
    }
    for (double v : table.rows[i])
    {
      out << (first ? "" : ",") << format_number(v);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

nlohmann::ordered_json json_number(double v)
{
  if (std::isnan(v))
  {
    return nullptr;
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  return v;
}

}  // namespace

std::string to_json(ExperimentTable const &table)
{
  using json = nlohmann::ordered_json;
  json doc;
  doc["name"]    = table.name;
  doc["columns"] = json::array();
  for (auto const &c : table.columns)
  {
    doc["columns"].push_back({{"label", c.label}, {"unit", c.unit}});
  }
  if (!table.row_labels.empty())
  {
    doc["row_label_header"] = table.row_label_header;
    doc["row_labels"]       = table.row_labels;
  }
  doc["rows"] = json::array();
  for (auto const &row : table.rows)
  {
    json r = json::array();
    for (double v : row)
    {
      r.push_back(json_number(v));
    }
    doc["rows"].push_back(std::move(r));
  }
  doc["metadata"] = json::object();
  for (auto const &[k, v] : table.metadata)
  {
    doc["metadata"][k] = v;
  }
  doc["fits"] = json::array();
  for (auto const &[name, fit] : table.fits)
  {
    doc["fits"].push_back({
        {"name", name},
        {"model", fit.model == FitModel::power_law ? "power_law" : "log_linear"},
        {"params", {json_number(fit.params.first), json_number(fit.params.second)}},
        {"residual_rms", json_number(fit.residual_rms)},
        {"relative_residual", json_number(fit.relative_residual)},
        {"n_range", {fit.n_range.first, fit.n_range.second}},
    });
  }
  doc["failures"] = table.failures;
  return doc.dump(2) + "\n";
}

std::string render(ExperimentTable const &table, OutputFormat format)
{
  return format == OutputFormat::csv ? to_csv(table) : to_json(table);
}

}  // namespace qdist::experiments
