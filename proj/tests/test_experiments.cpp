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
#include <cstdlib>
#include <numbers>

#include "json.hpp"

#include "qdist/experiments.hpp"

using namespace qdist;
using namespace qdist::experiments;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t column(ExperimentTable const &t, std::string const &label)
{
  for (std::size_t i = 0; i < t.columns.size(); ++i)
  {
    if (t.columns[i].label == label)
    {
      return i;
    }
  }
  FAIL("missing column " << label);
  return 0;
}

}  // namespace

TEST_CASE("tables enforce row arity")
{
  ExperimentTable t;
  t.columns = {{"a", "u"}, {"b", "u"}};
  t.add_row({1.0, 2.0});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  t.failures.push_back("x");
  CHECK_THROWS_AS(require_passed(t), ToleranceFailure);
}

TEST_CASE("classical box scan")
{
  ExperimentSpec spec;
  spec.n_max                 = 20;
  ExperimentTable const t    = run_pbox_scan(spec);
  REQUIRE(t.rows.size() == 20);
  CHECK(t.passed());
  std::size_t const w1 = column(t, "w1");
  std::size_t const w2 = column(t, "w2");
  for (auto const &row : t.rows)
  {
    CHECK(std::abs(row[w1] - 1.0 / (row[0] * kPi * kPi)) < 1e-9);
    CHECK(row[w2] >= row[w1]);
  }
}

TEST_CASE("pair box scans")
{
  ExperimentSpec spec;
  spec.pbox_mode = PboxMode::pair;
  spec.m         = 1;
  spec.n_max     = 12;
  ExperimentTable const t = run_pbox_scan(spec);
  CHECK(t.passed());
  std::size_t const ref = column(t, "w1_analytic");
  for (auto const &row : t.rows)
  {
    int const n = static_cast<int>(row[0]);
    if (n % 2 == 0)
    {
      CHECK(row[1] == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-8));
      CHECK(row[ref] == doctest::Approx(1.0 / (kPi * kPi)));
    }
    else if (n > 1)
    {
      CHECK(std::isnan(row[ref]));
    }
  }

  spec.m     = 2;
  spec.n_min = 100;
  spec.n_max = 300;
  spec.n_step = 100;
  ExperimentTable const t2 = run_pbox_scan(spec);
  // Large-n rows sit inside the band around the 1/(2 pi^2) limit.
  for (auto const &row : t2.rows)
  {
    CHECK(std::abs(row[1] - 1.0 / (2 * kPi * kPi)) < 2e-3);
  }
}

TEST_CASE("spec validation")
{
  ExperimentSpec spec;
  spec.n_min = 5;
  spec.n_max = 4;
  CHECK_THROWS_AS(run_pbox_scan(spec), std::invalid_argument);
  spec.n_min = 0;
  spec.n_max = 4;
  CHECK_THROWS_AS(run_pbox_scan(spec), std::invalid_argument);

  ExperimentSpec osc;
  osc.n_min      = 1;
  osc.n_max      = 30;
  osc.fit_window = {5, 60};
  CHECK_THROWS_AS(run_osc_scan(osc), std::invalid_argument);

  ExperimentSpec bb;
  bb.temperatures = {100.0, 200.0};
  CHECK_THROWS_AS(run_blackbody_scan(bb), std::invalid_argument);
  bb.temperatures = {100.0, -200.0, 300.0};
  CHECK_THROWS_AS(run_blackbody_scan(bb), std::invalid_argument);
}

TEST_CASE("oscillator scan attaches fits")
{
  ExperimentSpec spec;
  spec.n_min          = 2;
  spec.n_max          = 40;
  spec.n_step         = 2;
  spec.fit_window     = {10, 40};
  spec.log_fit_window = {4, 40};
  ExperimentTable const t = run_osc_scan(spec);
  REQUIRE(t.fits.size() == 3);
  CHECK(t.fits[0].name == "w1_power_law");
  CHECK(t.fits[0].fit.model == FitModel::power_law);
  CHECK(t.fits[0].fit.n_range == std::pair{10, 40});
  CHECK(t.fits[1].fit.relative_residual < 0.05);
  CHECK(t.fits[2].fit.relative_residual < 0.05);
  for (std::size_t i = 1; i < t.rows.size(); ++i)
  {
    CHECK(t.rows[i][1] > t.rows[i - 1][1]);
  }
}

TEST_CASE("photon table")
{
  ExperimentTable const t = run_photon_table(ExperimentSpec{});
  CHECK(t.passed());
  REQUIRE(t.row_labels.size() == t.rows.size());
  std::size_t const w1      = column(t, "w1");
  std::size_t const kl      = column(t, "kl");
  std::size_t const alt_kl  = column(t, "kl_nbar_plus_one");
  std::size_t const cut     = column(t, "w1_shortcut");
  for (std::size_t i = 0; i < t.rows.size(); ++i)
  {
    auto const &label = t.row_labels[i];
    auto const &row   = t.rows[i];
    if (label == "vacuum|coherent:2.5")
    {
      CHECK(row[w1] == doctest::Approx(2.5).epsilon(1e-12));
      CHECK(row[kl] == doctest::Approx(2.5).epsilon(1e-12));
    }
    if (label == "vacuum|squeezed:1")
    {
      CHECK(row[w1] == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
      CHECK(row[kl] == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-12));
    }
    if (label == "vacuum|thermal:2")
    {
      CHECK(row[kl] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
      CHECK(row[alt_kl] == 3.0);
    }
    if (label == "coherent:4|coherent:1")
    {
      CHECK(row[w1] == doctest::Approx(3.0).epsilon(1e-12));
      CHECK(row[cut] == doctest::Approx(3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("photon table flags crossing CDFs and unbounded KL")
{
  ExperimentSpec spec;
  spec.state_pairs = {{photon::FockParams{0}, photon::FockParams{3}},
                      {photon::FockParams{1}, photon::SqueezeParams{1.0}}};
  ExperimentTable const t = run_photon_table(spec);
  CHECK(t.passed());
  CHECK(t.rows[0][column(t, "w1")] == doctest::Approx(3.0));
  CHECK(std::isinf(t.rows[0][column(t, "kl")]));
  CHECK(std::isnan(t.rows[1][column(t, "w1_shortcut")]));
}

TEST_CASE("blackbody scan")
{
  ExperimentSpec spec;
  spec.temperatures       = {100.0, 200.0, 300.0};
  ExperimentTable const t = run_blackbody_scan(spec);
  CHECK(t.passed());
  CHECK(t.rows.size() == 3);
  for (auto const &row : t.rows)
  {
    CHECK(row[column(t, "frequency_residual")] < 1e-6);
    CHECK(row[column(t, "wavelength_residual")] < 1e-6);
  }

  spec.temperatures        = {250.0, 250.0, 400.0};
  ExperimentTable const t2 = run_blackbody_scan(spec);
  for (std::size_t c = 2; c < t2.columns.size(); ++c)
  {
    CHECK(t2.rows[0][c] == 0.0);
  }
}

TEST_CASE("CSV output")
{
  ExperimentTable t;
  t.name             = "demo";
  t.columns          = {{"w1", "photons"}, {"kl", "nats"}};
  t.row_label_header = "pair";
  t.add_row({0.1, std::numeric_limits<double>::quiet_NaN()}, "glauber_lachs:1,2");
  t.add_row({1.0 / 3.0, kInf}, "vacuum");
  std::string const csv = to_csv(t);
  CHECK(csv ==
        "pair,w1 (photons),kl (nats)\n"
        "\"glauber_lachs:1,2\",1.0000000000000001e-01,nan\n"
        "vacuum,3.3333333333333331e-01,inf\n");
  // Every printed number round-trips.
  CHECK(std::strtod("3.3333333333333331e-01", nullptr) == 1.0 / 3.0);
}

TEST_CASE("JSON output")
{
  ExperimentSpec spec;
  spec.n_max              = 3;
  ExperimentTable const t = run_pbox_scan(spec);
  auto const doc          = nlohmann::json::parse(to_json(t));
  CHECK(doc["name"] == "pbox_classical");
  CHECK(doc["columns"].size() == t.columns.size());
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][1][1].get<double>() == t.rows[1][1]);
  CHECK(doc["metadata"].contains("provenance"));
  CHECK(doc["failures"].empty());

  ExperimentTable n;
  n.columns = {{"x", "u"}};
  n.add_row({std::numeric_limits<double>::quiet_NaN()});
  n.add_row({-kInf});
  auto const nd = nlohmann::json::parse(to_json(n));
  CHECK(nd["rows"][0][0].is_null());
  CHECK(nd["rows"][1][0] == "-inf");
}

TEST_CASE("runs are deterministic and independent of the thread count")
{
  ExperimentSpec spec;
  spec.n_min          = 1;
  spec.n_max          = 24;
  spec.n_step         = 1;
  spec.fit_window     = {5, 24};
  spec.log_fit_window = {2, 24};
  spec.threads        = 1;
  std::string const serial = to_json(run_osc_scan(spec));
  spec.threads             = 4;
  CHECK(to_json(run_osc_scan(spec)) == serial);
  CHECK(to_json(run_osc_scan(spec)) == serial);
}

TEST_CASE("parallel_rows keeps order and propagates errors")
{
  auto const rows = parallel_rows(50, 3, [](std::size_t i) { return std::vector<double>{static_cast<double>(i)}; });
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    CHECK(rows[i][0] == static_cast<double>(i));
  }
  auto failing = [](std::size_t i) -> std::vector<double> {
    if (i == 7)
    {
      throw std::runtime_error("row 7");
    }
    return {0.0};
  };
  CHECK_THROWS_WITH_AS(parallel_rows(20, 4, failing), "row 7", std::runtime_error);
}

TEST_CASE("QDIST_THREADS")
{
  CHECK(resolve_threads(3) == 3);
  ::setenv("QDIST_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  ::setenv("QDIST_THREADS", "zero", 1);
  CHECK_THROWS_AS(resolve_threads(0), std::invalid_argument);
  ::setenv("QDIST_THREADS", "0", 1);
  CHECK_THROWS_AS(resolve_threads(0), std::invalid_argument);
  ::unsetenv("QDIST_THREADS");
  CHECK(resolve_threads(0) == 1);
}
