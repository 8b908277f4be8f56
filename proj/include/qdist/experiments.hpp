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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdist/numerics.hpp"
#include "qdist/photon_states.hpp"

namespace qdist::experiments {

struct Column
{
  std::string label;
  std::string unit;
};

struct NamedFit
{
  std::string name;
  FitResult   fit;
};

/**
 * Result of one scan. Every row has one value per column; rows may carry a
 * text label (e.g. the state pair). NaN marks "not defined" cells, +inf an
 * unbounded divergence. `failures` lists every deviation that exceeded the
 * run's tolerance; an empty list means the run passed.
 */
struct ExperimentTable
{
  std::string                                      name;
  std::vector<Column>                              columns;
  std::vector<std::vector<double>>                 rows;
  std::vector<std::string>                         row_labels;
  std::string                                      row_label_header;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<NamedFit>                            fits;
  std::vector<std::string>                         failures;

  /// Appends a row; throws std::invalid_argument on an arity mismatch.
  void add_row(std::vector<double> values, std::string label = {});

  bool passed() const { return failures.empty(); }
};

/// Thrown by require_passed; the message lists the first failures.
class ToleranceFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

void require_passed(ExperimentTable const &table);

enum class OutputFormat
{
  csv,
  json,
};

enum class PboxMode
{
  classical,  ///< reference is the uniform density
  pair,       ///< reference is the fixed state m
};

using StatePair = std::pair<photon::PhotonState, photon::PhotonState>;

struct ExperimentSpec
{
  std::string id;

  int n_min  = 1;
  int n_max  = 20;
  int n_step = 1;

  PboxMode pbox_mode = PboxMode::classical;
  int      m         = 1;

  std::vector<double>    temperatures;
  std::vector<StatePair> state_pairs;

  std::pair<int, int> fit_window{50, 400};
  std::pair<int, int> log_fit_window{10, 200};

  /// Largest accepted |numeric - analytic|; experiment-specific default when empty.
  std::optional<double> tolerance;

  OutputFormat format = OutputFormat::csv;

  /// Upper bound on worker threads; 0 means QDIST_THREADS or 1.
  std::size_t threads = 0;

  /// The n values n_min, n_min + n_step, ..., <= n_max.
  std::vector<int> n_values() const;
};

ExperimentTable run_pbox_scan(ExperimentSpec const &spec);
ExperimentTable run_osc_scan(ExperimentSpec const &spec);
ExperimentTable run_photon_table(ExperimentSpec const &spec);
ExperimentTable run_blackbody_scan(ExperimentSpec const &spec);

/// Default vacuum-referenced state pairs used when a spec lists none.
std::vector<StatePair> default_photon_pairs();

/**
 * Worker count: spec.threads if non-zero, else QDIST_THREADS, else 1.
 * Throws std::invalid_argument if QDIST_THREADS is not an integer >= 1.
 */
std::size_t resolve_threads(std::size_t requested);

/// Evaluates task(0..count-1) on up to `threads` workers. Results come back in
/// index order; the first exception by index is rethrown.
std::vector<std::vector<double>> parallel_rows(std::size_t count, std::size_t threads,
                                               std::function<std::vector<double>(std::size_t)> const &task);

/// Header "label (unit)"; cells in %.16e, "nan", "inf" or "-inf".
std::string to_csv(ExperimentTable const &table);

/// Table object with columns, rows, metadata and fits. NaN is written as null,
/// infinities as the strings "inf" / "-inf".
std::string to_json(ExperimentTable const &table);

std::string render(ExperimentTable const &table, OutputFormat format);

}  // namespace qdist::experiments
