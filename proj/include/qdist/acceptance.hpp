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

#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qdist::acceptance {

struct CriterionResult
{
  int         id = 0;
  std::string title;
  bool        passed = false;
  std::string detail;
};

struct Criterion
{
  int                              id;
  std::string                      title;
  std::function<CriterionResult()> run;
};

/// Acceptance criteria 1-12 in order.
std::vector<Criterion> const &criteria();

/// Runs one criterion; an exception counts as a failure with its message as detail.
CriterionResult run_criterion(Criterion const &criterion);

/// "PASS  3  parity plateau: detail" style line, no trailing newline.
std::string format_line(CriterionResult const &result);

/// Runs the selected criteria (all when `ids` is empty), printing one line per
/// criterion as it finishes. Returns true when every selected criterion passed.
bool run_all(std::ostream &out, std::span<int const> ids = {});

}  // namespace qdist::acceptance
