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

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdist/photon_states.hpp"

namespace qdist::cli {

/// Bad command-line input; maps to exit code 2.
class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk       = 0;
inline constexpr int kExitFailure  = 1;  ///< tolerance or consistency failure
inline constexpr int kExitUsage    = 2;

/**
 * Parses `family[:param[,param]]`:
 *
 *   vacuum | fock:j | coherent:mean | squeezed:r | thermal:nbar | glauber_lachs:mean,nbar
 *
 * Parameters must be finite and non-negative; j must be an integer.
 * Throws UsageError otherwise.
 */
photon::PhotonState parse_state_descriptor(std::string_view text);

/// Runs the qdist command line; `args[0]` is the program name.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

}  // namespace qdist::cli
