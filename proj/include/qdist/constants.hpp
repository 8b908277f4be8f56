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

namespace qdist::constants {

// Exact SI values.
inline constexpr double planck        = 6.62607015e-34;  // J s
inline constexpr double boltzmann     = 1.380649e-23;    // J / K
inline constexpr double speed_of_light = 299792458.0;    // m / s

}  // namespace qdist::constants
