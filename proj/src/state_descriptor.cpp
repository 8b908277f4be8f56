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

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "qdist/cli.hpp"

namespace qdist::cli {

namespace {

[[noreturn]] void fail(std::string_view text, std::string const &why)
{
  throw UsageError("invalid state descriptor '" + std::string(text) + "': " + why);
}

std::vector<std::string_view> split(std::string_view params)
{
  std::vector<std::string_view> out;
  for (;;)
  {
    auto const comma = params.find(',');
    out.push_back(params.substr(0, comma));
    if (comma == std::string_view::npos)
    {
      return out;
    }
    params.remove_prefix(comma + 1);
  }
}

double parse_nonnegative(std::string_view text, std::string_view token)
{
  double      value = 0.0;
  auto const  res   = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size())
  {
    fail(text, "'" + std::string(token) + "' is not a number");
  }
  if (!std::isfinite(value))
  {
    fail(text, "parameters must be finite");
  }
  if (value < 0.0)
  {
    fail(text, "parameters must be non-negative");
  }
  return value;
}

}  // namespace

photon::PhotonState parse_state_descriptor(std::string_view text)
{
  auto const             colon  = text.find(':');
  std::string_view const family = text.substr(0, colon);

  if (family == "vacuum")
  {
    if (colon != std::string_view::npos)
    {
      fail(text, "vacuum takes no parameters");
    }
    return photon::FockParams{0};
  }
  if (colon == std::string_view::npos)
  {
    fail(text, "expected family:param");
  }
  std::vector<std::string_view> const params = split(text.substr(colon + 1));
  auto expect = [&](std::size_t count) {
    if (params.size() != count)
    {
      fail(text, std::string(family) + " takes " + std::to_string(count) + " parameter(s)");
    }
  };

  if (family == "fock")
  {
    expect(1);
    int        j   = 0;
    auto const tok = params[0];
    auto const res = std::from_chars(tok.data(), tok.data() + tok.size(), j);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || j < 0)
    {
      fail(text, "fock needs an integer j >= 0");
    }
    return photon::FockParams{j};
  }
  if (family == "coherent")
  {
    expect(1);
    return photon::CoherentParams{parse_nonnegative(text, params[0])};
  }
  if (family == "squeezed")
  {
    expect(1);
    return photon::SqueezeParams{parse_nonnegative(text, params[0])};
  }
  if (family == "thermal")
  {
    expect(1);
    return photon::ThermalParams{parse_nonnegative(text, params[0])};
  }
  if (family == "glauber_lachs")
  {
    expect(2);
    return photon::GlauberLachsParams{parse_nonnegative(text, params[0]), parse_nonnegative(text, params[1])};
  }
  fail(text, "unknown family '" + std::string(family) + "'");
}

}  // namespace qdist::cli
