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

#include "qdist/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "qdist/acceptance.hpp"
#include "qdist/core_dist.hpp"
#include "qdist/experiments.hpp"

namespace qdist::cli {

namespace {

using experiments::ExperimentSpec;
using experiments::ExperimentTable;
using experiments::OutputFormat;

std::string full_precision(double v)
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
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::pair<int, int> parse_window(std::string const &text, char const *flag)
{
  auto const colon = text.find(':');
  try
  {
    if (colon == std::string::npos)
    {
      throw std::invalid_argument("missing ':'");
    }
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    int const   lo      = std::stoi(text.substr(0, colon), &used_lo);
    int const   hi      = std::stoi(text.substr(colon + 1), &used_hi);
    if (used_lo != colon || used_hi != text.size() - colon - 1)
    {
      throw std::invalid_argument("trailing characters");
    }
    return {lo, hi};
  }
  catch (std::exception const &)
  {
    throw UsageError(std::string(flag) + " expects LO:HI, got '" + text + "'");
  }
}

experiments::StatePair parse_pair(std::string const &text)
{
  auto const slash = text.find('/');
  if (slash == std::string::npos)
  {
    throw UsageError("--pair expects A/B, got '" + text + "'");
  }
  return {parse_state_descriptor(std::string_view(text).substr(0, slash)),
          parse_state_descriptor(std::string_view(text).substr(slash + 1))};
}

// Common flags of the table-producing subcommands.
struct TableFlags
{
  std::string           format = "csv";
  std::string           out_path;
  std::optional<double> tolerance;

  void attach(CLI::App *cmd)
  {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--out", out_path, "Output file (default: standard output)");
    cmd->add_option("--tolerance", tolerance, "Override the accepted |numeric - analytic| deviation")
        ->check(CLI::PositiveNumber);
  }
};

int emit(ExperimentTable const &table, TableFlags const &flags, std::ostream &out, std::ostream &err)
{
  OutputFormat const format = flags.format == "json" ? OutputFormat::json : OutputFormat::csv;
  std::string const  text   = experiments::render(table, format);
  if (flags.out_path.empty())
  {
    out << text;
  }
  else
  {
    std::ofstream file(flags.out_path, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file)
    {
      throw std::runtime_error("failed writing " + flags.out_path);
    }
  }
  if (!table.passed())
  {
    for (auto const &f : table.failures)
    {
      err << "tolerance failure: " << f << '\n';
    }
    return kExitFailure;
  }
  return kExitOk;
}

void require_writable(std::string const &path)
{
  if (path.empty())
  {
    return;
  }
  std::ofstream probe(path, std::ios::binary | std::ios::app);
  if (!probe)
  {
    throw UsageError("output path is not writable: " + path);
  }
}

}  // namespace

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Distances between one-dimensional probability distributions.", "qdist"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  // pbox --------------------------------------------------------------------
  ExperimentSpec pbox_spec;
  pbox_spec.id         = "pbox";
  std::string pbox_mode = "classical";
  TableFlags  pbox_flags;
  auto *pbox = app.add_subcommand("pbox", "Particle in a box: W1 against the classical density or a fixed state m");
  pbox->add_option("--mode", pbox_mode, "Reference distribution")
      ->check(CLI::IsMember({"classical", "pair"}))
      ->capture_default_str();
  pbox->add_option("--m", pbox_spec.m, "Reference state in pair mode")->check(CLI::PositiveNumber)->capture_default_str();
  pbox->add_option("--n-min", pbox_spec.n_min, "First n")->capture_default_str();
  pbox->add_option("--n-max", pbox_spec.n_max, "Last n")->capture_default_str();
  pbox->add_option("--n-step", pbox_spec.n_step, "Step in n")->capture_default_str();
  pbox_flags.attach(pbox);

  // osc ---------------------------------------------------------------------
  ExperimentSpec osc_spec;
  osc_spec.id     = "osc";
  osc_spec.n_max  = 400;
  std::string osc_window = "50:400";
  std::string osc_log_window = "10:200";
  TableFlags  osc_flags;
  auto *osc = app.add_subcommand("osc", "Harmonic oscillator: W1, KL and Bhattacharyya of |n> against the ground state");
  osc->add_option("--n-min", osc_spec.n_min, "First n")->capture_default_str();
  osc->add_option("--n-max", osc_spec.n_max, "Last n")->capture_default_str();
  osc->add_option("--n-step", osc_spec.n_step, "Step in n")->capture_default_str();
  osc->add_option("--fit-window", osc_window, "LO:HI window of the W1 power-law fit")->capture_default_str();
  osc->add_option("--log-fit-window", osc_log_window, "LO:HI window of the KL and Bhattacharyya ln n fits")
      ->capture_default_str();
  osc_flags.attach(osc);

  // photon ------------------------------------------------------------------
  ExperimentSpec           photon_spec;
  photon_spec.id = "photon";
  std::vector<std::string> photon_pairs;
  TableFlags               photon_flags;
  auto *photon = app.add_subcommand("photon", "Photon-number states: W1, KL and Bhattacharyya for state pairs");
  photon->add_option("--pair", photon_pairs,
                     "State pair A/B, repeatable; descriptors: vacuum | fock:j | coherent:mean | squeezed:r | "
                     "thermal:nbar | glauber_lachs:mean,nbar (default: built-in list)");
  photon_flags.attach(photon);

  // blackbody ---------------------------------------------------------------
  ExperimentSpec bb_spec;
  bb_spec.id           = "blackbody";
  bb_spec.temperatures = {100.0, 200.0, 300.0, 500.0};
  TableFlags bb_flags;
  auto *bb = app.add_subcommand("blackbody", "Blackbody spectra: all-pairs W1 in frequency and wavelength");
  bb->add_option("--temps", bb_spec.temperatures, "Temperatures in kelvin, comma separated (at least 3)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bb_flags.attach(bb);

  // dist --------------------------------------------------------------------
  std::string dist_a;
  std::string dist_b;
  std::string measure = "all";
  auto *dist = app.add_subcommand("dist", "Distances between two photon-number states");
  dist->add_option("--a", dist_a, "First state descriptor")->required();
  dist->add_option("--b", dist_b, "Second state descriptor")->required();
  dist->add_option("--measure", measure, "w1 | emd | shortcut | kl | bhatt | all")
      ->check(CLI::IsMember({"w1", "emd", "shortcut", "kl", "bhatt", "all"}))
      ->capture_default_str();

  // selftest ----------------------------------------------------------------
  std::vector<int> only;
  auto *selftest = app.add_subcommand("selftest", "Run the acceptance criteria; exit 0 only if all pass");
  selftest->add_option("--only", only, "Comma-separated criterion ids (default: all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 12));

  std::vector<char const *> argv;
  argv.reserve(args.size());
  for (auto const &a : args)
  {
    argv.push_back(a.c_str());
  }

  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (CLI::CallForHelp const &e)
  {
    app.exit(e, out, err);
    return kExitOk;
  }
  catch (CLI::CallForAllHelp const &e)
  {
    app.exit(e, out, err);
    return kExitOk;
  }
  catch (CLI::ParseError const &e)
  {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try
  {
    if (pbox->parsed() || osc->parsed() || photon->parsed() || bb->parsed())
    {
      std::size_t const threads = experiments::resolve_threads(0);
      for (auto *spec : {&pbox_spec, &osc_spec, &photon_spec, &bb_spec})
      {
        spec->threads = threads;
      }
    }

    if (pbox->parsed())
    {
      pbox_spec.pbox_mode = pbox_mode == "pair" ? experiments::PboxMode::pair : experiments::PboxMode::classical;
      pbox_spec.tolerance = pbox_flags.tolerance;
      require_writable(pbox_flags.out_path);
      return emit(experiments::run_pbox_scan(pbox_spec), pbox_flags, out, err);
    }
    if (osc->parsed())
    {
      osc_spec.fit_window     = parse_window(osc_window, "--fit-window");
      osc_spec.log_fit_window = parse_window(osc_log_window, "--log-fit-window");
      osc_spec.tolerance      = osc_flags.tolerance;
      require_writable(osc_flags.out_path);
      return emit(experiments::run_osc_scan(osc_spec), osc_flags, out, err);
    }
    if (photon->parsed())
    {
      for (auto const &p : photon_pairs)
      {
        photon_spec.state_pairs.push_back(parse_pair(p));
      }
      photon_spec.tolerance = photon_flags.tolerance;
      require_writable(photon_flags.out_path);
      return emit(experiments::run_photon_table(photon_spec), photon_flags, out, err);
    }
    if (bb->parsed())
    {
      bb_spec.tolerance = bb_flags.tolerance;
      require_writable(bb_flags.out_path);
      return emit(experiments::run_blackbody_scan(bb_spec), bb_flags, out, err);
    }
    if (dist->parsed())
    {
      photon::PhotonState const a      = parse_state_descriptor(dist_a);
      photon::PhotonState const b      = parse_state_descriptor(dist_b);
      DiscretePmf const         first  = photon::pmf(a);
      DiscretePmf const         q      = photon::pmf(b, first.size());
      DiscretePmf const         p      = photon::pmf(a, q.size());
      auto value = [&](std::string const &m) {
        if (m == "w1")
        {
          return wasserstein1_discrete(p, q);
        }
        if (m == "emd")
        {
          return emd_oracle(p, q);
        }
        if (m == "shortcut")
        {
          return mean_shortcut_w1(p, q);
        }
        if (m == "kl")
        {
          return kl_discrete(p, q).as_double();
        }
        return bhattacharyya_discrete(p, q).as_double();
      };
      if (measure != "all")
      {
        out << full_precision(value(measure)) << '\n';
        return kExitOk;
      }
      for (std::string const m : {"w1", "emd", "kl", "bhatt"})
      {
        out << m << ' ' << full_precision(value(m)) << '\n';
      }
      if (check_dominance(p, q).dominant != Dominance::neither)
      {
        out << "shortcut " << full_precision(value("shortcut")) << '\n';
      }
      else
      {
        out << "shortcut undefined (CDFs cross)\n";
      }
      return kExitOk;
    }
    if (selftest->parsed())
    {
      bool const ok = acceptance::run_all(out, only);
      out << (ok ? "selftest: all selected criteria passed" : "selftest: FAILED") << '\n';
      return ok ? kExitOk : kExitFailure;
    }
  }
  catch (UsageError const &e)
  {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (std::invalid_argument const &e)
  {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (experiments::ToleranceFailure const &e)
  {
    err << "tolerance failure: " << e.what() << '\n';
    return kExitFailure;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qdist::cli
