// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli_app.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include "maxmaj/config.hpp"
#include "maxmaj/error.hpp"
#include "maxmaj/gronwall.hpp"
#include "maxmaj/parallel.hpp"
#include "maxmaj/pipeline.hpp"
#include "maxmaj/report.hpp"
#include "maxmaj/snapshot.hpp"
#include "maxmaj/version.hpp"

namespace maxmaj::cli
{

using nlohmann::json;

namespace
{

struct Options
{
  std::string config;
  std::string snapshot;
  std::string out = ".";
  int threads = 0;
  std::string theorem;
  std::string optimize;
  std::string inject = "none";
};

json Versions()
{
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  return {{"maxmaj", std::string(kVersion)}, {"eigen", eigen.str()}};
}

RunConfig LoadWithOverrides(const Options &o)
{
  auto cfg = LoadConfig(o.config);
  try
  {
    if (!o.theorem.empty())
    {
      cfg.majorant.theorem = ParseTheorem(o.theorem);
    }
    if (!o.optimize.empty())
    {
      cfg.majorant.optimize = ParseOptimizeMode(o.optimize);
    }
  }
  catch (const ParameterError &e)
  {
    throw ConfigError(std::string("command line: ") + e.what());
  }
  if (cfg.majorant.combined && !UsesSecondForm(cfg.majorant.theorem))
  {
    throw ConfigError("majorant.combined: requires theorem T4 or T5");
  }
  return cfg;
}

std::string OutPath(const Options &o, const std::string &name)
{
  std::filesystem::create_directories(o.out);
  return (std::filesystem::path(o.out) / name).string();
}

void WriteTiming(const Options &o, const std::string &command, double seconds)
{
  WriteTextFile(OutPath(o, "timing.json"),
                json{{"command", command}, {"wallSeconds", seconds}}.dump(2) + "\n");
}

int CmdSolve(const Options &o, std::ostream &out)
{
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = LoadWithOverrides(o);
  Snapshot snap;
  snap.grid = cfg.problem.grid;
  snap.fields = RunSolve(cfg);
  snap.meta = {{"config", ConfigToJson(cfg)}, {"versions", Versions()}};
  const auto path = o.snapshot.empty() ? OutPath(o, "snapshot.mmj") : o.snapshot;
  WriteSnapshot(path, snap);
  out << "solve: " << ToString(cfg.solver.method) << ", " << snap.grid.nt << " nodes -> " << path
      << "\n";
  WriteTiming(o, "solve",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return kOk;
}

int CmdCertify(const Options &o, std::ostream &out)
{
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = LoadWithOverrides(o);
  SolveOutput approx;
  if (o.snapshot.empty())
  {
    approx = RunSolve(cfg);
  }
  else
  {
    auto snap = ReadSnapshot(o.snapshot);
    if (!(snap.grid == cfg.problem.grid))
    {
      throw DataMismatchError("snapshot grid does not match the configured grid");
    }
    approx = std::move(snap.fields);
  }
  const auto res = RunCertify(cfg, approx);
  const json meta = {{"config", ConfigToJson(cfg)},
                     {"versions", Versions()},
                     {"snapshot", o.snapshot.empty() ? json(nullptr) : json(o.snapshot)}};
  const auto *combined = res.combined ? &*res.combined : nullptr;
  WriteTextFile(OutPath(o, "report.json"), ReportToJson(res.report, meta, combined).dump(2) + "\n");
  std::ostringstream csv;
  WriteReportCsv(csv, res.report);
  WriteTextFile(OutPath(o, "report.csv"), csv.str());
  if (combined)
  {
    std::ostringstream ccsv;
    WriteCombinedCsv(ccsv, *combined);
    WriteTextFile(OutPath(o, "combined.csv"), ccsv.str());
  }
  const auto &r = res.report;
  out << "certify: " << ToString(r.theorem) << " bound_b(T) = " << FormatNumber(r.bound_b.back());
  if (r.has_truth)
  {
    out << ", trueN(T) = " << FormatNumber(r.trueN.back())
        << ", efficiency(T) = " << FormatNumber(r.efficiency.back());
  }
  out << "\n";
  for (const auto &w : r.warnings)
  {
    out << "warning: " << w << "\n";
  }
  WriteTiming(o, "certify",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return kOk;
}

int CmdVerify(const Options &o, std::ostream &out)
{
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = LoadWithOverrides(o);
  const auto levels = RunVerify(cfg);
  const json meta = {{"config", ConfigToJson(cfg)}, {"versions", Versions()}};
  WriteTextFile(OutPath(o, "verify.json"), VerifyToJson(levels, meta).dump(2) + "\n");
  std::ostringstream csv;
  WriteVerifyCsv(csv, levels);
  WriteTextFile(OutPath(o, "verify.csv"), csv.str());
  out << csv.str();
  WriteTiming(o, "verify",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  const bool ok = std::all_of(levels.begin(), levels.end(), [](const auto &l) { return l.dominates; });
  if (!ok)
  {
    out << "verify: bound_b fell below the true error on at least one level\n";
  }
  return ok ? kOk : kVerificationFailed;
}

int CmdGronwall(const Options &o, std::ostream &out)
{
  GronwallCheckOptions opts;
  std::vector<std::string> wanted;
  if (!o.config.empty())
  {
    std::ifstream in(o.config);
    if (!in)
    {
      throw ConfigError("cannot open check spec '" + o.config + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    if (text.str().find_first_not_of(" \t\r\n") != std::string::npos)
    {
      json spec;
      try
      {
        spec = json::parse(text.str());
      }
      catch (const json::parse_error &e)
      {
        throw ConfigError(std::string("check spec is not valid JSON: ") + e.what());
      }
      if (!spec.is_object())
      {
        throw ConfigError("check spec: expected an object");
      }
      for (auto it = spec.begin(); it != spec.end(); ++it)
      {
        const auto &key = it.key();
        try
        {
          if (key == "nt")
          {
            opts.nt = it->get<int>();
          }
          else if (key == "substeps")
          {
            opts.substeps = it->get<int>();
          }
          else if (key == "tolerance")
          {
            opts.tolerance = it->get<double>();
          }
          else if (key == "equivalenceTolerance")
          {
            opts.equivalence_tolerance = it->get<double>();
          }
          else if (key == "inject")
          {
            opts.inject = it->get<std::string>();
          }
          else if (key == "cases")
          {
            wanted = it->get<std::vector<std::string>>();
          }
          else
          {
            throw ConfigError(key + ": unknown key");
          }
        }
        catch (const json::exception &)
        {
          throw ConfigError(key + ": wrong type");
        }
      }
    }
  }
  if (o.inject != "none")
  {
    opts.inject = o.inject;
  }
  if (opts.inject != "none" && opts.inject != "psi_sign_flip")
  {
    throw ConfigError("inject: expected none or psi_sign_flip");
  }
  if (opts.nt < 2 || opts.substeps < 1 || !(opts.tolerance > 0.0))
  {
    throw ConfigError("check spec: nt >= 2, substeps >= 1 and tolerance > 0 required");
  }
  auto suite = DefaultGronwallSuite();
  if (!wanted.empty())
  {
    std::vector<GronwallCase> chosen;
    for (const auto &name : wanted)
    {
      auto it = std::find_if(suite.begin(), suite.end(), [&](const auto &c) { return c.name == name; });
      if (it == suite.end())
      {
        throw ConfigError("cases: unknown case '" + name + "'");
      }
      chosen.push_back(*it);
    }
    suite = std::move(chosen);
  }
  bool all = true;
  json rows = json::array();
  for (const auto &c : suite)
  {
    const auto r = GronwallOracleCheck(c, opts);
    all = all && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " violation=" << FormatNumber(r.max_violation)
        << " gap=" << FormatNumber(r.gap_at_T) << " equivalence=" << FormatNumber(r.equivalence_error);
    if (!r.passed && !r.message.empty())
    {
      out << " (" << r.message << ")";
    }
    out << "\n";
    rows.push_back({{"name", r.name},
                    {"passed", r.passed},
                    {"maxViolation", r.max_violation},
                    {"maxViolationIntegral", r.max_violation_integral},
                    {"gapAtT", r.gap_at_T},
                    {"oracleError", r.oracle_error},
                    {"equivalenceError", r.equivalence_error},
                    {"tight", r.tight},
                    {"message", r.message}});
  }
  WriteTextFile(OutPath(o, "gronwall.json"),
                json{{"inject", opts.inject}, {"nt", opts.nt}, {"cases", rows}}.dump(2) + "\n");
  return all ? kOk : kVerificationFailed;
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Functional a posteriori error majorants for Maxwell's equations", "maxmaj"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "worker threads (0 = hardware)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", o.out, "output directory");
  app.set_version_flag("--version", std::string(kVersion));

  auto *solve = app.add_subcommand("solve", "solve and write a field snapshot");
  solve->add_option("--config", o.config, "configuration JSON")->required();
  solve->add_option("--snapshot", o.snapshot, "snapshot path (default OUT/snapshot.mmj)");

  auto *certify = app.add_subcommand("certify", "evaluate the majorant and write reports");
  certify->add_option("--config", o.config, "configuration JSON")->required();
  certify->add_option("--snapshot", o.snapshot, "snapshot to certify (default: solve now)");

  auto *verify = app.add_subcommand("verify", "refinement study on a catalog case");
  verify->add_option("--config", o.config, "configuration JSON")->required();

  for (auto *sub : {certify, verify})
  {
    sub->add_option("--theorem", o.theorem, "override majorant.theorem")
        ->check(CLI::IsMember({"T1", "T3", "T4", "T5"}));
    sub->add_option("--optimize", o.optimize, "override majorant.optimize")
        ->check(CLI::IsMember({"none", "params", "full"}));
  }

  auto *gronwall = app.add_subcommand("gronwall", "check the Gronwall bounds against an oracle");
  gronwall->add_option("--config", o.config, "check spec JSON (empty: default suite)");
  gronwall->add_option("--inject", o.inject, "fault injection")
      ->check(CLI::IsMember({"none", "psi_sign_flip"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return kOk;
  }
  catch (const CLI::CallForVersion &)
  {
    out << kVersion << "\n";
    return kOk;
  }
  catch (const CLI::ParseError &e)
  {
    err << "maxmaj: " << e.what() << "\n";
    return kConfigError;
  }

  try
  {
    SetThreadCount(o.threads);
    if (solve->parsed())
    {
      return CmdSolve(o, out);
    }
    if (certify->parsed())
    {
      return CmdCertify(o, out);
    }
    if (verify->parsed())
    {
      return CmdVerify(o, out);
    }
    return CmdGronwall(o, out);
  }
  catch (const ConfigError &e)
  {
    err << "maxmaj: config error: " << e.what() << "\n";
    return kConfigError;
  }
  catch (const CatalogError &e)
  {
    err << "maxmaj: config error: " << e.what() << "\n";
    return kConfigError;
  }
  catch (const StabilityError &e)
  {
    err << "maxmaj: stability error: " << e.what() << "\n";
    return kStabilityError;
  }
  catch (const DataMismatchError &e)
  {
    err << "maxmaj: data mismatch: " << e.what() << "\n";
    return kDataMismatch;
  }
  catch (const DimensionError &e)
  {
    err << "maxmaj: data mismatch: " << e.what() << "\n";
    return kDataMismatch;
  }
  catch (const PreconditionError &e)
  {
    err << "maxmaj: precondition violated: " << e.what() << "\n";
    return kPrecondition;
  }
  catch (const ParameterError &e)
  {
    err << "maxmaj: invalid parameter: " << e.what() << "\n";
    return kConfigError;
  }
  catch (const std::exception &e)
  {
    err << "maxmaj: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace maxmaj::cli
