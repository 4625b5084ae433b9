// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_CONFIG_HPP
#define MAXMAJ_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxmaj/majorant.hpp"
#include "maxmaj/optimize.hpp"
#include "maxmaj/problem.hpp"

namespace maxmaj
{

enum class SolveMethod
{
  Leapfrog,
  Exact
};

enum class OptimizeMode
{
  None,
  Params,
  Full
};

std::string_view ToString(SolveMethod m);
std::string_view ToString(OptimizeMode m);
OptimizeMode ParseOptimizeMode(std::string_view s);

struct PerturbationConfig
{
  std::string bump = "smooth_t2";
  double delta = 0.0;
};

struct SolverConfig
{
  SolveMethod method = SolveMethod::Leapfrog;
  double cfl = 1.0;
};

struct MajorantConfig
{
  Theorem theorem = Theorem::T5;
  double gamma = 1.0;
  double rho = 0.5;
  ZeroTermVariant zero_term = ZeroTermVariant::ZHat;
  bool abs_coupling = false;
  OptimizeMode optimize = OptimizeMode::None;
  // Also evaluate the estimate for the first-order error (T4/T5 only).
  bool combined = false;
  OptimizeConfig optimizer;

  MajorantParams InitialParams() const;
};

struct VerifyConfig
{
  // Refinement levels as cell counts along x; other axes and nt scale proportionally.
  std::vector<int> levels = {8, 16};
};

struct RunConfig
{
  ProblemConfig problem;
  std::optional<PerturbationConfig> perturbation;
  SolverConfig solver;
  MajorantConfig majorant;
  VerifyConfig verify;
};

/**
 * Validates a configuration document against the schema (unknown keys rejected, value
 * ranges checked, catalog names resolved) and converts it. Throws ConfigError whose
 * message starts with the offending field path, e.g. "grid.nx: ...".
 */
RunConfig ParseConfig(const nlohmann::json &doc);
RunConfig LoadConfig(const std::string &path);
// Canonical form of a configuration (every field present).
nlohmann::json ConfigToJson(const RunConfig &cfg);

// Copy of cfg with the grid refined so that nx == level (nt scaled alike).
// Throws ConfigError if the level does not divide evenly.
RunConfig RefineTo(const RunConfig &cfg, int level);

}  // namespace maxmaj

#endif  // MAXMAJ_CONFIG_HPP
