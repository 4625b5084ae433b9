// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_PIPELINE_HPP
#define MAXMAJ_PIPELINE_HPP

#include <optional>
#include <vector>

#include "maxmaj/config.hpp"
#include "maxmaj/majorant.hpp"
#include "maxmaj/report.hpp"
#include "maxmaj/solver.hpp"

namespace maxmaj
{

ProblemData AssembleProblem(const RunConfig &cfg);

// Leapfrog or sampled exact fields, then the optional perturbation of E and Et.
SolveOutput RunSolve(const RunConfig &cfg);

struct CertifyOutcome
{
  MajorantReport report;
  MajorantParams params;
  std::optional<CombinedReport> combined;
};

// Certifies `approx` (optionally after parameter optimization). The true error is
// reported whenever the configured case has a closed-form solution.
CertifyOutcome RunCertify(const RunConfig &cfg, const SolveOutput &approx);

// Solve and certify at each refinement level; observed orders use h ratios.
std::vector<VerifyLevel> RunVerify(const RunConfig &cfg);

}  // namespace maxmaj

#endif  // MAXMAJ_PIPELINE_HPP
