// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "maxmaj/error.hpp"
#include "maxmaj/optimize.hpp"

namespace maxmaj
{

ProblemData AssembleProblem(const RunConfig &cfg)
{
  return AssembleProblem(cfg.problem);
}

SolveOutput RunSolve(const RunConfig &cfg)
{
  const auto p = AssembleProblem(cfg);
  SolveOutput out = cfg.solver.method == SolveMethod::Leapfrog
                        ? LeapfrogSolve(p, cfg.solver.cfl)
                        : ProjectExact(p.reference, p.grid);
  if (cfg.perturbation && cfg.perturbation->delta != 0.0)
  {
    out = PerturbApproximation(out, cfg.perturbation->delta, cfg.perturbation->bump);
  }
  return out;
}

CertifyOutcome RunCertify(const RunConfig &cfg, const SolveOutput &approx)
{
  const auto start = std::chrono::steady_clock::now();
  const auto p = AssembleProblem(cfg);
  RequireMatchingGrid(approx, p.grid);
  std::optional<SolveOutput> exact;
  if (p.reference.HasExact())
  {
    exact = ProjectExact(p.reference, p.grid);
  }
  const SolveOutput *truth = exact ? &*exact : nullptr;
  const auto &mc = cfg.majorant;
  CertifyOutcome out;
  out.params = mc.InitialParams();
  switch (mc.optimize)
  {
  case OptimizeMode::None:
    out.report = Certify(p, approx, out.params, mc.theorem, truth);
    break;
  case OptimizeMode::Params:
  {
    CheckPreconditions(p, approx, out.params, mc.theorem);
    const ResidualBase base(p, approx, UsesSecondForm(mc.theorem));
    out.params.Y = mc.optimizer.y_init == YInit::Zero ? FieldTrajectory(FieldKind::Face, p.grid)
                                                      : DefaultY(p, approx);
    const auto terms = EvaluateTerms(base, *out.params.Y);
    const double before = BoundAt(terms, out.params, mc.theorem, p.grid.dt(),
                                  mc.optimizer.Target(p.grid.nt));
    auto gr = OptimizeGammaRho(terms, mc.theorem, mc.optimizer, p.grid.dt(), out.params.zero_term,
                               out.params.abs_coupling);
    if (gr.bound <= before)
    {
      out.params.gamma = gr.gamma;
      out.params.rho = {gr.rho};
    }
    std::optional<ErrorParts> parts;
    if (truth)
    {
      parts = ComputeErrorParts(p, *truth, approx, UsesSecondForm(mc.theorem));
    }
    out.report = ReportFromTerms(terms, parts ? &*parts : nullptr, out.params, mc.theorem,
                                 p.grid, EnergyScale(p));
    out.report.warnings = gr.warnings;
    break;
  }
  case OptimizeMode::Full:
    out.report =
        OptimizeAll(p, approx, out.params, mc.theorem, mc.optimizer, truth, &out.params);
    break;
  }
  if (mc.combined)
  {
    out.combined = CombinedEstimate(p, approx, out.params, mc.theorem, truth);
  }
  out.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<VerifyLevel> RunVerify(const RunConfig &cfg)
{
  std::vector<VerifyLevel> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int level : cfg.verify.levels)
  {
    const auto lc = RefineTo(cfg, level);
    const auto approx = RunSolve(lc);
    const auto res = RunCertify(lc, approx);
    const auto &r = res.report;
    if (!r.has_truth)
    {
      throw CatalogError("verify needs a case with a closed-form solution, got '" +
                         lc.problem.case_config.name + "'");
    }
    VerifyLevel row;
    row.nx = lc.problem.grid.nx;
    row.nt = lc.problem.grid.nt;
    row.h = lc.problem.grid.hx();
    row.dt = lc.problem.grid.dt();
    row.trueN_T = r.trueN.back();
    row.bound_T = r.bound_b.back();
    row.efficiency_T = r.efficiency.back();
    row.order_trueN = row.order_bound = nan;
    if (!rows.empty())
    {
      const auto &prev = rows.back();
      const double ratio = std::log(prev.h / row.h);
      row.order_trueN = std::log(prev.trueN_T / row.trueN_T) / ratio;
      row.order_bound = std::log(prev.bound_T / row.bound_T) / ratio;
    }
    row.dominates = BoundDominates(r);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace maxmaj
