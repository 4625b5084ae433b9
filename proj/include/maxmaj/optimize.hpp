// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_OPTIMIZE_HPP
#define MAXMAJ_OPTIMIZE_HPP

#include <string>
#include <vector>

#include "maxmaj/majorant.hpp"

namespace maxmaj
{

enum class YInit
{
  Zero,
  MuInvCurlE
};

struct OptimizeConfig
{
  // Log-scaled golden-section bracket for gamma.
  double gamma_min = 1e-2;
  double gamma_max = 1e2;
  // Relative width at which the golden section stops.
  double gamma_tol = 1e-3;
  std::vector<double> rho_grid = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,
                                  0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
  int cg_max_iter = 200;
  double cg_tol = 1e-8;
  YInit y_init = YInit::MuInvCurlE;
  int sweeps = 3;
  // Pieces of the piecewise-constant gamma used by T3/T4, and coordinate-descent passes.
  int gamma_pieces = 4;
  int coordinate_passes = 2;
  // Node whose bound is minimized; -1 selects the last node.
  int target_index = -1;

  // Throws ParameterError on empty or unordered brackets and out-of-range tolerances.
  void Validate() const;
  int Target(int nt) const { return target_index < 0 ? nt - 1 : target_index; }
};

// b at node `target` for the given node terms.
double BoundAt(const NodeTerms &terms, const MajorantParams &params, Theorem theorem, double dt,
               int target);

struct GammaRhoResult
{
  std::vector<double> gamma;
  double rho = 0.5;
  double bound = 0.0;
  std::vector<std::string> warnings;
};

/**
 * Minimizes b(t*) over (gamma, rho) for fixed node terms: golden section on log gamma for
 * each rho on the grid, and for T3/T4 coordinate descent over a piecewise-constant gamma.
 * Ties go to the smallest gamma, then the smallest rho. Optima on a bracket endpoint add a
 * warning.
 */
GammaRhoResult OptimizeGammaRho(const NodeTerms &terms, Theorem theorem,
                                const OptimizeConfig &cfg, double dt,
                                ZeroTermVariant zero_term = ZeroTermVariant::ZHat,
                                bool abs_coupling = false);

GammaRhoResult OptimizeGammaRho(const ProblemData &p, const SolveOutput &approx,
                                const FieldTrajectory &Y, const OptimizeConfig &cfg,
                                Theorem theorem,
                                ZeroTermVariant zero_term = ZeroTermVariant::ZHat);

/**
 * b(t*) as a quadratic functional of Y for fixed (gamma, rho):
 *   Q(Y) = 1/2 <Y, H Y> - <rhs, Y> + c,
 * with <.,.> the plain space-time pairing (sum over nodes of PlainInner). Absolute values
 * (zTilde, abs_coupling) are linearized with the signs found at `current`.
 */
class YQuadratic
{
public:
  YQuadratic(const ResidualBase &base, const MajorantParams &params, Theorem theorem,
             int target, const NodeTerms &current);

  FieldTrajectory Apply(const FieldTrajectory &v) const;
  // Node-wise diagonal scaling used as the CG preconditioner.
  FieldTrajectory Precondition(const FieldTrajectory &r) const;
  const FieldTrajectory &Rhs() const { return rhs_; }
  // Q evaluated directly from the residual norms.
  double Value(const FieldTrajectory &Y) const;
  const GridSpec &grid() const { return base_->problem->grid; }

private:
  const ResidualBase *base_;
  std::vector<double> alpha_, beta_, kappa_, lambda_, scale_;
  double wsum_ = 0.0;
  double cross_weight_ = 0.0;
  bool zhat_ = true;
  FieldTrajectory rhs_;
};

double SpaceTimeInner(const FieldTrajectory &a, const FieldTrajectory &b);

struct CGResult
{
  FieldTrajectory Y;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
  // Q after each iteration (entry 0 is the starting value).
  std::vector<double> history;
};

// Preconditioned conjugate gradients for H Y = rhs from Y0. Throws SolverError on negative curvature.
CGResult MinimizeQuadratic(const YQuadratic &q, FieldTrajectory Y0, int max_iter, double tol);

// One Y minimization for fixed (gamma, rho), starting from params.Y (or mu^-1 curl E~).
CGResult OptimizeY(const ProblemData &p, const SolveOutput &approx, const MajorantParams &params,
                   Theorem theorem, const OptimizeConfig &cfg);

/**
 * Alternates Y and (gamma, rho) minimization for cfg.sweeps sweeps, starting from the given
 * (gamma, rho, zero-term variant) and cfg.y_init. A step that would raise b(t*) is
 * rejected, so the final bound never exceeds the initial one.
 */
MajorantReport OptimizeAll(const ProblemData &p, const SolveOutput &approx,
                           const MajorantParams &initial, Theorem theorem,
                           const OptimizeConfig &cfg, const SolveOutput *exact = nullptr,
                           MajorantParams *final_params = nullptr);

}  // namespace maxmaj

#endif  // MAXMAJ_OPTIMIZE_HPP
