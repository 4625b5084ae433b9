// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_SOLVER_HPP
#define MAXMAJ_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "maxmaj/field.hpp"
#include "maxmaj/manufactured.hpp"
#include "maxmaj/problem.hpp"

namespace maxmaj
{

// Approximate (or exact) fields on the report time grid. Et approximates dE/dt and is in
// general not the time derivative of E; Ht likewise for H.
struct SolveOutput
{
  FieldTrajectory E, H, Et, Ht;
  // Conserved leapfrog energy per step (empty for sampled solutions).
  std::vector<double> energy;
};

// Largest stable leapfrog step: 1 / (c_max sqrt(1/hx^2 + 1/hy^2 + 1/hz^2)) with
// c_max^2 = lambda_max(eps^-1) lambda_max(mu^-1).
double StabilityLimit(const ProblemData &p);

/**
 * Yee leapfrog with the report step dt. H lives on half steps internally and is reported
 * at nodes as the mean of the two neighbouring half steps (H(0) = H0). Et and Ht are
 * second-order finite differences of the reported trajectories. Throws ParameterError
 * unless cfl is in (0, 1] and StabilityError if dt > cfl * StabilityLimit(p).
 */
SolveOutput LeapfrogSolve(const ProblemData &p, double cfl = 1.0);

// Samples the exact E, H, dE/dt, dH/dt of a case at every node.
// Throws CatalogError if the case has no closed-form solution.
SolveOutput ProjectExact(const ManufacturedCase &c, const GridSpec &grid);

// Adds delta * bump to E and delta * d(bump)/dt to Et; H and Ht are unchanged.
SolveOutput PerturbApproximation(const SolveOutput &approx, double delta,
                                 const std::string &bump);

// Throws DataMismatchError unless all trajectories live on `grid` with the right kinds.
void RequireMatchingGrid(const SolveOutput &s, const GridSpec &grid);

}  // namespace maxmaj

#endif  // MAXMAJ_SOLVER_HPP
