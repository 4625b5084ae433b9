// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_PROBLEM_HPP
#define MAXMAJ_PROBLEM_HPP

#include <optional>

#include "maxmaj/field.hpp"
#include "maxmaj/grid.hpp"
#include "maxmaj/manufactured.hpp"
#include "maxmaj/material.hpp"

namespace maxmaj
{

// Uniform material description as it appears in a configuration file.
struct MaterialSpec
{
  MaterialKind kind = MaterialKind::Scalar;
  Mat3 tensor = IdentityTensor();

  MaterialField Build(const GridSpec &grid) const;
};

struct ProblemConfig
{
  GridSpec grid;
  MaterialSpec eps, mu;
  CaseConfig case_config;
};

/**
 * Data of the first-order system dE/dt - eps^-1 curl H = F, dH/dt + mu^-1 curl E = G with
 * E x n = 0, and of its second-order form (d/dt eps d/dt + curl mu^-1 curl) E = K with
 * K = eps dF/dt + curl G and dE/dt(0) = eps^-1 curl H0 + F(0).
 *
 * Absent source trajectories stand for identically zero sources.
 */
struct ProblemData
{
  GridSpec grid;
  MaterialField eps, eps_inv, mu, mu_inv;
  std::optional<FieldTrajectory> F, G, K;
  StaggeredField E0, H0, E0prime;
  ManufacturedCase reference;

  StaggeredField SourceF(int k) const;
  StaggeredField SourceG(int k) const;
  StaggeredField SourceK(int k) const;
};

ProblemData AssembleProblem(const ProblemConfig &config);

// Assembles from an already constructed case (initial data from its exact solution at t=0
// when available, otherwise from case.E0/H0).
ProblemData AssembleProblem(const GridSpec &grid, const MaterialField &eps,
                            const MaterialField &mu, ManufacturedCase reference);

}  // namespace maxmaj

#endif  // MAXMAJ_PROBLEM_HPP
