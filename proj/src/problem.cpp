// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/problem.hpp"

#include "maxmaj/curl.hpp"
#include "maxmaj/error.hpp"
#include "maxmaj/parallel.hpp"
#include "maxmaj/time_derivative.hpp"

namespace maxmaj
{

namespace
{

FieldTrajectory SampleTrajectory(const GridSpec &grid, const FieldAtTime &fn)
{
  std::vector<StaggeredField> samples(grid.nt);
  ParallelFor(grid.nt, [&](int k) { samples[k] = fn(grid.Time(k)); });
  return FieldTrajectory(grid, std::move(samples));
}

}  // namespace

MaterialField MaterialSpec::Build(const GridSpec &grid) const
{
  return MaterialField::Uniform(grid, tensor, kind);
}

StaggeredField ProblemData::SourceF(int k) const
{
  return F ? (*F)[k] : StaggeredField(FieldKind::Edge, grid);
}

StaggeredField ProblemData::SourceG(int k) const
{
  return G ? (*G)[k] : StaggeredField(FieldKind::Face, grid);
}

StaggeredField ProblemData::SourceK(int k) const
{
  return K ? (*K)[k] : StaggeredField(FieldKind::Edge, grid);
}

ProblemData AssembleProblem(const ProblemConfig &config)
{
  config.grid.Validate();
  const auto eps = config.eps.Build(config.grid);
  const auto mu = config.mu.Build(config.grid);
  return AssembleProblem(config.grid, eps, mu, MakeCase(config.case_config, config.grid, eps, mu));
}

ProblemData AssembleProblem(const GridSpec &grid, const MaterialField &eps,
                            const MaterialField &mu, ManufacturedCase reference)
{
  grid.Validate();
  if (!eps.grid().SameSpace(grid) || !mu.grid().SameSpace(grid))
  {
    throw DimensionError("problem: material grid does not match");
  }
  ProblemData p;
  p.grid = grid;
  p.eps = eps;
  p.eps_inv = eps.Inverse();
  p.mu = mu;
  p.mu_inv = mu.Inverse();
  if (reference.F)
  {
    p.F = SampleTrajectory(grid, reference.F);
  }
  if (reference.G)
  {
    p.G = SampleTrajectory(grid, reference.G);
  }
  if (p.F || p.G)
  {
    const auto d = TimeStencil::Accurate(grid.nt, grid.dt());
    std::vector<StaggeredField> k(grid.nt);
    ParallelFor(grid.nt, [&](int n) {
      StaggeredField kn(FieldKind::Edge, grid);
      if (p.F)
      {
        kn = ApplyMaterial(p.eps, d.At(*p.F, n));
      }
      if (p.G)
      {
        kn += CurlFaceToEdge((*p.G)[n], grid);
      }
      k[n] = std::move(kn);
    });
    p.K = FieldTrajectory(grid, std::move(k));
  }
  if (reference.HasExact())
  {
    p.E0 = reference.E(0.0);
    p.H0 = reference.H(0.0);
  }
  else
  {
    p.E0 = reference.E0;
    p.H0 = reference.H0;
  }
  RequireCompatible(p.E0, StaggeredField(FieldKind::Edge, grid), "initial E");
  RequireCompatible(p.H0, StaggeredField(FieldKind::Face, grid), "initial H");
  p.E0.ApplyTangentialBoundary();
  p.E0prime = ApplyMaterial(p.eps_inv, CurlFaceToEdge(p.H0, grid)) + p.SourceF(0);
  p.reference = std::move(reference);
  return p;
}

}  // namespace maxmaj
