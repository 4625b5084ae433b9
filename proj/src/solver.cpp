// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/solver.hpp"

#include <cmath>
#include <sstream>

#include "maxmaj/curl.hpp"
#include "maxmaj/error.hpp"
#include "maxmaj/norms.hpp"
#include "maxmaj/parallel.hpp"
#include "maxmaj/time_derivative.hpp"

namespace maxmaj
{

double StabilityLimit(const ProblemData &p)
{
  const auto &g = p.grid;
  const double c2 = p.eps_inv.LambdaMax() * p.mu_inv.LambdaMax();
  const double s = 1.0 / (g.hx() * g.hx()) + 1.0 / (g.hy() * g.hy()) + 1.0 / (g.hz() * g.hz());
  return 1.0 / std::sqrt(c2 * s);
}

SolveOutput LeapfrogSolve(const ProblemData &p, double cfl)
{
  if (!(cfl > 0.0 && cfl <= 1.0))
  {
    throw ParameterError("leapfrog: cfl must lie in (0, 1]");
  }
  const auto &grid = p.grid;
  const double dt = grid.dt();
  const double limit = StabilityLimit(p);
  if (dt > cfl * limit)
  {
    std::ostringstream msg;
    msg.precision(17);
    msg << "leapfrog: dt = " << dt << " exceeds cfl * stability limit = " << cfl * limit
        << "; increase nt";
    throw StabilityError(msg.str());
  }
  const int nt = grid.nt;
  SolveOutput out;
  out.E = FieldTrajectory(FieldKind::Edge, grid);
  out.H = FieldTrajectory(FieldKind::Face, grid);
  out.energy.reserve(nt - 1);

  auto e_rate = [&](const StaggeredField &h) {
    return ApplyMaterial(p.eps_inv, CurlFaceToEdge(h, grid));
  };
  auto h_rate = [&](const StaggeredField &e) {
    return ApplyMaterial(p.mu_inv, CurlEdgeToFace(e, grid));
  };

  StaggeredField e = p.E0;
  e.ApplyTangentialBoundary();
  // H at half step 1/2.
  StaggeredField h = p.H0;
  h.Axpy(-0.5 * dt, h_rate(e));
  if (p.G)
  {
    h.Axpy(0.5 * dt, (*p.G)[0]);
  }
  out.E[0] = e;
  out.H[0] = p.H0;
  // H at half step -1/2, only used for the energy invariant.
  StaggeredField h_prev = p.H0;
  h_prev.Axpy(0.5 * dt, h_rate(e));
  if (p.G)
  {
    h_prev.Axpy(-0.5 * dt, (*p.G)[0]);
  }
  for (int n = 0; n + 1 < nt; n++)
  {
    e.Axpy(dt, e_rate(h));
    if (p.F)
    {
      e.Axpy(0.5 * dt, (*p.F)[n]);
      e.Axpy(0.5 * dt, (*p.F)[n + 1]);
    }
    e.ApplyTangentialBoundary();
    StaggeredField h_next = h;
    h_next.Axpy(-dt, h_rate(e));
    if (p.G)
    {
      h_next.Axpy(dt, (*p.G)[n + 1]);
    }
    out.E[n + 1] = e;
    out.H[n + 1] = 0.5 * (h + h_next);
    // Leapfrog invariant for source-free runs: <eps E^n, E^n> + <mu H^{n-1/2}, H^{n+1/2}>.
    const auto &en = out.E[n];
    out.energy.push_back(PlainInner(ApplyMaterial(p.eps, en), en, grid) +
                         PlainInner(ApplyMaterial(p.mu, h_prev), h, grid));
    h_prev = h;
    h = std::move(h_next);
  }
  const auto d = TimeStencil::Centered(nt, dt);
  out.Et = d.Apply(out.E);
  out.Ht = d.Apply(out.H);
  return out;
}

SolveOutput ProjectExact(const ManufacturedCase &c, const GridSpec &grid)
{
  if (!c.HasExact())
  {
    throw CatalogError("case '" + c.name + "' has no closed-form solution");
  }
  const int nt = grid.nt;
  std::vector<StaggeredField> e(nt), h(nt), et(nt), ht(nt);
  ParallelFor(nt, [&](int k) {
    const double t = grid.Time(k);
    e[k] = c.E(t);
    h[k] = c.H(t);
    et[k] = c.Et(t);
    ht[k] = c.Ht(t);
  });
  SolveOutput out;
  out.E = FieldTrajectory(grid, std::move(e));
  out.H = FieldTrajectory(grid, std::move(h));
  out.Et = FieldTrajectory(grid, std::move(et));
  out.Ht = FieldTrajectory(grid, std::move(ht));
  return out;
}

SolveOutput PerturbApproximation(const SolveOutput &approx, double delta,
                                 const std::string &bump)
{
  const auto b = MakeBump(bump, approx.E.grid());
  SolveOutput out;
  out.E = Perturb(approx.E, delta, b);
  out.Et = Perturb(approx.Et, delta, b, true);
  out.H = approx.H;
  out.Ht = approx.Ht;
  return out;
}

void RequireMatchingGrid(const SolveOutput &s, const GridSpec &grid)
{
  auto check = [&](const FieldTrajectory &t, FieldKind kind, const char *what) {
    if (t.empty())
    {
      return;
    }
    if (!(t.grid() == grid) || t.size() != grid.nt || t.kind() != kind ||
        t[0].cells() != grid.cells())
    {
      throw DataMismatchError(std::string("trajectory '") + what +
                              "' does not match the configured grid");
    }
  };
  check(s.E, FieldKind::Edge, "E");
  check(s.H, FieldKind::Face, "H");
  check(s.Et, FieldKind::Edge, "Et");
  check(s.Ht, FieldKind::Face, "Ht");
}

}  // namespace maxmaj
