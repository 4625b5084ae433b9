// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/manufactured.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "maxmaj/curl.hpp"
#include "maxmaj/error.hpp"

namespace maxmaj
{

namespace
{

constexpr double pi = std::numbers::pi;

StaggeredField ModeShape(const GridSpec &grid, int m, int n, double amplitude)
{
  const double kx = m * pi / grid.lx, ky = n * pi / grid.ly;
  auto s = Sample(FieldKind::Edge, grid, [=](double x, double y, double) -> Vec3 {
    return {0.0, 0.0, amplitude * std::sin(kx * x) * std::sin(ky * y)};
  });
  s.ApplyTangentialBoundary();
  return s;
}

// Analytic curl of the mode shape, sampled on faces.
StaggeredField ModeShapeCurl(const GridSpec &grid, int m, int n, double amplitude)
{
  const double kx = m * pi / grid.lx, ky = n * pi / grid.ly;
  return Sample(FieldKind::Face, grid, [=](double x, double y, double) -> Vec3 {
    return {amplitude * ky * std::sin(kx * x) * std::cos(ky * y),
            -amplitude * kx * std::cos(kx * x) * std::sin(ky * y), 0.0};
  });
}

StaggeredField Scaled(const StaggeredField &s, double a)
{
  StaggeredField out = s;
  out *= a;
  return out;
}

void RequireModeIndices(int m, int n)
{
  if (m < 1 || n < 1)
  {
    throw CatalogError("mode indices must be positive integers");
  }
}

double Param(const CaseConfig &config, const std::string &key, double fallback)
{
  auto it = config.params.find(key);
  return it == config.params.end() ? fallback : it->second;
}

int IntParam(const CaseConfig &config, const std::string &key, int fallback)
{
  const double v = Param(config, key, fallback);
  if (v != std::floor(v))
  {
    throw CatalogError("case parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

void RequireKnownParams(const CaseConfig &config, std::initializer_list<const char *> allowed)
{
  for (const auto &[key, value] : config.params)
  {
    bool ok = false;
    for (const char *a : allowed)
    {
      ok = ok || key == a;
    }
    if (!ok)
    {
      throw CatalogError("case '" + config.name + "' has no parameter '" + key + "'");
    }
  }
}

}  // namespace

double CavityFrequency(const GridSpec &grid, int m, int n, Dispersion dispersion)
{
  RequireModeIndices(m, n);
  if (dispersion == Dispersion::Continuous)
  {
    return pi * std::sqrt(std::pow(m / grid.lx, 2) + std::pow(n / grid.ly, 2));
  }
  const double sx = 2.0 / grid.hx() * std::sin(m * pi * grid.hx() / (2.0 * grid.lx));
  const double sy = 2.0 / grid.hy() * std::sin(n * pi * grid.hy() / (2.0 * grid.ly));
  return std::sqrt(sx * sx + sy * sy);
}

ManufacturedCase CavityMode(const GridSpec &grid, int m, int n, double amplitude,
                            Dispersion dispersion)
{
  const double w = CavityFrequency(grid, m, n, dispersion);
  auto s = std::make_shared<const StaggeredField>(ModeShape(grid, m, n, amplitude));
  auto cs = std::make_shared<const StaggeredField>(
      dispersion == Dispersion::Discrete ? CurlEdgeToFace(*s, grid)
                                         : ModeShapeCurl(grid, m, n, amplitude));
  ManufacturedCase c;
  c.name = "cavity_mode";
  c.parameters = {{"m", m}, {"n", n}, {"amplitude", amplitude}, {"omega", w}};
  c.E = [=](double t) { return Scaled(*s, std::cos(w * t)); };
  c.Et = [=](double t) { return Scaled(*s, -w * std::sin(w * t)); };
  c.H = [=](double t) { return Scaled(*cs, -std::sin(w * t) / w); };
  c.Ht = [=](double t) { return Scaled(*cs, -std::cos(w * t)); };
  return c;
}

ManufacturedCase ForcedPolynomial(const GridSpec &grid, int m, int n, double amplitude,
                                  Dispersion dispersion)
{
  const double w = CavityFrequency(grid, m, n, dispersion);
  const double w2 = w * w;
  auto s = std::make_shared<const StaggeredField>(ModeShape(grid, m, n, amplitude));
  auto cs = std::make_shared<const StaggeredField>(
      dispersion == Dispersion::Discrete ? CurlEdgeToFace(*s, grid)
                                         : ModeShapeCurl(grid, m, n, amplitude));
  ManufacturedCase c;
  c.name = "forced_polynomial";
  c.parameters = {{"m", m}, {"n", n}, {"amplitude", amplitude}, {"omega", w}};
  c.E = [=](double t) { return Scaled(*s, 1.0 + t + t * t); };
  c.Et = [=](double t) { return Scaled(*s, 1.0 + 2.0 * t); };
  c.H = [=](double t) { return Scaled(*cs, 0.5 * t - t * t); };
  c.Ht = [=](double t) { return Scaled(*cs, 0.5 - 2.0 * t); };
  // dE/dt - curl H = F and dH/dt + curl E = G, using curl curl S = w^2 S.
  c.F = [=](double t) { return Scaled(*s, 1.0 + 2.0 * t - w2 * (0.5 * t - t * t)); };
  c.G = [=](double t) { return Scaled(*cs, 1.5 - t + t * t); };
  return c;
}

ManufacturedCase ZeroCase(const GridSpec &grid)
{
  ManufacturedCase c;
  c.name = "zero";
  c.E = c.Et = [grid](double) { return StaggeredField(FieldKind::Edge, grid); };
  c.H = c.Ht = [grid](double) { return StaggeredField(FieldKind::Face, grid); };
  return c;
}

ManufacturedCase UniformSource(const GridSpec &grid, const Vec3 &f, const Vec3 &g)
{
  auto fs = std::make_shared<StaggeredField>(
      Sample(FieldKind::Edge, grid, [f](double, double, double) { return f; }));
  fs->ApplyTangentialBoundary();
  auto gs = std::make_shared<const StaggeredField>(
      Sample(FieldKind::Face, grid, [g](double, double, double) { return g; }));
  ManufacturedCase c;
  c.name = "uniform_source";
  c.parameters = {{"fx", f[0]}, {"fy", f[1]}, {"fz", f[2]},
                  {"gx", g[0]}, {"gy", g[1]}, {"gz", g[2]}};
  c.F = [fs](double) { return *fs; };
  c.G = [gs](double) { return *gs; };
  c.E0 = StaggeredField(FieldKind::Edge, grid);
  c.H0 = StaggeredField(FieldKind::Face, grid);
  return c;
}

ManufacturedCase MakeCase(const CaseConfig &config, const GridSpec &grid,
                          const MaterialField &eps, const MaterialField &mu)
{
  const auto &name = config.name;
  if (name == "uniform_source")
  {
    RequireKnownParams(config, {"fx", "fy", "fz", "gx", "gy", "gz"});
    return UniformSource(grid,
                         {Param(config, "fx", 0), Param(config, "fy", 0), Param(config, "fz", 0)},
                         {Param(config, "gx", 0), Param(config, "gy", 0), Param(config, "gz", 0)});
  }
  if (name != "cavity_mode" && name != "forced_polynomial" && name != "zero")
  {
    throw CatalogError("unknown case '" + name + "'");
  }
  if (name == "zero")
  {
    RequireKnownParams(config, {});
    return ZeroCase(grid);
  }
  if (!eps.IsIdentity() || !mu.IsIdentity())
  {
    throw CatalogError("case '" + name + "' requires identity materials");
  }
  RequireKnownParams(config, {"m", "n", "amplitude"});
  const int m = IntParam(config, "m", 1), n = IntParam(config, "n", 1);
  const double a = Param(config, "amplitude", 1.0);
  RequireModeIndices(m, n);
  return name == "cavity_mode" ? CavityMode(grid, m, n, a, config.dispersion)
                               : ForcedPolynomial(grid, m, n, a, config.dispersion);
}

Bump MakeBump(const std::string &key, const GridSpec &grid)
{
  Bump b;
  b.name = key;
  if (key == "smooth_t2")
  {
    b.profile = [](double t) { return t * t; };
    b.profile_dt = [](double t) { return 2.0 * t; };
  }
  else if (key == "smooth_affine")
  {
    b.profile = [](double t) { return 1.0 + t; };
    b.profile_dt = [](double) { return 1.0; };
  }
  else
  {
    throw CatalogError("unknown bump '" + key + "'");
  }
  const double ax = pi / grid.lx, ay = pi / grid.ly, az = pi / grid.lz;
  b.shape = Sample(FieldKind::Edge, grid, [=](double x, double y, double z) -> Vec3 {
    return {std::cos(ax * x) * std::sin(2 * ay * y) * std::sin(az * z),
            std::sin(ax * x) * std::cos(ay * y) * std::sin(2 * az * z),
            std::sin(2 * ax * x) * std::sin(ay * y) * std::cos(az * z)};
  });
  b.shape.ApplyTangentialBoundary();
  return b;
}

FieldTrajectory Perturb(const FieldTrajectory &traj, double delta, const Bump &bump,
                        bool derivative)
{
  FieldTrajectory out = traj;
  if (delta == 0.0)
  {
    return out;
  }
  const auto &grid = traj.grid();
  for (int k = 0; k < out.size(); k++)
  {
    const double t = grid.Time(k);
    out[k].Axpy(delta * (derivative ? bump.profile_dt(t) : bump.profile(t)), bump.shape);
  }
  return out;
}

FieldTrajectory Perturb(const FieldTrajectory &traj, double delta, const std::string &bump,
                        bool derivative)
{
  return Perturb(traj, delta, MakeBump(bump, traj.grid()), derivative);
}

}  // namespace maxmaj
