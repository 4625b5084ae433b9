// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_MANUFACTURED_HPP
#define MAXMAJ_MANUFACTURED_HPP

#include <functional>
#include <map>
#include <string>

#include "maxmaj/field.hpp"
#include "maxmaj/grid.hpp"
#include "maxmaj/material.hpp"

namespace maxmaj
{

// Which frequency a standing mode oscillates with. `Discrete` uses the eigenvalue of the
// discrete curl-curl operator, so the sampled fields solve the spatially discrete system
// exactly; `Continuous` uses the analytic dispersion relation and samples analytic fields.
enum class Dispersion
{
  Discrete,
  Continuous
};

// Catalog entry selecting a case by name with scalar parameters.
struct CaseConfig
{
  std::string name = "cavity_mode";
  std::map<std::string, double> params;
  Dispersion dispersion = Dispersion::Discrete;
};

using FieldAtTime = std::function<StaggeredField(double t)>;

/**
 * Named source/initial-data set. When `E` is set the case also knows its exact solution
 * (E, H, dE/dt, dH/dt at any t); `F`, `G` are left empty for source-free cases.
 */
struct ManufacturedCase
{
  std::string name;
  std::map<std::string, double> parameters;
  FieldAtTime E, H, Et, Ht;
  FieldAtTime F, G;
  // Initial data for cases without a closed-form solution.
  StaggeredField E0, H0;

  bool HasExact() const { return static_cast<bool>(E); }
  bool HasSources() const { return static_cast<bool>(F) || static_cast<bool>(G); }
};

double CavityFrequency(const GridSpec &grid, int m, int n, Dispersion dispersion);

// Source-free standing mode E = (0, 0, A sin(m pi x/lx) sin(n pi y/ly) cos(w t)).
ManufacturedCase CavityMode(const GridSpec &grid, int m, int n, double amplitude,
                            Dispersion dispersion = Dispersion::Discrete);

// Mode shape with polynomial time dependence driven by nonzero F and G:
// E = S A (1 + t + t^2), H = curl S A (t/2 - t^2).
ManufacturedCase ForcedPolynomial(const GridSpec &grid, int m, int n, double amplitude,
                                  Dispersion dispersion = Dispersion::Discrete);

ManufacturedCase ZeroCase(const GridSpec &grid);

// Spatially constant sources, zero initial data, no closed-form solution.
ManufacturedCase UniformSource(const GridSpec &grid, const Vec3 &f, const Vec3 &g);

// Looks up `config.name`. Cases with closed-form solutions require identity materials.
// Throws CatalogError for unknown names, missing parameters or unsupported materials.
ManufacturedCase MakeCase(const CaseConfig &config, const GridSpec &grid,
                          const MaterialField &eps, const MaterialField &mu);

// Smooth edge-field perturbation with zero tangential trace and a scalar time profile.
struct Bump
{
  std::string name;
  StaggeredField shape;
  std::function<double(double)> profile, profile_dt;
};

// "smooth_t2": profile t^2, so the perturbation and its time derivative vanish at t = 0.
// "smooth_affine": profile 1 + t.
Bump MakeBump(const std::string &key, const GridSpec &grid);

// traj + delta * shape * profile(t_k) at every node (profile_dt when `derivative`).
FieldTrajectory Perturb(const FieldTrajectory &traj, double delta, const Bump &bump,
                        bool derivative = false);
FieldTrajectory Perturb(const FieldTrajectory &traj, double delta, const std::string &bump,
                        bool derivative = false);

}  // namespace maxmaj

#endif  // MAXMAJ_MANUFACTURED_HPP
