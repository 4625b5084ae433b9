// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "maxmaj/error.hpp"
#include "maxmaj/quadrature.hpp"

namespace maxmaj
{

namespace
{

void RequireNonnegative(const ScalarTrajectory &phi)
{
  for (double v : phi.values)
  {
    if (!(v >= 0.0))
    {
      throw ParameterError("gronwall: phi must be nonnegative at every node");
    }
  }
}

void RequireSameGrid(const ScalarTrajectory &a, const ScalarTrajectory &b)
{
  a.Validate();
  b.Validate();
  if (a.size() != b.size() || a.dt != b.dt)
  {
    throw DimensionError("gronwall: phi and psi live on different time grids");
  }
}

double Relative(double a, double scale)
{
  return a / std::max(1.0, std::abs(scale));
}

}  // namespace

void ScalarTrajectory::Validate() const
{
  if (!(dt > 0.0) || values.empty())
  {
    throw ParameterError("scalar trajectory: need dt > 0 and at least one value");
  }
  for (double v : values)
  {
    if (!std::isfinite(v))
    {
      throw ParameterError("scalar trajectory: non-finite value");
    }
  }
}

ScalarTrajectory SampleScalar(const std::function<double(double)> &fn, int nt, double T)
{
  ScalarTrajectory s;
  s.dt = T / (nt - 1);
  s.values.resize(nt);
  for (int k = 0; k < nt; k++)
  {
    s.values[k] = fn(k * s.dt);
  }
  return s;
}

ScalarTrajectory GronwallDifferential(double u0, const ScalarTrajectory &phi,
                                      const ScalarTrajectory &psi)
{
  RequireSameGrid(phi, psi);
  RequireNonnegative(phi);
  const auto Phi = CumulativeTrapezoid(phi.values, phi.dt);
  ScalarTrajectory out{CumulativeDampedIntegral(psi.values, Phi, psi.dt), psi.dt};
  for (int k = 0; k < out.size(); k++)
  {
    out.values[k] += std::exp(Phi[k]) * u0;
  }
  return out;
}

ScalarTrajectory GronwallDifferentialConstant(double u0, double phi, const ScalarTrajectory &psi)
{
  psi.Validate();
  if (!(phi >= 0.0))
  {
    throw ParameterError("gronwall: phi must be nonnegative");
  }
  ScalarTrajectory out{CumulativeDampedIntegralConstant(psi.values, phi, psi.dt), psi.dt};
  for (int k = 0; k < out.size(); k++)
  {
    out.values[k] += std::exp(phi * k * psi.dt) * u0;
  }
  return out;
}

ScalarTrajectory GronwallIntegral(const ScalarTrajectory &phi, const ScalarTrajectory &psi)
{
  RequireSameGrid(phi, psi);
  RequireNonnegative(phi);
  ScalarTrajectory out{CumulativeExpWeighted(psi.values, phi.values, psi.dt), psi.dt};
  for (int k = 0; k < out.size(); k++)
  {
    out.values[k] += psi.values[k];
  }
  return out;
}

ScalarTrajectory GronwallIntegralConstant(double phi, const ScalarTrajectory &psi)
{
  psi.Validate();
  if (!(phi >= 0.0))
  {
    throw ParameterError("gronwall: phi must be nonnegative");
  }
  ScalarTrajectory out{CumulativeExpWeightedConstant(psi.values, phi, psi.dt), psi.dt};
  for (int k = 0; k < out.size(); k++)
  {
    out.values[k] += psi.values[k];
  }
  return out;
}

double GronwallEquivalenceError(double u0, const ScalarTrajectory &phi,
                                const ScalarTrajectory &psi)
{
  const auto differential = GronwallDifferential(u0, phi, psi);
  ScalarTrajectory shifted{CumulativeTrapezoid(psi.values, psi.dt), psi.dt};
  for (double &v : shifted.values)
  {
    v += u0;
  }
  const auto integral = GronwallIntegral(phi, shifted);
  double err = 0.0;
  for (int k = 0; k < differential.size(); k++)
  {
    const double d = differential[k], i = integral[k];
    err = std::max(err, std::abs(d - i) / std::max({std::abs(d), std::abs(i), 1e-300}));
  }
  return err;
}

GronwallCheckResult GronwallOracleCheck(const GronwallCase &c, const GronwallCheckOptions &opt)
{
  if (opt.nt < 2 || opt.substeps < 1)
  {
    throw ParameterError("gronwall check: need nt >= 2 and substeps >= 1");
  }
  GronwallCheckResult r;
  r.name = c.name;
  r.tight = c.slack == 0.0;
  const double sign = opt.inject == "psi_sign_flip" ? -1.0 : 1.0;
  if (opt.inject != "none" && opt.inject != "psi_sign_flip")
  {
    throw ParameterError("gronwall check: unknown fault injection '" + opt.inject + "'");
  }
  const auto phi = SampleScalar(c.phi, opt.nt, c.T);
  const auto psi = SampleScalar([&](double t) { return sign * c.psi(t); }, opt.nt, c.T);
  const auto bound = GronwallDifferential(c.u0, phi, psi);
  ScalarTrajectory shifted{CumulativeTrapezoid(psi.values, psi.dt), psi.dt};
  for (double &v : shifted.values)
  {
    v += c.u0;
  }
  const auto bound_integral = GronwallIntegral(phi, shifted);
  r.equivalence_error = GronwallEquivalenceError(c.u0, phi, psi);

  // RK4 oracle for u' = phi u + psi - slack.
  auto rhs = [&](double t, double u) { return c.phi(t) * u + c.psi(t) - c.slack; };
  const double h = phi.dt / opt.substeps;
  double u = c.u0, t = 0.0;
  r.max_violation = Relative(u - bound[0], bound[0]);
  r.max_violation_integral = Relative(u - bound_integral[0], bound_integral[0]);
  for (int k = 1; k < opt.nt; k++)
  {
    for (int s = 0; s < opt.substeps; s++)
    {
      const double k1 = rhs(t, u);
      const double k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
      const double k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
      const double k4 = rhs(t + h, u + h * k3);
      u += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      t = ((k - 1) * opt.substeps + s + 1) * h;
    }
    r.max_violation = std::max(r.max_violation, Relative(u - bound[k], bound[k]));
    r.max_violation_integral =
        std::max(r.max_violation_integral, Relative(u - bound_integral[k], bound_integral[k]));
    if (c.exact)
    {
      r.oracle_error = std::max(r.oracle_error, Relative(std::abs(u - c.exact(t)), c.exact(t)));
    }
  }
  const double bT = bound[opt.nt - 1];
  r.gap_at_T = std::abs(bT - u) / std::max(std::abs(u), 1e-300);

  std::ostringstream msg;
  msg.precision(3);
  bool ok = true;
  if (r.max_violation > opt.tolerance || r.max_violation_integral > opt.tolerance)
  {
    ok = false;
    msg << "solution exceeds bound by " << std::max(r.max_violation, r.max_violation_integral)
        << " (relative); ";
  }
  if (r.tight && r.gap_at_T > opt.tolerance)
  {
    ok = false;
    msg << "tight case gap " << r.gap_at_T << " exceeds tolerance; ";
  }
  if (!r.tight && !(bT > u))
  {
    ok = false;
    msg << "strict case bound not strictly above solution; ";
  }
  if (r.equivalence_error > opt.equivalence_tolerance)
  {
    ok = false;
    msg << "differential/integral forms differ by " << r.equivalence_error << "; ";
  }
  if (c.exact && r.oracle_error > 1e-9)
  {
    ok = false;
    msg << "RK4 oracle disagrees with closed form by " << r.oracle_error << "; ";
  }
  r.passed = ok;
  r.message = ok ? "ok" : msg.str();
  return r;
}

std::vector<GronwallCase> DefaultGronwallSuite()
{
  using std::exp;
  std::vector<GronwallCase> suite;
  suite.push_back({"constant_phi_zero_psi", [](double) { return 1.0; },
                   [](double) { return 0.0; }, 1.0, 1.0, 0.0,
                   [](double t) { return exp(t); }});
  suite.push_back({"zero_phi_sine_psi", [](double) { return 0.0; },
                   [](double t) { return std::sin(t); }, 0.0, 1.0, 0.0,
                   [](double t) { return 1.0 - std::cos(t); }});
  suite.push_back({"constant_phi_sine_psi", [](double) { return 1.0; },
                   [](double t) { return std::sin(t); }, 0.0, 1.0, 0.0,
                   [](double t) { return 0.5 * (exp(t) - std::sin(t) - std::cos(t)); }});
  suite.push_back({"linear_phi_zero_psi", [](double t) { return t; },
                   [](double) { return 0.0; }, 1.0, 1.0, 0.0,
                   [](double t) { return exp(0.5 * t * t); }});
  suite.push_back({"linear_phi_constant_psi", [](double t) { return t; },
                   [](double) { return 1.0; }, 0.5, 1.0, 0.0, [](double t) {
                     return exp(0.5 * t * t) *
                            (0.5 + std::sqrt(std::numbers::pi / 2.0) *
                                       std::erf(t / std::numbers::sqrt2));
                   }});
  // u' = u + 1 - 1: the hypothesis u' <= u + 1 is strict.
  suite.push_back({"constant_phi_constant_psi_strict", [](double) { return 1.0; },
                   [](double) { return 1.0; }, 1.0, 1.0, 1.0,
                   [](double t) { return exp(t); }});
  return suite;
}

}  // namespace maxmaj
