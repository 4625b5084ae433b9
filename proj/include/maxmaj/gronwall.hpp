// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_GRONWALL_HPP
#define MAXMAJ_GRONWALL_HPP

#include <functional>
#include <string>
#include <vector>

namespace maxmaj
{

// Scalar samples on a uniform time grid t_k = k * dt.
struct ScalarTrajectory
{
  std::vector<double> values;
  double dt = 1.0;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int k) const { return values[k]; }
  // Throws ParameterError on a non-positive dt, an empty sequence or non-finite values.
  void Validate() const;
};

// Samples fn at t_k = k * T / (nt - 1).
ScalarTrajectory SampleScalar(const std::function<double(double)> &fn, int nt, double T);

/**
 * Bound for u' <= phi u + psi: t -> e^{Phi(t)} (u0 + int_0^t e^{-Phi} psi), Phi the
 * trapezoid prefix integral of phi. Throws ParameterError if any phi < 0.
 */
ScalarTrajectory GronwallDifferential(double u0, const ScalarTrajectory &phi,
                                      const ScalarTrajectory &psi);
// Same with Phi(t) = phi t in closed form.
ScalarTrajectory GronwallDifferentialConstant(double u0, double phi, const ScalarTrajectory &psi);

/**
 * Bound for u(t) <= int_0^t phi u + psi(t): t -> e^{Phi(t)} int_0^t e^{-Phi} phi psi + psi(t).
 * Throws ParameterError if any phi < 0.
 */
ScalarTrajectory GronwallIntegral(const ScalarTrajectory &phi, const ScalarTrajectory &psi);
ScalarTrajectory GronwallIntegralConstant(double phi, const ScalarTrajectory &psi);

// Largest relative difference between the differential-form bound and the integral-form
// bound applied to psi~ = u0 + int_0^t psi.
double GronwallEquivalenceError(double u0, const ScalarTrajectory &phi,
                                const ScalarTrajectory &psi);

// One oracle problem u' = phi u + psi - slack, u(0) = u0 on [0, T]. With slack = 0 the
// hypothesis holds with equality and the bound is expected to be tight.
struct GronwallCase
{
  std::string name;
  std::function<double(double)> phi, psi;
  double u0 = 0.0;
  double T = 1.0;
  double slack = 0.0;
  // Closed-form solution of the oracle ODE, used to validate the integrator.
  std::function<double(double)> exact;
};

struct GronwallCheckOptions
{
  int nt = 1001;
  // RK4 substeps per report interval.
  int substeps = 8;
  // Relative tolerance for "bound >= solution" and for tightness.
  double tolerance = 1e-6;
  double equivalence_tolerance = 1e-12;
  // Fault injection: "none" or "psi_sign_flip" (negates psi inside the bound only).
  std::string inject = "none";
};

struct GronwallCheckResult
{
  std::string name;
  // max_k (u(t_k) - bound_k) / max(1, |bound_k|); <= tolerance required.
  double max_violation = 0.0;
  // Integral-form bound with psi~ = u0 + int psi, same measure.
  double max_violation_integral = 0.0;
  // |bound(T) - u(T)| / |u(T)|.
  double gap_at_T = 0.0;
  double oracle_error = 0.0;
  double equivalence_error = 0.0;
  bool tight = false;
  bool passed = false;
  std::string message;
};

// Integrates the oracle ODE with classical RK4 and compares with both lemma bounds.
GronwallCheckResult GronwallOracleCheck(const GronwallCase &c,
                                        const GronwallCheckOptions &options = {});

// Six closed-form cases covering constant, zero and linear phi with constant and sine psi.
std::vector<GronwallCase> DefaultGronwallSuite();

}  // namespace maxmaj

#endif  // MAXMAJ_GRONWALL_HPP
