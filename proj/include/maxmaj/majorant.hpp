// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_MAJORANT_HPP
#define MAXMAJ_MAJORANT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxmaj/field.hpp"
#include "maxmaj/gronwall.hpp"
#include "maxmaj/problem.hpp"
#include "maxmaj/solver.hpp"
#include "maxmaj/time_derivative.hpp"

namespace maxmaj
{

// T1: constant (gamma, rho), needs second time differences of E~.
// T3: time-dependent (gamma, rho), same residuals as T1.
// T4: time-dependent (gamma, rho), uses the independent approximation Et of dE/dt.
// T5: constant (gamma, rho) version of T4.
enum class Theorem
{
  T1,
  T3,
  T4,
  T5
};

// Initial-error term: signed, with |cross term|, or fully expanded (nonnegative).
enum class ZeroTermVariant
{
  Z,
  ZTilde,
  ZHat
};

std::string_view ToString(Theorem t);
std::string_view ToString(ZeroTermVariant v);
// Throw ParameterError on unknown names.
Theorem ParseTheorem(std::string_view s);
ZeroTermVariant ParseZeroTermVariant(std::string_view s);

// True for T4/T5, which use Et instead of second differences of E~.
bool UsesSecondForm(Theorem t);
// True for T1/T5, whose weights are constants.
bool UsesConstantParams(Theorem t);

struct MajorantParams
{
  // One value (constant) or one value per node.
  std::vector<double> gamma{1.0};
  std::vector<double> rho{0.5};
  // Face trajectory; absent means Y = mu^-1 curl E~.
  std::optional<FieldTrajectory> Y;
  ZeroTermVariant zero_term = ZeroTermVariant::ZHat;
  // Replace the signed coupling integral of the second form by its absolute value.
  bool abs_coupling = false;

  static MajorantParams Constant(double gamma, double rho);
  double GammaAt(int k) const { return gamma.size() == 1 ? gamma[0] : gamma[k]; }
  double RhoAt(int k) const { return rho.size() == 1 ? rho[0] : rho[k]; }
  bool IsConstant() const;
  // Throws ParameterError on gamma <= 0, rho outside (0,1) or a length other than 1 / nt.
  void Validate(int nt) const;
};

// The four residual trajectories for a given Y.
struct Residuals
{
  FieldTrajectory Khat;    // eps d2E~/dt2 + curl Y - K (edge)
  FieldTrajectory Ktilde;  // mu^-1 curl E~ - Y (face)
  FieldTrajectory Kcheck;  // eps dEt/dt + curl Y - K (edge)
  FieldTrajectory Rt;      // mu^-1 curl Et - dY/dt (face)
};

/**
 * The parts of the residuals that do not depend on Y:
 *   source      eps d2E~/dt2 - K (first form) or eps dEt/dt - K (second form), edge
 *   curl_rate   mu^-1 curl dE~/dt (first form) or mu^-1 curl Et (second form), face
 *   curl_value  mu^-1 curl E~, face
 *   mismatch    curl(Et - dE~/dt), face, second form only
 * together with the initial errors dt_e0 = E0' - dE~/dt(0) (or E0' - Et(0)) and
 * curl_e0 = curl(E0 - E~(0)). Time derivatives use TimeStencil::Accurate.
 */
struct ResidualBase
{
  ResidualBase(const ProblemData &p, const SolveOutput &approx, bool second_form);

  const ProblemData *problem;
  bool second_form;
  TimeStencil d;
  FieldTrajectory source, curl_rate, curl_value;
  std::optional<FieldTrajectory> mismatch;
  StaggeredField dt_e0, curl_e0;
};

// Node integrands of the majorant for one Y; each vector has one entry per node.
struct NodeTerms
{
  std::vector<double> source_sq;    // ||Khat||^2_{eps^-1} or ||Kcheck||^2_{eps^-1}
  std::vector<double> rate_sq;      // ||d/dt Ktilde||^2_mu or ||mu^-1 curl Et - dY/dt||^2_mu
  std::vector<double> ktilde_sq;    // ||Ktilde||^2_mu
  std::vector<double> coupling;     // <Ktilde, curl(Et - dE~/dt)>, zero for the first form
  double dt_e0_sq = 0.0;            // ||de/dt(0)||^2_eps (or ||e_t(0)||^2_eps)
  double curl_e0_sq = 0.0;          // ||curl e(0)||^2_{mu^-1}
  double cross0 = 0.0;              // <Ktilde(0), curl e(0)>
  double ktilde0_sq = 0.0;          // ||Ktilde(0)||^2_mu

  double ZeroTerm(ZeroTermVariant v) const;
};

// Y = mu^-1 curl E~.
FieldTrajectory DefaultY(const ProblemData &p, const SolveOutput &approx);

Residuals ComputeResiduals(const ProblemData &p, const SolveOutput &approx,
                           const FieldTrajectory &Y);

NodeTerms EvaluateTerms(const ResidualBase &base, const FieldTrajectory &Y);

double ZeroTerm(const ProblemData &p, const SolveOutput &approx, const FieldTrajectory &Y,
                ZeroTermVariant variant, bool second_form = true);

// f = g + z per node for the given theorem; the weights are taken from params.
std::vector<double> AssembleF(const NodeTerms &terms, Theorem theorem,
                              const MajorantParams &params, double dt);

ScalarTrajectory FFirstForm(const ProblemData &p, const SolveOutput &approx,
                            const MajorantParams &params);
ScalarTrajectory FRefined(const ProblemData &p, const SolveOutput &approx,
                          const MajorantParams &params);
// Time-dependent weights allowed (T4); constant ones give the T5 functional.
ScalarTrajectory FSecondForm(const ProblemData &p, const SolveOutput &approx,
                             const MajorantParams &params);

struct BoundPair
{
  std::vector<double> b, B;
};

/**
 * b = e^{G} int e^{-G} gamma f + f (integral-form Gronwall). For the constant-weight
 * theorems B = e^{gamma t} int e^{-gamma s} f (differential-form path); for T3/T4 B is the
 * gamma-weighted integral alone, i.e. b - f.
 */
BoundPair ComputeBounds(const std::vector<double> &f, const MajorantParams &params,
                        Theorem theorem, double dt);

// Squared error norms per node that do not depend on (gamma, rho).
struct ErrorParts
{
  std::vector<double> first_sq;  // ||dE/dt - dE~/dt||^2_eps or ||dE/dt - Et||^2_eps
  std::vector<double> curl_sq;   // ||curl(E - E~)||^2_{mu^-1}
};

ErrorParts ComputeErrorParts(const ProblemData &p, const SolveOutput &exact,
                             const SolveOutput &approx, bool second_form);

struct ErrorNorms
{
  std::vector<double> n, N;
};

// n = first + rho curl; N = int n (T1/T5) or int gamma n (T3/T4).
ErrorNorms TrueErrorNorms(const ErrorParts &parts, const MajorantParams &params,
                          Theorem theorem, double dt);
ErrorNorms TrueErrorNorms(const SolveOutput &exact, const SolveOutput &approx,
                          const ProblemData &p, const MajorantParams &params, Theorem theorem);

struct MajorantReport
{
  Theorem theorem = Theorem::T5;
  ZeroTermVariant zero_term = ZeroTermVariant::ZHat;
  bool abs_coupling = false;
  std::vector<double> time, f, bound_b, bound_B;
  bool has_truth = false;
  std::vector<double> trueN, trueBigN;
  // NaN where the true error is below the reporting threshold.
  std::vector<double> efficiency;
  std::vector<double> gamma, rho;
  double zero_term_value = 0.0;
  double energy_scale = 1.0;
  double runtime_seconds = 0.0;
  int cg_iterations = 0;
  int sweeps = 0;
  std::vector<std::string> warnings;
};

// ||E0||^2_eps + ||H0||^2_mu, or 1 if that vanishes.
double EnergyScale(const ProblemData &p);

// Assembles a report from precomputed node terms (and optional error parts).
MajorantReport ReportFromTerms(const NodeTerms &terms, const ErrorParts *truth,
                               const MajorantParams &params, Theorem theorem,
                               const GridSpec &grid, double energy_scale);

/**
 * Full pipeline for one parameter set. Throws PreconditionError when the approximation
 * lacks what the theorem needs (nt < 5 for T1/T3, missing Et for T4/T5) and
 * ParameterError when T1/T5 are given time-dependent weights.
 */
MajorantReport Certify(const ProblemData &p, const SolveOutput &approx,
                       const MajorantParams &params, Theorem theorem,
                       const SolveOutput *exact = nullptr);

void CheckPreconditions(const ProblemData &p, const SolveOutput &approx,
                        const MajorantParams &params, Theorem theorem);

struct CombinedReport
{
  MajorantReport electric;
  std::vector<double> f_res_sq;  // ||F - Et + eps^-1 curl H~||^2_eps
  std::vector<double> g_res_sq;  // ||G - Ht - mu^-1 curl E~||^2_mu
  std::vector<double> bound;     // 3 b + 2 f_res_sq + 2 g_res_sq
  bool has_truth = false;
  std::vector<double> truth;     // n_rho[e_t, e] + rho ||h_t||^2_mu + ||curl h||^2_{eps^-1}
};

// Estimate for the electric and magnetic errors together. Theorem must be T4 or T5.
// Throws PreconditionError when H~ or Ht is missing.
CombinedReport CombinedEstimate(const ProblemData &p, const SolveOutput &approx,
                                const MajorantParams &params, Theorem theorem = Theorem::T5,
                                const SolveOutput *exact = nullptr);

}  // namespace maxmaj

#endif  // MAXMAJ_MAJORANT_HPP
