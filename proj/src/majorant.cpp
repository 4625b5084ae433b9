// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/majorant.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "maxmaj/curl.hpp"
#include "maxmaj/error.hpp"
#include "maxmaj/norms.hpp"
#include "maxmaj/parallel.hpp"
#include "maxmaj/quadrature.hpp"

namespace maxmaj
{

namespace
{

FieldTrajectory Collect(const GridSpec &grid, const std::function<StaggeredField(int)> &fn)
{
  std::vector<StaggeredField> out(grid.nt);
  ParallelFor(grid.nt, [&](int k) { out[k] = fn(k); });
  return FieldTrajectory(grid, std::move(out));
}

std::vector<double> PerNode(int nt, const std::function<double(int)> &fn)
{
  std::vector<double> out(nt);
  ParallelFor(nt, [&](int k) { out[k] = fn(k); });
  return out;
}

std::vector<double> Expand(const std::vector<double> &v, int nt)
{
  return v.size() == 1 ? std::vector<double>(nt, v[0]) : v;
}

void RequireY(const FieldTrajectory &Y, const GridSpec &grid)
{
  if (Y.empty() || Y.size() != grid.nt || Y.kind() != FieldKind::Face ||
      Y[0].cells() != grid.cells())
  {
    throw DataMismatchError("Y must be a face trajectory on the problem grid");
  }
}

}  // namespace

std::string_view ToString(Theorem t)
{
  switch (t)
  {
    case Theorem::T1:
      return "T1";
    case Theorem::T3:
      return "T3";
    case Theorem::T4:
      return "T4";
    case Theorem::T5:
      return "T5";
  }
  return "?";
}

std::string_view ToString(ZeroTermVariant v)
{
  switch (v)
  {
    case ZeroTermVariant::Z:
      return "z";
    case ZeroTermVariant::ZTilde:
      return "zTilde";
    case ZeroTermVariant::ZHat:
      return "zHat";
  }
  return "?";
}

Theorem ParseTheorem(std::string_view s)
{
  for (auto t : {Theorem::T1, Theorem::T3, Theorem::T4, Theorem::T5})
  {
    if (s == ToString(t))
    {
      return t;
    }
  }
  throw ParameterError("unknown theorem '" + std::string(s) + "' (expected T1, T3, T4 or T5)");
}

ZeroTermVariant ParseZeroTermVariant(std::string_view s)
{
  for (auto v : {ZeroTermVariant::Z, ZeroTermVariant::ZTilde, ZeroTermVariant::ZHat})
  {
    if (s == ToString(v))
    {
      return v;
    }
  }
  throw ParameterError("unknown zero-term variant '" + std::string(s) +
                       "' (expected z, zTilde or zHat)");
}

bool UsesSecondForm(Theorem t)
{
  return t == Theorem::T4 || t == Theorem::T5;
}

bool UsesConstantParams(Theorem t)
{
  return t == Theorem::T1 || t == Theorem::T5;
}

MajorantParams MajorantParams::Constant(double gamma, double rho)
{
  MajorantParams p;
  p.gamma = {gamma};
  p.rho = {rho};
  return p;
}

bool MajorantParams::IsConstant() const
{
  auto constant = [](const std::vector<double> &v) {
    for (double x : v)
    {
      if (x != v.front())
      {
        return false;
      }
    }
    return true;
  };
  return constant(gamma) && constant(rho);
}

void MajorantParams::Validate(int nt) const
{
  auto sized = [nt](const std::vector<double> &v) {
    return v.size() == 1 || static_cast<int>(v.size()) == nt;
  };
  if (!sized(gamma) || !sized(rho))
  {
    throw ParameterError("majorant: gamma and rho need one value or one value per node");
  }
  for (double g : gamma)
  {
    if (!(g > 0.0) || !std::isfinite(g))
    {
      throw ParameterError("majorant: gamma must be positive");
    }
  }
  for (double r : rho)
  {
    if (!(r > 0.0 && r < 1.0))
    {
      throw ParameterError("majorant: rho must lie in (0,1)");
    }
  }
}

ResidualBase::ResidualBase(const ProblemData &p, const SolveOutput &approx, bool second)
    : problem(&p), second_form(second), d(TimeStencil::Accurate(p.grid.nt, p.grid.dt()))
{
  RequireMatchingGrid(approx, p.grid);
  const auto &grid = p.grid;
  if (second && approx.Et.empty())
  {
    throw PreconditionError("second-form majorant needs an approximation of dE/dt");
  }
  auto subtract_k = [&](StaggeredField &u, int k) {
    if (p.K)
    {
      u -= (*p.K)[k];
    }
  };
  curl_value = Collect(grid, [&](int k) {
    return ApplyMaterial(p.mu_inv, CurlEdgeToFace(approx.E[k], grid));
  });
  if (!second)
  {
    const auto dE = d.Apply(approx.E);
    source = Collect(grid, [&](int k) {
      auto s = ApplyMaterial(p.eps, d.At(dE, k));
      subtract_k(s, k);
      return s;
    });
    curl_rate = Collect(grid, [&](int k) {
      return ApplyMaterial(p.mu_inv, CurlEdgeToFace(dE[k], grid));
    });
    dt_e0 = p.E0prime - dE[0];
  }
  else
  {
    source = Collect(grid, [&](int k) {
      auto s = ApplyMaterial(p.eps, d.At(approx.Et, k));
      subtract_k(s, k);
      return s;
    });
    curl_rate = Collect(grid, [&](int k) {
      return ApplyMaterial(p.mu_inv, CurlEdgeToFace(approx.Et[k], grid));
    });
    mismatch = Collect(grid, [&](int k) {
      return CurlEdgeToFace(approx.Et[k] - d.At(approx.E, k), grid);
    });
    dt_e0 = p.E0prime - approx.Et[0];
  }
  curl_e0 = CurlEdgeToFace(p.E0 - approx.E[0], grid);
}

double NodeTerms::ZeroTerm(ZeroTermVariant v) const
{
  switch (v)
  {
    case ZeroTermVariant::Z:
      return dt_e0_sq + curl_e0_sq + 2.0 * cross0;
    case ZeroTermVariant::ZTilde:
      return dt_e0_sq + curl_e0_sq + 2.0 * std::abs(cross0);
    case ZeroTermVariant::ZHat:
      return dt_e0_sq + 2.0 * curl_e0_sq + ktilde0_sq;
  }
  return 0.0;
}

FieldTrajectory DefaultY(const ProblemData &p, const SolveOutput &approx)
{
  RequireMatchingGrid(approx, p.grid);
  return Collect(p.grid, [&](int k) {
    return ApplyMaterial(p.mu_inv, CurlEdgeToFace(approx.E[k], p.grid));
  });
}

Residuals ComputeResiduals(const ProblemData &p, const SolveOutput &approx,
                           const FieldTrajectory &Y)
{
  RequireY(Y, p.grid);
  const auto &grid = p.grid;
  Residuals r;
  const ResidualBase first(p, approx, false);
  r.Khat = Collect(grid, [&](int k) { return first.source[k] + CurlFaceToEdge(Y[k], grid); });
  r.Ktilde = Collect(grid, [&](int k) { return first.curl_value[k] - Y[k]; });
  if (!approx.Et.empty())
  {
    const ResidualBase second(p, approx, true);
    r.Kcheck =
        Collect(grid, [&](int k) { return second.source[k] + CurlFaceToEdge(Y[k], grid); });
    r.Rt = Collect(grid, [&](int k) { return second.curl_rate[k] - second.d.At(Y, k); });
  }
  return r;
}

NodeTerms EvaluateTerms(const ResidualBase &base, const FieldTrajectory &Y)
{
  const auto &p = *base.problem;
  const auto &grid = p.grid;
  RequireY(Y, grid);
  const int nt = grid.nt;
  NodeTerms t;
  t.source_sq.resize(nt);
  t.rate_sq.resize(nt);
  t.ktilde_sq.resize(nt);
  t.coupling.assign(nt, 0.0);
  ParallelFor(nt, [&](int k) {
    const auto khat = base.source[k] + CurlFaceToEdge(Y[k], grid);
    t.source_sq[k] = WeightedNormSq(khat, p.eps_inv);
    const auto rate = base.curl_rate[k] - base.d.At(Y, k);
    t.rate_sq[k] = WeightedNormSq(rate, p.mu);
    const auto kt = base.curl_value[k] - Y[k];
    t.ktilde_sq[k] = WeightedNormSq(kt, p.mu);
    if (base.mismatch)
    {
      t.coupling[k] = AveragedInner(kt, (*base.mismatch)[k], grid);
    }
    if (k == 0)
    {
      t.cross0 = AveragedInner(kt, base.curl_e0, grid);
    }
  });
  t.ktilde0_sq = t.ktilde_sq[0];
  t.dt_e0_sq = WeightedNormSq(base.dt_e0, p.eps);
  t.curl_e0_sq = WeightedNormSq(base.curl_e0, p.mu_inv);
  return t;
}

double ZeroTerm(const ProblemData &p, const SolveOutput &approx, const FieldTrajectory &Y,
                ZeroTermVariant variant, bool second_form)
{
  RequireY(Y, p.grid);
  const auto &grid = p.grid;
  StaggeredField dt_e0 =
      p.E0prime -
      (second_form ? approx.Et[0] : TimeStencil::Accurate(grid.nt, grid.dt()).At(approx.E, 0));
  const auto curl_e0 = CurlEdgeToFace(p.E0 - approx.E[0], grid);
  const auto kt0 = ApplyMaterial(p.mu_inv, CurlEdgeToFace(approx.E[0], grid)) - Y[0];
  NodeTerms t;
  t.dt_e0_sq = WeightedNormSq(dt_e0, p.eps);
  t.curl_e0_sq = WeightedNormSq(curl_e0, p.mu_inv);
  t.cross0 = AveragedInner(kt0, curl_e0, grid);
  t.ktilde0_sq = WeightedNormSq(kt0, p.mu);
  return t.ZeroTerm(variant);
}

std::vector<double> AssembleF(const NodeTerms &terms, Theorem theorem,
                              const MajorantParams &params, double dt)
{
  const int nt = static_cast<int>(terms.source_sq.size());
  params.Validate(nt);
  if (UsesConstantParams(theorem) && !params.IsConstant())
  {
    throw ParameterError(std::string(ToString(theorem)) + " needs constant gamma and rho");
  }
  const double z = terms.ZeroTerm(params.zero_term);
  std::vector<double> f(nt);
  if (UsesConstantParams(theorem))
  {
    const double g = params.gamma[0], r = params.rho[0];
    const auto A = CumulativeTrapezoid(terms.source_sq, dt);
    const auto C = CumulativeTrapezoid(terms.rate_sq, dt);
    for (int k = 0; k < nt; k++)
    {
      f[k] = A[k] / g + C[k] / (g * r) + terms.ktilde_sq[k] / (1.0 - r);
    }
  }
  else
  {
    std::vector<double> a(nt), c(nt);
    for (int k = 0; k < nt; k++)
    {
      const double g = params.GammaAt(k), r = params.RhoAt(k);
      a[k] = terms.source_sq[k] / g;
      c[k] = terms.rate_sq[k] / (g * r);
    }
    const auto A = CumulativeTrapezoid(a, dt);
    const auto C = CumulativeTrapezoid(c, dt);
    for (int k = 0; k < nt; k++)
    {
      f[k] = terms.ktilde_sq[k] / (1.0 - params.RhoAt(k)) + A[k] + C[k];
    }
  }
  if (UsesSecondForm(theorem))
  {
    const auto Q = CumulativeTrapezoid(terms.coupling, dt);
    for (int k = 0; k < nt; k++)
    {
      f[k] += 2.0 * (params.abs_coupling ? std::abs(Q[k]) : Q[k]);
    }
  }
  for (double &v : f)
  {
    v += z;
  }
  return f;
}

ScalarTrajectory FFirstForm(const ProblemData &p, const SolveOutput &approx,
                            const MajorantParams &params)
{
  CheckPreconditions(p, approx, params, Theorem::T1);
  const ResidualBase base(p, approx, false);
  const auto Y = params.Y ? *params.Y : DefaultY(p, approx);
  return {AssembleF(EvaluateTerms(base, Y), Theorem::T1, params, p.grid.dt()), p.grid.dt()};
}

ScalarTrajectory FRefined(const ProblemData &p, const SolveOutput &approx,
                          const MajorantParams &params)
{
  CheckPreconditions(p, approx, params, Theorem::T3);
  const ResidualBase base(p, approx, false);
  const auto Y = params.Y ? *params.Y : DefaultY(p, approx);
  return {AssembleF(EvaluateTerms(base, Y), Theorem::T3, params, p.grid.dt()), p.grid.dt()};
}

ScalarTrajectory FSecondForm(const ProblemData &p, const SolveOutput &approx,
                             const MajorantParams &params)
{
  CheckPreconditions(p, approx, params, Theorem::T4);
  const ResidualBase base(p, approx, true);
  const auto Y = params.Y ? *params.Y : DefaultY(p, approx);
  return {AssembleF(EvaluateTerms(base, Y), Theorem::T4, params, p.grid.dt()), p.grid.dt()};
}

BoundPair ComputeBounds(const std::vector<double> &f, const MajorantParams &params,
                        Theorem theorem, double dt)
{
  const int nt = static_cast<int>(f.size());
  params.Validate(nt);
  const ScalarTrajectory fs{f, dt};
  BoundPair out;
  if (UsesConstantParams(theorem))
  {
    if (!params.IsConstant())
    {
      throw ParameterError(std::string(ToString(theorem)) + " needs constant gamma and rho");
    }
    const double g = params.gamma[0];
    out.b = GronwallIntegralConstant(g, fs).values;
    out.B = GronwallDifferentialConstant(0.0, g, fs).values;
  }
  else
  {
    const ScalarTrajectory gamma{Expand(params.gamma, nt), dt};
    out.b = GronwallIntegral(gamma, fs).values;
    out.B.resize(nt);
    for (int k = 0; k < nt; k++)
    {
      out.B[k] = out.b[k] - f[k];
    }
  }
  return out;
}

ErrorParts ComputeErrorParts(const ProblemData &p, const SolveOutput &exact,
                             const SolveOutput &approx, bool second_form)
{
  RequireMatchingGrid(exact, p.grid);
  RequireMatchingGrid(approx, p.grid);
  const auto &grid = p.grid;
  if (exact.E.empty() || exact.Et.empty())
  {
    throw PreconditionError("true error norms need the exact E and dE/dt");
  }
  if (second_form && approx.Et.empty())
  {
    throw PreconditionError("second-form error norms need an approximation of dE/dt");
  }
  const auto d = TimeStencil::Accurate(grid.nt, grid.dt());
  ErrorParts parts;
  parts.first_sq = PerNode(grid.nt, [&](int k) {
    const auto et = exact.Et[k] - (second_form ? approx.Et[k] : d.At(approx.E, k));
    return WeightedNormSq(et, p.eps);
  });
  parts.curl_sq = PerNode(grid.nt, [&](int k) {
    return WeightedNormSq(CurlEdgeToFace(exact.E[k] - approx.E[k], grid), p.mu_inv);
  });
  return parts;
}

ErrorNorms TrueErrorNorms(const ErrorParts &parts, const MajorantParams &params,
                          Theorem theorem, double dt)
{
  const int nt = static_cast<int>(parts.first_sq.size());
  params.Validate(nt);
  ErrorNorms out;
  out.n.resize(nt);
  std::vector<double> weighted(nt);
  for (int k = 0; k < nt; k++)
  {
    out.n[k] = parts.first_sq[k] + params.RhoAt(k) * parts.curl_sq[k];
    weighted[k] = UsesConstantParams(theorem) ? out.n[k] : params.GammaAt(k) * out.n[k];
  }
  out.N = CumulativeTrapezoid(weighted, dt);
  return out;
}

ErrorNorms TrueErrorNorms(const SolveOutput &exact, const SolveOutput &approx,
                          const ProblemData &p, const MajorantParams &params, Theorem theorem)
{
  return TrueErrorNorms(ComputeErrorParts(p, exact, approx, UsesSecondForm(theorem)), params,
                        theorem, p.grid.dt());
}

double EnergyScale(const ProblemData &p)
{
  const double e = WeightedNormSq(p.E0, p.eps) + WeightedNormSq(p.H0, p.mu);
  return e > 0.0 ? e : 1.0;
}

MajorantReport ReportFromTerms(const NodeTerms &terms, const ErrorParts *truth,
                               const MajorantParams &params, Theorem theorem,
                               const GridSpec &grid, double energy_scale)
{
  const int nt = grid.nt;
  const double dt = grid.dt();
  MajorantReport r;
  r.theorem = theorem;
  r.zero_term = params.zero_term;
  r.abs_coupling = params.abs_coupling;
  r.energy_scale = energy_scale;
  r.time.resize(nt);
  for (int k = 0; k < nt; k++)
  {
    r.time[k] = grid.Time(k);
  }
  r.f = AssembleF(terms, theorem, params, dt);
  auto bounds = ComputeBounds(r.f, params, theorem, dt);
  r.bound_b = std::move(bounds.b);
  r.bound_B = std::move(bounds.B);
  r.zero_term_value = terms.ZeroTerm(params.zero_term);
  r.gamma = Expand(params.gamma, nt);
  r.rho = Expand(params.rho, nt);
  if (truth)
  {
    auto norms = TrueErrorNorms(*truth, params, theorem, dt);
    r.has_truth = true;
    r.trueN = std::move(norms.n);
    r.trueBigN = std::move(norms.N);
    const double threshold = 1e3 * std::numeric_limits<double>::epsilon() * energy_scale;
    r.efficiency.resize(nt);
    for (int k = 0; k < nt; k++)
    {
      r.efficiency[k] = r.trueN[k] > threshold ? r.bound_b[k] / r.trueN[k]
                                               : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return r;
}

void CheckPreconditions(const ProblemData &p, const SolveOutput &approx,
                        const MajorantParams &params, Theorem theorem)
{
  params.Validate(p.grid.nt);
  if (UsesConstantParams(theorem) && !params.IsConstant())
  {
    throw ParameterError(std::string(ToString(theorem)) + " needs constant gamma and rho");
  }
  if (approx.E.empty())
  {
    throw PreconditionError("approximation has no E trajectory");
  }
  RequireMatchingGrid(approx, p.grid);
  if (!UsesSecondForm(theorem) && p.grid.nt < 5)
  {
    throw PreconditionError(std::string(ToString(theorem)) +
                            " needs second time differences of E~, i.e. at least 5 nodes");
  }
  if (UsesSecondForm(theorem) && approx.Et.empty())
  {
    throw PreconditionError(std::string(ToString(theorem)) +
                            " needs an approximation Et of dE/dt");
  }
  if (params.Y)
  {
    RequireY(*params.Y, p.grid);
  }
}

MajorantReport Certify(const ProblemData &p, const SolveOutput &approx,
                       const MajorantParams &params, Theorem theorem, const SolveOutput *exact)
{
  const auto start = std::chrono::steady_clock::now();
  CheckPreconditions(p, approx, params, theorem);
  const bool second = UsesSecondForm(theorem);
  NodeTerms terms;
  {
    const ResidualBase base(p, approx, second);
    terms = EvaluateTerms(base, params.Y ? *params.Y : DefaultY(p, approx));
  }
  std::optional<ErrorParts> truth;
  if (exact)
  {
    truth = ComputeErrorParts(p, *exact, approx, second);
  }
  auto report =
      ReportFromTerms(terms, truth ? &*truth : nullptr, params, theorem, p.grid, EnergyScale(p));
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CombinedReport CombinedEstimate(const ProblemData &p, const SolveOutput &approx,
                                const MajorantParams &params, Theorem theorem,
                                const SolveOutput *exact)
{
  if (!UsesSecondForm(theorem))
  {
    throw ParameterError("combined estimate uses the second-form majorant (T4 or T5)");
  }
  if (approx.H.empty() || approx.Ht.empty())
  {
    throw PreconditionError("combined estimate needs H~ and an approximation of dH/dt");
  }
  const auto &grid = p.grid;
  CombinedReport c;
  c.electric = Certify(p, approx, params, theorem, exact);
  c.f_res_sq = PerNode(grid.nt, [&](int k) {
    auto f = p.SourceF(k) - approx.Et[k] +
             ApplyMaterial(p.eps_inv, CurlFaceToEdge(approx.H[k], grid));
    return WeightedNormSq(f, p.eps);
  });
  c.g_res_sq = PerNode(grid.nt, [&](int k) {
    auto g = p.SourceG(k) - approx.Ht[k] -
             ApplyMaterial(p.mu_inv, CurlEdgeToFace(approx.E[k], grid));
    return WeightedNormSq(g, p.mu);
  });
  c.bound.resize(grid.nt);
  for (int k = 0; k < grid.nt; k++)
  {
    c.bound[k] = 3.0 * c.electric.bound_b[k] + 2.0 * c.f_res_sq[k] + 2.0 * c.g_res_sq[k];
  }
  if (exact)
  {
    if (exact->H.empty() || exact->Ht.empty())
    {
      throw PreconditionError("combined truth needs the exact H and dH/dt");
    }
    c.has_truth = true;
    c.truth = PerNode(grid.nt, [&](int k) {
      const auto h = exact->H[k] - approx.H[k];
      const auto ht = exact->Ht[k] - approx.Ht[k];
      return c.electric.trueN[k] + params.RhoAt(k) * WeightedNormSq(ht, p.mu) +
             WeightedNormSq(CurlFaceToEdge(h, grid), p.eps_inv);
    });
  }
  return c;
}

}  // namespace maxmaj
