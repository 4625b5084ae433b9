// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/optimize.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "maxmaj/curl.hpp"
#include "maxmaj/error.hpp"
#include "maxmaj/norms.hpp"
#include "maxmaj/parallel.hpp"
#include "maxmaj/quadrature.hpp"

namespace maxmaj
{

namespace
{

struct GoldenResult
{
  double x = 0.0;
  double value = 0.0;
  bool at_endpoint = false;
};

// Minimizes fn(exp(s)) over s in [log lo, log hi]; endpoints are compared explicitly so a
// flat objective returns lo.
GoldenResult GoldenLog(const std::function<double(double)> &fn, double lo, double hi, double tol)
{
  GoldenResult best{lo, fn(lo), true};
  if (hi <= lo)
  {
    return best;
  }
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(lo), b = std::log(hi);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = fn(std::exp(x1)), f2 = fn(std::exp(x2));
  const double stop = std::log1p(tol);
  while (b - a > stop)
  {
    if (f1 <= f2)
    {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = fn(std::exp(x1));
    }
    else
    {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = fn(std::exp(x2));
    }
  }
  const double xi = f1 <= f2 ? std::exp(x1) : std::exp(x2);
  const double fi = std::min(f1, f2);
  if (fi < best.value)
  {
    best = {xi, fi, false};
  }
  const double fh = fn(hi);
  if (fh < best.value)
  {
    best = {hi, fh, true};
  }
  return best;
}

int PieceOf(int k, int nt, int pieces)
{
  return std::min(pieces - 1, k * pieces / nt);
}

}  // namespace

void OptimizeConfig::Validate() const
{
  if (!(gamma_min > 0.0) || !(gamma_max >= gamma_min) || !std::isfinite(gamma_max))
  {
    throw ParameterError("optimizer: gamma bracket must satisfy 0 < gamma_min <= gamma_max");
  }
  if (rho_grid.empty())
  {
    throw ParameterError("optimizer: rho grid is empty");
  }
  for (std::size_t i = 0; i < rho_grid.size(); i++)
  {
    if (!(rho_grid[i] > 0.0 && rho_grid[i] < 1.0) || (i > 0 && !(rho_grid[i] > rho_grid[i - 1])))
    {
      throw ParameterError("optimizer: rho grid must be increasing inside (0,1)");
    }
  }
  if (!(gamma_tol > 0.0 && gamma_tol < 1.0) || !(cg_tol > 0.0 && cg_tol < 1.0))
  {
    throw ParameterError("optimizer: tolerances must lie in (0,1)");
  }
  if (cg_max_iter < 0 || sweeps < 0 || gamma_pieces < 1 || coordinate_passes < 0)
  {
    throw ParameterError("optimizer: iteration counts must be nonnegative");
  }
}

double BoundAt(const NodeTerms &terms, const MajorantParams &params, Theorem theorem, double dt,
               int target)
{
  const auto f = AssembleF(terms, theorem, params, dt);
  if (target < 0 || target >= static_cast<int>(f.size()))
  {
    throw ParameterError("optimizer: target node out of range");
  }
  return ComputeBounds(f, params, theorem, dt).b[target];
}

GammaRhoResult OptimizeGammaRho(const NodeTerms &terms, Theorem theorem,
                                const OptimizeConfig &cfg, double dt, ZeroTermVariant zero_term,
                                bool abs_coupling)
{
  cfg.Validate();
  const int nt = static_cast<int>(terms.source_sq.size());
  const int target = cfg.Target(nt);
  MajorantParams params;
  params.zero_term = zero_term;
  params.abs_coupling = abs_coupling;
  GammaRhoResult best;
  bool have = false;
  bool endpoint = false;
  for (double rho : cfg.rho_grid)
  {
    params.rho = {rho};
    auto constant = [&](double g) {
      params.gamma = {g};
      return BoundAt(terms, params, theorem, dt, target);
    };
    const auto g0 = GoldenLog(constant, cfg.gamma_min, cfg.gamma_max, cfg.gamma_tol);
    std::vector<double> gamma{g0.x};
    double value = g0.value;
    bool at_end = g0.at_endpoint;
    if (!UsesConstantParams(theorem) && cfg.gamma_pieces > 1)
    {
      gamma.assign(nt, g0.x);
      std::vector<bool> piece_end(cfg.gamma_pieces, g0.at_endpoint);
      for (int pass = 0; pass < cfg.coordinate_passes; pass++)
      {
        for (int piece = 0; piece < cfg.gamma_pieces; piece++)
        {
          auto piecewise = [&](double g) {
            auto trial = gamma;
            for (int k = 0; k < nt; k++)
            {
              if (PieceOf(k, nt, cfg.gamma_pieces) == piece)
              {
                trial[k] = g;
              }
            }
            params.gamma = trial;
            return BoundAt(terms, params, theorem, dt, target);
          };
          const auto gp = GoldenLog(piecewise, cfg.gamma_min, cfg.gamma_max, cfg.gamma_tol);
          if (gp.value < value)
          {
            value = gp.value;
            for (int k = 0; k < nt; k++)
            {
              if (PieceOf(k, nt, cfg.gamma_pieces) == piece)
              {
                gamma[k] = gp.x;
              }
            }
            piece_end[piece] = gp.at_endpoint;
          }
        }
      }
      at_end = false;
      for (bool e : piece_end)
      {
        at_end = at_end || e;
      }
    }
    if (!have || value < best.bound)
    {
      best.gamma = gamma;
      best.rho = rho;
      best.bound = value;
      endpoint = at_end;
      have = true;
    }
  }
  if (endpoint && cfg.gamma_min < cfg.gamma_max)
  {
    std::ostringstream msg;
    msg << "gamma optimum on the bracket endpoint [" << cfg.gamma_min << ", " << cfg.gamma_max
        << "]; consider widening the bracket";
    best.warnings.push_back(msg.str());
  }
  return best;
}

GammaRhoResult OptimizeGammaRho(const ProblemData &p, const SolveOutput &approx,
                                const FieldTrajectory &Y, const OptimizeConfig &cfg,
                                Theorem theorem, ZeroTermVariant zero_term)
{
  auto params = MajorantParams::Constant(1.0, 0.5);
  params.Y = Y;
  CheckPreconditions(p, approx, params, theorem);
  const ResidualBase base(p, approx, UsesSecondForm(theorem));
  return OptimizeGammaRho(EvaluateTerms(base, Y), theorem, cfg, p.grid.dt(), zero_term);
}

YQuadratic::YQuadratic(const ResidualBase &base, const MajorantParams &params, Theorem theorem,
                       int target, const NodeTerms &current)
    : base_(&base)
{
  const auto &p = *base.problem;
  const auto &grid = p.grid;
  const int nt = grid.nt;
  const double dt = grid.dt();
  params.Validate(nt);
  if (target < 0 || target >= nt)
  {
    throw ParameterError("optimizer: target node out of range");
  }
  if (UsesConstantParams(theorem) && !params.IsConstant())
  {
    throw ParameterError(std::string(ToString(theorem)) + " needs constant gamma and rho");
  }
  // Weights of b(t_K) = sum_m W_m f_m, matching the integral-form Gronwall quadrature.
  std::vector<double> omega(nt, 0.0);
  if (UsesConstantParams(theorem))
  {
    const double g = params.gamma[0];
    for (int i = 0; i < target; i++)
    {
      omega[i] = std::exp(g * target * dt) * (std::exp(-g * i * dt) - std::exp(-g * (i + 1) * dt));
    }
  }
  else
  {
    std::vector<double> gamma(nt);
    for (int k = 0; k < nt; k++)
    {
      gamma[k] = params.GammaAt(k);
    }
    const auto G = CumulativeTrapezoid(gamma, dt);
    for (int i = 0; i < target; i++)
    {
      omega[i] = std::exp(G[target]) * (std::exp(-G[i]) - std::exp(-G[i + 1]));
    }
  }
  std::vector<double> W(nt, 0.0);
  for (int m = 0; m <= target; m++)
  {
    W[m] = (m == target ? 1.0 : 0.0) + 0.5 * ((m >= 1 ? omega[m - 1] : 0.0) + omega[m]);
  }
  // Coupling signs for the absolute-value variant.
  std::vector<double> sigma(nt, 1.0);
  if (params.abs_coupling)
  {
    const auto Q = CumulativeTrapezoid(current.coupling, dt);
    for (int m = 0; m < nt; m++)
    {
      sigma[m] = Q[m] >= 0.0 ? 1.0 : -1.0;
    }
  }
  // S_j = sum_m W_m tau^m_j with trapezoid weights tau^m_j of int_0^{t_m}.
  std::vector<double> S(nt, 0.0), L(nt, 0.0);
  for (int m = 1; m <= target; m++)
  {
    for (int j = 0; j <= m; j++)
    {
      const double tau = (j == 0 || j == m) ? 0.5 * dt : dt;
      S[j] += W[m] * tau;
      L[j] += W[m] * sigma[m] * tau;
    }
  }
  alpha_.resize(nt);
  beta_.resize(nt);
  kappa_.resize(nt);
  lambda_.assign(nt, 0.0);
  for (int k = 0; k < nt; k++)
  {
    const double g = params.GammaAt(k), r = params.RhoAt(k);
    alpha_[k] = W[k] / (1.0 - r);
    beta_[k] = S[k] / g;
    kappa_[k] = S[k] / (g * r);
    if (UsesSecondForm(theorem))
    {
      lambda_[k] = 2.0 * L[k];
    }
  }
  for (int m = 0; m <= target; m++)
  {
    wsum_ += W[m];
  }
  zhat_ = params.zero_term == ZeroTermVariant::ZHat;
  if (zhat_)
  {
    alpha_[0] += wsum_;
  }
  else if (params.zero_term == ZeroTermVariant::Z)
  {
    cross_weight_ = 2.0 * wsum_;
  }
  else
  {
    cross_weight_ = 2.0 * wsum_ * (current.cross0 >= 0.0 ? 1.0 : -1.0);
  }

  // Rough per-node diagonal of H: mass, curl-curl and time-derivative contributions.
  const double curl_diag =
      4.0 / 3.0 *
      (1.0 / (grid.hx() * grid.hx()) + 1.0 / (grid.hy() * grid.hy()) + 1.0 / (grid.hz() * grid.hz()));
  scale_.assign(nt, 0.0);
  for (int i = 0; i < nt; i++)
  {
    scale_[i] += 2.0 * alpha_[i] * p.mu.LambdaMax() + 2.0 * beta_[i] * curl_diag * p.eps_inv.LambdaMax();
    for (const auto &[k, c] : base.d.row(i))
    {
      scale_[k] += 2.0 * kappa_[i] * c * c * p.mu.LambdaMax();
    }
  }
  for (double &s : scale_)
  {
    s = s > 0.0 ? 1.0 / s : 1.0;
  }

  const auto identity = MaterialField::Scalar(grid, 1.0);
  std::vector<StaggeredField> rhs(nt), rate(nt);
  ParallelFor(nt, [&](int k) {
    StaggeredField out(FieldKind::Face, grid);
    if (alpha_[k] != 0.0)
    {
      out.Axpy(2.0 * alpha_[k], WeightedMass(base.curl_value[k], p.mu));
    }
    if (beta_[k] != 0.0)
    {
      auto m = WeightedMass(base.source[k], p.eps_inv);
      m.ApplyTangentialBoundary();
      out.Axpy(-2.0 * beta_[k], CurlEdgeToFace(m, grid));
    }
    StaggeredField ell(FieldKind::Face, grid);
    if (lambda_[k] != 0.0 && base.mismatch)
    {
      ell.Axpy(lambda_[k], (*base.mismatch)[k]);
    }
    if (k == 0 && cross_weight_ != 0.0)
    {
      ell.Axpy(cross_weight_, base.curl_e0);
    }
    out += WeightedMass(ell, identity);
    rhs[k] = std::move(out);
    rate[k] = kappa_[k] != 0.0 ? 2.0 * kappa_[k] * WeightedMass(base.curl_rate[k], p.mu)
                               : StaggeredField(FieldKind::Face, grid);
  });
  rhs_ = FieldTrajectory(grid, std::move(rhs));
  rhs_ += base.d.ApplyTranspose(FieldTrajectory(grid, std::move(rate)));
}

FieldTrajectory YQuadratic::Apply(const FieldTrajectory &v) const
{
  const auto &p = *base_->problem;
  const auto &grid = p.grid;
  const int nt = grid.nt;
  std::vector<StaggeredField> out(nt), rate(nt);
  ParallelFor(nt, [&](int k) {
    StaggeredField o(FieldKind::Face, grid);
    if (alpha_[k] != 0.0)
    {
      o.Axpy(2.0 * alpha_[k], WeightedMass(v[k], p.mu));
    }
    if (beta_[k] != 0.0)
    {
      auto m = WeightedMass(CurlFaceToEdge(v[k], grid), p.eps_inv);
      m.ApplyTangentialBoundary();
      o.Axpy(2.0 * beta_[k], CurlEdgeToFace(m, grid));
    }
    out[k] = std::move(o);
    rate[k] = kappa_[k] != 0.0 ? 2.0 * kappa_[k] * WeightedMass(base_->d.At(v, k), p.mu)
                               : StaggeredField(FieldKind::Face, grid);
  });
  FieldTrajectory result(grid, std::move(out));
  result += base_->d.ApplyTranspose(FieldTrajectory(grid, std::move(rate)));
  return result;
}

FieldTrajectory YQuadratic::Precondition(const FieldTrajectory &r) const
{
  FieldTrajectory z = r;
  for (int k = 0; k < z.size(); k++)
  {
    z[k] *= scale_[k];
  }
  return z;
}

double YQuadratic::Value(const FieldTrajectory &Y) const
{
  const auto t = EvaluateTerms(*base_, Y);
  double q = 0.0;
  for (std::size_t k = 0; k < alpha_.size(); k++)
  {
    q += alpha_[k] * t.ktilde_sq[k] + beta_[k] * t.source_sq[k] + kappa_[k] * t.rate_sq[k] +
         lambda_[k] * t.coupling[k];
  }
  q += wsum_ * (t.dt_e0_sq + (zhat_ ? 2.0 : 1.0) * t.curl_e0_sq) + cross_weight_ * t.cross0;
  return q;
}

double SpaceTimeInner(const FieldTrajectory &a, const FieldTrajectory &b)
{
  if (a.size() != b.size())
  {
    throw DimensionError("space-time inner product: length mismatch");
  }
  std::vector<double> parts(a.size());
  ParallelFor(a.size(), [&](int k) { parts[k] = PlainInner(a[k], b[k], a.grid()); });
  double s = 0.0;
  for (double v : parts)
  {
    s += v;
  }
  return s;
}

CGResult MinimizeQuadratic(const YQuadratic &q, FieldTrajectory Y0, int max_iter, double tol)
{
  CGResult res;
  res.Y = std::move(Y0);
  FieldTrajectory r = q.Rhs();
  r -= q.Apply(res.Y);
  double ref = std::sqrt(SpaceTimeInner(q.Rhs(), q.Rhs()));
  if (ref == 0.0)
  {
    ref = std::sqrt(SpaceTimeInner(r, r));
  }
  res.history.push_back(q.Value(res.Y));
  auto done = [&](const FieldTrajectory &res_now) {
    const double norm = std::sqrt(SpaceTimeInner(res_now, res_now));
    res.relative_residual = ref > 0.0 ? norm / ref : 0.0;
    return ref == 0.0 || norm <= tol * ref;
  };
  if (done(r))
  {
    res.converged = true;
    return res;
  }
  FieldTrajectory z = q.Precondition(r);
  double rz = SpaceTimeInner(r, z);
  FieldTrajectory dir = z;
  for (int it = 0; it < max_iter; it++)
  {
    const auto Hd = q.Apply(dir);
    const double dHd = SpaceTimeInner(dir, Hd);
    if (dHd < 0.0)
    {
      const double scale = std::sqrt(SpaceTimeInner(dir, dir) * SpaceTimeInner(Hd, Hd));
      if (dHd < -1e-12 * scale)
      {
        throw SolverError("conjugate gradients met negative curvature; the Y functional is not "
                          "positive semidefinite");
      }
    }
    if (dHd <= 0.0 || rz <= 0.0)
    {
      break;
    }
    const double a = rz / dHd;
    res.Y.Axpy(a, dir);
    r.Axpy(-a, Hd);
    res.history.push_back(res.history.back() - 0.5 * a * rz);
    res.iterations = it + 1;
    if (done(r))
    {
      res.converged = true;
      break;
    }
    z = q.Precondition(r);
    const double rz_new = SpaceTimeInner(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    z.Axpy(beta, dir);
    dir = std::move(z);
  }
  return res;
}

CGResult OptimizeY(const ProblemData &p, const SolveOutput &approx, const MajorantParams &params,
                   Theorem theorem, const OptimizeConfig &cfg)
{
  cfg.Validate();
  CheckPreconditions(p, approx, params, theorem);
  const ResidualBase base(p, approx, UsesSecondForm(theorem));
  auto Y0 = params.Y ? *params.Y : DefaultY(p, approx);
  const auto terms = EvaluateTerms(base, Y0);
  const YQuadratic q(base, params, theorem, cfg.Target(p.grid.nt), terms);
  return MinimizeQuadratic(q, std::move(Y0), cfg.cg_max_iter, cfg.cg_tol);
}

MajorantReport OptimizeAll(const ProblemData &p, const SolveOutput &approx,
                           const MajorantParams &initial, Theorem theorem,
                           const OptimizeConfig &cfg, const SolveOutput *exact,
                           MajorantParams *final_params)
{
  const auto start = std::chrono::steady_clock::now();
  cfg.Validate();
  CheckPreconditions(p, approx, initial, theorem);
  const auto &grid = p.grid;
  const double dt = grid.dt();
  const int target = cfg.Target(grid.nt);
  const ResidualBase base(p, approx, UsesSecondForm(theorem));
  MajorantParams params = initial;
  if (!params.Y)
  {
    params.Y = cfg.y_init == YInit::Zero ? FieldTrajectory(FieldKind::Face, grid)
                                         : DefaultY(p, approx);
  }
  auto terms = EvaluateTerms(base, *params.Y);
  double current = BoundAt(terms, params, theorem, dt, target);
  int cg_iterations = 0;
  std::vector<std::string> warnings;
  for (int sweep = 0; sweep < cfg.sweeps; sweep++)
  {
    warnings.clear();
    const YQuadratic q(base, params, theorem, target, terms);
    auto cg = MinimizeQuadratic(q, *params.Y, cfg.cg_max_iter, cfg.cg_tol);
    cg_iterations += cg.iterations;
    auto trial = EvaluateTerms(base, cg.Y);
    const double value = BoundAt(trial, params, theorem, dt, target);
    if (value <= current)
    {
      params.Y = std::move(cg.Y);
      terms = std::move(trial);
      current = value;
    }
    else
    {
      warnings.push_back("Y step rejected in sweep " + std::to_string(sweep + 1) +
                         " (bound would increase)");
    }
    auto gr = OptimizeGammaRho(terms, theorem, cfg, dt, params.zero_term, params.abs_coupling);
    if (gr.bound <= current)
    {
      params.gamma = gr.gamma;
      params.rho = {gr.rho};
      current = gr.bound;
    }
    warnings.insert(warnings.end(), gr.warnings.begin(), gr.warnings.end());
  }
  std::optional<ErrorParts> truth;
  if (exact)
  {
    truth = ComputeErrorParts(p, *exact, approx, UsesSecondForm(theorem));
  }
  auto report =
      ReportFromTerms(terms, truth ? &*truth : nullptr, params, theorem, grid, EnergyScale(p));
  report.cg_iterations = cg_iterations;
  report.sweeps = cfg.sweeps;
  report.warnings = std::move(warnings);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (final_params)
  {
    *final_params = std::move(params);
  }
  return report;
}

}  // namespace maxmaj
