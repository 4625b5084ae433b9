// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "maxmaj/curl.hpp"
#include "maxmaj/error.hpp"
#include "maxmaj/majorant.hpp"
#include "maxmaj/norms.hpp"
#include "maxmaj/quadrature.hpp"
#include "maxmaj/report.hpp"
#include "maxmaj/solver.hpp"
#include "test_util.hpp"

using namespace maxmaj;
using maxmaj::test::RandomField;
using maxmaj::test::Rate;
using maxmaj::test::UnitGrid;

namespace
{

ProblemData Vacuum(const GridSpec &grid, ManufacturedCase c)
{
  return AssembleProblem(grid, MaterialField::Scalar(grid, 1.0), MaterialField::Scalar(grid, 1.0),
                         std::move(c));
}

struct Setup
{
  GridSpec grid;
  ProblemData p;
  SolveOutput exact;
};

Setup Cavity(int n, int nt, int m = 1, int mode_n = 1)
{
  const auto grid = UnitGrid(n, nt);
  auto c = CavityMode(grid, m, mode_n, 1.0);
  auto p = Vacuum(grid, c);
  auto ex = ProjectExact(c, grid);
  return {grid, std::move(p), std::move(ex)};
}

FieldTrajectory RandomFaceTrajectory(const GridSpec &grid, unsigned seed, double scale)
{
  std::vector<StaggeredField> s;
  for (int k = 0; k < grid.nt; k++)
  {
    auto f = RandomField(FieldKind::Face, grid, seed + k);
    f *= scale;
    s.push_back(std::move(f));
  }
  return FieldTrajectory(grid, std::move(s));
}

double RelDiff(double a, double b)
{
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Trapezoid sum written out directly.
double Trap(const std::vector<double> &v, double dt, int up_to)
{
  double s = 0.0;
  for (int i = 0; i < up_to; i++)
  {
    s += 0.5 * dt * (v[i] + v[i + 1]);
  }
  return s;
}

SolveOutput WithDiscreteRate(const SolveOutput &a, const GridSpec &grid)
{
  SolveOutput out = a;
  out.Et = TimeStencil::Accurate(grid.nt, grid.dt()).Apply(a.E);
  return out;
}

}  // namespace

TEST(Residuals, ExactFieldWithDefaultYHasNoCurlMismatch)
{
  auto s = Cavity(6, 9);
  const auto Y = DefaultY(s.p, s.exact);
  const auto r = ComputeResiduals(s.p, s.exact, Y);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_EQ(r.Ktilde[k].MaxAbs(), 0.0);
  }
}

TEST(Residuals, ZeroYLeavesCurlOfE)
{
  auto s = Cavity(6, 9);
  const FieldTrajectory zero(FieldKind::Face, s.grid);
  const auto r = ComputeResiduals(s.p, s.exact, zero);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_EQ((r.Ktilde[k] - CurlEdgeToFace(s.exact.E[k], s.grid)).MaxAbs(), 0.0);
  }
}

TEST(Residuals, SecondOrderResidualConvergesForTheAnalyticMode)
{
  double prev = 0.0;
  for (int n : {8, 16, 32})
  {
    const auto grid = UnitGrid(n, 2 * n + 1);
    const auto c = CavityMode(grid, 1, 1, 1.0, Dispersion::Continuous);
    const auto p = Vacuum(grid, c);
    const auto ex = ProjectExact(c, grid);
    const auto r = ComputeResiduals(p, ex, DefaultY(p, ex));
    const double v = r.Khat[grid.nt / 2].MaxAbs();
    if (prev > 0.0)
    {
      EXPECT_GE(Rate(prev, v), 1.9);
    }
    prev = v;
  }
}

TEST(ZeroTerm, VanishesForExactStart)
{
  auto s = Cavity(6, 9);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_t2");
  const auto Y = DefaultY(s.p, approx);
  EXPECT_LE(std::abs(ZeroTerm(s.p, approx, Y, ZeroTermVariant::Z)), 1e-26);
  EXPECT_LE(ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZTilde), 1e-26);
  EXPECT_LE(ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZHat), 1e-26);
  // The first form differentiates E~ numerically, so de/dt(0) is a truncation error.
  const double first = ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZHat, false);
  const auto fine = Cavity(6, 33);
  const auto fine_approx = PerturbApproximation(fine.exact, 1e-2, "smooth_t2");
  const double first_fine =
      ZeroTerm(fine.p, fine_approx, DefaultY(fine.p, fine_approx), ZeroTermVariant::ZHat, false);
  EXPECT_GE(Rate(first, first_fine), 7.5);
  // A wrong Y(0) only shows in the zHat variant.
  auto Yb = Y;
  Yb[0] += RandomField(FieldKind::Face, s.grid, 9);
  EXPECT_LE(std::abs(ZeroTerm(s.p, approx, Yb, ZeroTermVariant::Z)), 1e-26);
  EXPECT_GT(ZeroTerm(s.p, approx, Yb, ZeroTermVariant::ZHat), 1e-3);
}

TEST(ZeroTerm, OrderingOnRandomStarts)
{
  auto s = Cavity(5, 9);
  for (unsigned seed = 0; seed < 12; seed++)
  {
    auto approx = PerturbApproximation(s.exact, 0.05 * (1 + seed % 3), "smooth_affine");
    approx.Et[0] += 0.1 * RandomField(FieldKind::Edge, s.grid, 100 + seed);
    auto Y = DefaultY(s.p, approx);
    Y[0] += 0.2 * RandomField(FieldKind::Face, s.grid, 200 + seed);
    const double z = ZeroTerm(s.p, approx, Y, ZeroTermVariant::Z);
    const double zt = ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZTilde);
    const double zh = ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZHat);
    EXPECT_LE(z, zt);
    EXPECT_LE(zt, zh);
  }
}

TEST(FirstForm, ZeroResidualsGiveZero)
{
  const auto grid = UnitGrid(4, 9);
  const auto p = Vacuum(grid, ZeroCase(grid));
  const auto approx = ProjectExact(p.reference, grid);
  const auto f = FFirstForm(p, approx, MajorantParams::Constant(1.0, 0.5));
  for (double v : f.values)
  {
    EXPECT_EQ(v, 0.0);
  }
  const auto fr = FRefined(p, approx, MajorantParams::Constant(1.0, 0.5));
  for (double v : fr.values)
  {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(FirstForm, GammaScalesOnlyTheIntegralTerms)
{
  auto s = Cavity(5, 9);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  const ResidualBase base(s.p, approx, false);
  const auto terms = EvaluateTerms(base, DefaultY(s.p, approx));
  auto a = MajorantParams::Constant(0.7, 0.4), b = MajorantParams::Constant(1.4, 0.4);
  const auto fa = AssembleF(terms, Theorem::T1, a, s.grid.dt());
  const auto fb = AssembleF(terms, Theorem::T1, b, s.grid.dt());
  const double z = terms.ZeroTerm(ZeroTermVariant::ZHat);
  for (int k = 0; k < s.grid.nt; k++)
  {
    const double fixed = terms.ktilde_sq[k] / 0.6 + z;
    EXPECT_NEAR(fa[k] - fixed, 2.0 * (fb[k] - fixed), 1e-12 * fa[k]);
  }
}

TEST(FirstForm, MatchesDirectSummation)
{
  auto s = Cavity(6, 17);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  auto params = MajorantParams::Constant(0.9, 0.35);
  params.Y = DefaultY(s.p, approx);
  (*params.Y)[3] += 0.01 * RandomField(FieldKind::Face, s.grid, 5);
  const auto &Y = *params.Y;
  const auto f = FFirstForm(s.p, approx, params);

  const auto &grid = s.grid;
  const int nt = grid.nt;
  const double dt = grid.dt();
  const auto d = TimeStencil::Accurate(nt, dt);
  const auto dE = d.Apply(approx.E);
  std::vector<double> khat(nt), rate(nt), kt(nt);
  std::vector<StaggeredField> ktilde;
  for (int k = 0; k < nt; k++)
  {
    ktilde.push_back(CurlEdgeToFace(approx.E[k], grid) - Y[k]);
  }
  const FieldTrajectory Kt(grid, ktilde);
  for (int k = 0; k < nt; k++)
  {
    const auto r = d.At(dE, k) - s.p.SourceK(k) + CurlFaceToEdge(Y[k], grid);
    khat[k] = WeightedNormSq(r, s.p.eps_inv);
    rate[k] = WeightedNormSq(d.At(Kt, k), s.p.mu);
    kt[k] = WeightedNormSq(Kt[k], s.p.mu);
  }
  const auto e0 = s.p.E0 - approx.E[0];
  const auto dte0 = s.p.E0prime - dE[0];
  const auto ce0 = CurlEdgeToFace(e0, grid);
  const double zhat = WeightedNormSq(dte0, s.p.eps) + 2.0 * WeightedNormSq(ce0, s.p.mu_inv) + kt[0];
  for (int k : {0, nt / 2, nt - 1})
  {
    const double ref = Trap(khat, dt, k) / 0.9 + Trap(rate, dt, k) / (0.9 * 0.35) + kt[k] / 0.65 + zhat;
    EXPECT_LE(RelDiff(f[k], ref), 1e-12) << k;
  }
}

TEST(Refined, ConstantWeightsMatchFirstForm)
{
  auto s = Cavity(5, 9);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  const auto params = MajorantParams::Constant(1.3, 0.6);
  const auto a = FFirstForm(s.p, approx, params);
  const auto b = FRefined(s.p, approx, params);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_LE(RelDiff(a[k], b[k]), 1e-14);
  }
}

TEST(Refined, StepWeightsMatchDirectSummation)
{
  auto s = Cavity(5, 17);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  const int nt = s.grid.nt;
  const double dt = s.grid.dt();
  MajorantParams params;
  params.gamma.assign(nt, 0.5);
  params.rho.assign(nt, 0.3);
  for (int k = nt / 2; k < nt; k++)
  {
    params.gamma[k] = 2.0;
    params.rho[k] = 0.7;
  }
  const auto f = FRefined(s.p, approx, params);
  const ResidualBase base(s.p, approx, false);
  const auto t = EvaluateTerms(base, DefaultY(s.p, approx));
  std::vector<double> a(nt), c(nt);
  for (int k = 0; k < nt; k++)
  {
    a[k] = t.source_sq[k] / params.gamma[k];
    c[k] = t.rate_sq[k] / (params.gamma[k] * params.rho[k]);
  }
  for (int k = 0; k < nt; k++)
  {
    const double ref = t.ktilde_sq[k] / (1.0 - params.rho[k]) + Trap(a, dt, k) + Trap(c, dt, k) +
                       t.ZeroTerm(ZeroTermVariant::ZHat);
    EXPECT_LE(RelDiff(f[k], ref), 1e-13) << k;
  }
}

TEST(SecondForm, DiscreteRateReducesToRefined)
{
  auto s = Cavity(5, 9);
  const auto approx = WithDiscreteRate(PerturbApproximation(s.exact, 1e-2, "smooth_affine"), s.grid);
  MajorantParams params;
  params.gamma = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3};
  params.rho = {0.4};
  const auto a = FRefined(s.p, approx, params);
  const auto b = FSecondForm(s.p, approx, params);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_LE(RelDiff(a[k], b[k]), 1e-12);
  }
}

TEST(SecondForm, ZeroResidualsGiveZero)
{
  const auto grid = UnitGrid(4, 9);
  const auto p = Vacuum(grid, ZeroCase(grid));
  const auto approx = ProjectExact(p.reference, grid);
  for (double v : FSecondForm(p, approx, MajorantParams::Constant(1.0, 0.5)).values)
  {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(SecondForm, LeapfrogMatchesDirectSummation)
{
  auto s = Cavity(8, 33);
  const auto approx = LeapfrogSolve(s.p);
  const auto &grid = s.grid;
  const int nt = grid.nt;
  const double dt = grid.dt();
  const double g = 1.7, r = 0.45;
  const auto f = FSecondForm(s.p, approx, MajorantParams::Constant(g, r));
  const auto d = TimeStencil::Accurate(nt, dt);
  const auto dE = d.Apply(approx.E);
  std::vector<StaggeredField> ys;
  for (int k = 0; k < nt; k++)
  {
    ys.push_back(CurlEdgeToFace(approx.E[k], grid));
  }
  const FieldTrajectory Y(grid, ys);
  std::vector<double> a(nt), c(nt), q(nt);
  for (int k = 0; k < nt; k++)
  {
    const auto kcheck = d.At(approx.Et, k) - s.p.SourceK(k) + CurlFaceToEdge(Y[k], grid);
    a[k] = WeightedNormSq(kcheck, s.p.eps_inv);
    c[k] = WeightedNormSq(CurlEdgeToFace(approx.Et[k], grid) - d.At(Y, k), s.p.mu);
    q[k] = AveragedInner(StaggeredField(FieldKind::Face, grid),
                         CurlEdgeToFace(approx.Et[k] - dE[k], grid), grid);
  }
  const auto dte0 = s.p.E0prime - approx.Et[0];
  const double zhat = WeightedNormSq(dte0, s.p.eps);
  for (int k : {1, nt / 2, nt - 1})
  {
    const double ref = Trap(a, dt, k) / g + Trap(c, dt, k) / (g * r) + 2.0 * Trap(q, dt, k) + zhat;
    EXPECT_LE(RelDiff(f[k], ref), 1e-12) << k;
  }
}

TEST(Bounds, ZeroFunctionalGivesZeroBounds)
{
  const std::vector<double> f(11, 0.0);
  for (auto th : {Theorem::T1, Theorem::T3, Theorem::T4, Theorem::T5})
  {
    const auto b = ComputeBounds(f, MajorantParams::Constant(2.0, 0.5), th, 0.1);
    for (int k = 0; k < 11; k++)
    {
      EXPECT_EQ(b.b[k], 0.0);
      EXPECT_EQ(b.B[k], 0.0);
    }
  }
}

TEST(Bounds, ConstantFunctionalClosedForm)
{
  const int nt = 201;
  const double dt = 1.0 / (nt - 1), g = 1.7, c = 0.3;
  const std::vector<double> f(nt, c);
  const auto one = ComputeBounds(f, MajorantParams::Constant(g, 0.5), Theorem::T1, dt);
  const auto three = ComputeBounds(f, MajorantParams::Constant(g, 0.5), Theorem::T3, dt);
  for (int k = 0; k < nt; k++)
  {
    const double t = k * dt, e = std::exp(g * t);
    EXPECT_NEAR(one.b[k], c * e, 1e-13 * e);
    EXPECT_NEAR(three.b[k], c * e, 1e-13 * e);
    EXPECT_NEAR(three.B[k], c * (e - 1.0), 1e-13 * e);
    // Unweighted differential-form integral: c (e^{gt} - 1) / g up to O(dt^2).
    EXPECT_NEAR(one.B[k], c * (e - 1.0) / g, 1e-5 * e);
  }
}

TEST(Bounds, DominateTheFunctionalAndAreMonotone)
{
  auto s = Cavity(5, 9);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  const auto f = FSecondForm(s.p, approx, MajorantParams::Constant(1.0, 0.5));
  auto larger = f.values;
  for (std::size_t k = 0; k < larger.size(); k++)
  {
    larger[k] += 1e-3 * (k % 3);
  }
  for (auto th : {Theorem::T1, Theorem::T3, Theorem::T4, Theorem::T5})
  {
    const auto params = MajorantParams::Constant(1.2, 0.5);
    const auto a = ComputeBounds(f.values, params, th, s.grid.dt());
    const auto b = ComputeBounds(larger, params, th, s.grid.dt());
    for (std::size_t k = 0; k < larger.size(); k++)
    {
      EXPECT_GE(a.b[k], f.values[k]);
      EXPECT_GE(b.b[k], a.b[k]);
      EXPECT_GE(b.B[k], a.B[k]);
    }
  }
}

TEST(TrueError, VanishesForExactAndScalesQuadratically)
{
  auto s = Cavity(5, 9);
  const auto params = MajorantParams::Constant(1.0, 0.5);
  const auto zero = TrueErrorNorms(s.exact, s.exact, s.p, params, Theorem::T5);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_EQ(zero.n[k], 0.0);
    EXPECT_EQ(zero.N[k], 0.0);
  }
  const auto a = TrueErrorNorms(s.exact, PerturbApproximation(s.exact, 1e-2, "smooth_t2"), s.p,
                                params, Theorem::T5);
  const auto b = TrueErrorNorms(s.exact, PerturbApproximation(s.exact, 5e-3, "smooth_t2"), s.p,
                                params, Theorem::T5);
  EXPECT_NEAR(b.N.back() / a.N.back(), 0.25, 0.25e-8);
}

TEST(TrueError, WeightedIntegralGrowsLikeGammaTimesN)
{
  auto s = Cavity(5, 17);
  MajorantParams params;
  params.gamma.resize(s.grid.nt);
  for (int k = 0; k < s.grid.nt; k++)
  {
    params.gamma[k] = 1.0 + 0.1 * k;
  }
  params.rho = {0.5};
  const auto e = TrueErrorNorms(s.exact, PerturbApproximation(s.exact, 1e-2, "smooth_affine"), s.p,
                                params, Theorem::T3);
  const double dt = s.grid.dt();
  for (int k = 0; k + 1 < s.grid.nt; k++)
  {
    const double slope = (e.N[k + 1] - e.N[k]) / dt;
    const double mid = 0.5 * (params.gamma[k] * e.n[k] + params.gamma[k + 1] * e.n[k + 1]);
    EXPECT_NEAR(slope, mid, 1e-12 * mid);
  }
}

TEST(Certify, ExactApproximationGivesVanishingBound)
{
  auto s = Cavity(8, 65);
  const auto params = MajorantParams::Constant(1.0, 0.5);
  for (auto th : {Theorem::T4, Theorem::T5})
  {
    const auto r = Certify(s.p, s.exact, params, th, &s.exact);
    for (double b : r.bound_b)
    {
      EXPECT_LE(b, 1e-8 * r.energy_scale) << ToString(th);
    }
    for (double e : r.efficiency)
    {
      EXPECT_TRUE(std::isnan(e));
    }
  }
}

TEST(Certify, BoundDominatesPerturbedCavityError)
{
  auto s = Cavity(6, 17, 2, 1);
  for (const char *bump : {"smooth_t2", "smooth_affine"})
  {
    const auto approx = PerturbApproximation(s.exact, 3e-2, bump);
    for (auto th : {Theorem::T1, Theorem::T3, Theorem::T4, Theorem::T5})
    {
      for (auto [g, r] : {std::pair{0.3, 0.2}, {1.0, 0.5}, {5.0, 0.9}})
      {
        for (auto zv : {ZeroTermVariant::Z, ZeroTermVariant::ZTilde, ZeroTermVariant::ZHat})
        {
          auto params = MajorantParams::Constant(g, r);
          params.zero_term = zv;
          const auto rep = Certify(s.p, approx, params, th, &s.exact);
          EXPECT_TRUE(BoundDominates(rep)) << bump << ' ' << ToString(th) << ' ' << g << ' ' << r;
        }
      }
    }
  }
}

TEST(Certify, LeapfrogBoundDominatesAndIsNonnegative)
{
  auto s = Cavity(8, 33);
  const auto approx = LeapfrogSolve(s.p);
  for (auto th : {Theorem::T3, Theorem::T4, Theorem::T5})
  {
    for (auto zv : {ZeroTermVariant::ZTilde, ZeroTermVariant::ZHat})
    {
      auto params = MajorantParams::Constant(1.0, 0.5);
      params.zero_term = zv;
      const auto r = Certify(s.p, approx, params, th, &s.exact);
      EXPECT_TRUE(BoundDominates(r)) << ToString(th);
      for (int k = 0; k < s.grid.nt; k++)
      {
        EXPECT_GE(r.bound_b[k], 0.0);
        EXPECT_GE(r.bound_B[k], 0.0);
      }
    }
  }
}

TEST(Certify, HatZeroTermNeverLowersTheBound)
{
  auto s = Cavity(5, 9);
  auto approx = PerturbApproximation(s.exact, 0.05, "smooth_affine");
  for (auto th : {Theorem::T1, Theorem::T5})
  {
    auto p1 = MajorantParams::Constant(1.0, 0.5), p2 = p1;
    p1.zero_term = ZeroTermVariant::Z;
    p2.zero_term = ZeroTermVariant::ZHat;
    const auto a = Certify(s.p, approx, p1, th), b = Certify(s.p, approx, p2, th);
    for (int k = 0; k < s.grid.nt; k++)
    {
      EXPECT_LE(a.bound_b[k], b.bound_b[k]);
    }
  }
}

TEST(Certify, SpecializationIdentities)
{
  auto s = Cavity(6, 17);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  const auto params = MajorantParams::Constant(1.3, 0.4);
  const auto t1 = Certify(s.p, approx, params, Theorem::T1, &s.exact);
  const auto t3 = Certify(s.p, approx, params, Theorem::T3, &s.exact);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_LE(RelDiff(t1.bound_b[k], t3.bound_b[k]), 1e-14) << k;
  }
  const auto discrete = WithDiscreteRate(approx, s.grid);
  const auto t4 = Certify(s.p, discrete, params, Theorem::T4, &s.exact);
  for (int k = 0; k < s.grid.nt; k++)
  {
    EXPECT_LE(RelDiff(t3.bound_b[k], t4.bound_b[k]), 1e-12) << k;
    EXPECT_LE(RelDiff(t3.trueN[k], t4.trueN[k]), 1e-12) << k;
  }
}

TEST(Certify, BoundScalesQuadraticallyInPerturbation)
{
  auto s = Cavity(6, 17);
  std::vector<double> ratios;
  for (double delta : {1e-2, 5e-3, 2.5e-3})
  {
    const auto approx = PerturbApproximation(s.exact, delta, "smooth_affine");
    const auto r = Certify(s.p, approx, MajorantParams::Constant(1.0, 0.5), Theorem::T5, &s.exact);
    ratios.push_back(r.bound_b.back() / (delta * delta));
  }
  EXPECT_LE(RelDiff(ratios[0], ratios[2]), 1e-2);
  EXPECT_LE(RelDiff(ratios[1], ratios[2]), 1e-2);
}

TEST(Certify, ReportsPreconditionViolations)
{
  auto s = Cavity(4, 4);
  const auto params = MajorantParams::Constant(1.0, 0.5);
  EXPECT_THROW(Certify(s.p, s.exact, params, Theorem::T1), PreconditionError);
  EXPECT_THROW(Certify(s.p, s.exact, params, Theorem::T3), PreconditionError);
  auto no_rate = s.exact;
  no_rate.Et = FieldTrajectory();
  EXPECT_THROW(Certify(s.p, no_rate, params, Theorem::T5), PreconditionError);
  MajorantParams varying;
  varying.gamma = {1.0, 2.0, 3.0, 4.0};
  EXPECT_THROW(Certify(s.p, s.exact, varying, Theorem::T5), ParameterError);
  EXPECT_NO_THROW(Certify(s.p, s.exact, varying, Theorem::T4));
  auto bad_y = params;
  bad_y.Y = FieldTrajectory(FieldKind::Face, UnitGrid(5, 4));
  EXPECT_THROW(Certify(s.p, s.exact, bad_y, Theorem::T5), DataMismatchError);
  EXPECT_THROW(MajorantParams::Constant(0.0, 0.5).Validate(4), ParameterError);
  EXPECT_THROW(MajorantParams::Constant(1.0, 1.0).Validate(4), ParameterError);
}

TEST(Combined, ExactFieldsGiveVanishingBound)
{
  auto s = Cavity(8, 65);
  const auto r = CombinedEstimate(s.p, s.exact, MajorantParams::Constant(1.0, 0.5), Theorem::T5,
                                  &s.exact);
  for (std::size_t k = 0; k < r.bound.size(); k++)
  {
    EXPECT_LE(r.bound[k], 1e-8 * r.electric.energy_scale);
  }
}

TEST(Combined, FirstOrderResidualsConvergeForTheAnalyticMode)
{
  double prev_f = 0.0, prev_g = 0.0;
  for (int n : {16, 32})
  {
    const auto grid = UnitGrid(n, 9);
    const auto c = CavityMode(grid, 1, 2, 1.0, Dispersion::Continuous);
    const auto p = Vacuum(grid, c);
    const auto ex = ProjectExact(c, grid);
    const auto r = CombinedEstimate(p, ex, MajorantParams::Constant(1.0, 0.5));
    const double f = std::sqrt(r.f_res_sq[4]), g = std::sqrt(r.g_res_sq[4]);
    if (prev_f > 0.0)
    {
      EXPECT_GE(Rate(prev_f, f), 1.9);
      EXPECT_GE(Rate(prev_g, g), 1.9);
    }
    prev_f = f;
    prev_g = g;
  }
}

TEST(Combined, MagneticPerturbationOnlyMovesTheResidualTerms)
{
  auto s = Cavity(6, 9);
  const auto params = MajorantParams::Constant(1.0, 0.5);
  const auto base = CombinedEstimate(s.p, s.exact, params, Theorem::T5, &s.exact);
  auto approx = s.exact;
  approx.H.Axpy(1.0, RandomFaceTrajectory(s.grid, 77, 1e-2));
  const auto pert = CombinedEstimate(s.p, approx, params, Theorem::T5, &s.exact);
  for (std::size_t k = 0; k < base.bound.size(); k++)
  {
    EXPECT_EQ(pert.electric.bound_b[k], base.electric.bound_b[k]);
    EXPECT_GT(pert.f_res_sq[k], base.f_res_sq[k] + 1e-8);
    EXPECT_GE(pert.bound[k], pert.truth[k]);
  }
}

TEST(Combined, LeapfrogTruthBelowBound)
{
  auto s = Cavity(8, 33);
  const auto approx = LeapfrogSolve(s.p);
  const auto r = CombinedEstimate(s.p, approx, MajorantParams::Constant(1.0, 0.5), Theorem::T5,
                                  &s.exact);
  ASSERT_TRUE(r.has_truth);
  for (std::size_t k = 0; k < r.bound.size(); k++)
  {
    EXPECT_LE(r.truth[k], r.bound[k] * (1 + 1e-12));
  }
  auto no_h = approx;
  no_h.Ht = FieldTrajectory();
  EXPECT_THROW(CombinedEstimate(s.p, no_h, MajorantParams::Constant(1.0, 0.5)), PreconditionError);
}
