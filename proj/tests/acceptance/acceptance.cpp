// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maxmaj/curl.hpp"
#include "maxmaj/gronwall.hpp"
#include "maxmaj/majorant.hpp"
#include "maxmaj/norms.hpp"
#include "maxmaj/optimize.hpp"
#include "maxmaj/quadrature.hpp"
#include "maxmaj/report.hpp"
#include "maxmaj/solver.hpp"
#include "test_util.hpp"

using namespace maxmaj;
using maxmaj::test::Flatten;
using maxmaj::test::RandomField;
using maxmaj::test::Rate;
using maxmaj::test::UnitGrid;
using maxmaj::test::Unflatten;

namespace
{

constexpr double pi = std::numbers::pi;

// Collects the sub-checks of one criterion.
class Verdict
{
public:
  void Check(bool ok, const std::string &what)
  {
    if (!ok)
    {
      passed_ = false;
      failures_ += (failures_.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string &s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  bool passed() const { return passed_; }
  const std::string &failures() const { return failures_; }
  const std::string &notes() const { return notes_; }

private:
  bool passed_ = true;
  std::string failures_, notes_;
};

std::string Num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double RelDiff(double a, double b)
{
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

double Seconds(std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

struct Setup
{
  GridSpec grid;
  ProblemData p;
  SolveOutput exact;
};

Setup Cavity(int n, int nt)
{
  const auto grid = UnitGrid(n, nt);
  auto c = CavityMode(grid, 1, 1, 1.0);
  auto p = AssembleProblem(grid, MaterialField::Scalar(grid, 1.0),
                           MaterialField::Scalar(grid, 1.0), c);
  auto ex = ProjectExact(c, grid);
  return {grid, std::move(p), std::move(ex)};
}

const MajorantParams kBaseline = MajorantParams::Constant(1.0, 0.5);

// Smallest relative margin (b - n) / b over the nodes after the start.
double MinMargin(const MajorantReport &r)
{
  double m = 1.0;
  for (std::size_t k = 1; k < r.time.size(); k++)
  {
    m = std::min(m, (r.bound_b[k] - r.trueN[k]) / r.bound_b[k]);
  }
  return m;
}

void GuaranteedBound(Verdict &v)
{
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> margins;
  for (auto [n, nt] : {std::pair{16, 65}, std::pair{32, 129}})
  {
    const auto s = Cavity(n, nt);
    const auto approx = LeapfrogSolve(s.p);
    const auto r = Certify(s.p, approx, kBaseline, Theorem::T5, &s.exact);
    v.Check(BoundDominates(r), "trueN > bound_b at " + std::to_string(n) + "^3");
    margins.push_back(MinMargin(r));
    v.Note("margin(" + std::to_string(n) + "^3)=" + Num(margins.back()));
  }
  v.Check(margins[1] >= margins[0] - 0.01, "margin degrades under refinement");
  const double t = Seconds(start);
  v.Note("runtime=" + Num(t) + "s");
  v.Check(t <= 120.0, "runtime above 2 min");
}

void Exactness(Verdict &v)
{
  const auto start = std::chrono::steady_clock::now();
  const auto s = Cavity(16, 65);
  const auto r = Certify(s.p, s.exact, kBaseline, Theorem::T5);
  double worst = 0.0;
  for (double b : r.bound_b)
  {
    worst = std::max(worst, b / r.energy_scale);
  }
  const double t = Seconds(start);
  v.Note("max bound_b/energy=" + Num(worst) + ", runtime=" + Num(t) + "s");
  v.Check(worst <= 1e-8, "bound_b above 1e-8 x energy");
  v.Check(t <= 30.0, "runtime above 30 s");
}

void QuadraticScaling(Verdict &v)
{
  const auto s = Cavity(16, 65);
  std::vector<double> bound, truth;
  for (double delta : {1e-2, 5e-3, 2.5e-3})
  {
    const auto approx = PerturbApproximation(s.exact, delta, "smooth_affine");
    const auto r = Certify(s.p, approx, kBaseline, Theorem::T5, &s.exact);
    bound.push_back(r.bound_b.back() / (delta * delta));
    truth.push_back(r.trueN.back() / (delta * delta));
  }
  double db = 0.0, dn = 0.0;
  for (int i = 1; i < 3; i++)
  {
    db = std::max(db, RelDiff(bound[i], bound[0]));
    dn = std::max(dn, RelDiff(truth[i], truth[0]));
  }
  v.Note("bound spread=" + Num(db) + ", truth spread=" + Num(dn));
  v.Check(db <= 1e-2, "bound_b/delta^2 varies by more than 1%");
  v.Check(dn <= 1e-2, "trueN/delta^2 varies by more than 1%");
}

void Specialization(Verdict &v)
{
  const auto s = Cavity(8, 33);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_affine");
  const auto params = MajorantParams::Constant(1.3, 0.4);
  const auto t1 = Certify(s.p, approx, params, Theorem::T1, &s.exact);
  const auto t3 = Certify(s.p, approx, params, Theorem::T3, &s.exact);
  auto discrete = approx;
  discrete.Et = TimeStencil::Accurate(s.grid.nt, s.grid.dt()).Apply(approx.E);
  const auto t4 = Certify(s.p, discrete, params, Theorem::T4, &s.exact);
  double d13 = 0.0, d34 = 0.0;
  for (int k = 0; k < s.grid.nt; k++)
  {
    d13 = std::max(d13, RelDiff(t1.bound_b[k], t3.bound_b[k]));
    d34 = std::max(d34, RelDiff(t3.bound_b[k], t4.bound_b[k]));
  }
  v.Note("T1/T3=" + Num(d13) + ", T3/T4=" + Num(d34));
  v.Check(d13 <= 1e-14, "T3 differs from T1");
  v.Check(d34 <= 1e-12, "T4 differs from T3");
}

void Gronwall(Verdict &v)
{
  const auto suite = DefaultGronwallSuite();
  v.Check(suite.size() == 6, "suite does not have 6 cases");
  double violation = 0.0, gap = 0.0, equivalence = 0.0;
  int tight = 0;
  for (const auto &c : suite)
  {
    const auto r = GronwallOracleCheck(c);
    v.Check(r.passed, c.name + ": " + r.message);
    violation = std::max(violation, r.max_violation);
    equivalence = std::max(equivalence, r.equivalence_error);
    if (r.tight)
    {
      tight++;
      gap = std::max(gap, r.gap_at_T);
    }
  }
  v.Note("cases=" + std::to_string(suite.size()) + ", tight=" + std::to_string(tight) +
         ", max violation=" + Num(violation) + ", tight gap=" + Num(gap) +
         ", equivalence=" + Num(equivalence));
  v.Check(violation <= 1e-6, "bound below the oracle");
  v.Check(tight > 0 && gap <= 1e-6, "tight cases off by more than 1e-6");
  v.Check(equivalence <= 1e-12, "equivalence above 1e-12");
}

void Optimization(Verdict &v)
{
  const auto s = Cavity(16, 33);
  const auto approx = PerturbApproximation(s.exact, 1e-2, "smooth_t2");
  const auto before = Certify(s.p, approx, kBaseline, Theorem::T5, &s.exact);
  OptimizeConfig cfg;
  cfg.sweeps = 3;
  const auto after = OptimizeAll(s.p, approx, kBaseline, Theorem::T5, cfg, &s.exact);
  v.Note("bound_b(T) " + Num(before.bound_b.back()) + " -> " + Num(after.bound_b.back()) +
         " (" + Num(after.runtime_seconds) + "s)");
  v.Check(after.bound_b.back() <= before.bound_b.back() * (1 + 1e-12), "bound_b(T) increased");
  v.Check(BoundDominates(after), "optimized bound below the true error");

  // Dense oracle on a small instance.
  const auto small = Cavity(4, 5);
  const auto sa = PerturbApproximation(small.exact, 5e-2, "smooth_affine");
  const ResidualBase base(small.p, sa, true);
  const FieldTrajectory zero(FieldKind::Face, small.grid);
  const YQuadratic q(base, kBaseline, Theorem::T5, small.grid.nt - 1, EvaluateTerms(base, zero));
  const Eigen::Index n = Flatten(zero).size();
  Eigen::MatrixXd H(n, n);
  for (Eigen::Index j = 0; j < n; j++)
  {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[j] = 1.0;
    H.col(j) = Flatten(q.Apply(Unflatten(e, small.grid)));
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(H);
  const Eigen::VectorXd dense = cod.solve(Flatten(q.Rhs()));
  const auto cg = MinimizeQuadratic(q, zero, 5000, 1e-12);
  const Eigen::VectorXd projected = cod.solve(H * Flatten(cg.Y));
  const double err = (projected - dense).norm() / dense.norm();
  v.Note("CG vs dense=" + Num(err));
  v.Check(err <= 1e-8, "CG differs from the dense solve");
}

void Combined(Verdict &v)
{
  {
    const auto s = Cavity(16, 65);
    const auto r = CombinedEstimate(s.p, s.exact, kBaseline, Theorem::T5, &s.exact);
    double worst = 0.0;
    for (double b : r.bound)
    {
      worst = std::max(worst, b / r.electric.energy_scale);
    }
    v.Note("exact max bound/energy=" + Num(worst));
    v.Check(worst <= 1e-8, "combined bound above 1e-8 x energy for exact fields");
  }
  const auto s = Cavity(16, 65);
  const auto approx = LeapfrogSolve(s.p);
  const auto r = CombinedEstimate(s.p, approx, kBaseline, Theorem::T5, &s.exact);
  double ratio = 0.0;
  for (std::size_t k = 1; k < r.bound.size(); k++)
  {
    ratio = std::max(ratio, r.truth[k] / r.bound[k]);
    v.Check(r.truth[k] <= r.bound[k] * (1 + 1e-12), "leapfrog truth above bound at k=" +
                                                         std::to_string(k));
  }
  v.Note("leapfrog max truth/bound=" + Num(ratio));
}

void ZeroTermOrdering(Verdict &v)
{
  const auto s = Cavity(6, 9);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> amp(0.0, 0.2);
  int violations = 0;
  for (unsigned i = 0; i < 50; i++)
  {
    auto approx = PerturbApproximation(s.exact, amp(rng), i % 2 ? "smooth_affine" : "smooth_t2");
    approx.Et[0] += amp(rng) * RandomField(FieldKind::Edge, s.grid, 1000 + i);
    approx.E[0] += amp(rng) * RandomField(FieldKind::Edge, s.grid, 2000 + i);
    auto Y = DefaultY(s.p, approx);
    Y[0] += amp(rng) * RandomField(FieldKind::Face, s.grid, 3000 + i);
    for (bool second : {false, true})
    {
      const double z = ZeroTerm(s.p, approx, Y, ZeroTermVariant::Z, second);
      const double zt = ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZTilde, second);
      const double zh = ZeroTerm(s.p, approx, Y, ZeroTermVariant::ZHat, second);
      violations += !(z <= zt && zt <= zh);
    }
  }
  v.Note("ordering violations=" + std::to_string(violations) + "/100");
  v.Check(violations == 0, "z <= zTilde <= zHat violated");

  // Constructive vanishing conditions, second form (Et given explicitly).
  const auto clean = PerturbApproximation(s.exact, 1e-2, "smooth_t2");
  const auto Y = DefaultY(s.p, clean);
  auto zero_of = [&](const SolveOutput &a, const FieldTrajectory &y, ZeroTermVariant var) {
    return ZeroTerm(s.p, a, y, var, true);
  };
  const double eps = 1e-26;
  // (i) matching initial data gives z = 0 and zTilde = 0.
  v.Check(std::abs(zero_of(clean, Y, ZeroTermVariant::Z)) <= eps, "(i) z != 0 for exact start");
  v.Check(zero_of(clean, Y, ZeroTermVariant::ZTilde) <= eps, "(ii) zTilde != 0 for exact start");
  // (iii) with mu Y(0) = curl E~(0) also zHat = 0.
  v.Check(zero_of(clean, Y, ZeroTermVariant::ZHat) <= eps, "(iii) zHat != 0");
  // Each condition is necessary for zHat = 0.
  auto wrong_rate = clean;
  wrong_rate.Et[0] += 1e-2 * RandomField(FieldKind::Edge, s.grid, 7);
  v.Check(zero_of(wrong_rate, DefaultY(s.p, wrong_rate), ZeroTermVariant::ZHat) > 1e-8,
          "zHat = 0 despite wrong initial rate");
  auto wrong_value = clean;
  wrong_value.E[0] += 1e-2 * RandomField(FieldKind::Edge, s.grid, 8);
  v.Check(zero_of(wrong_value, DefaultY(s.p, wrong_value), ZeroTermVariant::ZHat) > 1e-8,
          "zHat = 0 despite wrong initial value");
  auto wrong_y = Y;
  wrong_y[0] += 1e-2 * RandomField(FieldKind::Face, s.grid, 9);
  v.Check(zero_of(clean, wrong_y, ZeroTermVariant::ZHat) > 1e-8, "zHat = 0 despite wrong Y(0)");
  v.Check(std::abs(zero_of(clean, wrong_y, ZeroTermVariant::Z)) <= eps,
          "z depends on Y(0) when curl e(0) = 0");
}

double EdgeCurlError(int n)
{
  const auto grid = UnitGrid(n);
  auto e = Sample(FieldKind::Edge, grid, [](double x, double y, double) -> Vec3 {
    return {0.0, 0.0, std::sin(pi * x) * std::sin(pi * y)};
  });
  auto exact = Sample(FieldKind::Face, grid, [](double x, double y, double) -> Vec3 {
    return {pi * std::sin(pi * x) * std::cos(pi * y), -pi * std::cos(pi * x) * std::sin(pi * y),
            0.0};
  });
  return (CurlEdgeToFace(e, grid) - exact).MaxAbs();
}

// Error of the weighted spatial norm of Ez = sin(pi x) sin(pi y) (exact value 1/4).
double SpatialQuadratureError(int n)
{
  const auto grid = UnitGrid(n);
  auto e = Sample(FieldKind::Edge, grid, [](double x, double y, double) -> Vec3 {
    return {0.0, 0.0, std::sin(pi * x) * std::sin(pi * y)};
  });
  return std::abs(WeightedNormSq(e, MaterialField::Scalar(grid, 1.0)) - 0.25);
}

double TimeQuadratureError(int n)
{
  const double dt = 2.0 / (n - 1);
  std::vector<double> q(n);
  for (int k = 0; k < n; k++)
  {
    q[k] = std::cos(3.0 * k * dt);
  }
  return std::abs(TimeIntegral(q, dt, n - 1) - std::sin(6.0) / 3.0);
}

void OperatorSuite(Verdict &v)
{
  const auto g = UnitGrid(8);
  auto phi = SampleNodes(g, [](double x, double y, double z) {
    return std::exp(x) * std::sin(3 * y) + z * z * x;
  });
  const double cg = CurlEdgeToFace(GradientNodeToEdge(phi, g), g).MaxAbs();
  v.Check(cg <= 1e-12, "curl grad not zero");

  GridSpec box;
  box.nx = 5;
  box.ny = 4;
  box.nz = 6;
  box.lx = 1.3;
  box.ly = 0.7;
  double adj = 0.0;
  for (unsigned seed = 1; seed <= 5; seed++)
  {
    auto e = RandomField(FieldKind::Edge, box, seed);
    auto h = RandomField(FieldKind::Face, box, 100 + seed);
    adj = std::max(adj, RelDiff(PlainInner(CurlEdgeToFace(e, box), h, box),
                                PlainInner(e, CurlFaceToEdge(h, box), box)));
  }
  v.Check(adj <= 1e-12, "curl adjointness above 1e-12");

  auto rates = [](const std::function<double(int)> &err, std::vector<int> ns) {
    return std::min(Rate(err(ns[0]), err(ns[1])), Rate(err(ns[1]), err(ns[2])));
  };
  const double rc = rates(EdgeCurlError, {8, 16, 32});
  const double rs = rates(SpatialQuadratureError, {8, 16, 32});
  const double rt = rates(TimeQuadratureError, {17, 33, 65});
  v.Note("curl grad=" + Num(cg) + ", adjointness=" + Num(adj) + ", curl order=" + Num(rc) +
         ", space quadrature order=" + Num(rs) + ", time quadrature order=" + Num(rt));
  v.Check(rc >= 1.9, "curl order below 1.9");
  v.Check(rs >= 1.9, "spatial quadrature order below 1.9");
  v.Check(rt >= 1.9, "time quadrature order below 1.9");
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<void(Verdict &)>>> criteria = {
      {"guaranteed bound", GuaranteedBound},
      {"exactness", Exactness},
      {"quadratic scaling", QuadraticScaling},
      {"specialization identities", Specialization},
      {"gronwall oracle suite", Gronwall},
      {"optimization efficacy", Optimization},
      {"combined estimate", Combined},
      {"zero-term ordering", ZeroTermOrdering},
      {"discrete operator suite", OperatorSuite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); i++)
  {
    Verdict v;
    try
    {
      criteria[i].second(v);
    }
    catch (const std::exception &e)
    {
      v.Check(false, std::string("exception: ") + e.what());
    }
    failed += !v.passed();
    std::printf("%s %zu %s: %s%s%s\n", v.passed() ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.notes().c_str(), v.passed() ? "" : " | ",
                v.failures().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
