// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/norms.hpp"

#include <string>

#include "maxmaj/error.hpp"

namespace maxmaj
{

double PlainInner(const StaggeredField &u, const StaggeredField &v, const GridSpec &grid)
{
  RequireCompatible(u, v, "plain inner product");
  double s = 0.0;
  for (int c = 0; c < 3; c++)
  {
    const auto a = u.Component(c);
    const auto b = v.Component(c);
    for (std::size_t n = 0; n < a.size(); n++)
    {
      s += a[n] * b[n];
    }
  }
  return s * grid.CellVolume();
}

namespace
{

// Visits every cell with the cell-center averages of u and v.
template <typename Fn>
void ForCellAverages(const StaggeredField &u, const StaggeredField &v, Fn &&fn)
{
  const auto &n = u.cells();
  const bool edge = u.kind() == FieldKind::Edge;
  auto avg = [edge](const StaggeredField &f, int i, int j, int k) -> Vec3 {
    if (edge)
    {
      return {0.25 * (f(0, i, j, k) + f(0, i, j + 1, k) + f(0, i, j, k + 1) +
                      f(0, i, j + 1, k + 1)),
              0.25 * (f(1, i, j, k) + f(1, i + 1, j, k) + f(1, i, j, k + 1) +
                      f(1, i + 1, j, k + 1)),
              0.25 * (f(2, i, j, k) + f(2, i + 1, j, k) + f(2, i, j + 1, k) +
                      f(2, i + 1, j + 1, k))};
    }
    return {0.5 * (f(0, i, j, k) + f(0, i + 1, j, k)), 0.5 * (f(1, i, j, k) + f(1, i, j + 1, k)),
            0.5 * (f(2, i, j, k) + f(2, i, j, k + 1))};
  };
  const bool same = &u == &v;
  std::size_t cell = 0;
  for (int i = 0; i < n[0]; i++)
  {
    for (int j = 0; j < n[1]; j++)
    {
      for (int k = 0; k < n[2]; k++, cell++)
      {
        const Vec3 a = avg(u, i, j, k);
        fn(cell, a, same ? a : avg(v, i, j, k));
      }
    }
  }
}

void RequireMaterialGrid(const StaggeredField &u, const MaterialField &w)
{
  if (w.grid().cells() != u.cells())
  {
    throw DimensionError("weighted inner product: material grid mismatch");
  }
}

}  // namespace

double WeightedInner(const StaggeredField &u, const StaggeredField &v, const MaterialField &w)
{
  RequireCompatible(u, v, "weighted inner product");
  RequireMaterialGrid(u, w);
  double s = 0.0;
  if (w.IsUniform() && w.kind() != MaterialKind::Full)
  {
    const Mat3 &t = w.Tensor(0);
    ForCellAverages(u, v, [&](std::size_t, const Vec3 &a, const Vec3 &b) {
      s += t[0] * a[0] * b[0] + t[4] * a[1] * b[1] + t[8] * a[2] * b[2];
    });
  }
  else
  {
    ForCellAverages(u, v, [&](std::size_t cell, const Vec3 &a, const Vec3 &b) {
      const Vec3 wa = Apply(w.Tensor(cell), a);
      s += wa[0] * b[0] + wa[1] * b[1] + wa[2] * b[2];
    });
  }
  return s * w.grid().CellVolume();
}

double WeightedNormSq(const StaggeredField &u, const MaterialField &w)
{
  return WeightedInner(u, u, w);
}

double AveragedInner(const StaggeredField &u, const StaggeredField &v, const GridSpec &grid)
{
  RequireCompatible(u, v, "averaged inner product");
  double s = 0.0;
  ForCellAverages(u, v, [&](std::size_t, const Vec3 &a, const Vec3 &b) {
    s += a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  });
  return s * grid.CellVolume();
}

StaggeredField WeightedMass(const StaggeredField &u, const MaterialField &w)
{
  RequireMaterialGrid(u, w);
  StaggeredField out(u.kind(), w.grid());
  const auto &n = u.cells();
  const bool edge = u.kind() == FieldKind::Edge;
  ForCellAverages(u, u, [&](std::size_t cell, const Vec3 &a, const Vec3 &) {
    const Vec3 wa = Apply(w.Tensor(cell), a);
    const int k = static_cast<int>(cell % n[2]);
    const int j = static_cast<int>((cell / n[2]) % n[1]);
    const int i = static_cast<int>(cell / (static_cast<std::size_t>(n[2]) * n[1]));
    if (edge)
    {
      const double x = 0.25 * wa[0], y = 0.25 * wa[1], z = 0.25 * wa[2];
      out(0, i, j, k) += x;
      out(0, i, j + 1, k) += x;
      out(0, i, j, k + 1) += x;
      out(0, i, j + 1, k + 1) += x;
      out(1, i, j, k) += y;
      out(1, i + 1, j, k) += y;
      out(1, i, j, k + 1) += y;
      out(1, i + 1, j, k + 1) += y;
      out(2, i, j, k) += z;
      out(2, i + 1, j, k) += z;
      out(2, i, j + 1, k) += z;
      out(2, i + 1, j + 1, k) += z;
    }
    else
    {
      out(0, i, j, k) += 0.5 * wa[0];
      out(0, i + 1, j, k) += 0.5 * wa[0];
      out(1, i, j, k) += 0.5 * wa[1];
      out(1, i, j + 1, k) += 0.5 * wa[1];
      out(2, i, j, k) += 0.5 * wa[2];
      out(2, i, j, k + 1) += 0.5 * wa[2];
    }
  });
  return out;
}

double EnergyNormN(const StaggeredField &first, const StaggeredField &curl_part,
                   const MaterialField &eps, const MaterialField &mu_inv, double rho)
{
  if (!(rho > 0.0 && rho < 1.0))
  {
    throw ParameterError("energy norm: rho must lie in (0,1), got " + std::to_string(rho));
  }
  return WeightedNormSq(first, eps) + rho * WeightedNormSq(curl_part, mu_inv);
}

}  // namespace maxmaj
