// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/curl.hpp"

#include <string>

#include "maxmaj/error.hpp"

namespace maxmaj
{

namespace
{

void RequireKind(const StaggeredField &f, FieldKind kind, const GridSpec &grid, const char *what)
{
  if (f.kind() != kind || f.cells() != grid.cells())
  {
    throw DimensionError(std::string(what) + ": expected " + std::string(ToString(kind)) +
                         " field on the given grid");
  }
}

}  // namespace

StaggeredField CurlEdgeToFace(const StaggeredField &e, const GridSpec &grid)
{
  RequireKind(e, FieldKind::Edge, grid, "curl_edge_to_face");
  const double ihx = 1.0 / grid.hx(), ihy = 1.0 / grid.hy(), ihz = 1.0 / grid.hz();
  const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
  StaggeredField f(FieldKind::Face, grid);
  // x-faces (i, j+1/2, k+1/2)
  for (int i = 0; i <= nx; i++)
  {
    for (int j = 0; j < ny; j++)
    {
      for (int k = 0; k < nz; k++)
      {
        f(0, i, j, k) = (e(2, i, j + 1, k) - e(2, i, j, k)) * ihy -
                        (e(1, i, j, k + 1) - e(1, i, j, k)) * ihz;
      }
    }
  }
  // y-faces (i+1/2, j, k+1/2)
  for (int i = 0; i < nx; i++)
  {
    for (int j = 0; j <= ny; j++)
    {
      for (int k = 0; k < nz; k++)
      {
        f(1, i, j, k) = (e(0, i, j, k + 1) - e(0, i, j, k)) * ihz -
                        (e(2, i + 1, j, k) - e(2, i, j, k)) * ihx;
      }
    }
  }
  // z-faces (i+1/2, j+1/2, k)
  for (int i = 0; i < nx; i++)
  {
    for (int j = 0; j < ny; j++)
    {
      for (int k = 0; k <= nz; k++)
      {
        f(2, i, j, k) = (e(1, i + 1, j, k) - e(1, i, j, k)) * ihx -
                        (e(0, i, j + 1, k) - e(0, i, j, k)) * ihy;
      }
    }
  }
  return f;
}

StaggeredField CurlFaceToEdge(const StaggeredField &h, const GridSpec &grid)
{
  RequireKind(h, FieldKind::Face, grid, "curl_face_to_edge");
  const double ihx = 1.0 / grid.hx(), ihy = 1.0 / grid.hy(), ihz = 1.0 / grid.hz();
  const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
  StaggeredField e(FieldKind::Edge, grid);
  // x-edges (i+1/2, j, k), interior j, k
  for (int i = 0; i < nx; i++)
  {
    for (int j = 1; j < ny; j++)
    {
      for (int k = 1; k < nz; k++)
      {
        e(0, i, j, k) = (h(2, i, j, k) - h(2, i, j - 1, k)) * ihy -
                        (h(1, i, j, k) - h(1, i, j, k - 1)) * ihz;
      }
    }
  }
  // y-edges (i, j+1/2, k), interior i, k
  for (int i = 1; i < nx; i++)
  {
    for (int j = 0; j < ny; j++)
    {
      for (int k = 1; k < nz; k++)
      {
        e(1, i, j, k) = (h(0, i, j, k) - h(0, i, j, k - 1)) * ihz -
                        (h(2, i, j, k) - h(2, i - 1, j, k)) * ihx;
      }
    }
  }
  // z-edges (i, j, k+1/2), interior i, j
  for (int i = 1; i < nx; i++)
  {
    for (int j = 1; j < ny; j++)
    {
      for (int k = 0; k < nz; k++)
      {
        e(2, i, j, k) = (h(1, i, j, k) - h(1, i - 1, j, k)) * ihx -
                        (h(0, i, j, k) - h(0, i, j - 1, k)) * ihy;
      }
    }
  }
  return e;
}

std::vector<double> SampleNodes(const GridSpec &grid,
                                const std::function<double(double, double, double)> &fn)
{
  std::vector<double> phi(static_cast<std::size_t>(grid.nx + 1) * (grid.ny + 1) * (grid.nz + 1));
  for (int i = 0; i <= grid.nx; i++)
  {
    for (int j = 0; j <= grid.ny; j++)
    {
      for (int k = 0; k <= grid.nz; k++)
      {
        phi[(static_cast<std::size_t>(i) * (grid.ny + 1) + j) * (grid.nz + 1) + k] =
            fn(i * grid.hx(), j * grid.hy(), k * grid.hz());
      }
    }
  }
  return phi;
}

StaggeredField GradientNodeToEdge(const std::vector<double> &phi, const GridSpec &grid)
{
  const std::size_t expected =
      static_cast<std::size_t>(grid.nx + 1) * (grid.ny + 1) * (grid.nz + 1);
  if (phi.size() != expected)
  {
    throw DimensionError("gradient: node array size mismatch");
  }
  auto at = [&](int i, int j, int k) {
    return phi[(static_cast<std::size_t>(i) * (grid.ny + 1) + j) * (grid.nz + 1) + k];
  };
  StaggeredField g(FieldKind::Edge, grid);
  for (int c = 0; c < 3; c++)
  {
    const auto &e = g.Extents(c);
    const double ih = 1.0 / grid.h()[c];
    for (int i = 0; i < e[0]; i++)
    {
      for (int j = 0; j < e[1]; j++)
      {
        for (int k = 0; k < e[2]; k++)
        {
          const int di = c == 0, dj = c == 1, dk = c == 2;
          g(c, i, j, k) = (at(i + di, j + dj, k + dk) - at(i, j, k)) * ih;
        }
      }
    }
  }
  return g;
}

}  // namespace maxmaj
