// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_GRID_HPP
#define MAXMAJ_GRID_HPP

#include <array>
#include <cstddef>

namespace maxmaj
{

// Box [0,lx]x[0,ly]x[0,lz] split into nx*ny*nz cells, observed on nt uniformly spaced
// time nodes t_k = k*dt covering [0,T].
struct GridSpec
{
  int nx = 2, ny = 2, nz = 2;
  double lx = 1.0, ly = 1.0, lz = 1.0;
  int nt = 2;
  double T = 1.0;

  // Throws ParameterError unless every invariant holds.
  void Validate() const;

  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  double hz() const { return lz / nz; }
  std::array<double, 3> h() const { return {hx(), hy(), hz()}; }
  std::array<int, 3> cells() const { return {nx, ny, nz}; }
  std::array<double, 3> lengths() const { return {lx, ly, lz}; }
  double dt() const { return T / (nt - 1); }
  double Time(int k) const { return k * dt(); }
  double CellVolume() const { return hx() * hy() * hz(); }
  double Volume() const { return lx * ly * lz; }
  std::size_t NumCells() const
  {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(nz);
  }

  // Same spatial grid and time grid.
  bool operator==(const GridSpec &) const = default;
  bool SameSpace(const GridSpec &o) const
  {
    return nx == o.nx && ny == o.ny && nz == o.nz && lx == o.lx && ly == o.ly && lz == o.lz;
  }
};

}  // namespace maxmaj

#endif  // MAXMAJ_GRID_HPP
