// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_FIELD_HPP
#define MAXMAJ_FIELD_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "maxmaj/grid.hpp"
#include "maxmaj/material.hpp"

namespace maxmaj
{

// Edge: E-type, component c lives on edges parallel to axis c.
// Face: H-type, component c lives on faces normal to axis c.
enum class FieldKind
{
  Edge,
  Face
};

std::string_view ToString(FieldKind kind);

/**
 * Discrete vector field on the Yee staggered grid. Component c of an edge field has
 * extents n + 1 in every direction except c (where it has n_c); a face field is the dual
 * layout. Storage is k-fastest: index = (i * ey + j) * ez + k.
 */
class StaggeredField
{
public:
  StaggeredField() = default;
  StaggeredField(FieldKind kind, const GridSpec &grid);

  FieldKind kind() const { return kind_; }
  const std::array<int, 3> &cells() const { return cells_; }
  const std::array<int, 3> &Extents(int c) const { return extents_[c]; }
  std::size_t Size(int c) const { return data_[c].size(); }
  std::size_t TotalSize() const { return data_[0].size() + data_[1].size() + data_[2].size(); }

  std::span<double> Component(int c) { return data_[c]; }
  std::span<const double> Component(int c) const { return data_[c]; }

  std::size_t Index(int c, int i, int j, int k) const
  {
    const auto &e = extents_[c];
    return (static_cast<std::size_t>(i) * e[1] + j) * e[2] + k;
  }
  double &operator()(int c, int i, int j, int k) { return data_[c][Index(c, i, j, k)]; }
  double operator()(int c, int i, int j, int k) const { return data_[c][Index(c, i, j, k)]; }

  // Grid offset (0 or 1/2, in cell units) of component c along axis d.
  double Offset(int c, int d) const;

  // Same kind and extents.
  bool Compatible(const StaggeredField &o) const
  {
    return kind_ == o.kind_ && cells_ == o.cells_;
  }

  StaggeredField &operator+=(const StaggeredField &o);
  StaggeredField &operator-=(const StaggeredField &o);
  StaggeredField &operator*=(double s);
  // this += s * o
  StaggeredField &Axpy(double s, const StaggeredField &o);
  void SetZero();

  double MaxAbs() const;
  bool AllFinite() const;

  // True when the component sits on a boundary plane it is tangential to (edge fields only).
  bool IsTangentialBoundary(int c, int i, int j, int k) const;
  // Zero all tangential edge values on the box boundary (no-op for face fields).
  void ApplyTangentialBoundary();
  // Largest |value| over tangential boundary locations (0 for face fields).
  double TangentialBoundaryMax() const;

private:
  FieldKind kind_ = FieldKind::Edge;
  std::array<int, 3> cells_{0, 0, 0};
  std::array<std::array<int, 3>, 3> extents_{};
  std::array<std::vector<double>, 3> data_;
};

StaggeredField operator+(StaggeredField a, const StaggeredField &b);
StaggeredField operator-(StaggeredField a, const StaggeredField &b);
StaggeredField operator*(double s, StaggeredField a);

// Throws DimensionError when the two fields do not share kind and extents.
void RequireCompatible(const StaggeredField &a, const StaggeredField &b, std::string_view what);

using VectorFunction = std::function<Vec3(double x, double y, double z)>;

// Sample component c of fn at each staggered location of a field of the given kind.
StaggeredField Sample(FieldKind kind, const GridSpec &grid, const VectorFunction &fn);

// Cell-center averages: component c averaged over the 4 parallel cell edges (edge field)
// or the 2 opposite cell faces (face field). One Vec3 per cell, ordered (i*ny + j)*nz + k.
std::vector<Vec3> CellAverages(const StaggeredField &u);

// Applies a material tensor to a staggered field. Diagonal entries use the mean tensor of
// the cells adjacent to each location; off-diagonal coupling is formed at cell centers and
// averaged back. Identity materials return the input unchanged.
StaggeredField ApplyMaterial(const MaterialField &a, const StaggeredField &u);
StaggeredField ApplyInverseMaterial(const MaterialField &a, const StaggeredField &u);

/**
 * Time-indexed sequence of staggered fields, one per node of the grid's time axis.
 */
class FieldTrajectory
{
public:
  FieldTrajectory() = default;
  // nt zero fields of the given kind.
  FieldTrajectory(FieldKind kind, const GridSpec &grid);
  FieldTrajectory(const GridSpec &grid, std::vector<StaggeredField> samples);

  const GridSpec &grid() const { return grid_; }
  FieldKind kind() const { return samples_.front().kind(); }
  int size() const { return static_cast<int>(samples_.size()); }
  bool empty() const { return samples_.empty(); }

  StaggeredField &operator[](int k) { return samples_[k]; }
  const StaggeredField &operator[](int k) const { return samples_[k]; }
  std::vector<StaggeredField> &samples() { return samples_; }
  const std::vector<StaggeredField> &samples() const { return samples_; }

  // Throws DimensionError if length != nt or samples disagree in kind/extents.
  void Validate() const;

  FieldTrajectory &operator+=(const FieldTrajectory &o);
  FieldTrajectory &operator-=(const FieldTrajectory &o);
  FieldTrajectory &Axpy(double s, const FieldTrajectory &o);

private:
  GridSpec grid_;
  std::vector<StaggeredField> samples_;
};

}  // namespace maxmaj

#endif  // MAXMAJ_FIELD_HPP
