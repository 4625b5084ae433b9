// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_MATERIAL_HPP
#define MAXMAJ_MATERIAL_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "maxmaj/grid.hpp"

namespace maxmaj
{

// Row-major symmetric 3x3 tensor.
using Mat3 = std::array<double, 9>;
using Vec3 = std::array<double, 3>;

inline Vec3 Apply(const Mat3 &a, const Vec3 &v)
{
  return {a[0] * v[0] + a[1] * v[1] + a[2] * v[2], a[3] * v[0] + a[4] * v[1] + a[5] * v[2],
          a[6] * v[0] + a[7] * v[1] + a[8] * v[2]};
}

Mat3 IdentityTensor(double scale = 1.0);

enum class MaterialKind
{
  Scalar,
  Diagonal,
  Full
};

/**
 * Per-cell symmetric positive definite coefficient (permittivity or permeability) together
 * with its per-cell inverse. Construction validates symmetry and definiteness and records
 * the smallest eigenvalue over all cells.
 */
class MaterialField
{
public:
  MaterialField() = default;

  static MaterialField Uniform(const GridSpec &grid, const Mat3 &tensor, MaterialKind kind);
  static MaterialField Scalar(const GridSpec &grid, double value);
  static MaterialField Diagonal(const GridSpec &grid, const Vec3 &diag);
  static MaterialField Full(const GridSpec &grid, const Mat3 &tensor);
  // One tensor per cell, ordered (i*ny + j)*nz + k.
  static MaterialField PerCell(const GridSpec &grid, std::vector<Mat3> tensors,
                               MaterialKind kind);

  MaterialKind kind() const { return kind_; }
  const GridSpec &grid() const { return grid_; }
  const Mat3 &Tensor(std::size_t cell) const { return tensors_[cell]; }
  const Mat3 &InverseTensor(std::size_t cell) const { return inverses_[cell]; }
  double LambdaMin() const { return lambda_min_; }
  double LambdaMax() const { return lambda_max_; }
  bool IsIdentity() const { return identity_; }
  // Every cell carries the same tensor.
  bool IsUniform() const { return uniform_; }

  // Material whose tensors are this field's inverses (and vice versa).
  MaterialField Inverse() const;

  // Same tensors multiplied by s > 0.
  MaterialField Scaled(double s) const;

private:
  void Finalize();

  GridSpec grid_;
  MaterialKind kind_ = MaterialKind::Scalar;
  std::vector<Mat3> tensors_;
  std::vector<Mat3> inverses_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
  bool identity_ = false;
  bool uniform_ = false;
};

}  // namespace maxmaj

#endif  // MAXMAJ_MATERIAL_HPP
