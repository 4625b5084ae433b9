// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/material.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Dense>

#include "maxmaj/error.hpp"

namespace maxmaj
{

Mat3 IdentityTensor(double scale)
{
  return {scale, 0.0, 0.0, 0.0, scale, 0.0, 0.0, 0.0, scale};
}

MaterialField MaterialField::Uniform(const GridSpec &grid, const Mat3 &tensor, MaterialKind kind)
{
  return PerCell(grid, std::vector<Mat3>(grid.NumCells(), tensor), kind);
}

MaterialField MaterialField::Scalar(const GridSpec &grid, double value)
{
  return Uniform(grid, IdentityTensor(value), MaterialKind::Scalar);
}

MaterialField MaterialField::Diagonal(const GridSpec &grid, const Vec3 &diag)
{
  return Uniform(grid, {diag[0], 0.0, 0.0, 0.0, diag[1], 0.0, 0.0, 0.0, diag[2]},
                 MaterialKind::Diagonal);
}

MaterialField MaterialField::Full(const GridSpec &grid, const Mat3 &tensor)
{
  return Uniform(grid, tensor, MaterialKind::Full);
}

MaterialField MaterialField::PerCell(const GridSpec &grid, std::vector<Mat3> tensors,
                                     MaterialKind kind)
{
  grid.Validate();
  if (tensors.size() != grid.NumCells())
  {
    throw DimensionError("material: expected one tensor per cell");
  }
  MaterialField m;
  m.grid_ = grid;
  m.kind_ = kind;
  m.tensors_ = std::move(tensors);
  m.Finalize();
  return m;
}

void MaterialField::Finalize()
{
  inverses_.resize(tensors_.size());
  lambda_min_ = std::numeric_limits<double>::infinity();
  lambda_max_ = 0.0;
  identity_ = true;
  const Mat3 id = IdentityTensor();
  for (std::size_t c = 0; c < tensors_.size(); c++)
  {
    const Mat3 &a = tensors_[c];
    for (int r = 0; r < 3; r++)
    {
      for (int s = 0; s < 3; s++)
      {
        if (a[3 * r + s] != a[3 * s + r])
        {
          throw ParameterError("material: tensor is not symmetric");
        }
        if (kind_ != MaterialKind::Full && r != s && a[3 * r + s] != 0.0)
        {
          throw ParameterError("material: off-diagonal entry in a scalar/diagonal material");
        }
      }
    }
    if (kind_ == MaterialKind::Scalar && (a[0] != a[4] || a[0] != a[8]))
    {
      throw ParameterError("material: scalar material with unequal diagonal");
    }
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; r++)
    {
      for (int s = 0; s < 3; s++)
      {
        m(r, s) = a[3 * r + s];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    const double lmin = es.eigenvalues().minCoeff();
    if (!(lmin > 0.0) || !m.allFinite())
    {
      throw ParameterError("material: tensor is not positive definite");
    }
    lambda_min_ = std::min(lambda_min_, lmin);
    lambda_max_ = std::max(lambda_max_, es.eigenvalues().maxCoeff());
    const Eigen::Matrix3d inv = m.inverse();
    Mat3 &out = inverses_[c];
    for (int r = 0; r < 3; r++)
    {
      for (int s = 0; s < 3; s++)
      {
        // Symmetrize so the inverse is exactly symmetric.
        out[3 * r + s] = 0.5 * (inv(r, s) + inv(s, r));
      }
    }
    identity_ = identity_ && a == id;
  }
  uniform_ = std::all_of(tensors_.begin(), tensors_.end(),
                         [&](const Mat3 &a) { return a == tensors_.front(); });
}

MaterialField MaterialField::Inverse() const
{
  MaterialField m = *this;
  std::swap(m.tensors_, m.inverses_);
  m.lambda_min_ = 1.0 / lambda_max_;
  m.lambda_max_ = 1.0 / lambda_min_;
  return m;
}

MaterialField MaterialField::Scaled(double s) const
{
  if (!(s > 0.0))
  {
    throw ParameterError("material: scale must be positive");
  }
  std::vector<Mat3> t = tensors_;
  for (auto &a : t)
  {
    for (auto &v : a)
    {
      v *= s;
    }
  }
  return PerCell(grid_, std::move(t), kind_);
}

}  // namespace maxmaj
