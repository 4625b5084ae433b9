// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxmaj/error.hpp"

namespace maxmaj
{

std::string_view ToString(FieldKind kind)
{
  return kind == FieldKind::Edge ? "edge" : "face";
}

StaggeredField::StaggeredField(FieldKind kind, const GridSpec &grid)
  : kind_(kind), cells_(grid.cells())
{
  for (int c = 0; c < 3; c++)
  {
    for (int d = 0; d < 3; d++)
    {
      const bool along = (c == d);
      if (kind == FieldKind::Edge)
      {
        extents_[c][d] = along ? cells_[d] : cells_[d] + 1;
      }
      else
      {
        extents_[c][d] = along ? cells_[d] + 1 : cells_[d];
      }
    }
    data_[c].assign(static_cast<std::size_t>(extents_[c][0]) * extents_[c][1] * extents_[c][2],
                    0.0);
  }
}

double StaggeredField::Offset(int c, int d) const
{
  if (kind_ == FieldKind::Edge)
  {
    return c == d ? 0.5 : 0.0;
  }
  return c == d ? 0.0 : 0.5;
}

StaggeredField &StaggeredField::operator+=(const StaggeredField &o)
{
  RequireCompatible(*this, o, "field +=");
  for (int c = 0; c < 3; c++)
  {
    std::transform(data_[c].begin(), data_[c].end(), o.data_[c].begin(), data_[c].begin(),
                   std::plus<>());
  }
  return *this;
}

StaggeredField &StaggeredField::operator-=(const StaggeredField &o)
{
  RequireCompatible(*this, o, "field -=");
  for (int c = 0; c < 3; c++)
  {
    std::transform(data_[c].begin(), data_[c].end(), o.data_[c].begin(), data_[c].begin(),
                   std::minus<>());
  }
  return *this;
}

StaggeredField &StaggeredField::operator*=(double s)
{
  for (auto &comp : data_)
  {
    for (auto &v : comp)
    {
      v *= s;
    }
  }
  return *this;
}

StaggeredField &StaggeredField::Axpy(double s, const StaggeredField &o)
{
  RequireCompatible(*this, o, "field axpy");
  for (int c = 0; c < 3; c++)
  {
    auto &dst = data_[c];
    const auto &src = o.data_[c];
    for (std::size_t n = 0; n < dst.size(); n++)
    {
      dst[n] += s * src[n];
    }
  }
  return *this;
}

void StaggeredField::SetZero()
{
  for (auto &comp : data_)
  {
    std::fill(comp.begin(), comp.end(), 0.0);
  }
}

double StaggeredField::MaxAbs() const
{
  double m = 0.0;
  for (const auto &comp : data_)
  {
    for (double v : comp)
    {
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

bool StaggeredField::AllFinite() const
{
  for (const auto &comp : data_)
  {
    for (double v : comp)
    {
      if (!std::isfinite(v))
      {
        return false;
      }
    }
  }
  return true;
}

bool StaggeredField::IsTangentialBoundary(int c, int i, int j, int k) const
{
  if (kind_ != FieldKind::Edge)
  {
    return false;
  }
  const std::array<int, 3> idx{i, j, k};
  for (int d = 0; d < 3; d++)
  {
    if (d != c && (idx[d] == 0 || idx[d] == cells_[d]))
    {
      return true;
    }
  }
  return false;
}

void StaggeredField::ApplyTangentialBoundary()
{
  if (kind_ != FieldKind::Edge)
  {
    return;
  }
  for (int c = 0; c < 3; c++)
  {
    const auto &e = extents_[c];
    for (int i = 0; i < e[0]; i++)
    {
      for (int j = 0; j < e[1]; j++)
      {
        for (int k = 0; k < e[2]; k++)
        {
          if (IsTangentialBoundary(c, i, j, k))
          {
            (*this)(c, i, j, k) = 0.0;
          }
        }
      }
    }
  }
}

double StaggeredField::TangentialBoundaryMax() const
{
  double m = 0.0;
  if (kind_ != FieldKind::Edge)
  {
    return m;
  }
  for (int c = 0; c < 3; c++)
  {
    const auto &e = extents_[c];
    for (int i = 0; i < e[0]; i++)
    {
      for (int j = 0; j < e[1]; j++)
      {
        for (int k = 0; k < e[2]; k++)
        {
          if (IsTangentialBoundary(c, i, j, k))
          {
            m = std::max(m, std::abs((*this)(c, i, j, k)));
          }
        }
      }
    }
  }
  return m;
}

StaggeredField operator+(StaggeredField a, const StaggeredField &b)
{
  a += b;
  return a;
}

StaggeredField operator-(StaggeredField a, const StaggeredField &b)
{
  a -= b;
  return a;
}

StaggeredField operator*(double s, StaggeredField a)
{
  a *= s;
  return a;
}

void RequireCompatible(const StaggeredField &a, const StaggeredField &b, std::string_view what)
{
  if (!a.Compatible(b))
  {
    throw DimensionError(std::string(what) + ": field kind/extent mismatch (" +
                         std::string(ToString(a.kind())) + " vs " +
                         std::string(ToString(b.kind())) + ")");
  }
}

StaggeredField Sample(FieldKind kind, const GridSpec &grid, const VectorFunction &fn)
{
  StaggeredField f(kind, grid);
  const auto h = grid.h();
  for (int c = 0; c < 3; c++)
  {
    const auto &e = f.Extents(c);
    const double ox = f.Offset(c, 0), oy = f.Offset(c, 1), oz = f.Offset(c, 2);
    for (int i = 0; i < e[0]; i++)
    {
      const double x = (i + ox) * h[0];
      for (int j = 0; j < e[1]; j++)
      {
        const double y = (j + oy) * h[1];
        for (int k = 0; k < e[2]; k++)
        {
          const double z = (k + oz) * h[2];
          f(c, i, j, k) = fn(x, y, z)[c];
        }
      }
    }
  }
  return f;
}

std::vector<Vec3> CellAverages(const StaggeredField &u)
{
  const auto &n = u.cells();
  std::vector<Vec3> avg(static_cast<std::size_t>(n[0]) * n[1] * n[2]);
  const bool edge = u.kind() == FieldKind::Edge;
  for (int i = 0; i < n[0]; i++)
  {
    for (int j = 0; j < n[1]; j++)
    {
      for (int k = 0; k < n[2]; k++)
      {
        Vec3 &a = avg[(static_cast<std::size_t>(i) * n[1] + j) * n[2] + k];
        if (edge)
        {
          a[0] = 0.25 * (u(0, i, j, k) + u(0, i, j + 1, k) + u(0, i, j, k + 1) +
                         u(0, i, j + 1, k + 1));
          a[1] = 0.25 * (u(1, i, j, k) + u(1, i + 1, j, k) + u(1, i, j, k + 1) +
                         u(1, i + 1, j, k + 1));
          a[2] = 0.25 * (u(2, i, j, k) + u(2, i + 1, j, k) + u(2, i, j + 1, k) +
                         u(2, i + 1, j + 1, k));
        }
        else
        {
          a[0] = 0.5 * (u(0, i, j, k) + u(0, i + 1, j, k));
          a[1] = 0.5 * (u(1, i, j, k) + u(1, i, j + 1, k));
          a[2] = 0.5 * (u(2, i, j, k) + u(2, i, j, k + 1));
        }
      }
    }
  }
  return avg;
}

namespace
{

// Visits the cells adjacent to location (i,j,k) of component c.
template <typename Fn>
void ForAdjacentCells(const StaggeredField &u, int c, int i, int j, int k, Fn &&fn)
{
  const auto &n = u.cells();
  const std::array<int, 3> idx{i, j, k};
  std::array<int, 3> lo{}, hi{};
  for (int d = 0; d < 3; d++)
  {
    // Edge component c is interior to cells along c; otherwise it touches idx-1 and idx.
    const bool shared = (u.kind() == FieldKind::Edge) ? (d != c) : (d == c);
    lo[d] = shared ? std::max(idx[d] - 1, 0) : idx[d];
    hi[d] = shared ? std::min(idx[d], n[d] - 1) : idx[d];
  }
  for (int a = lo[0]; a <= hi[0]; a++)
  {
    for (int b = lo[1]; b <= hi[1]; b++)
    {
      for (int e = lo[2]; e <= hi[2]; e++)
      {
        fn((static_cast<std::size_t>(a) * n[1] + b) * n[2] + e);
      }
    }
  }
}

template <typename TensorAt>
StaggeredField ApplyTensor(const MaterialField &m, const StaggeredField &u, TensorAt &&tensor)
{
  if (m.grid().cells() != u.cells())
  {
    throw DimensionError("material application: grid mismatch");
  }
  StaggeredField out = u;
  if (m.IsUniform())
  {
    const Mat3 &a = tensor(0);
    for (int c = 0; c < 3; c++)
    {
      auto dst = out.Component(c);
      for (auto &v : dst)
      {
        v *= a[4 * c];
      }
    }
  }
  else
  {
    for (int c = 0; c < 3; c++)
    {
      const auto &e = u.Extents(c);
      for (int i = 0; i < e[0]; i++)
      {
        for (int j = 0; j < e[1]; j++)
        {
          for (int k = 0; k < e[2]; k++)
          {
            double sum = 0.0;
            int count = 0;
            ForAdjacentCells(u, c, i, j, k, [&](std::size_t cell) {
              sum += tensor(cell)[4 * c];
              count++;
            });
            out(c, i, j, k) *= sum / count;
          }
        }
      }
    }
  }
  if (m.kind() == MaterialKind::Full)
  {
    const auto avg = CellAverages(u);
    std::vector<Vec3> off(avg.size());
    for (std::size_t cell = 0; cell < avg.size(); cell++)
    {
      const Mat3 &a = tensor(cell);
      for (int c = 0; c < 3; c++)
      {
        double s = 0.0;
        for (int d = 0; d < 3; d++)
        {
          if (d != c)
          {
            s += a[3 * c + d] * avg[cell][d];
          }
        }
        off[cell][c] = s;
      }
    }
    for (int c = 0; c < 3; c++)
    {
      const auto &e = u.Extents(c);
      for (int i = 0; i < e[0]; i++)
      {
        for (int j = 0; j < e[1]; j++)
        {
          for (int k = 0; k < e[2]; k++)
          {
            double sum = 0.0;
            int count = 0;
            ForAdjacentCells(u, c, i, j, k, [&](std::size_t cell) {
              sum += off[cell][c];
              count++;
            });
            out(c, i, j, k) += sum / count;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

StaggeredField ApplyMaterial(const MaterialField &a, const StaggeredField &u)
{
  if (a.IsIdentity())
  {
    return u;
  }
  return ApplyTensor(a, u, [&](std::size_t cell) -> const Mat3 & { return a.Tensor(cell); });
}

StaggeredField ApplyInverseMaterial(const MaterialField &a, const StaggeredField &u)
{
  if (a.IsIdentity())
  {
    return u;
  }
  return ApplyTensor(a, u,
                     [&](std::size_t cell) -> const Mat3 & { return a.InverseTensor(cell); });
}

FieldTrajectory::FieldTrajectory(FieldKind kind, const GridSpec &grid)
  : grid_(grid), samples_(grid.nt, StaggeredField(kind, grid))
{
}

FieldTrajectory::FieldTrajectory(const GridSpec &grid, std::vector<StaggeredField> samples)
  : grid_(grid), samples_(std::move(samples))
{
  Validate();
}

void FieldTrajectory::Validate() const
{
  if (static_cast<int>(samples_.size()) != grid_.nt)
  {
    throw DimensionError("trajectory: expected " + std::to_string(grid_.nt) + " samples, got " +
                         std::to_string(samples_.size()));
  }
  const StaggeredField ref(samples_.front().kind(), grid_);
  for (const auto &s : samples_)
  {
    RequireCompatible(ref, s, "trajectory sample");
  }
}

FieldTrajectory &FieldTrajectory::operator+=(const FieldTrajectory &o)
{
  return Axpy(1.0, o);
}

FieldTrajectory &FieldTrajectory::operator-=(const FieldTrajectory &o)
{
  return Axpy(-1.0, o);
}

FieldTrajectory &FieldTrajectory::Axpy(double s, const FieldTrajectory &o)
{
  if (o.size() != size())
  {
    throw DimensionError("trajectory axpy: length mismatch");
  }
  for (int k = 0; k < size(); k++)
  {
    samples_[k].Axpy(s, o.samples_[k]);
  }
  return *this;
}

}  // namespace maxmaj
