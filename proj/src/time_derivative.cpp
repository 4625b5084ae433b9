// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/time_derivative.hpp"

#include "maxmaj/error.hpp"

namespace maxmaj
{

namespace
{

TimeStencil::Row Scaled(std::initializer_list<std::pair<int, double>> entries, double scale)
{
  TimeStencil::Row r;
  for (const auto &[idx, w] : entries)
  {
    r.emplace_back(idx, w * scale);
  }
  return r;
}

}  // namespace

TimeStencil TimeStencil::Accurate(int nt, double dt)
{
  if (nt < 5)
  {
    return Centered(nt, dt);
  }
  TimeStencil s;
  s.order_ = 4;
  s.rows_.resize(nt);
  const double c = 1.0 / (12.0 * dt);
  const int n = nt - 1;
  s.rows_[0] = Scaled({{0, -25}, {1, 48}, {2, -36}, {3, 16}, {4, -3}}, c);
  s.rows_[1] = Scaled({{0, -3}, {1, -10}, {2, 18}, {3, -6}, {4, 1}}, c);
  for (int k = 2; k <= n - 2; k++)
  {
    s.rows_[k] = Scaled({{k - 2, 1}, {k - 1, -8}, {k + 1, 8}, {k + 2, -1}}, c);
  }
  s.rows_[n - 1] = Scaled({{n, 3}, {n - 1, 10}, {n - 2, -18}, {n - 3, 6}, {n - 4, -1}}, c);
  s.rows_[n] = Scaled({{n, 25}, {n - 1, -48}, {n - 2, 36}, {n - 3, -16}, {n - 4, 3}}, c);
  return s;
}

TimeStencil TimeStencil::Centered(int nt, double dt)
{
  if (nt < 2)
  {
    throw ParameterError("time stencil: need at least two nodes");
  }
  TimeStencil s;
  s.rows_.resize(nt);
  const int n = nt - 1;
  if (nt == 2)
  {
    s.order_ = 1;
    s.rows_[0] = Scaled({{0, -1}, {1, 1}}, 1.0 / dt);
    s.rows_[1] = s.rows_[0];
    return s;
  }
  s.order_ = 2;
  const double c = 1.0 / (2.0 * dt);
  s.rows_[0] = Scaled({{0, -3}, {1, 4}, {2, -1}}, c);
  for (int k = 1; k < n; k++)
  {
    s.rows_[k] = Scaled({{k - 1, -1}, {k + 1, 1}}, c);
  }
  s.rows_[n] = Scaled({{n, 3}, {n - 1, -4}, {n - 2, 1}}, c);
  return s;
}

std::vector<double> TimeStencil::Apply(std::span<const double> f) const
{
  if (static_cast<int>(f.size()) != size())
  {
    throw DimensionError("time stencil: length mismatch");
  }
  std::vector<double> out(f.size(), 0.0);
  for (int k = 0; k < size(); k++)
  {
    for (const auto &[idx, w] : rows_[k])
    {
      out[k] += w * f[idx];
    }
  }
  return out;
}

std::vector<double> TimeStencil::ApplyTranspose(std::span<const double> f) const
{
  if (static_cast<int>(f.size()) != size())
  {
    throw DimensionError("time stencil: length mismatch");
  }
  std::vector<double> out(f.size(), 0.0);
  for (int k = 0; k < size(); k++)
  {
    for (const auto &[idx, w] : rows_[k])
    {
      out[idx] += w * f[k];
    }
  }
  return out;
}

StaggeredField TimeStencil::At(const FieldTrajectory &traj, int k) const
{
  if (traj.size() != size())
  {
    throw DimensionError("time stencil: trajectory length mismatch");
  }
  StaggeredField out(traj[0].kind(), traj.grid());
  for (const auto &[idx, w] : rows_[k])
  {
    out.Axpy(w, traj[idx]);
  }
  return out;
}

FieldTrajectory TimeStencil::Apply(const FieldTrajectory &traj) const
{
  std::vector<StaggeredField> out;
  out.reserve(traj.size());
  for (int k = 0; k < traj.size(); k++)
  {
    out.push_back(At(traj, k));
  }
  return FieldTrajectory(traj.grid(), std::move(out));
}

FieldTrajectory TimeStencil::ApplyTranspose(const FieldTrajectory &traj) const
{
  if (traj.size() != size())
  {
    throw DimensionError("time stencil: trajectory length mismatch");
  }
  FieldTrajectory out(traj.kind(), traj.grid());
  for (int k = 0; k < size(); k++)
  {
    for (const auto &[idx, w] : rows_[k])
    {
      out[idx].Axpy(w, traj[k]);
    }
  }
  return out;
}

}  // namespace maxmaj
