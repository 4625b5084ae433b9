// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_TIME_DERIVATIVE_HPP
#define MAXMAJ_TIME_DERIVATIVE_HPP

#include <span>
#include <utility>
#include <vector>

#include "maxmaj/field.hpp"

namespace maxmaj
{

/**
 * Finite-difference first derivative on a uniform time grid, stored as one sparse row per
 * node. `Accurate` is fourth order (five-point central stencil, five-point one-sided rows
 * at the two nodes nearest each end) and falls back to lower order when nt < 5.
 * `Centered` is the classical second-order central difference with second-order one-sided
 * end rows.
 */
class TimeStencil
{
public:
  using Row = std::vector<std::pair<int, double>>;

  static TimeStencil Accurate(int nt, double dt);
  static TimeStencil Centered(int nt, double dt);

  int size() const { return static_cast<int>(rows_.size()); }
  const Row &row(int k) const { return rows_[k]; }
  // Formal order of accuracy of the interior rows.
  int order() const { return order_; }

  std::vector<double> Apply(std::span<const double> f) const;
  std::vector<double> ApplyTranspose(std::span<const double> f) const;

  // Derivative of a field trajectory at node k.
  StaggeredField At(const FieldTrajectory &traj, int k) const;
  FieldTrajectory Apply(const FieldTrajectory &traj) const;
  FieldTrajectory ApplyTranspose(const FieldTrajectory &traj) const;

private:
  std::vector<Row> rows_;
  int order_ = 0;
};

}  // namespace maxmaj

#endif  // MAXMAJ_TIME_DERIVATIVE_HPP
