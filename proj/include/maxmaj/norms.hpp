// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_NORMS_HPP
#define MAXMAJ_NORMS_HPP

#include "maxmaj/field.hpp"
#include "maxmaj/grid.hpp"
#include "maxmaj/material.hpp"

namespace maxmaj
{

// Sum over staggered locations of u*v times the cell volume. The two discrete curls are
// mutually adjoint in this pairing.
double PlainInner(const StaggeredField &u, const StaggeredField &v, const GridSpec &grid);

/**
 * Weighted L2 pairing <w u, v>: both fields are averaged to cell centers, the cell tensor
 * is applied, and the result is summed with the cell volume. Symmetric and bilinear; for
 * SPD w it is positive semidefinite (definite on edge fields with zero tangential trace).
 */
double WeightedInner(const StaggeredField &u, const StaggeredField &v, const MaterialField &w);

// WeightedInner(u, u, w).
double WeightedNormSq(const StaggeredField &u, const MaterialField &w);

// Unweighted cell-averaged pairing, i.e. WeightedInner with the identity tensor.
double AveragedInner(const StaggeredField &u, const StaggeredField &v, const GridSpec &grid);

// Field M u with PlainInner(M u, v) == WeightedInner(u, v, w) for all v. This is the
// gradient (up to a factor 2) of WeightedNormSq.
StaggeredField WeightedMass(const StaggeredField &u, const MaterialField &w);

/**
 * n_rho = ||first||^2_eps + rho * ||curl_part||^2_{mu^-1}. `first` is either a time
 * derivative of the error or an independent approximation of it. Throws ParameterError
 * unless 0 < rho < 1.
 */
double EnergyNormN(const StaggeredField &first, const StaggeredField &curl_part,
                   const MaterialField &eps, const MaterialField &mu_inv, double rho);

}  // namespace maxmaj

#endif  // MAXMAJ_NORMS_HPP
