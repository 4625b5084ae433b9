// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_CURL_HPP
#define MAXMAJ_CURL_HPP

#include <functional>
#include <vector>

#include "maxmaj/field.hpp"
#include "maxmaj/grid.hpp"

namespace maxmaj
{

// Discrete curl of an edge field: circulation differences around each cell face.
// Second order on smooth fields. Throws DimensionError if e is not an edge field on grid.
StaggeredField CurlEdgeToFace(const StaggeredField &e, const GridSpec &grid);

// Discrete curl of a face field onto edges. This is the transpose of CurlEdgeToFace with
// respect to the plain sum inner product on fields with zero tangential trace; the output
// is zero on tangential boundary edges.
StaggeredField CurlFaceToEdge(const StaggeredField &h, const GridSpec &grid);

// Node-based scalar, (nx+1)*(ny+1)*(nz+1) values ordered (i*(ny+1) + j)*(nz+1) + k.
std::vector<double> SampleNodes(const GridSpec &grid,
                                const std::function<double(double, double, double)> &fn);

// Discrete gradient of a node scalar onto edges.
StaggeredField GradientNodeToEdge(const std::vector<double> &phi, const GridSpec &grid);

}  // namespace maxmaj

#endif  // MAXMAJ_CURL_HPP
