// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/grid.hpp"

#include <cmath>
#include <string>

#include "maxmaj/error.hpp"

namespace maxmaj
{

void GridSpec::Validate() const
{
  if (nx < 2 || ny < 2 || nz < 2)
  {
    throw ParameterError("grid: nx, ny, nz must be >= 2 (got " + std::to_string(nx) + ", " +
                         std::to_string(ny) + ", " + std::to_string(nz) + ")");
  }
  if (nt < 2)
  {
    throw ParameterError("grid: nt must be >= 2 (got " + std::to_string(nt) + ")");
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0) || !std::isfinite(lx) || !std::isfinite(ly) ||
      !std::isfinite(lz))
  {
    throw ParameterError("grid: box edge lengths must be positive and finite");
  }
  if (!(T > 0.0) || !std::isfinite(T))
  {
    throw ParameterError("grid: final time T must be positive and finite");
  }
}

}  // namespace maxmaj
