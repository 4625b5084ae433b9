// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_ERROR_HPP
#define MAXMAJ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace maxmaj
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Field extents or kinds do not match.
class DimensionError : public Error
{
public:
  using Error::Error;
};

// A scalar or trajectory parameter is outside its admissible range.
class ParameterError : public Error
{
public:
  using Error::Error;
};

// Unknown catalog key or unsupported case/material combination.
class CatalogError : public Error
{
public:
  using Error::Error;
};

// Time step exceeds the leapfrog stability limit.
class StabilityError : public Error
{
public:
  using Error::Error;
};

// Configuration document failed schema validation.
class ConfigError : public Error
{
public:
  using Error::Error;
};

// Snapshot or trajectory does not match the configured grid.
class DataMismatchError : public Error
{
public:
  using Error::Error;
};

// The approximation lacks the regularity a theorem needs.
class PreconditionError : public Error
{
public:
  using Error::Error;
};

// An iterative solver failed in a way that indicates a bug (e.g. negative curvature).
class SolverError : public Error
{
public:
  using Error::Error;
};

}  // namespace maxmaj

#endif  // MAXMAJ_ERROR_HPP
