// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/quadrature.hpp"

#include <cmath>
#include <string>

#include "maxmaj/error.hpp"

namespace maxmaj
{

double TimeIntegral(std::span<const double> values, double dt, int up_to)
{
  if (up_to < 0 || up_to >= static_cast<int>(values.size()))
  {
    throw ParameterError("time integral: index " + std::to_string(up_to) + " out of range");
  }
  double s = 0.0;
  for (int i = 0; i < up_to; i++)
  {
    s += 0.5 * (values[i] + values[i + 1]);
  }
  return s * dt;
}

std::vector<double> CumulativeTrapezoid(std::span<const double> values, double dt)
{
  std::vector<double> out(values.size(), 0.0);
  double s = 0.0;
  for (std::size_t i = 1; i < values.size(); i++)
  {
    s += 0.5 * (values[i - 1] + values[i]);
    out[i] = s * dt;
  }
  return out;
}

std::vector<double> CumulativeExpWeighted(std::span<const double> f, std::span<const double> g,
                                          double dt)
{
  if (f.size() != g.size())
  {
    throw DimensionError("exp-weighted integral: length mismatch");
  }
  const auto G = CumulativeTrapezoid(g, dt);
  std::vector<double> out(f.size(), 0.0);
  double s = 0.0;
  for (std::size_t i = 1; i < f.size(); i++)
  {
    s += (std::exp(-G[i - 1]) - std::exp(-G[i])) * 0.5 * (f[i - 1] + f[i]);
    out[i] = std::exp(G[i]) * s;
  }
  return out;
}

double ExpWeightedIntegral(std::span<const double> f, std::span<const double> gamma, double dt,
                           int up_to)
{
  for (double g : gamma)
  {
    if (!(g > 0.0))
    {
      throw ParameterError("exp-weighted integral: gamma must be positive at every node");
    }
  }
  if (up_to < 0 || up_to >= static_cast<int>(f.size()))
  {
    throw ParameterError("exp-weighted integral: index " + std::to_string(up_to) +
                         " out of range");
  }
  return CumulativeExpWeighted(f, gamma, dt)[up_to];
}

std::vector<double> CumulativeExpWeightedConstant(std::span<const double> f, double g, double dt)
{
  std::vector<double> out(f.size(), 0.0);
  double s = 0.0;
  for (std::size_t i = 1; i < f.size(); i++)
  {
    const double t0 = (i - 1) * dt, t1 = i * dt;
    s += (std::exp(-g * t0) - std::exp(-g * t1)) * 0.5 * (f[i - 1] + f[i]);
    out[i] = std::exp(g * t1) * s;
  }
  return out;
}

std::vector<double> CumulativeDampedIntegral(std::span<const double> psi,
                                             std::span<const double> cumulative_rate, double dt)
{
  if (psi.size() != cumulative_rate.size())
  {
    throw DimensionError("damped integral: length mismatch");
  }
  std::vector<double> out(psi.size(), 0.0);
  double s = 0.0;
  for (std::size_t i = 1; i < psi.size(); i++)
  {
    const double w = 0.5 * (std::exp(-cumulative_rate[i - 1]) + std::exp(-cumulative_rate[i]));
    s += w * 0.5 * dt * (psi[i - 1] + psi[i]);
    out[i] = std::exp(cumulative_rate[i]) * s;
  }
  return out;
}

std::vector<double> CumulativeDampedIntegralConstant(std::span<const double> psi, double g,
                                                     double dt)
{
  std::vector<double> out(psi.size(), 0.0);
  double s = 0.0;
  for (std::size_t i = 1; i < psi.size(); i++)
  {
    const double t0 = (i - 1) * dt, t1 = i * dt;
    const double w = 0.5 * (std::exp(-g * t0) + std::exp(-g * t1));
    s += w * 0.5 * dt * (psi[i - 1] + psi[i]);
    out[i] = std::exp(g * t1) * s;
  }
  return out;
}

}  // namespace maxmaj
