// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_QUADRATURE_HPP
#define MAXMAJ_QUADRATURE_HPP

#include <span>
#include <vector>

namespace maxmaj
{

// Composite trapezoid of values[0..up_to] on a uniform grid with spacing dt.
double TimeIntegral(std::span<const double> values, double dt, int up_to);

// Trapezoid prefix integrals: out[k] = TimeIntegral(values, dt, k).
std::vector<double> CumulativeTrapezoid(std::span<const double> values, double dt);

/**
 * Integral-form kernel: out[k] = e^{G(t_k)} int_0^{t_k} e^{-G(s)} g(s) f(s) ds with
 * G the trapezoid prefix integral of g. On each step the weight e^{-G} g is integrated
 * exactly for piecewise linear G, i.e. e^{-G_i} - e^{-G_{i+1}}, and f is averaged over the
 * step. With this rule a constant f gives f (e^{G} - 1) exactly, and it is the summation
 * by parts partner of CumulativeDampedIntegral. Requires g >= 0 at every node.
 */
std::vector<double> CumulativeExpWeighted(std::span<const double> f, std::span<const double> g,
                                          double dt);

// CumulativeExpWeighted(...)[up_to]. Throws ParameterError unless every g is > 0.
double ExpWeightedIntegral(std::span<const double> f, std::span<const double> gamma, double dt,
                           int up_to);

// CumulativeExpWeighted for a constant rate, with e^{-g t} evaluated in closed form.
std::vector<double> CumulativeExpWeightedConstant(std::span<const double> f, double g,
                                                  double dt);

/**
 * Differential-form kernel: out[k] = e^{G(t_k)} int_0^{t_k} e^{-G(s)} psi(s) ds, with the
 * step integral taken as mean(e^{-G}) * trapezoid(psi). `cumulative_rate` holds G at every
 * node.
 */
std::vector<double> CumulativeDampedIntegral(std::span<const double> psi,
                                             std::span<const double> cumulative_rate, double dt);

// CumulativeDampedIntegral with G(t) = g t evaluated in closed form.
std::vector<double> CumulativeDampedIntegralConstant(std::span<const double> psi, double g,
                                                     double dt);

}  // namespace maxmaj

#endif  // MAXMAJ_QUADRATURE_HPP
