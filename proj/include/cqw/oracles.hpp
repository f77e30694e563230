/*
 * Copyright 2026 The cqwiretap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <span>

#include "cqw/divergences.hpp"

// Reference computations that share no code path with the library routines
// they check. Used by the verification suites and the tests.
namespace cqw::oracle {

/// Classical Neyman-Pearson by exhaustion: the optimum of the test LP sits
/// at a vertex, i.e. an indicator of a subset plus at most one fractional
/// outcome. Returns -log2 of the minimal type-II error, or infinity when it is 0.
Bits classical_d_h(std::span<const double> p, std::span<const double> q, double eps);

/// D_H^eps(Bern(a)^n || Bern(b)^n) from exact binomial tails in the log domain.
double binomial_d_h(double a, double b, std::uint64_t n, double eps);

/// Normal CDF by composite Gauss-Legendre quadrature of the density.
double normal_cdf_quadrature(double x);
/// Quantile by bisection on normal_cdf_quadrature.
double normal_quantile_bisection(double p);

/// Eigenvalues (ascending) from Eigen's self-adjoint solver.
RVector reference_eigenvalues(const HermitianOperator& h);

}  // namespace cqw::oracle
