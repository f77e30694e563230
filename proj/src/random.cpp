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
#include "cqw/random.hpp"

#include <cmath>
#include <numbers>

namespace cqw {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::size_t Rng::categorical(std::span<const double> p) {
  const double u = uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  // Rounding left u above the total; return the last symbol with mass.
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] > 0.0) return i;
  return p.size() - 1;
}

namespace {
Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  return g;
}
}  // namespace

CVector random_unit_vector(Rng& rng, Eigen::Index dim) {
  CVector v = ginibre(rng, dim, 1).col(0);
  return v / v.norm();
}

Matrix random_unitary(Rng& rng, Eigen::Index dim) {
  const Matrix g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

DensityOperator random_density(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
  if (rank <= 0 || rank > dim) rank = dim;
  const Matrix g = ginibre(rng, dim, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(make_hermitian_trusted(std::move(rho)));
}

HermitianOperator random_hermitian(Rng& rng, Eigen::Index dim) {
  const Matrix g = ginibre(rng, dim, dim);
  return make_hermitian_trusted(0.5 * (g + g.adjoint()));
}

HermitianOperator random_spectrum_operator(Rng& rng, Eigen::Index dim, double lo, double hi) {
  const Matrix u = random_unitary(rng, dim);
  RVector lam(dim);
  for (Eigen::Index i = 0; i < dim; ++i) lam(i) = rng.uniform(lo, hi);
  return make_hermitian_trusted(u * lam.cast<Complex>().asDiagonal() * u.adjoint());
}

std::vector<double> random_probabilities(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& v : p) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    v = -std::log(u);  // Dirichlet(1, ..., 1)
    s += v;
  }
  for (auto& v : p) v /= s;
  return p;
}

}  // namespace cqw
