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

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cqw/error.hpp"

namespace cqw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Relative cutoff below which an eigenvalue counts as kernel when a support
/// is needed (log, inverse square root, D_max).
inline constexpr double kSupportCutoff = 1e-12;
/// Tolerance used to split an operator into positive part and kernel.
inline constexpr double kKernelTolerance = 1e-10;
/// Symmetry violation accepted (and then removed) on construction.
inline constexpr double kHermitianTolerance = 1e-9;
/// Eigenvalue slack for positivity checks.
inline constexpr double kPsdTolerance = 1e-10;

/// Dense complex Hermitian matrix. Construction symmetrizes the input after
/// checking that it is Hermitian within kHermitianTolerance (scaled by the
/// largest entry), so the stored entries are exactly Hermitian.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix m);

  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator diagonal(std::span<const double> values);
  /// |v><v|; v is used as given (no normalization).
  static HermitianOperator projector(const CVector& v);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  HermitianOperator& operator+=(const HermitianOperator& o);
  HermitianOperator& operator-=(const HermitianOperator& o);
  HermitianOperator& operator*=(double s);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

  /// A B A for Hermitian A, B (the sandwich stays Hermitian).
  HermitianOperator sandwich(const HermitianOperator& inner) const;

 private:
  struct Trusted {};
  HermitianOperator(Matrix m, Trusted) : m_(std::move(m)) {}
  friend HermitianOperator make_hermitian_trusted(Matrix m);

  Matrix m_;
};

/// Symmetrizes without the tolerance check; for results of Hermitian-preserving
/// arithmetic where rounding is the only asymmetry.
HermitianOperator make_hermitian_trusted(Matrix m);

/// Real trace of Tr{A B} for Hermitian A, B.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Positive semidefinite operator with trace in (0, 1 + 1e-10].
class DensityOperator {
 public:
  DensityOperator() = default;
  /// Throws InvalidArgument when not PSD within kPsdTolerance or when the
  /// trace is outside (0, 1 + 1e-10].
  explicit DensityOperator(HermitianOperator op);

  static DensityOperator pure(const CVector& psi);
  static DensityOperator maximally_mixed(Eigen::Index dim);

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  Eigen::Index dim() const { return op_.dim(); }
  double trace() const { return op_.trace(); }
  bool normalized() const;

 private:
  HermitianOperator op_;
};

struct EigenDecomposition {
  RVector eigenvalues;  // ascending
  Matrix eigenvectors;  // column i belongs to eigenvalues[i]

  HermitianOperator reconstruct() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
EigenDecomposition eig_hermitian(const HermitianOperator& h);

/// Scale-aware support cutoff for a spectrum: kSupportCutoff * max|lambda|.
double support_threshold(const RVector& eigenvalues);

enum class Support { full, support_only };

/// Sum of f(lambda_i) v_i v_i^dagger. With Support::support_only the
/// eigenvalues at or below the support cutoff are dropped (mapped to 0).
/// Throws NumericError naming the eigenvalue when f is not finite on a kept
/// eigenvalue.
HermitianOperator matrix_fn(const HermitianOperator& h, const std::function<double(double)>& f,
                            Support support);

HermitianOperator matrix_sqrt(const HermitianOperator& h);
HermitianOperator matrix_inv_sqrt(const HermitianOperator& h);  // on support
HermitianOperator matrix_log2(const HermitianOperator& h);      // on support
HermitianOperator support_projector(const HermitianOperator& h);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
/// Direct sum a (+) b.
HermitianOperator direct_sum(const HermitianOperator& a, const HermitianOperator& b);

/// Traces out the subsystems not listed in `keep` (indices into `dims`,
/// ascending); the kept subsystems stay in their original order.
HermitianOperator partial_trace(const HermitianOperator& h, std::span<const Eigen::Index> dims,
                                std::span<const Eigen::Index> keep);

double trace_norm(const HermitianOperator& a);
double min_eigenvalue(const HermitianOperator& a);
double max_eigenvalue(const HermitianOperator& a);

/// F(P, Q) = ||sqrt(P) sqrt(Q)||_1^2 for PSD P, Q.
double fidelity(const HermitianOperator& p, const HermitianOperator& q);
/// sqrt(F); summed linearly over orthogonal blocks.
double root_fidelity(const HermitianOperator& p, const HermitianOperator& q);
/// ||sqrt(P) sqrt(Q)||_1 from precomputed square roots.
double root_fidelity_from_roots(const HermitianOperator& sqrt_p, const HermitianOperator& sqrt_q);

/// Purified distance via the one-dimensional direct-sum embedding of
/// subnormalized states.
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);

struct PositivePartSplit {
  HermitianOperator positive;  // projector onto eigenvalues > tolerance
  HermitianOperator kernel;    // projector onto |eigenvalue| <= tolerance
};

PositivePartSplit positive_part_projector(const HermitianOperator& h);

bool is_psd(const HermitianOperator& h, double tol = kPsdTolerance);

}  // namespace cqw
