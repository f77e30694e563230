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
#include "cqw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace cqw {
namespace {

double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix symmetrize(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return h;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Off-diagonal Frobenius norm squared.
double off_norm2(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw InvalidArgument("HermitianOperator: matrix must be square with dim >= 1");
  const double scale = std::max(1.0, max_abs_entry(m));
  const double asym = max_abs_entry(m - m.adjoint());
  if (!(asym <= kHermitianTolerance * scale))
    throw InvalidArgument("HermitianOperator: matrix is not Hermitian (max |A - A^dagger| = " +
                          fmt_double(asym) + ")");
  m_ = symmetrize(m);
}

HermitianOperator make_hermitian_trusted(Matrix m) {
  return HermitianOperator(symmetrize(m), HermitianOperator::Trusted{});
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(Matrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(Matrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                          static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    m(k, k) = values[i];
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::projector(const CVector& v) {
  return make_hermitian_trusted(v * v.adjoint());
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  if (o.dim() != dim()) throw InvalidArgument("HermitianOperator: dimension mismatch in +");
  m_ += o.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& o) {
  if (o.dim() != dim()) throw InvalidArgument("HermitianOperator: dimension mismatch in -");
  m_ -= o.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianOperator HermitianOperator::sandwich(const HermitianOperator& inner) const {
  return make_hermitian_trusted(m_ * inner.m_ * m_);
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  // Tr{AB} = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().array().conjugate()).sum().real();
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (!(tr > 0.0 && tr <= 1.0 + 1e-10))
    throw InvalidArgument("DensityOperator: trace " + fmt_double(tr) + " outside (0, 1]");
  const double lmin = min_eigenvalue(op_);
  if (lmin < -kPsdTolerance)
    throw InvalidArgument("DensityOperator: negative eigenvalue " + fmt_double(lmin));
}

DensityOperator DensityOperator::pure(const CVector& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-10) throw InvalidArgument("DensityOperator::pure: vector is not unit norm");
  return DensityOperator(HermitianOperator::projector(psi));
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  return DensityOperator(HermitianOperator::identity(dim) * (1.0 / static_cast<double>(dim)));
}

bool DensityOperator::normalized() const { return std::abs(trace() - 1.0) <= 1e-10; }

HermitianOperator EigenDecomposition::reconstruct() const {
  return make_hermitian_trusted(eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
                                eigenvectors.adjoint());
}

EigenDecomposition eig_hermitian(const HermitianOperator& h) {
  const Eigen::Index n = h.dim();
  Matrix a = h.matrix();
  Matrix v = Matrix::Identity(n, n);

  const double fro = a.norm();
  const double threshold = 1e-13 * fro;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps && fro > 0.0; ++sweep) {
    if (std::sqrt(off_norm2(a)) <= threshold) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / r;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G acts on columns p, q: G = diag(1, conj(phase)) * [[c, s], [-s, c]].
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        // A <- A G
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        // A <- G^dagger A
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }
  if (fro > 0.0 && std::sqrt(off_norm2(a)) > 1e-10 * fro)
    throw NumericError("eig_hermitian: Jacobi iteration did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

double support_threshold(const RVector& eigenvalues) {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return kSupportCutoff * scale;
}

HermitianOperator matrix_fn(const HermitianOperator& h, const std::function<double(double)>& f,
                            Support support) {
  const EigenDecomposition e = eig_hermitian(h);
  const double cut = support_threshold(e.eigenvalues);
  const Eigen::Index n = h.dim();
  RVector mapped = RVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = e.eigenvalues(i);
    if (support == Support::support_only && lam <= cut) continue;
    const double y = f(lam);
    if (!std::isfinite(y))
      throw NumericError("matrix_fn: function undefined at retained eigenvalue " + fmt_double(lam));
    mapped(i) = y;
  }
  return make_hermitian_trusted(e.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                                e.eigenvectors.adjoint());
}

HermitianOperator matrix_sqrt(const HermitianOperator& h) {
  // Eigenvalues within the support cutoff of zero are rounding noise.
  return matrix_fn(h, [](double x) { return std::sqrt(std::max(0.0, x)); }, Support::support_only);
}

HermitianOperator matrix_inv_sqrt(const HermitianOperator& h) {
  return matrix_fn(h, [](double x) { return 1.0 / std::sqrt(x); }, Support::support_only);
}

HermitianOperator matrix_log2(const HermitianOperator& h) {
  return matrix_fn(h, [](double x) { return std::log2(x); }, Support::support_only);
}

HermitianOperator support_projector(const HermitianOperator& h) {
  return matrix_fn(h, [](double) { return 1.0; }, Support::support_only);
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix m(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
  return make_hermitian_trusted(std::move(m));
}

HermitianOperator direct_sum(const HermitianOperator& a, const HermitianOperator& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix m = Matrix::Zero(da + db, da + db);
  m.topLeftCorner(da, da) = a.matrix();
  m.bottomRightCorner(db, db) = b.matrix();
  return make_hermitian_trusted(std::move(m));
}

HermitianOperator partial_trace(const HermitianOperator& h, std::span<const Eigen::Index> dims,
                                std::span<const Eigen::Index> keep) {
  const std::size_t nsys = dims.size();
  Eigen::Index total = 1;
  for (auto d : dims) {
    if (d < 1) throw InvalidArgument("partial_trace: subsystem dimension must be >= 1");
    total *= d;
  }
  if (total != h.dim())
    throw InvalidArgument("partial_trace: product of subsystem dims " + std::to_string(total) +
                          " does not match operator dim " + std::to_string(h.dim()));
  std::vector<bool> kept(nsys, false);
  for (auto k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= nsys)
      throw InvalidArgument("partial_trace: keep index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  Eigen::Index dk = 1;
  for (std::size_t s = 0; s < nsys; ++s)
    if (kept[s]) dk *= dims[s];

  // Split a full index into (kept index, traced index).
  auto split = [&](Eigen::Index idx, Eigen::Index& kidx, Eigen::Index& tidx) {
    kidx = 0;
    tidx = 0;
    Eigen::Index kstride = 1, tstride = 1;
    for (std::size_t s = nsys; s-- > 0;) {
      const Eigen::Index digit = idx % dims[s];
      idx /= dims[s];
      if (kept[s]) {
        kidx += digit * kstride;
        kstride *= dims[s];
      } else {
        tidx += digit * tstride;
        tstride *= dims[s];
      }
    }
  };

  std::vector<Eigen::Index> kix(static_cast<std::size_t>(total)), tix(static_cast<std::size_t>(total));
  for (Eigen::Index i = 0; i < total; ++i)
    split(i, kix[static_cast<std::size_t>(i)], tix[static_cast<std::size_t>(i)]);

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = h.matrix();
  for (Eigen::Index j = 0; j < total; ++j)
    for (Eigen::Index i = 0; i < total; ++i)
      if (tix[static_cast<std::size_t>(i)] == tix[static_cast<std::size_t>(j)])
        out(kix[static_cast<std::size_t>(i)], kix[static_cast<std::size_t>(j)]) += m(i, j);
  return make_hermitian_trusted(std::move(out));
}

double trace_norm(const HermitianOperator& a) {
  return eig_hermitian(a).eigenvalues.cwiseAbs().sum();
}

double min_eigenvalue(const HermitianOperator& a) { return eig_hermitian(a).eigenvalues(0); }

double max_eigenvalue(const HermitianOperator& a) {
  const auto e = eig_hermitian(a);
  return e.eigenvalues(e.eigenvalues.size() - 1);
}

bool is_psd(const HermitianOperator& h, double tol) {
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  return min_eigenvalue(h) >= -tol * scale;
}

double root_fidelity_from_roots(const HermitianOperator& sqrt_p, const HermitianOperator& sqrt_q) {
  if (sqrt_p.dim() != sqrt_q.dim()) throw InvalidArgument("fidelity: dimension mismatch");
  // ||A||_1 for A = sqrt(P) sqrt(Q) is half the trace norm of the Hermitian
  // dilation [[0, A], [A^dagger, 0]]. Working with A itself avoids square
  // roots of rounding-level eigenvalues of A A^dagger.
  const Eigen::Index d = sqrt_p.dim();
  const Matrix a = sqrt_p.matrix() * sqrt_q.matrix();
  Matrix dil = Matrix::Zero(2 * d, 2 * d);
  dil.topRightCorner(d, d) = a;
  dil.bottomLeftCorner(d, d) = a.adjoint();
  return 0.5 * trace_norm(make_hermitian_trusted(std::move(dil)));
}

double root_fidelity(const HermitianOperator& p, const HermitianOperator& q) {
  if (p.dim() != q.dim()) throw InvalidArgument("fidelity: dimension mismatch");
  if (!is_psd(p) || !is_psd(q)) throw InvalidArgument("fidelity: arguments must be positive semidefinite");
  return root_fidelity_from_roots(matrix_sqrt(p), matrix_sqrt(q));
}

double fidelity(const HermitianOperator& p, const HermitianOperator& q) {
  const double r = root_fidelity(p, q);
  return r * r;
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("purified_distance: dimension mismatch");
  const double pad_r = std::max(0.0, 1.0 - rho.trace());
  const double pad_s = std::max(0.0, 1.0 - sigma.trace());
  const HermitianOperator er = direct_sum(rho.op(), HermitianOperator::diagonal(std::span(&pad_r, 1)));
  const HermitianOperator es = direct_sum(sigma.op(), HermitianOperator::diagonal(std::span(&pad_s, 1)));
  const double f = std::min(1.0, fidelity(er, es));
  return std::sqrt(std::max(0.0, 1.0 - f));
}

PositivePartSplit positive_part_projector(const HermitianOperator& h) {
  const EigenDecomposition e = eig_hermitian(h);
  const Eigen::Index n = h.dim();
  RVector pos = RVector::Zero(n), ker = RVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = e.eigenvalues(i);
    if (lam > kKernelTolerance) pos(i) = 1.0;
    else if (std::abs(lam) <= kKernelTolerance) ker(i) = 1.0;
  }
  const Matrix& v = e.eigenvectors;
  return {make_hermitian_trusted(v * pos.cast<Complex>().asDiagonal() * v.adjoint()),
          make_hermitian_trusted(v * ker.cast<Complex>().asDiagonal() * v.adjoint())};
}

}  // namespace cqw
