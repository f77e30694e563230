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
#include "cqw/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

namespace cqw {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

HermitianOperator kernel_projector(const HermitianOperator& h) {
  return HermitianOperator::identity(h.dim()) - support_projector(h);
}

// Spectral data of rho_b - s sigma_b for every block.
struct BlockSpectra {
  std::vector<EigenDecomposition> eig;
  std::vector<RVector> rho_weight;  // <v_i| rho_b |v_i>
  std::vector<RVector> sigma_weight;
};

class NpProblem {
 public:
  NpProblem(std::span<const HermitianOperator> rho, std::span<const HermitianOperator> sigma)
      : rho_(rho), sigma_(sigma) {
    if (rho.size() != sigma.size() || rho.empty()) throw InvalidArgument("d_h_epsilon: block count mismatch");
    for (std::size_t b = 0; b < rho.size(); ++b) {
      if (rho[b].dim() != sigma[b].dim()) throw InvalidArgument("d_h_epsilon: block dimension mismatch");
      if (!is_psd(rho[b]) || !is_psd(sigma[b]))
        throw InvalidArgument("d_h_epsilon: arguments must be positive semidefinite");
      rho_trace_ += rho[b].trace();
      sigma_norm_ = std::max(sigma_norm_, rho[b].dim() ? sigma[b].matrix().norm() : 0.0);
    }
  }

  BlockSpectra spectra(double s) const {
    BlockSpectra out;
    for (std::size_t b = 0; b < rho_.size(); ++b) {
      EigenDecomposition e = eig_hermitian(rho_[b] - s * sigma_[b]);
      const Matrix& v = e.eigenvectors;
      out.rho_weight.push_back((v.adjoint() * rho_[b].matrix() * v).diagonal().real());
      out.sigma_weight.push_back((v.adjoint() * sigma_[b].matrix() * v).diagonal().real());
      out.eig.push_back(std::move(e));
    }
    return out;
  }

  // Tr{P_{>0}(rho - s sigma) rho}
  double alpha(double s) const {
    const BlockSpectra sp = spectra(s);
    double a = 0.0;
    for (std::size_t b = 0; b < sp.eig.size(); ++b)
      for (Eigen::Index i = 0; i < sp.eig[b].eigenvalues.size(); ++i)
        if (sp.eig[b].eigenvalues(i) > 0.0) a += sp.rho_weight[b](i);
    return a;
  }

  // Largest D_max over blocks, or nullopt when some block violates the support condition.
  std::optional<double> d_max_bits() const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < rho_.size(); ++b) {
      if (rho_[b].trace() <= 0.0) continue;
      if (support_violated(rho_[b], sigma_[b])) return std::nullopt;
      const HermitianOperator is = matrix_inv_sqrt(sigma_[b]);
      best = std::max(best, std::log2(max_eigenvalue(is.sandwich(rho_[b]))));
    }
    return best;
  }

  std::span<const HermitianOperator> rho_;
  std::span<const HermitianOperator> sigma_;
  double rho_trace_ = 0.0;
  double sigma_norm_ = 0.0;
};

}  // namespace

double Bits::value() const {
  if (infinite_) throw NumericError("Bits::value: quantity is +infinity");
  return value_;
}

bool support_violated(const HermitianOperator& omega, const HermitianOperator& tau) {
  if (omega.dim() != tau.dim()) throw InvalidArgument("support check: dimension mismatch");
  return trace_product(kernel_projector(tau), omega) > 1e-10;
}

Bits rel_entropy(const DensityOperator& omega, const DensityOperator& tau) {
  if (support_violated(omega.op(), tau.op())) return Bits::infinity();
  const double d = trace_product(omega.op(), matrix_log2(omega.op())) - trace_product(omega.op(), matrix_log2(tau.op()));
  return Bits::finite(d);
}

double rel_entropy_variance(const DensityOperator& omega, const DensityOperator& tau) {
  if (support_violated(omega.op(), tau.op()))
    throw InvalidArgument("rel_entropy_variance: supp(omega) is not contained in supp(tau)");
  HermitianOperator l = matrix_log2(omega.op()) - matrix_log2(tau.op());
  const double d = trace_product(omega.op(), l);
  l -= d * HermitianOperator::identity(l.dim());
  const HermitianOperator l2 = make_hermitian_trusted(l.matrix() * l.matrix());
  return std::max(0.0, trace_product(omega.op(), l2));
}

Bits d_max(const DensityOperator& omega, const DensityOperator& tau) {
  if (support_violated(omega.op(), tau.op())) return Bits::infinity();
  const HermitianOperator is = matrix_inv_sqrt(tau.op());
  return Bits::finite(std::log2(max_eigenvalue(is.sandwich(omega.op()))));
}

HermitianOperator NpTestResult::test() const {
  if (test_blocks.size() == 1) return test_blocks.front();
  Eigen::Index total = 0;
  for (const auto& b : test_blocks) total += b.dim();
  Matrix m = Matrix::Zero(total, total);
  Eigen::Index off = 0;
  for (const auto& b : test_blocks) {
    m.block(off, off, b.dim(), b.dim()) = b.matrix();
    off += b.dim();
  }
  return make_hermitian_trusted(std::move(m));
}

double d_h_cap_bits() { return std::log2(1.0 / kKernelTolerance); }

NpTestResult d_h_epsilon_blocks(std::span<const HermitianOperator> rho, std::span<const HermitianOperator> sigma,
                                double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("d_h_epsilon: eps must lie in (0, 1)");
  const NpProblem prob(rho, sigma);
  const double target = (1.0 - eps) * prob.rho_trace_;

  // Perfect distinguishability: the kernel of sigma already carries enough of rho.
  {
    std::vector<HermitianOperator> kers;
    double on_kernel = 0.0;
    for (std::size_t b = 0; b < rho.size(); ++b) {
      kers.push_back(kernel_projector(sigma[b]));
      on_kernel += trace_product(kers.back(), rho[b]);
    }
    if (on_kernel >= target && on_kernel > 0.0) {
      NpTestResult r;
      const double c = target / on_kernel;
      for (std::size_t b = 0; b < rho.size(); ++b) {
        r.test_blocks.push_back(c * kers[b]);
        r.beta += trace_product(r.test_blocks.back(), sigma[b]);
      }
      r.achieved_alpha = target;
      r.mix_weight = c;
      r.threshold = std::numeric_limits<double>::infinity();
      r.dual_beta = 0.0;
      r.perfect_distinguishability = true;
      r.value_bits = d_h_cap_bits();
      return r;
    }
  }

  // Bracket: alpha(0) >= target, alpha(hi) < target.
  double lo = 0.0;
  double hi = 1.0;
  if (auto dm = prob.d_max_bits(); dm && std::isfinite(*dm)) hi = std::exp2(*dm + 1.0);
  int expansions = 0;
  while (prob.alpha(hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 2000 || !std::isfinite(hi))
      throw NumericError("d_h_epsilon: could not bracket the threshold (last interval [" + fmt(lo) + ", " +
                         fmt(hi) + "])");
  }
  for (int step = 0; step < 200; ++step) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (prob.alpha(mid) >= target) lo = mid;
    else hi = mid;
  }

  // Evaluate at lo; the crossing eigenvalues sit within (hi - lo) ||sigma|| of zero.
  const double s = lo;
  const BlockSpectra sp = prob.spectra(s);
  double scale = 0.0;
  for (const auto& e : sp.eig) scale = std::max(scale, e.eigenvalues.cwiseAbs().maxCoeff());
  const double tol = std::max(kSupportCutoff * scale, 4.0 * (hi - lo) * prob.sigma_norm_);

  double a_pos = 0.0, a_ker = 0.0, pos_part = 0.0;
  for (std::size_t b = 0; b < sp.eig.size(); ++b) {
    const RVector& lam = sp.eig[b].eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam(i) > tol) {
        a_pos += sp.rho_weight[b](i);
        pos_part += lam(i);
      } else if (std::abs(lam(i)) <= tol) {
        a_ker += sp.rho_weight[b](i);
      }
    }
  }
  double c = a_ker > 0.0 ? (target - a_pos) / a_ker : 0.0;
  if (c < -1e-9 || c > 1.0 + 1e-9)
    throw NumericError("d_h_epsilon: threshold search failed (interval [" + fmt(lo) + ", " + fmt(hi) +
                       "], kernel weight " + fmt(c) + ")");
  c = std::clamp(c, 0.0, 1.0);

  NpTestResult r;
  r.threshold = s;
  r.mix_weight = c;
  for (std::size_t b = 0; b < sp.eig.size(); ++b) {
    const RVector& lam = sp.eig[b].eigenvalues;
    RVector w = RVector::Zero(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam(i) > tol) w(i) = 1.0;
      else if (std::abs(lam(i)) <= tol) w(i) = c;
    }
    const Matrix& v = sp.eig[b].eigenvectors;
    r.test_blocks.push_back(make_hermitian_trusted(v * w.cast<Complex>().asDiagonal() * v.adjoint()));
    r.achieved_alpha += trace_product(r.test_blocks.back(), rho[b]);
    r.beta += trace_product(r.test_blocks.back(), sigma[b]);
  }
  if (std::abs(r.achieved_alpha - target) > 1e-8)
    throw NumericError("d_h_epsilon: achieved alpha " + fmt(r.achieved_alpha) + " misses target " + fmt(target) +
                       " (interval [" + fmt(lo) + ", " + fmt(hi) + "])");
  r.dual_beta = s > 0.0 ? (target - pos_part) / s : 0.0;
  if (r.beta <= 0.0) {
    r.perfect_distinguishability = true;
    r.value_bits = d_h_cap_bits();
  } else {
    r.value_bits = -std::log2(r.beta);
  }
  return r;
}

NpTestResult d_h_epsilon(const HermitianOperator& rho, const HermitianOperator& sigma, double eps) {
  return d_h_epsilon_blocks(std::span(&rho, 1), std::span(&sigma, 1), eps);
}

NpTestResult d_h_epsilon(const DensityOperator& rho, const DensityOperator& sigma, double eps) {
  return d_h_epsilon(rho.op(), sigma.op(), eps);
}

NpTestResult i_h_epsilon(const CqState& rho_xb, double eps) {
  const HermitianOperator rb = rho_xb.marginal().op();
  std::vector<HermitianOperator> rho, sigma;
  for (std::size_t x = 0; x < rho_xb.size(); ++x) {
    rho.push_back(rho_xb.p(x) * rho_xb.block(x).op());
    sigma.push_back(rho_xb.p(x) * rb);
  }
  return d_h_epsilon_blocks(rho, sigma, eps);
}

double entropy(const DensityOperator& rho) {
  const RVector lam = eig_hermitian(rho.op()).eigenvalues;
  const double cut = support_threshold(lam);
  double h = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > cut) h -= lam(i) * std::log2(lam(i));
  return std::max(0.0, h);
}

double entropy_variance(const DensityOperator& rho) {
  const RVector lam = eig_hermitian(rho.op()).eigenvalues;
  const double cut = support_threshold(lam);
  const double h = entropy(rho);
  double v = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > cut) {
      const double dev = -std::log2(lam(i)) - h;
      v += lam(i) * dev * dev;
    }
  return v;
}

MutualInfo mutual_info(const CqState& rho_xb) {
  const DensityOperator rb = rho_xb.marginal();
  const HermitianOperator log_rb = matrix_log2(rb.op());
  const Eigen::Index d = rb.dim();

  std::vector<HermitianOperator> ratios;  // log2 rho^x - log2 rho_B
  double info = 0.0;
  for (std::size_t x = 0; x < rho_xb.size(); ++x) {
    if (rho_xb.p(x) == 0.0) {
      ratios.push_back(HermitianOperator::zero(d));
      continue;
    }
    const HermitianOperator& bx = rho_xb.block(x).op();
    ratios.push_back(matrix_log2(bx) - log_rb);
    info += rho_xb.p(x) * trace_product(bx, ratios.back());
  }
  double var = 0.0;
  for (std::size_t x = 0; x < rho_xb.size(); ++x) {
    if (rho_xb.p(x) == 0.0) continue;
    const HermitianOperator l = ratios[x] - info * HermitianOperator::identity(d);
    var += rho_xb.p(x) * trace_product(rho_xb.block(x).op(), make_hermitian_trusted(l.matrix() * l.matrix()));
  }

  double holevo = entropy(rb);
  for (std::size_t x = 0; x < rho_xb.size(); ++x) holevo -= rho_xb.p(x) * entropy(rho_xb.block(x));
  if (std::abs(holevo - info) > 1e-8 * std::max(1.0, std::abs(info)))
    throw NumericError("mutual_info: relative-entropy form " + fmt(info) + " disagrees with entropy form " +
                       fmt(holevo));
  return {std::max(0.0, info), std::max(0.0, var)};
}

double i_max_upper(const CqState& rho_xb) {
  const HermitianOperator is = matrix_inv_sqrt(rho_xb.marginal().op());
  double best = 0.0;
  bool any = false;
  for (std::size_t x = 0; x < rho_xb.size(); ++x) {
    if (rho_xb.p(x) == 0.0) continue;
    const double v = std::log2(max_eigenvalue(is.sandwich(rho_xb.block(x).op())));
    best = any ? std::max(best, v) : v;
    any = true;
  }
  return best;
}

Bits i_max_upper(const DensityOperator& rho_ab, Eigen::Index d_a, Eigen::Index d_b) {
  const Eigen::Index dims[] = {d_a, d_b};
  const Eigen::Index ka[] = {0};
  const Eigen::Index kb[] = {1};
  const HermitianOperator ra = partial_trace(rho_ab.op(), dims, ka);
  const HermitianOperator rb = partial_trace(rho_ab.op(), dims, kb);
  return d_max(rho_ab, DensityOperator(tensor(ra, rb)));
}

double lemma1_penalty(double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("lemma1_penalty: gamma must be positive");
  return std::log2(3.0 / (gamma * gamma));
}

double lemma1_gap(double eps, double gamma) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("lemma1_gap: eps must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < eps)) throw InvalidArgument("lemma1_gap: gamma must lie in (0, eps)");
  return lemma1_penalty(gamma);
}

}  // namespace cqw
