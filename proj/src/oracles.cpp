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
#include "cqw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace cqw::oracle {

Bits classical_d_h(std::span<const double> p, std::span<const double> q, double eps) {
  const std::size_t n = p.size();
  if (n != q.size() || n == 0 || n > 20) throw InvalidArgument("classical_d_h: bad sizes");
  const double target = 1.0 - eps;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        a += p[i];
        b += q[i];
      }
    if (a >= target) {
      best = std::min(best, b);
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j & 1) || p[j] <= 0.0) continue;
      const double c = (target - a) / p[j];
      if (c <= 1.0) best = std::min(best, b + c * q[j]);
    }
  }
  if (best <= 0.0) return Bits::infinity();
  return Bits::finite(-std::log2(best));
}

namespace {
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}
}  // namespace

double binomial_d_h(double a, double b, std::uint64_t n, double eps) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) throw InvalidArgument("binomial_d_h: parameters in (0,1)");
  // Per-string likelihood ratio is monotone in the number of ones k; order
  // the counts so the most rho-favoured come first.
  const double slope = std::log(a / b) - std::log((1.0 - a) / (1.0 - b));
  const double nd = static_cast<double>(n);
  std::vector<double> log_rho(n + 1), log_sigma(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double log_binom = std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1);
    log_rho[k] = log_binom + kd * std::log(a) + (nd - kd) * std::log1p(-a);
    log_sigma[k] = log_binom + kd * std::log(b) + (nd - kd) * std::log1p(-b);
  }
  std::vector<std::uint64_t> order(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) order[k] = k;
  if (slope > 0.0) std::reverse(order.begin(), order.end());

  const double target = 1.0 - eps;
  double alpha = 0.0;
  double log_beta = -std::numeric_limits<double>::infinity();
  for (std::uint64_t k : order) {
    const double mass = std::exp(log_rho[k]);
    if (alpha + mass >= target) {
      const double c = (target - alpha) / mass;
      log_beta = log_add(log_beta, std::log(c) + log_sigma[k]);
      break;
    }
    alpha += mass;
    log_beta = log_add(log_beta, log_sigma[k]);
  }
  return -log_beta / std::numbers::ln2;
}

namespace {
// 10-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kNodes[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244, 0.8650633666889845,
                              0.9739065285171717};
constexpr double kWeights[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                                0.0666713443086881};

double integrate_density(double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = lo + (i + 0.5) * h;
    double s = 0.0;
    for (int j = 0; j < 5; ++j)
      for (double sign : {-1.0, 1.0}) {
        const double t = mid + sign * 0.5 * h * kNodes[j];
        s += kWeights[j] * std::exp(-0.5 * t * t);
      }
    total += 0.5 * h * s;
  }
  return total / std::sqrt(2.0 * std::numbers::pi);
}
}  // namespace

double normal_cdf_quadrature(double x) {
  // Integrate the lighter tail directly so small probabilities keep their
  // relative accuracy.
  if (x <= 0.0) return integrate_density(x - 40.0, x, 800);
  return 1.0 - integrate_density(-x - 40.0, -x, 800);
}

double normal_quantile_bisection(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal_quantile_bisection: p in (0,1)");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf_quadrature(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RVector reference_eigenvalues(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace cqw::oracle
