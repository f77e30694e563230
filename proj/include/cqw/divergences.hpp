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

#include <span>
#include <vector>

#include "cqw/linalg.hpp"
#include "cqw/states.hpp"

namespace cqw {

/// A quantity in bits that may be +infinity (support condition violated).
class Bits {
 public:
  static Bits finite(double v) { return Bits(v, false); }
  static Bits infinity() { return Bits(0.0, true); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws NumericError when infinite.
  double value() const;

 private:
  Bits(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// True when supp(omega) is not contained in supp(tau), i.e.
/// Tr{Pi_ker(tau) omega} > 1e-10.
bool support_violated(const HermitianOperator& omega, const HermitianOperator& tau);

/// D(omega||tau) = Tr{omega [log2 omega - log2 tau]}.
Bits rel_entropy(const DensityOperator& omega, const DensityOperator& tau);

/// V(omega||tau) = Tr{omega [log2 omega - log2 tau - D]^2}. Throws
/// InvalidArgument when the support condition fails.
double rel_entropy_variance(const DensityOperator& omega, const DensityOperator& tau);

/// D_max(omega||tau) = log2 of the largest eigenvalue of
/// tau^{-1/2} omega tau^{-1/2} on supp(tau).
Bits d_max(const DensityOperator& omega, const DensityOperator& tau);

/// Optimal Neyman-Pearson test for D_H^eps. The test is stored blockwise;
/// a dense pair gives a single block.
struct NpTestResult {
  double value_bits = 0.0;                    // -log2 Tr{Lambda sigma}, capped when perfect
  std::vector<HermitianOperator> test_blocks; // Lambda = P+(rho - s sigma) + c Pi0(rho - s sigma)
  double threshold = 0.0;                     // s*
  double mix_weight = 0.0;                    // c
  double achieved_alpha = 0.0;                // Tr{Lambda rho}
  double beta = 0.0;                          // Tr{Lambda sigma}
  /// ((1 - eps) - Tr{(rho - s* sigma)_+}) / s*, a lower bound on Tr{Lambda' sigma}
  /// for every feasible Lambda'. Equals beta at the optimum.
  double dual_beta = 0.0;
  bool perfect_distinguishability = false;

  HermitianOperator test() const;
};

/// log2(1 / kKernelTolerance): the value reported for perfectly
/// distinguishable pairs.
double d_h_cap_bits();

NpTestResult d_h_epsilon(const HermitianOperator& rho, const HermitianOperator& sigma, double eps);
NpTestResult d_h_epsilon(const DensityOperator& rho, const DensityOperator& sigma, double eps);
/// Block-diagonal pair: rho = (+)_b rho_b, sigma = (+)_b sigma_b.
NpTestResult d_h_epsilon_blocks(std::span<const HermitianOperator> rho, std::span<const HermitianOperator> sigma,
                                double eps);
/// I_H^eps(X;B) = D_H^eps(rho_XB || rho_X (x) rho_B); test_blocks[x] is Q_B^x.
NpTestResult i_h_epsilon(const CqState& rho_xb, double eps);

double entropy(const DensityOperator& rho);
double entropy_variance(const DensityOperator& rho);

struct MutualInfo {
  double info_bits = 0.0;
  double variance_bits2 = 0.0;
};

/// I(X;B) and V(X;B) of a cq state, evaluated block by block.
MutualInfo mutual_info(const CqState& rho_xb);

/// D_max(rho_XB || rho_X (x) rho_B): an upper bound on the smoothed
/// max-information for every smoothing parameter.
double i_max_upper(const CqState& rho_xb);
/// Same quantity for a dense bipartite state on A (x) B.
Bits i_max_upper(const DensityOperator& rho_ab, Eigen::Index d_a, Eigen::Index d_b);

/// log2(3 / gamma^2) for any gamma > 0.
double lemma1_penalty(double gamma);
/// Additive gap between the smoothed max-information at eps and the smoothed
/// max-mutual-information at eps - gamma; requires eps in (0,1), gamma in (0, eps).
double lemma1_gap(double eps, double gamma);

}  // namespace cqw
