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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqw/divergences.hpp"
#include "cqw/states.hpp"

namespace cqw {

/// Standard normal CDF.
double phi(double x);
/// Inverse standard normal CDF on (0, 1); absolute error below 1e-9 on
/// [1e-10, 1 - 1e-10].
double phi_inv(double eps);

double h2(double gamma);
double v2(double gamma);
/// g(x) = (x + 1) log2(x + 1) - x log2 x, with g(0) = 0.
double g_fn(double x);

struct BoundTerm {
  std::string name;
  double value_bits = 0.0;  // signed contribution to the rate
};

struct BoundParams {
  std::optional<double> eps1, eps2, eta1, eta2, gamma;
  std::optional<std::uint64_t> n;
};

/// A rate with every constituent term itemized. For valid reports
/// rate_bits is the sum of the term values.
struct BoundReport {
  std::string mode;
  double rate_bits = 0.0;
  std::vector<BoundTerm> terms;
  BoundParams params;
  bool valid = true;
  std::string reason;   // set when !valid
  bool vacuous = false; // valid but negative rate
  /// Derived quantities such as log2(MK), log2(K), rate per channel use.
  std::vector<BoundTerm> derived;
  /// Notes such as "i_h_capped" (perfectly distinguishable hypotheses).
  std::vector<std::string> flags;

  double term_sum() const;
  const BoundTerm* find_term(const std::string& name) const;
};

enum class ErrorCriterion { average, maximal };

/// I_H^{eps - eta}(X;B) - log2(4 eps / eta^2); one bit less for maximal error.
BoundReport oneshot_public_lower(const CqState& rho_xb, double eps, double eta,
                                 ErrorCriterion criterion = ErrorCriterion::average);

struct PrivateSlack {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

/// log2 M = I_H^{eps1 - eta1}(X;B) - I_max(E;X) - log2(4 eps1 / eta1^2) - 2 log2(1/eta2),
/// with the smoothed max-information replaced by the unsmoothed upper bound.
BoundReport oneshot_private_lower(const WiretapChannel& ch, std::span<const double> p_x, const PrivateSlack& slack);

/// Slack value 1/sqrt(n) used for eta1, eta2 and gamma when a blocklength is given.
double default_slack(std::uint64_t n);

struct NormalApproxPoint {
  std::uint64_t n = 1;
  double rate_per_use_bits = 0.0;
  double total_bits = 0.0;
};

/// n[I_B - I_E] + sqrt(n V_B) Phi^{-1}(eps1) + sqrt(n V_E) Phi^{-1}(eps2), without the O(log n) term.
NormalApproxPoint second_order_private(double info_b, double var_b, double info_e, double var_e, std::uint64_t n,
                                       double eps1, double eps2);

/// Second-order bound for a pure-state wiretap channel from the average states.
NormalApproxPoint purestate_second_order(const DensityOperator& rho_b, const DensityOperator& rho_e,
                                         std::uint64_t n, double eps1, double eps2);

/// Itemized second-order report for a general channel.
BoundReport second_order_report(const WiretapChannel& ch, std::span<const double> p_x, std::uint64_t n,
                                double eps1, double eps2);

NormalApproxPoint bpsk_normal_approx(const BpskParams& p, std::uint64_t n, double eps1, double eps2);
/// h2(p^B) - h2(p^E)
double bpsk_asymptote(const BpskParams& p);
/// g(eta nbar) - g((1 - eta) nbar)
double ec_private_capacity(const BpskParams& p);

struct Curve {
  std::vector<NormalApproxPoint> points;
  double asymptote = 0.0;
  double capacity = 0.0;
};

/// One normal-approximation point per n (grid must be strictly increasing).
Curve bpsk_curve(const BpskParams& p, std::span<const std::uint64_t> n_grid, double eps1, double eps2);

/// Logarithmically spaced integer grid on [n_min, n_max], duplicates removed.
std::vector<std::uint64_t> log_grid(double n_min, double n_max, std::size_t points);

}  // namespace cqw
