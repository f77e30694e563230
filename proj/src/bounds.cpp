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
#include "cqw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cqw {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Rational approximation of the normal quantile (relative error ~1e-9),
// used as the starting point for Halley refinement.
double quantile_guess(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double lower_quantile(double p) {  // p <= 0.5
  double x = quantile_guess(p);
  for (int it = 0; it < 2; ++it) {
    const double e = phi(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

void check_eps(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument(std::string(what) + " must lie in (0, 1)");
}

BoundReport invalid_report(std::string mode, BoundParams params, std::string reason) {
  BoundReport r;
  r.mode = std::move(mode);
  r.params = std::move(params);
  r.valid = false;
  r.reason = std::move(reason);
  return r;
}

void finish(BoundReport& r) {
  r.rate_bits = r.term_sum();
  r.vacuous = r.rate_bits < 0.0;
}

}  // namespace

double phi_inv(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("phi_inv: argument must lie in (0, 1)");
  if (eps == 0.5) return 0.0;
  // 1 - eps is exact for eps >= 0.5, so the symmetry holds bit for bit.
  return eps < 0.5 ? lower_quantile(eps) : -lower_quantile(1.0 - eps);
}

double h2(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("h2: argument must lie in [0, 1]");
  auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
  return term(gamma) + term(1.0 - gamma);
}

double v2(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("v2: argument must lie in [0, 1]");
  const double h = h2(gamma);
  auto term = [h](double q) {
    if (q <= 0.0) return 0.0;
    const double t = std::log2(q) + h;
    return q * t * t;
  };
  return term(gamma) + term(1.0 - gamma);
}

double g_fn(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("g: argument must be >= 0");
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double BoundReport::term_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.value_bits;
  return s;
}

const BoundTerm* BoundReport::find_term(const std::string& name) const {
  for (const auto& t : terms)
    if (t.name == name) return &t;
  for (const auto& t : derived)
    if (t.name == name) return &t;
  return nullptr;
}

BoundReport oneshot_public_lower(const CqState& rho_xb, double eps, double eta, ErrorCriterion criterion) {
  BoundParams params;
  params.eps1 = eps;
  params.eta1 = eta;
  const std::string mode = criterion == ErrorCriterion::maximal ? "public-maximal" : "public";
  if (!(eps > 0.0 && eps < 1.0)) return invalid_report(mode, params, "eps must lie in (0, 1)");
  if (!(eta > 0.0 && eta < eps)) return invalid_report(mode, params, "eta must lie in (0, eps)");

  BoundReport r;
  r.mode = mode;
  r.params = params;
  const NpTestResult np = i_h_epsilon(rho_xb, eps - eta);
  r.terms.push_back({"I_H^{eps-eta}(X;B)", np.value_bits});
  r.terms.push_back({"-log2(4*eps/eta^2)", -std::log2(4.0 * eps / (eta * eta))});
  if (criterion == ErrorCriterion::maximal) r.terms.push_back({"-log2(2) [maximal error]", -1.0});
  if (np.perfect_distinguishability) r.flags.push_back("i_h_capped");
  finish(r);
  return r;
}

BoundReport oneshot_private_lower(const WiretapChannel& ch, std::span<const double> p_x, const PrivateSlack& s) {
  BoundParams params;
  params.eps1 = s.eps1;
  params.eps2 = s.eps2;
  params.eta1 = s.eta1;
  params.eta2 = s.eta2;
  const std::string mode = "private";
  if (!(s.eps1 > 0.0) || !(s.eps2 > 0.0)) return invalid_report(mode, params, "eps1 and eps2 must be positive");
  const double root_eps2 = std::sqrt(s.eps2);
  if (!(s.eps1 + root_eps2 < 1.0)) return invalid_report(mode, params, "eps1 + sqrt(eps2) must lie in (0, 1)");
  if (!(s.eta1 > 0.0 && s.eta1 < s.eps1)) return invalid_report(mode, params, "eta1 must lie in (0, eps1)");
  if (!(s.eta2 > 0.0 && s.eta2 < root_eps2)) return invalid_report(mode, params, "eta2 must lie in (0, sqrt(eps2))");

  const WiretapReduction red = reduce_wiretap(ch, p_x);
  const NpTestResult np = i_h_epsilon(red.xb, s.eps1 - s.eta1);
  const double imax = i_max_upper(red.xe);
  const double pen1 = std::log2(4.0 * s.eps1 / (s.eta1 * s.eta1));
  const double pen2 = 2.0 * std::log2(1.0 / s.eta2);

  BoundReport r;
  r.mode = mode;
  r.params = params;
  r.terms.push_back({"I_H^{eps1-eta1}(X;B)", np.value_bits});
  r.terms.push_back({"-I_max(E;X)", -imax});
  r.terms.push_back({"-log2(4*eps1/eta1^2)", -pen1});
  r.terms.push_back({"-2*log2(1/eta2)", -pen2});
  r.derived.push_back({"log2(MK)", np.value_bits - pen1});
  r.derived.push_back({"log2(K)", imax + pen2});
  r.derived.push_back({"privacy_error_bound", s.eps1 + root_eps2});
  if (np.perfect_distinguishability) r.flags.push_back("i_h_capped");
  finish(r);
  return r;
}

double default_slack(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("blocklength must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(n));
}

NormalApproxPoint second_order_private(double info_b, double var_b, double info_e, double var_e, std::uint64_t n,
                                       double eps1, double eps2) {
  if (!(var_b >= 0.0) || !(var_e >= 0.0)) throw InvalidArgument("second_order_private: negative variance");
  if (n == 0) throw InvalidArgument("second_order_private: n must be >= 1");
  check_eps(eps1, "eps1");
  check_eps(eps2, "eps2");
  const double nn = static_cast<double>(n);
  const double total = nn * (info_b - info_e) + std::sqrt(nn * var_b) * phi_inv(eps1) +
                       std::sqrt(nn * var_e) * phi_inv(eps2);
  return {n, total / nn, total};
}

NormalApproxPoint purestate_second_order(const DensityOperator& rho_b, const DensityOperator& rho_e,
                                         std::uint64_t n, double eps1, double eps2) {
  return second_order_private(entropy(rho_b), entropy_variance(rho_b), entropy(rho_e), entropy_variance(rho_e), n,
                              eps1, eps2);
}

BoundReport second_order_report(const WiretapChannel& ch, std::span<const double> p_x, std::uint64_t n,
                                double eps1, double eps2) {
  BoundParams params;
  params.eps1 = eps1;
  params.eps2 = eps2;
  params.n = n;
  const std::string mode = "second-order";
  if (n == 0) return invalid_report(mode, params, "n must be >= 1");
  if (!(eps1 > 0.0 && eps1 < 1.0) || !(eps2 > 0.0 && eps2 < 1.0))
    return invalid_report(mode, params, "eps1 and eps2 must lie in (0, 1)");
  const double slack = default_slack(n);
  params.eta1 = params.eta2 = params.gamma = slack;

  const WiretapReduction red = reduce_wiretap(ch, p_x);
  const MutualInfo mb = mutual_info(red.xb);
  const MutualInfo me = mutual_info(red.xe);
  const double nn = static_cast<double>(n);

  BoundReport r;
  r.mode = mode;
  r.params = params;
  r.terms.push_back({"n*I(X;B)", nn * mb.info_bits});
  r.terms.push_back({"-n*I(X;E)", -nn * me.info_bits});
  r.terms.push_back({"sqrt(n*V(X;B))*Phi^-1(eps1)", std::sqrt(nn * mb.variance_bits2) * phi_inv(eps1)});
  r.terms.push_back({"sqrt(n*V(X;E))*Phi^-1(eps2)", std::sqrt(nn * me.variance_bits2) * phi_inv(eps2)});
  finish(r);
  r.derived.push_back({"I(X;B)", mb.info_bits});
  r.derived.push_back({"V(X;B)", mb.variance_bits2});
  r.derived.push_back({"I(X;E)", me.info_bits});
  r.derived.push_back({"V(X;E)", me.variance_bits2});
  r.derived.push_back({"rate_per_use", r.rate_bits / nn});
  return r;
}

NormalApproxPoint bpsk_normal_approx(const BpskParams& p, std::uint64_t n, double eps1, double eps2) {
  const double pb = bpsk_p_bob(p);
  const double pe = bpsk_p_eve(p);
  return second_order_private(h2(pb), v2(pb), h2(pe), v2(pe), n, eps1, eps2);
}

double bpsk_asymptote(const BpskParams& p) { return h2(bpsk_p_bob(p)) - h2(bpsk_p_eve(p)); }

double ec_private_capacity(const BpskParams& p) {
  p.validate();
  return g_fn(p.eta * p.nbar) - g_fn((1.0 - p.eta) * p.nbar);
}

Curve bpsk_curve(const BpskParams& p, std::span<const std::uint64_t> n_grid, double eps1, double eps2) {
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw InvalidArgument("bpsk_curve: n grid must be strictly increasing");
  Curve c;
  c.asymptote = bpsk_asymptote(p);
  c.capacity = ec_private_capacity(p);
  for (auto n : n_grid) c.points.push_back(bpsk_normal_approx(p, n, eps1, eps2));
  return c;
}

std::vector<std::uint64_t> log_grid(double n_min, double n_max, std::size_t points) {
  if (!(n_min >= 1.0) || !(n_max >= n_min) || !std::isfinite(n_max))
    throw InvalidArgument("n range must satisfy 1 <= n_min <= n_max");
  if (points == 0) throw InvalidArgument("points must be >= 1");
  std::vector<std::uint64_t> out;
  const double l0 = std::log(n_min), l1 = std::log(n_max);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    const auto n = static_cast<std::uint64_t>(std::llround(std::exp(l0 + t * (l1 - l0))));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

}  // namespace cqw
