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
// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: cqw_acceptance [seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "cqw/bounds.hpp"
#include "cqw/divergences.hpp"
#include "cqw/oracles.hpp"
#include "cqw/protocol.hpp"
#include "cqw/random.hpp"
#include "cqw/verify.hpp"

using namespace cqw;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Requires every named assertion of a suite run to have passed.
Outcome suite_outcome(const std::string& suite, std::uint64_t seed, std::size_t trials,
                      const std::vector<std::string>& names) {
  VerifyResult r = run_verify(suite, seed, trials);
  Outcome o{true, ""};
  for (const auto& n : names) {
    const AssertionStats* a = r.find(n);
    if (!a || a->failed != 0 || a->total() == 0) o.ok = false;
    if (!o.detail.empty()) o.detail += "; ";
    if (a) o.detail += fmt("%s %zu/%zu (%s %.3e)", n.c_str(), a->passed, a->total(), a->statistic.c_str(), a->extreme);
  }
  return o;
}

Outcome np_oracle(std::uint64_t seed) {
  return suite_outcome("np", seed, 50, {"classical_oracle_match"});
}

Outcome hayashi_nagaoka(std::uint64_t seed) {
  return suite_outcome("hn", seed, 1000, {"hn_residual_nonnegative"});
}

Outcome convex_split(std::uint64_t seed) {
  return suite_outcome("convex-split", seed, 100, {"fidelity_above_bound", "purified_distance_below_bound"});
}

Outcome proposition(std::uint64_t seed) {
  return suite_outcome("prop1", seed, 100, {"variance_equals_entropy_variance", "info_equals_entropy"});
}

Outcome position_decoding(std::uint64_t seed) {
  const double eps1 = 0.2, eta1 = 0.1;
  // Pure states with overlap 0.3 have fidelity 0.09.
  const auto [v0, v1] = gram_pair(0.3);
  const CqState cq({0.5, 0.5}, {DensityOperator::pure(v0), DensityOperator::pure(v1)});
  const double fid = fidelity(cq.block(0).op(), cq.block(1).op());
  const NpTestResult test = i_h_epsilon(cq, eps1 - eta1);
  ExperimentConfig cfg;
  cfg.M = codebook_size(test.value_bits, eps1, eta1);
  cfg.K = 1;
  cfg.trials = 1000;
  cfg.seed = seed;
  cfg.eps1 = eps1;
  cfg.eta1 = eta1;
  const McResult res = mc_average_error(cq, test, cfg);
  const bool ok = fid <= 0.1 && res.trials == 1000 && res.mean <= eps1 + 3.0 * res.ci95;
  return {ok, fmt("F %.3f, I_H %.4f bits, MK %zu, mean error %.4e, ci95 %.2e, size condition %s", fid,
                  test.value_bits, cfg.M * cfg.K, res.mean, res.ci95, res.bound_applicable ? "met" : "not met")};
}

Outcome second_order_trend() {
  const double a = 0.5, b = 0.75, eps = 0.1;
  const DensityOperator rho(HermitianOperator::diagonal(std::vector<double>{1 - a, a}));
  const DensityOperator sigma(HermitianOperator::diagonal(std::vector<double>{1 - b, b}));
  const double d = rel_entropy(rho, sigma).value();
  const double v = rel_entropy_variance(rho, sigma);
  auto gap = [&](std::uint64_t n) {
    const double nd = static_cast<double>(n);
    const double exact = oracle::binomial_d_h(a, b, n, eps);
    const double approx = nd * d + std::sqrt(nd * v) * phi_inv(eps);
    return std::abs(exact - approx) / nd;
  };
  const double g2 = gap(100), g4 = gap(10000);
  return {g4 < g2 && g2 < 0.05 && g4 < 0.05,
          fmt("D %.6f, V %.6f, gap(1e2) %.4e, gap(1e4) %.4e bits/use", d, v, g2, g4)};
}

Outcome bpsk_shape() {
  BpskParams p;
  p.eta = 0.9;
  p.nbar = 0.5;
  const auto grid = log_grid(1e3, 1e7, 200);
  const Curve c = bpsk_curve(p, grid, 0.01, 0.01);
  bool monotone = true;
  for (std::size_t i = 1; i < c.points.size(); ++i)
    monotone = monotone && c.points[i].rate_per_use_bits > c.points[i - 1].rate_per_use_bits;
  const double last = c.points.back().rate_per_use_bits;
  const double rel = std::abs(c.asymptote - last) / c.asymptote;
  const bool ok = monotone && c.points.back().n == 10000000 && rel <= 0.01 && c.asymptote <= c.capacity;
  return {ok, fmt("%zu points, monotone %s, rate(1e7) %.6f, asymptote %.6f (rel gap %.3e), capacity %.6f",
                  c.points.size(), monotone ? "yes" : "no", last, c.asymptote, rel, c.capacity)};
}

Outcome metrics(std::uint64_t seed) {
  return suite_outcome("metrics", seed, 200,
                       {"purified_distance_triangle", "trace_distance_below_purified", "relative_entropy_below_dmax",
                        "data_processing_partial_trace"});
}

Outcome nonleaking(std::uint64_t seed) {
  Rng rng(seed);
  const PrivateSlack slack{0.2, 0.05, 0.1, 0.1};
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t nx = 2 + rng.index(3);
    const auto d_b = static_cast<Eigen::Index>(2 + rng.index(2));
    const auto d_e = static_cast<Eigen::Index>(1 + rng.index(3));
    const DensityOperator eve = random_density(rng, d_e);
    WiretapChannel ch;
    ch.d_b = d_b;
    ch.d_e = d_e;
    for (std::size_t x = 0; x < nx; ++x) {
      ch.symbols.push_back(std::to_string(x));
      const DensityOperator bob = random_density(rng, d_b, 1 + static_cast<Eigen::Index>(rng.index(d_b)));
      ch.outputs.emplace_back(tensor(bob.op(), eve.op()));
    }
    const auto p = random_probabilities(rng, nx);
    const BoundReport priv = oneshot_private_lower(ch, p, slack);
    const BoundReport pub = oneshot_public_lower(reduce_wiretap(ch, p).xb, slack.eps1, slack.eta1);
    if (!priv.valid || !pub.valid) return {false, "invalid report: " + priv.reason + pub.reason};
    worst = std::max(worst, std::abs(priv.rate_bits + 2.0 * std::log2(1.0 / slack.eta2) - pub.rate_bits));
  }
  return {worst <= 1e-12, fmt("20 channels, max |private + 2 log2(1/eta2) - public| %.3e", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 when no runtime limit applies
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2026;
  const std::vector<Criterion> criteria = {
      {1, "NP test vs classical oracle", 10.0, [&] { return np_oracle(seed); }},
      {2, "Hayashi-Nagaoka inequality", 30.0, [&] { return hayashi_nagaoka(seed); }},
      {3, "convex-split bound", 60.0, [&] { return convex_split(seed); }},
      {4, "pure-state variance identity", 0.0, [&] { return proposition(seed); }},
      {5, "position-based decoding error", 120.0, [&] { return position_decoding(seed); }},
      {6, "second-order expansion trend", 0.0, [] { return second_order_trend(); }},
      {7, "BPSK curve shape", 0.0, [] { return bpsk_shape(); }},
      {8, "metric invariants", 0.0, [&] { return metrics(seed); }},
      {9, "non-leaking consistency", 0.0, [&] { return nonleaking(seed); }},
  };
  std::printf("acceptance seed %llu\n", static_cast<unsigned long long>(seed));
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
    const bool ok = o.ok && in_time;
    failures += ok ? 0 : 1;
    std::printf("[%s] %d %-32s %8.3f s%s  %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs,
                in_time ? "" : " (over time limit)", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
