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
#include "cqw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "cqw/bounds.hpp"
#include "cqw/divergences.hpp"
#include "cqw/oracles.hpp"
#include "cqw/protocol.hpp"
#include "cqw/random.hpp"

namespace cqw {

void AssertionStats::record(bool ok, double value) {
  if (total() == 0)
    extreme = value;
  else
    extreme = track_max ? std::max(extreme, value) : std::min(extreme, value);
  (ok ? passed : failed) += 1;
}

bool VerifyResult::ok() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.failed == 0; });
}

AssertionStats* VerifyResult::find(const std::string& name) {
  for (auto& a : assertions)
    if (a.name == name) return &a;
  return nullptr;
}

std::string VerifyResult::summary() const {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "suite %s seed %llu trials %zu\n", suite.c_str(),
                static_cast<unsigned long long>(seed), trials);
  out += line;
  for (const auto& a : assertions) {
    std::snprintf(line, sizeof line, "  %-34s %zu/%zu pass  (%s %.6e)\n", a.name.c_str(), a.passed, a.total(),
                  a.statistic.c_str(), a.extreme);
    out += line;
  }
  for (const auto& [name, value] : reports) {
    std::snprintf(line, sizeof line, "  report %-27s %.17g\n", name.c_str(), value);
    out += line;
  }
  out += ok() ? "result: PASS\n" : "result: FAIL\n";
  return out;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"np", "hn", "convex-split", "prop1", "protocol", "metrics"};
  return names;
}

std::size_t default_trials(const std::string& suite) {
  if (suite == "np") return 50;
  if (suite == "hn") return 1000;
  if (suite == "convex-split") return 100;
  if (suite == "prop1") return 100;
  if (suite == "protocol") return 20;
  if (suite == "metrics") return 200;
  throw InvalidArgument("unknown verification suite \"" + suite + "\"");
}

namespace {

AssertionStats& add(VerifyResult& r, std::string name, std::string statistic, bool track_max) {
  r.assertions.push_back(AssertionStats{std::move(name), std::move(statistic), track_max});
  return r.assertions.back();
}

HermitianOperator rotate(const Matrix& u, const HermitianOperator& h) {
  return make_hermitian_trusted(u * h.matrix() * u.adjoint());
}

CqState random_cq(Rng& rng, std::size_t nx, Eigen::Index d) {
  std::vector<DensityOperator> blocks;
  for (std::size_t x = 0; x < nx; ++x) blocks.push_back(random_density(rng, d, 1 + static_cast<Eigen::Index>(rng.index(d))));
  return CqState(random_probabilities(rng, nx), std::move(blocks));
}

void suite_np(VerifyResult& r, Rng& rng) {
  auto& diag = add(r, "classical_oracle_match", "max |diff| bits", true);
  auto& rotated = add(r, "rotated_oracle_match", "max |diff| bits", true);
  auto& feasible = add(r, "type1_constraint_met", "min slack", false);
  auto& duality = add(r, "dual_gap_closed", "max |beta - dual|/beta", true);
  const double eps_values[] = {0.1, 0.25, 0.5};
  for (std::size_t t = 0; t < r.trials; ++t) {
    const auto dim = static_cast<Eigen::Index>(2 + rng.index(5));
    const std::vector<double> p = random_probabilities(rng, dim);
    const std::vector<double> q = random_probabilities(rng, dim);
    const HermitianOperator rho = HermitianOperator::diagonal(p), sigma = HermitianOperator::diagonal(q);
    const Matrix u = random_unitary(rng, dim);
    for (double eps : eps_values) {
      const double want = oracle::classical_d_h(p, q, eps).value();
      const NpTestResult got = d_h_epsilon(rho, sigma, eps);
      diag.record(std::abs(got.value_bits - want) <= 1e-6, std::abs(got.value_bits - want));
      const NpTestResult rot = d_h_epsilon(rotate(u, rho), rotate(u, sigma), eps);
      rotated.record(std::abs(rot.value_bits - want) <= 1e-6, std::abs(rot.value_bits - want));
      const double slack = rot.achieved_alpha - (1.0 - eps);
      feasible.record(slack >= -1e-8, slack);
      const double gap = std::abs(rot.beta - rot.dual_beta) / rot.beta;
      duality.record(gap <= 1e-6, gap);
    }
  }
}

void suite_hn(VerifyResult& r, Rng& rng) {
  auto& res = add(r, "hn_residual_nonnegative", "min residual", false);
  const double c_values[] = {0.1, 1.0, 10.0};
  for (std::size_t t = 0; t < r.trials; ++t) {
    const auto dim = static_cast<Eigen::Index>(2 + rng.index(5));
    HermitianOperator s = random_spectrum_operator(rng, dim, 0.0, 1.0);
    if (t % 4 == 3) {
      // Projector: the boundary case S^2 = S.
      const Matrix u = random_unitary(rng, dim);
      const auto rank = static_cast<Eigen::Index>(rng.index(dim + 1));
      Matrix p = u.leftCols(rank) * u.leftCols(rank).adjoint();
      s = make_hermitian_trusted(std::move(p));
    }
    const auto rank = static_cast<Eigen::Index>(1 + rng.index(dim));
    HermitianOperator tt = random_density(rng, dim, rank).op() * rng.uniform(0.0, 3.0);
    if (t % 5 == 4) tt = HermitianOperator::zero(dim);
    const double v = hn_residual(s, tt, c_values[t % 3]);
    res.record(v >= -1e-9, v);
  }
}

void suite_convex_split(VerifyResult& r, Rng& rng) {
  auto& fid = add(r, "fidelity_above_bound", "min F - bound", false);
  auto& pd = add(r, "purified_distance_below_bound", "max P - bound", true);
  auto& dense = add(r, "string_blocks_match_types", "max |diff|", true);
  auto& marg = add(r, "position_marginal", "max |diff|", true);
  const std::size_t ks[] = {2, 4, 8, 16};
  for (std::size_t t = 0; t < r.trials; ++t) {
    const CqState cq = random_cq(rng, 2, 2);
    const double dmax = i_max_upper(cq);
    for (std::size_t K : ks) {
      const double f = convex_split_fidelity(cq, K);
      const double lb = convex_split_fidelity_bound(dmax, K);
      fid.record(f >= lb - 1e-9, f - lb);
      const double p = std::sqrt(std::max(0.0, 1.0 - f));
      const double ub = std::sqrt(std::exp2(dmax) / static_cast<double>(K));
      pd.record(p <= ub + 1e-9, p - ub);
    }
    if (t < 10) {
      // Literal per-string evaluation against the count-grouped one.
      const std::size_t K = 2 + t % 3;
      const ConvexSplitState tau(cq, K);
      const DensityOperator rho_b = cq.marginal();
      double root = 0.0;
      for (std::size_t code = 0; code < tau.string_count(); ++code) {
        double w = 1.0;
        for (std::size_t j = 0; j < K; ++j) w *= cq.p(tau.symbol(code, j));
        root += root_fidelity(tau.block(code), rho_b.op() * w);
      }
      const double diff = std::abs(root * root - convex_split_fidelity(cq, K));
      dense.record(diff <= 1e-10, diff);
      const double inv_k = 1.0 / static_cast<double>(K);
      for (std::size_t k = 0; k < K; ++k) {
        const auto blocks = tau.marginal(k);
        double worst = 0.0;
        for (std::size_t a = 0; a < cq.size(); ++a) {
          const HermitianOperator want =
              cq.p(a) * (inv_k * cq.block(a).op() + (1.0 - inv_k) * rho_b.op());
          worst = std::max(worst, (blocks[a] - want).matrix().cwiseAbs().maxCoeff());
        }
        marg.record(worst <= 1e-12, worst);
      }
    }
  }
}

void suite_prop1(VerifyResult& r, Rng& rng) {
  auto& var = add(r, "variance_equals_entropy_variance", "max |V(X;B) - V(rho_B)|", true);
  auto& info = add(r, "info_equals_entropy", "max |I(X;B) - H(rho_B)|", true);
  for (std::size_t t = 0; t < r.trials; ++t) {
    PureStateEnsemble ens;
    const std::size_t nx = 2 + rng.index(3);
    const auto d = static_cast<Eigen::Index>(2 + rng.index(3));
    ens.p = random_probabilities(rng, nx);
    for (std::size_t x = 0; x < nx; ++x) ens.vectors.push_back(random_unit_vector(rng, d));
    const CqState cq = ensemble_to_cq(ens);
    const MutualInfo mi = mutual_info(cq);
    const DensityOperator rho_b = cq.marginal();
    const double dv = std::abs(mi.variance_bits2 - entropy_variance(rho_b));
    const double di = std::abs(mi.info_bits - entropy(rho_b));
    var.record(dv <= 1e-9, dv);
    info.record(di <= 1e-9, di);
  }
}

double max_abs(const HermitianOperator& h) { return h.matrix().cwiseAbs().maxCoeff(); }

void suite_protocol(VerifyResult& r, Rng& rng) {
  auto& complete = add(r, "decoder_sums_to_identity", "max |sum - I|", true);
  auto& psd = add(r, "decoder_elements_psd", "min eigenvalue", false);
  auto& probs = add(r, "outcome_probabilities_sum_to_one", "max |sum - 1|", true);
  auto& perm = add(r, "permutation_covariance", "max |diff|", true);
  auto& single = add(r, "single_codeword_collapse", "max |diff|", true);
  auto& priv = add(r, "privacy_error_in_unit_interval", "max privacy error", true);
  auto& mc = add(r, "mc_error_within_eps1", "mean - eps1 - 3 ci95", true);
  const double eps1 = 0.2, eta1 = 0.1;

  for (std::size_t t = 0; t < r.trials; ++t) {
    const std::size_t nx = 2 + rng.index(2);
    const auto d_b = static_cast<Eigen::Index>(2 + rng.index(2));
    const Eigen::Index d_e = 2;
    WiretapChannel ch;
    ch.d_b = d_b;
    ch.d_e = d_e;
    for (std::size_t x = 0; x < nx; ++x) {
      ch.symbols.push_back(std::to_string(x));
      ch.outputs.push_back(random_density(rng, d_b * d_e, 1 + static_cast<Eigen::Index>(rng.index(2))));
    }
    const std::vector<double> p = random_probabilities(rng, nx);
    const WiretapReduction red = reduce_wiretap(ch, p);
    const NpTestResult test = i_h_epsilon(red.xb, eps1 - eta1);
    const std::size_t M = 1 + rng.index(3), K = 1 + rng.index(3);
    const CodebookSample cb = sample_codebook(p, M, K, r.seed + t);
    const SrmDecoder dec = build_decoder(cb, test);

    HermitianOperator sum = dec.completion;
    for (const auto& e : dec.elements) sum += e;
    complete.record(max_abs(sum - HermitianOperator::identity(d_b)) <= 1e-8,
                    max_abs(sum - HermitianOperator::identity(d_b)));
    double lo = min_eigenvalue(dec.completion);
    for (const auto& e : dec.elements) lo = std::min(lo, min_eigenvalue(e));
    psd.record(lo >= -1e-9, lo);
    for (const auto& blk : red.xb.blocks()) {
      const auto pr = outcome_probabilities(dec, blk.op());
      const double dev = std::abs(std::accumulate(pr.begin(), pr.end(), 0.0) - 1.0);
      probs.record(dev <= 1e-8, dev);
    }

    // Reversing the message order must reverse the per-message errors.
    CodebookSample rev = cb;
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t k = 0; k < K; ++k) rev.codewords[m * K + k] = cb.at(M - 1 - m, k);
    const SrmDecoder dec_rev = build_decoder(rev, test);
    double worst = 0.0;
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t k = 0; k < K; ++k)
        worst = std::max(worst, std::abs(decode_error(red.xb.blocks(), cb, dec, m, k) -
                                         decode_error(red.xb.blocks(), rev, dec_rev, M - 1 - m, k)));
    const auto pe = privacy_error_per_message(ch, p, cb, dec);
    const auto pe_rev = privacy_error_per_message(ch, p, rev, dec_rev);
    for (std::size_t m = 0; m < M; ++m) worst = std::max(worst, std::abs(pe[m] - pe_rev[M - 1 - m]));
    perm.record(worst <= 1e-10, worst);

    const CodebookSample one = sample_codebook(p, 1, 1, r.seed + t);
    const SrmDecoder dec_one = build_decoder(one, test);
    const std::size_t x = one.at(0, 0);
    const double want = 1.0 - trace_product(support_projector(test.test_blocks[x]), red.xb.block(x).op());
    const double diff = std::abs(decode_error(red.xb.blocks(), one, dec_one, 0, 0) - want);
    single.record(diff <= 1e-9, diff);

    const double pv = privacy_error(ch, p, cb, dec);
    priv.record(pv >= -1e-12 && pv <= 1.0 + 1e-12, pv);
  }

  // Sized codebooks on a nearly orthogonal two-symbol channel.
  const CVector psi0 = random_unit_vector(rng, 2);
  CVector psi1(2);
  psi1 << -std::conj(psi0(1)), std::conj(psi0(0));
  const double tilt = 0.2;
  const CVector v1 = (std::sqrt(1 - tilt * tilt) * psi1 + tilt * psi0).normalized();
  const CqState cq({0.5, 0.5}, {DensityOperator::pure(psi0), DensityOperator::pure(v1)});
  const NpTestResult test = i_h_epsilon(cq, eps1 - eta1);
  ExperimentConfig cfg;
  cfg.M = codebook_size(test.value_bits, eps1, eta1);
  cfg.K = 1;
  cfg.trials = std::max<std::size_t>(r.trials, 2);
  cfg.seed = r.seed;
  cfg.eps1 = eps1;
  cfg.eta1 = eta1;
  const McResult res = mc_average_error(cq, test, cfg);
  const double margin = res.mean - eps1 - 3.0 * res.ci95;
  mc.record(!res.bound_applicable || margin <= 0.0, margin);
  r.reports.emplace_back("mc_mean_error", res.mean);
  r.reports.emplace_back("mc_ci95", res.ci95);
  r.reports.emplace_back("mc_log2_mk", std::log2(static_cast<double>(cfg.M * cfg.K)));
}

void suite_metrics(VerifyResult& r, Rng& rng) {
  auto& tri = add(r, "purified_distance_triangle", "max violation", true);
  auto& tdpd = add(r, "trace_distance_below_purified", "max violation", true);
  auto& dmax = add(r, "relative_entropy_below_dmax", "max violation", true);
  auto& dpi = add(r, "data_processing_partial_trace", "max violation", true);
  auto& eig = add(r, "eigenvalues_match_reference", "max |diff|", true);
  for (std::size_t t = 0; t < r.trials; ++t) {
    const auto d = static_cast<Eigen::Index>(2 + rng.index(3));
    const DensityOperator a = random_density(rng, d, 1 + static_cast<Eigen::Index>(rng.index(d)));
    const DensityOperator b = random_density(rng, d);
    const DensityOperator c = random_density(rng, d, 1 + static_cast<Eigen::Index>(rng.index(d)));
    const double v1 = purified_distance(a, c) - purified_distance(a, b) - purified_distance(b, c);
    tri.record(v1 <= 1e-8, v1);
    const double v2 = 0.5 * trace_norm(a.op() - b.op()) - purified_distance(a, b);
    tdpd.record(v2 <= 1e-8, v2);
    const double v3 = rel_entropy(a, b).value() - d_max(a, b).value();
    dmax.record(v3 <= 1e-8, v3);

    const auto d_b = static_cast<Eigen::Index>(2 + rng.index(2));
    const DensityOperator rab = random_density(rng, 2 * d_b, 1 + static_cast<Eigen::Index>(rng.index(2 * d_b)));
    const DensityOperator sab = random_density(rng, 2 * d_b);
    const Eigen::Index dims[] = {2, d_b};
    const Eigen::Index keep[] = {0};
    const DensityOperator ra(partial_trace(rab.op(), dims, keep));
    const DensityOperator sa(partial_trace(sab.op(), dims, keep));
    const double v4 = rel_entropy(ra, sa).value() - rel_entropy(rab, sab).value();
    dpi.record(v4 <= 1e-8, v4);

    const HermitianOperator h = random_hermitian(rng, 2 + static_cast<Eigen::Index>(rng.index(7)));
    const RVector mine = eig_hermitian(h).eigenvalues;
    const RVector ref = oracle::reference_eigenvalues(h);
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    const double v5 = (mine - ref).cwiseAbs().maxCoeff() / scale;
    eig.record(v5 <= 1e-10, v5);
  }
}

}  // namespace

VerifyResult run_verify(const std::string& suite, std::uint64_t seed, std::size_t trials) {
  VerifyResult r;
  r.suite = suite;
  r.seed = seed;
  r.trials = trials == 0 ? default_trials(suite) : trials;
  // Suites hold references to their entries while adding more.
  r.assertions.reserve(16);
  Rng rng(seed);
  if (suite == "np")
    suite_np(r, rng);
  else if (suite == "hn")
    suite_hn(r, rng);
  else if (suite == "convex-split")
    suite_convex_split(r, rng);
  else if (suite == "prop1")
    suite_prop1(r, rng);
  else if (suite == "protocol")
    suite_protocol(r, rng);
  else if (suite == "metrics")
    suite_metrics(r, rng);
  else
    throw InvalidArgument("unknown verification suite \"" + suite + "\"");
  return r;
}

}  // namespace cqw
