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
#include "cqw/protocol.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cqw/random.hpp"
#include "json.hpp"

namespace cqw {

namespace {

constexpr double kOperatorSlack = 1e-9;

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* what) {
  if (a.dim() != b.dim() || a.dim() == 0) throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

// Kahan-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double hn_residual(const HermitianOperator& s, const HermitianOperator& t, double c) {
  require_same_dim(s, t, "hn_residual");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("hn_residual: c must be positive and finite");
  const EigenDecomposition es = eig_hermitian(s);
  if (es.eigenvalues(0) < -kOperatorSlack || es.eigenvalues(es.eigenvalues.size() - 1) > 1.0 + kOperatorSlack)
    throw InvalidArgument("hn_residual: S must satisfy 0 <= S <= I");
  if (min_eigenvalue(t) < -kOperatorSlack) throw InvalidArgument("hn_residual: T must be positive semidefinite");

  const auto dim = s.dim();
  const HermitianOperator id = HermitianOperator::identity(dim);
  const HermitianOperator pgm = matrix_inv_sqrt(s + t).sandwich(s);
  const HermitianOperator lhs = (1.0 + c) * (id - s) + (2.0 + c + 1.0 / c) * t;
  return min_eigenvalue(lhs - (id - pgm));
}

CodebookSample sample_codebook(std::span<const double> p_x, std::size_t M, std::size_t K, std::uint64_t seed) {
  if (M == 0 || K == 0) throw InvalidArgument("sample_codebook: M and K must be positive");
  const std::vector<double> p = validated_probabilities(p_x, "codebook distribution");
  if (M > std::numeric_limits<std::size_t>::max() / K || M * K > kMaxStrings)
    throw ResourceError("sample_codebook: M*K exceeds " + std::to_string(kMaxStrings));
  CodebookSample cb;
  cb.seed = seed;
  cb.M = M;
  cb.K = K;
  cb.codewords.resize(M * K);
  Rng rng(seed);
  for (auto& x : cb.codewords) x = rng.categorical(p);
  return cb;
}

HermitianOperator SrmDecoder::message_element(std::size_t m) const {
  if (m >= M) throw InvalidArgument("message index out of range");
  HermitianOperator acc = HermitianOperator::zero(completion.dim());
  for (std::size_t k = 0; k < K; ++k) acc += element(m, k);
  return acc;
}

SrmDecoder build_decoder(const CodebookSample& codebook, const NpTestResult& test) {
  return build_decoder(codebook, std::span<const HermitianOperator>(test.test_blocks));
}

SrmDecoder build_decoder(const CodebookSample& codebook, std::span<const HermitianOperator> q) {
  if (codebook.codewords.size() != codebook.M * codebook.K || codebook.codewords.empty())
    throw InvalidArgument("build_decoder: malformed codebook");
  if (q.empty()) throw InvalidArgument("build_decoder: no test operators");
  const auto dim = q.front().dim();
  for (const auto& qx : q)
    if (qx.dim() != dim) throw InvalidArgument("build_decoder: test blocks differ in dimension");

  std::vector<std::size_t> count(q.size(), 0);
  for (std::size_t x : codebook.codewords) {
    if (x >= q.size()) throw InvalidArgument("build_decoder: codeword symbol outside the test");
    ++count[x];
  }
  HermitianOperator total = HermitianOperator::zero(dim);
  for (std::size_t x = 0; x < q.size(); ++x)
    if (count[x] > 0) total += static_cast<double>(count[x]) * q[x];
  if (max_eigenvalue(total) <= 0.0 || total.matrix().cwiseAbs().maxCoeff() == 0.0)
    throw NumericError("build_decoder: the sum of test operators over the codebook vanishes");

  const HermitianOperator r = matrix_inv_sqrt(total);
  // Positions sharing a symbol share an element.
  std::vector<HermitianOperator> per_symbol(q.size());
  for (std::size_t x = 0; x < q.size(); ++x)
    if (count[x] > 0) per_symbol[x] = r.sandwich(q[x]);

  SrmDecoder dec;
  dec.M = codebook.M;
  dec.K = codebook.K;
  dec.elements.reserve(codebook.codewords.size());
  HermitianOperator sum = HermitianOperator::zero(dim);
  for (std::size_t x : codebook.codewords) dec.elements.push_back(per_symbol[x]);
  for (std::size_t x = 0; x < q.size(); ++x)
    if (count[x] > 0) sum += static_cast<double>(count[x]) * per_symbol[x];
  dec.completion = HermitianOperator::identity(dim) - sum;
  return dec;
}

double decode_error(std::span<const DensityOperator> bob, const CodebookSample& codebook, const SrmDecoder& decoder,
                    std::size_t m, std::size_t k) {
  if (m >= codebook.M || k >= codebook.K || decoder.M != codebook.M || decoder.K != codebook.K)
    throw InvalidArgument("decode_error: index out of range");
  const std::size_t x = codebook.at(m, k);
  if (x >= bob.size()) throw InvalidArgument("decode_error: codeword symbol outside the channel");
  const DensityOperator& rho = bob[x];
  return rho.trace() - trace_product(decoder.element(m, k), rho.op());
}

double average_decode_error(std::span<const DensityOperator> bob, const CodebookSample& codebook,
                            const SrmDecoder& decoder) {
  CompensatedSum acc;
  for (std::size_t m = 0; m < codebook.M; ++m)
    for (std::size_t k = 0; k < codebook.K; ++k) acc.add(decode_error(bob, codebook, decoder, m, k));
  return acc.sum / static_cast<double>(codebook.M * codebook.K);
}

std::vector<double> outcome_probabilities(const SrmDecoder& decoder, const HermitianOperator& state) {
  require_same_dim(decoder.completion, state, "outcome_probabilities");
  std::vector<double> out;
  out.reserve(decoder.elements.size() + 1);
  for (const auto& e : decoder.elements) out.push_back(trace_product(e, state));
  out.push_back(trace_product(decoder.completion, state));
  return out;
}

std::size_t codebook_size(double i_h_bits, double eps1, double eta1) {
  if (!(eps1 > 0.0 && eps1 < 1.0) || !(eta1 > 0.0 && eta1 < eps1))
    throw InvalidArgument("codebook_size: need 0 < eta1 < eps1 < 1");
  const double exponent = i_h_bits - std::log2(4.0 * eps1 / (eta1 * eta1));
  if (exponent < 0.0) return 1;
  if (exponent > 62.0) throw ResourceError("codebook_size: 2^" + std::to_string(exponent) + " codewords");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::exp2(exponent))));
}

std::string ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["M"] = M;
  j["K"] = K;
  j["trials"] = trials;
  j["seed"] = seed;
  j["eps1"] = eps1;
  j["eta1"] = eta1;
  return j.dump();
}

McResult mc_average_error(const CqState& rho_xb, const NpTestResult& test, const ExperimentConfig& cfg) {
  if (cfg.M == 0 || cfg.K == 0 || cfg.trials == 0)
    throw InvalidArgument("mc_average_error: M, K and trials must be positive");
  if (test.test_blocks.size() != rho_xb.size())
    throw InvalidArgument("mc_average_error: test has " + std::to_string(test.test_blocks.size()) +
                          " blocks for " + std::to_string(rho_xb.size()) + " symbols");

  McResult res;
  res.trials = cfg.trials;
  res.per_trial.resize(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const CodebookSample cb = sample_codebook(rho_xb.probabilities(), cfg.M, cfg.K, cfg.seed + t);
    const SrmDecoder dec = build_decoder(cb, test);
    res.per_trial[t] = average_decode_error(rho_xb.blocks(), cb, dec);
  }

  CompensatedSum sum;
  for (double v : res.per_trial) sum.add(v);
  res.mean = sum.sum / static_cast<double>(cfg.trials);
  if (cfg.trials > 1) {
    CompensatedSum sq;
    for (double v : res.per_trial) sq.add((v - res.mean) * (v - res.mean));
    res.stddev = std::sqrt(sq.sum / static_cast<double>(cfg.trials - 1));
  }
  res.ci95 = 1.96 * res.stddev / std::sqrt(static_cast<double>(cfg.trials));

  const bool slack_ok = cfg.eps1 > 0.0 && cfg.eps1 < 1.0 && cfg.eta1 > 0.0 && cfg.eta1 < cfg.eps1;
  if (slack_ok) {
    const double allowed = test.value_bits - std::log2(4.0 * cfg.eps1 / (cfg.eta1 * cfg.eta1));
    const double used = std::log2(static_cast<double>(cfg.M)) + std::log2(static_cast<double>(cfg.K));
    const double target_alpha = 1.0 - (cfg.eps1 - cfg.eta1);
    res.bound_applicable = used <= allowed + 1e-12 && test.achieved_alpha >= target_alpha - 1e-8;
  }
  return res;
}

namespace {
std::size_t string_count_checked(std::size_t d_a, std::size_t K) {
  if (K == 0) throw InvalidArgument("convex split: K must be at least 1");
  if (d_a == 0) throw InvalidArgument("convex split: empty alphabet");
  std::size_t n = 1;
  for (std::size_t j = 0; j < K; ++j) {
    if (n > kMaxStrings / d_a)
      throw ResourceError("convex split: " + std::to_string(d_a) + "^" + std::to_string(K) + " strings exceed 2^20");
    n *= d_a;
  }
  return n;
}
}  // namespace

ConvexSplitState::ConvexSplitState(const CqState& rho_ab, std::size_t K)
    : K_(K), d_a_(rho_ab.size()), d_b_(rho_ab.quantum_dim()) {
  const std::size_t n = string_count_checked(d_a_, K_);
  blocks_.reserve(n);
  std::vector<std::size_t> digits(K_, 0);
  for (std::size_t code = 0; code < n; ++code) {
    double w = 1.0;
    Matrix avg = Matrix::Zero(d_b_, d_b_);
    for (std::size_t j = 0; j < K_; ++j) {
      w *= rho_ab.p(digits[j]);
      avg += rho_ab.block(digits[j]).matrix();
    }
    blocks_.push_back(make_hermitian_trusted(avg * (w / static_cast<double>(K_))));
    for (std::size_t j = 0; j < K_ && ++digits[j] == d_a_; ++j) digits[j] = 0;
  }
}

std::size_t ConvexSplitState::symbol(std::size_t code, std::size_t j) const {
  for (std::size_t i = 0; i < j; ++i) code /= d_a_;
  return code % d_a_;
}

const HermitianOperator& ConvexSplitState::block(std::span<const std::size_t> string) const {
  if (string.size() != K_) throw InvalidArgument("convex split: string length differs from K");
  std::size_t code = 0;
  for (std::size_t j = K_; j-- > 0;) {
    if (string[j] >= d_a_) throw InvalidArgument("convex split: symbol out of range");
    code = code * d_a_ + string[j];
  }
  return blocks_[code];
}

double ConvexSplitState::trace() const {
  CompensatedSum acc;
  for (const auto& b : blocks_) acc.add(b.trace());
  return acc.sum;
}

std::vector<HermitianOperator> ConvexSplitState::marginal(std::size_t k) const {
  if (k >= K_) throw InvalidArgument("convex split: position out of range");
  std::vector<HermitianOperator> out(d_a_, HermitianOperator::zero(d_b_));
  for (std::size_t code = 0; code < blocks_.size(); ++code) out[symbol(code, k)] += blocks_[code];
  return out;
}

double convex_split_fidelity(const CqState& rho_ab, std::size_t K) {
  const std::size_t d_a = rho_ab.size();
  string_count_checked(d_a, K);
  const DensityOperator rho_b = rho_ab.marginal();
  const HermitianOperator sqrt_b = matrix_sqrt(rho_b.op());

  // The tau block of a string depends only on its symbol counts, so the sum
  // over strings collapses to a multinomially weighted sum over count vectors.
  std::vector<double> log_p(d_a);
  for (std::size_t a = 0; a < d_a; ++a)
    log_p[a] = rho_ab.p(a) > 0.0 ? std::log(rho_ab.p(a)) : -std::numeric_limits<double>::infinity();
  const double log_k_fact = std::lgamma(static_cast<double>(K) + 1.0);

  CompensatedSum root;
  std::vector<std::size_t> counts(d_a, 0);
  auto visit = [&](auto&& self, std::size_t a, std::size_t left) -> void {
    if (a + 1 == d_a) {
      counts[a] = left;
      double log_w = log_k_fact;
      Matrix x = Matrix::Zero(rho_b.dim(), rho_b.dim());
      for (std::size_t b = 0; b < d_a; ++b) {
        if (counts[b] == 0) continue;
        if (rho_ab.p(b) == 0.0) return;
        log_w += static_cast<double>(counts[b]) * log_p[b] - std::lgamma(static_cast<double>(counts[b]) + 1.0);
        x += (static_cast<double>(counts[b]) / static_cast<double>(K)) * rho_ab.block(b).matrix();
      }
      const double r = root_fidelity_from_roots(matrix_sqrt(make_hermitian_trusted(std::move(x))), sqrt_b);
      root.add(std::exp(log_w) * r);
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[a] = c;
      self(self, a + 1, left - c);
    }
  };
  visit(visit, 0, K);
  return root.sum * root.sum;
}

double convex_split_fidelity_bound(double dmax_bits, std::size_t K) {
  if (K == 0) throw InvalidArgument("convex split: K must be at least 1");
  return 1.0 / (1.0 + (std::exp2(dmax_bits) - 1.0) / static_cast<double>(K));
}

std::vector<double> privacy_error_per_message(const WiretapChannel& ch, std::span<const double> p_x,
                                              const CodebookSample& codebook, const SrmDecoder& decoder,
                                              const std::optional<DensityOperator>& reference_e) {
  ch.validate();
  if (decoder.M != codebook.M || decoder.K != codebook.K)
    throw InvalidArgument("privacy_error: decoder does not match the codebook");
  if (decoder.completion.dim() != ch.d_b) throw InvalidArgument("privacy_error: decoder acts on the wrong space");
  for (std::size_t x : codebook.codewords)
    if (x >= ch.size()) throw InvalidArgument("privacy_error: codeword symbol outside the channel");
  const auto joint_dim = static_cast<std::size_t>(ch.d_b * ch.d_e);
  if (codebook.M * codebook.K > kMaxStrings / joint_dim)
    throw ResourceError("privacy_error: M*K*d_B*d_E exceeds 2^20");

  const DensityOperator sigma = reference_e ? *reference_e : reduce_wiretap(ch, p_x).rho_e;
  if (sigma.dim() != ch.d_e) throw InvalidArgument("privacy_error: reference state has the wrong dimension");

  const Eigen::Index dims[] = {ch.d_b, ch.d_e};
  const Eigen::Index keep_e[] = {1};
  const HermitianOperator id_e = HermitianOperator::identity(ch.d_e);
  const HermitianOperator id_b = HermitianOperator::identity(ch.d_b);

  std::vector<double> out(codebook.M);
  for (std::size_t m = 0; m < codebook.M; ++m) {
    HermitianOperator avg = HermitianOperator::zero(ch.d_b * ch.d_e);
    for (std::size_t k = 0; k < codebook.K; ++k) avg += ch.outputs[codebook.at(m, k)].op();
    avg *= 1.0 / static_cast<double>(codebook.K);

    const HermitianOperator lambda = decoder.message_element(m);
    // Mass on every outcome other than m, including the failure outcome.
    const double wrong = trace_product(tensor(id_b - lambda, id_e), avg);
    const HermitianOperator root = tensor(matrix_sqrt(lambda), id_e);
    const HermitianOperator e_m = partial_trace(root.sandwich(avg), dims, keep_e);
    out[m] = 0.5 * (wrong + trace_norm(e_m - sigma.op()));
  }
  return out;
}

double privacy_error(const WiretapChannel& ch, std::span<const double> p_x, const CodebookSample& codebook,
                     const SrmDecoder& decoder, const std::optional<DensityOperator>& reference_e) {
  const std::vector<double> per = privacy_error_per_message(ch, p_x, codebook, decoder, reference_e);
  CompensatedSum acc;
  for (double v : per) acc.add(v);
  return acc.sum / static_cast<double>(per.size());
}

}  // namespace cqw
