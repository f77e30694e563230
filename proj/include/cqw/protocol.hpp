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
#include "cqw/linalg.hpp"
#include "cqw/states.hpp"

namespace cqw {

/// Minimum eigenvalue of
///   (1+c)(I-S) + (2+c+1/c)T - [I - (S+T)^{-1/2} S (S+T)^{-1/2}],
/// with the inverse square root taken on the support of S+T.
/// Requires 0 <= S <= I, T >= 0 and c > 0.
double hn_residual(const HermitianOperator& s, const HermitianOperator& t, double c);

/// M x K codewords drawn i.i.d. from p_X, row-major by message.
struct CodebookSample {
  std::uint64_t seed = 0;
  std::size_t M = 0;
  std::size_t K = 0;
  std::vector<std::size_t> codewords;

  std::size_t at(std::size_t m, std::size_t k) const { return codewords[m * K + k]; }
};

CodebookSample sample_codebook(std::span<const double> p_x, std::size_t M, std::size_t K, std::uint64_t seed);

/// Square-root measurement over the MK codeword positions plus the
/// completion element I - sum(elements).
struct SrmDecoder {
  std::size_t M = 0;
  std::size_t K = 0;
  std::vector<HermitianOperator> elements;  // index m * K + k
  HermitianOperator completion;

  const HermitianOperator& element(std::size_t m, std::size_t k) const { return elements[m * K + k]; }
  /// sum_k Omega_{m,k}: the operator for outcome m once the key is discarded.
  HermitianOperator message_element(std::size_t m) const;
};

/// Builds the decoder from per-symbol test operators Q^x (test.test_blocks).
/// Throws NumericError when sum of Q over the codebook vanishes.
SrmDecoder build_decoder(const CodebookSample& codebook, const NpTestResult& test);
SrmDecoder build_decoder(const CodebookSample& codebook, std::span<const HermitianOperator> q);

/// Tr{(I - Omega_{m,k}) rho^{x_{m,k}}}
double decode_error(std::span<const DensityOperator> bob, const CodebookSample& codebook, const SrmDecoder& decoder,
                    std::size_t m, std::size_t k);
/// (1/MK) sum_{m,k} decode_error
double average_decode_error(std::span<const DensityOperator> bob, const CodebookSample& codebook,
                            const SrmDecoder& decoder);
/// Probabilities of all MK + 1 outcomes (completion last) on a state.
std::vector<double> outcome_probabilities(const SrmDecoder& decoder, const HermitianOperator& state);

/// floor(2^{I_H - log2(4 eps1 / eta1^2)}), at least 1.
std::size_t codebook_size(double i_h_bits, double eps1, double eta1);

struct ExperimentConfig {
  std::size_t M = 1;
  std::size_t K = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double eps1 = 0.0;
  double eta1 = 0.0;

  std::string to_json() const;
};

struct McResult {
  double mean = 0.0;
  double stddev = 0.0;
  double ci95 = 0.0;  // 1.96 stddev / sqrt(trials)
  std::size_t trials = 0;
  /// Whether log2(MK) is within the size allowed by the test's I_H value, so
  /// that mean <= eps1 is predicted.
  bool bound_applicable = false;
  std::vector<double> per_trial;
};

/// Exact per-codebook average error over `trials` codebooks seeded seed + t.
McResult mc_average_error(const CqState& rho_xb, const NpTestResult& test, const ExperimentConfig& cfg);

/// Classical-A mixture tau = (1/K) sum_k rho_A^{(x)K-1} (x) rho_{A_k B}, stored
/// as one d_B x d_B block per A^K string (string code sum_j a_j d_A^j).
class ConvexSplitState {
 public:
  ConvexSplitState(const CqState& rho_ab, std::size_t K);

  std::size_t K() const { return K_; }
  std::size_t d_a() const { return d_a_; }
  Eigen::Index d_b() const { return d_b_; }
  std::size_t string_count() const { return blocks_.size(); }
  /// Symbol at position j of the string with the given code.
  std::size_t symbol(std::size_t code, std::size_t j) const;
  const HermitianOperator& block(std::size_t code) const { return blocks_[code]; }
  const HermitianOperator& block(std::span<const std::size_t> string) const;
  double trace() const;
  /// Blocks of the reduced state on (A_k, B), one per symbol.
  std::vector<HermitianOperator> marginal(std::size_t k) const;

 private:
  std::size_t K_;
  std::size_t d_a_;
  Eigen::Index d_b_;
  std::vector<HermitianOperator> blocks_;
};

/// Largest d_A^K handled by the A^K block representation.
inline constexpr std::size_t kMaxStrings = std::size_t{1} << 20;

/// F(tau, rho_A^{(x)K} (x) rho_B), computed blockwise.
double convex_split_fidelity(const CqState& rho_ab, std::size_t K);
/// 1 / (1 + (2^dmax - 1) / K)
double convex_split_fidelity_bound(double dmax_bits, std::size_t K);

/// (1/M) sum_m 1/2 || M_{B->M}((1/K) sum_k rho_BE^{x_{m,k}}) - |m><m| (x) sigma_E ||_1,
/// where the failure outcome is kept as its own classical symbol.
/// sigma_E defaults to rho_E under p_x.
double privacy_error(const WiretapChannel& ch, std::span<const double> p_x, const CodebookSample& codebook,
                     const SrmDecoder& decoder, const std::optional<DensityOperator>& reference_e = std::nullopt);
std::vector<double> privacy_error_per_message(const WiretapChannel& ch, std::span<const double> p_x,
                                              const CodebookSample& codebook, const SrmDecoder& decoder,
                                              const std::optional<DensityOperator>& reference_e = std::nullopt);

}  // namespace cqw
