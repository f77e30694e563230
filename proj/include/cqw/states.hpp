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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cqw/linalg.hpp"

namespace cqw {

/// Checks that p is a probability vector (entries >= 0, sum 1 within 1e-10)
/// and returns it renormalized exactly.
std::vector<double> validated_probabilities(std::span<const double> p, const std::string& what);

/// rho_XB = sum_x p(x) |x><x| (x) rho^x, stored blockwise.
class CqState {
 public:
  CqState() = default;
  CqState(std::vector<std::string> symbols, std::vector<double> p, std::vector<DensityOperator> blocks);
  /// Symbols labelled "0", "1", ...
  CqState(std::vector<double> p, std::vector<DensityOperator> blocks);

  std::size_t size() const { return blocks_.size(); }
  Eigen::Index quantum_dim() const { return blocks_.empty() ? 0 : blocks_.front().dim(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<double>& probabilities() const { return p_; }
  double p(std::size_t x) const { return p_[x]; }
  const DensityOperator& block(std::size_t x) const { return blocks_[x]; }
  const std::vector<DensityOperator>& blocks() const { return blocks_; }

  /// sum_x p(x) rho^x
  DensityOperator marginal() const;
  /// Dense |X| d x |X| d block-diagonal joint operator.
  HermitianOperator joint() const;
  /// rho_X (x) rho_B as a dense operator.
  HermitianOperator product_of_marginals() const;

 private:
  std::vector<std::string> symbols_;
  std::vector<double> p_;
  std::vector<DensityOperator> blocks_;
};

/// x -> rho_BE^x with B (x) E ordering of the joint space.
struct WiretapChannel {
  std::vector<std::string> symbols;
  Eigen::Index d_b = 0;
  Eigen::Index d_e = 0;
  std::vector<DensityOperator> outputs;
  /// Input distribution stored with the channel file, if any.
  std::vector<double> p_x;

  /// Throws InvalidArgument naming the offending symbol.
  void validate() const;
  std::size_t size() const { return outputs.size(); }
};

struct WiretapReduction {
  CqState xb;
  CqState xe;
  DensityOperator rho_b;
  DensityOperator rho_e;
};

WiretapReduction reduce_wiretap(const WiretapChannel& ch, std::span<const double> p_x);

/// Unit vectors with an input distribution.
struct PureStateEnsemble {
  std::vector<double> p;
  std::vector<CVector> vectors;
};

CqState ensemble_to_cq(const PureStateEnsemble& ens);

/// BPSK coherent-state coding over a pure-loss channel: transmissivity eta
/// and mean photon number nbar = |alpha|^2.
struct BpskParams {
  double eta = 0.5;
  double nbar = 0.0;

  void validate() const;
};

/// p^B = (1 + e^{-2 eta nbar}) / 2
double bpsk_p_bob(const BpskParams& p);
/// p^E = (1 + e^{-2 (1 - eta) nbar}) / 2
double bpsk_p_eve(const BpskParams& p);

/// Two unit vectors in R^2 with real inner product `overlap`, obtained by
/// symmetric orthogonalization of the 2x2 Gram matrix [[1, g], [g, 1]].
std::pair<CVector, CVector> gram_pair(double overlap);

struct BpskChannel {
  WiretapChannel channel;  // symbols "+" (alpha) and "-" (-alpha), d_b = d_e = 2
  double p_b = 1.0;
  double p_e = 1.0;
};

BpskChannel bpsk_channel(const BpskParams& params);

/// Channel file (.wtc.json) I/O. Matrices are row-major: a list of rows, each a
/// list of [re, im] pairs. A flat list of dim^2 pairs is accepted on load.
WiretapChannel parse_channel(const std::string& text);
std::string channel_to_json(const WiretapChannel& ch);
WiretapChannel load_channel(const std::filesystem::path& path);
void save_channel(const WiretapChannel& ch, const std::filesystem::path& path);

}  // namespace cqw
