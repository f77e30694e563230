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
#include "cqw/states.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cqw {

using json = nlohmann::json;

std::vector<double> validated_probabilities(std::span<const double> p, const std::string& what) {
  if (p.empty()) throw InvalidArgument(what + ": probability vector is empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(what + ": negative or non-finite probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument(what + ": probabilities do not sum to 1");
  std::vector<double> out(p.begin(), p.end());
  for (double& v : out) v /= sum;
  return out;
}

CqState::CqState(std::vector<std::string> symbols, std::vector<double> p, std::vector<DensityOperator> blocks)
    : symbols_(std::move(symbols)), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidArgument("CqState: no blocks");
  if (symbols_.size() != blocks_.size() || p.size() != blocks_.size())
    throw InvalidArgument("CqState: symbols, probabilities and blocks differ in length");
  p_ = validated_probabilities(p, "CqState");
  const Eigen::Index d = blocks_.front().dim();
  for (std::size_t x = 0; x < blocks_.size(); ++x) {
    if (blocks_[x].dim() != d) throw InvalidArgument("CqState: blocks have different dimensions");
    if (!blocks_[x].normalized())
      throw InvalidArgument("CqState: block for symbol '" + symbols_[x] + "' is not normalized");
  }
}

namespace {
std::vector<std::string> default_symbols(std::size_t n) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(std::to_string(i));
  return s;
}
}  // namespace

CqState::CqState(std::vector<double> p, std::vector<DensityOperator> blocks) {
  // Sized before the vectors are moved from.
  std::vector<std::string> symbols = default_symbols(blocks.size());
  *this = CqState(std::move(symbols), std::move(p), std::move(blocks));
}

DensityOperator CqState::marginal() const {
  HermitianOperator acc = HermitianOperator::zero(quantum_dim());
  for (std::size_t x = 0; x < size(); ++x) acc += p_[x] * blocks_[x].op();
  return DensityOperator(std::move(acc));
}

HermitianOperator CqState::joint() const {
  const Eigen::Index d = quantum_dim();
  const auto n = static_cast<Eigen::Index>(size());
  Matrix m = Matrix::Zero(n * d, n * d);
  for (Eigen::Index x = 0; x < n; ++x)
    m.block(x * d, x * d, d, d) = p_[static_cast<std::size_t>(x)] * blocks_[static_cast<std::size_t>(x)].matrix();
  return make_hermitian_trusted(std::move(m));
}

HermitianOperator CqState::product_of_marginals() const {
  return tensor(HermitianOperator::diagonal(p_), marginal().op());
}

void WiretapChannel::validate() const {
  if (outputs.empty()) throw InvalidArgument("channel has no symbols");
  if (symbols.size() != outputs.size()) throw InvalidArgument("channel: symbols and outputs differ in length");
  if (d_b < 1 || d_e < 1) throw InvalidArgument("channel: d_b and d_e must be positive");
  for (std::size_t x = 0; x < outputs.size(); ++x) {
    if (outputs[x].dim() != d_b * d_e)
      throw InvalidArgument("channel: output for symbol '" + symbols[x] + "' has dimension " +
                            std::to_string(outputs[x].dim()) + ", expected d_b*d_e = " +
                            std::to_string(d_b * d_e));
    if (!outputs[x].normalized())
      throw InvalidArgument("channel: output for symbol '" + symbols[x] + "' is not normalized");
  }
  if (!p_x.empty()) {
    if (p_x.size() != outputs.size()) throw InvalidArgument("channel: p_x length does not match symbols");
    (void)validated_probabilities(p_x, "channel p_x");
  }
}

WiretapReduction reduce_wiretap(const WiretapChannel& ch, std::span<const double> p_x) {
  ch.validate();
  if (p_x.size() != ch.size())
    throw InvalidArgument("reduce_wiretap: p_X has " + std::to_string(p_x.size()) + " entries but channel has " +
                          std::to_string(ch.size()) + " symbols");
  const std::vector<double> p = validated_probabilities(p_x, "reduce_wiretap");
  const Eigen::Index dims[] = {ch.d_b, ch.d_e};
  const Eigen::Index keep_b[] = {0};
  const Eigen::Index keep_e[] = {1};
  std::vector<DensityOperator> bob, eve;
  for (const auto& out : ch.outputs) {
    bob.emplace_back(partial_trace(out.op(), dims, keep_b));
    eve.emplace_back(partial_trace(out.op(), dims, keep_e));
  }
  CqState xb(ch.symbols, p, std::move(bob));
  CqState xe(ch.symbols, p, std::move(eve));
  DensityOperator rb = xb.marginal();
  DensityOperator re = xe.marginal();
  return {std::move(xb), std::move(xe), std::move(rb), std::move(re)};
}

CqState ensemble_to_cq(const PureStateEnsemble& ens) {
  if (ens.vectors.empty() || ens.vectors.size() != ens.p.size())
    throw InvalidArgument("ensemble_to_cq: probabilities and vectors differ in length");
  std::vector<DensityOperator> blocks;
  for (const auto& v : ens.vectors) blocks.push_back(DensityOperator::pure(v));
  return CqState(ens.p, std::move(blocks));
}

void BpskParams::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("BPSK: transmissivity eta must lie in (0, 1)");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidArgument("BPSK: mean photon number must be >= 0");
}

double bpsk_p_bob(const BpskParams& p) {
  p.validate();
  return 0.5 * (1.0 + std::exp(-2.0 * p.eta * p.nbar));
}

double bpsk_p_eve(const BpskParams& p) {
  p.validate();
  return 0.5 * (1.0 + std::exp(-2.0 * (1.0 - p.eta) * p.nbar));
}

std::pair<CVector, CVector> gram_pair(double overlap) {
  if (!(overlap >= -1.0 && overlap <= 1.0)) throw InvalidArgument("gram_pair: overlap outside [-1, 1]");
  // (a, +-b) with a^2 + b^2 = 1 and a^2 - b^2 = g: the columns of G^{1/2} for
  // G = [[1, g], [g, 1]] expressed in the eigenbasis of G.
  const double a = std::sqrt((1.0 + overlap) / 2.0);
  const double b = std::sqrt((1.0 - overlap) / 2.0);
  CVector plus(2), minus(2);
  plus << a, b;
  minus << a, -b;
  return {plus, minus};
}

BpskChannel bpsk_channel(const BpskParams& params) {
  params.validate();
  // |<-beta|beta>| = e^{-2|beta|^2} for coherent states.
  const double gb = std::exp(-2.0 * params.eta * params.nbar);
  const double ge = std::exp(-2.0 * (1.0 - params.eta) * params.nbar);
  const auto [bp, bm] = gram_pair(gb);
  const auto [ep, em] = gram_pair(ge);
  BpskChannel out;
  out.channel.symbols = {"+", "-"};
  out.channel.d_b = 2;
  out.channel.d_e = 2;
  out.channel.p_x = {0.5, 0.5};
  out.channel.outputs.push_back(DensityOperator(tensor(HermitianOperator::projector(bp), HermitianOperator::projector(ep))));
  out.channel.outputs.push_back(DensityOperator(tensor(HermitianOperator::projector(bm), HermitianOperator::projector(em))));
  out.p_b = bpsk_p_bob(params);
  out.p_e = bpsk_p_eve(params);
  return out;
}

namespace {

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("channel file: missing field \"") + key + "\"");
  return *it;
}

Complex parse_entry(const json& e, const std::string& path) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw ParseError("channel file: " + path + " must be a [re, im] pair");
  return Complex(e[0].get<double>(), e[1].get<double>());
}

Matrix parse_matrix(const json& m, Eigen::Index dim, const std::string& path) {
  if (!m.is_array()) throw ParseError("channel file: " + path + " must be an array");
  Matrix out(dim, dim);
  const auto n = static_cast<std::size_t>(dim);
  // Row and flat layouts differ in length except at dim 1, where rows read
  // [[[re, im]]] and the flat form reads [[re, im]].
  const bool nested = m.size() == n && (n > 1 || (m[0].is_array() && m[0].size() == 1));
  if (nested) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i].is_array() || m[i].size() != n)
        throw ParseError("channel file: " + path + "[" + std::to_string(i) + "] must have " +
                         std::to_string(n) + " entries");
      for (std::size_t j = 0; j < n; ++j)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            parse_entry(m[i][j], path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return out;
  }
  if (m.size() != n * n)
    throw ParseError("channel file: " + path + " must hold " + std::to_string(n) + " rows or " +
                     std::to_string(n * n) + " row-major entries");
  for (std::size_t k = 0; k < n * n; ++k)
    out(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
        parse_entry(m[k], path + "[" + std::to_string(k) + "]");
  return out;
}

}  // namespace

WiretapChannel parse_channel(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("channel file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("channel file: top level must be an object");

  WiretapChannel ch;
  const json& syms = require(doc, "symbols");
  if (!syms.is_array() || syms.empty()) throw ParseError("channel file: \"symbols\" must be a non-empty array");
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].is_string()) ch.symbols.push_back(syms[i].get<std::string>());
    else if (syms[i].is_number_integer()) ch.symbols.push_back(std::to_string(syms[i].get<long long>()));
    else throw ParseError("channel file: symbols[" + std::to_string(i) + "] must be a string");
  }
  const json& db = require(doc, "d_b");
  const json& de = require(doc, "d_e");
  if (!db.is_number_integer() || db.get<long long>() < 1) throw ParseError("channel file: \"d_b\" must be a positive integer");
  if (!de.is_number_integer() || de.get<long long>() < 1) throw ParseError("channel file: \"d_e\" must be a positive integer");
  ch.d_b = db.get<Eigen::Index>();
  ch.d_e = de.get<Eigen::Index>();

  const json& outs = require(doc, "outputs");
  if (!outs.is_array() || outs.size() != ch.symbols.size())
    throw ParseError("channel file: \"outputs\" must hold one matrix per symbol");
  for (std::size_t x = 0; x < outs.size(); ++x) {
    const std::string path = "outputs[" + std::to_string(x) + "]";
    Matrix m = parse_matrix(outs[x], ch.d_b * ch.d_e, path);
    try {
      ch.outputs.emplace_back(HermitianOperator(std::move(m)));
    } catch (const InvalidArgument& e) {
      throw ParseError("channel file: " + path + " (symbol '" + ch.symbols[x] + "'): " + e.what());
    }
  }
  if (auto it = doc.find("p_x"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("channel file: \"p_x\" must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_number()) throw ParseError("channel file: p_x[" + std::to_string(i) + "] must be a number");
      ch.p_x.push_back((*it)[i].get<double>());
    }
  }
  try {
    ch.validate();
    if (!ch.p_x.empty()) ch.p_x = validated_probabilities(ch.p_x, "p_x");
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("channel file: ") + e.what());
  }
  return ch;
}

std::string channel_to_json(const WiretapChannel& ch) {
  ch.validate();
  json doc = json::object();
  doc["symbols"] = ch.symbols;
  if (!ch.p_x.empty()) doc["p_x"] = ch.p_x;
  doc["d_b"] = ch.d_b;
  doc["d_e"] = ch.d_e;
  json outs = json::array();
  for (const auto& out : ch.outputs) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < out.dim(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < out.dim(); ++j) row.push_back({out.matrix()(i, j).real(), out.matrix()(i, j).imag()});
      rows.push_back(std::move(row));
    }
    outs.push_back(std::move(rows));
  }
  doc["outputs"] = std::move(outs);
  return doc.dump(1) + "\n";
}

WiretapChannel load_channel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open channel file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_channel(ss.str());
}

void save_channel(const WiretapChannel& ch, const std::filesystem::path& path) {
  const std::string text = channel_to_json(ch);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write channel file '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace cqw
