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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "cqw/divergences.hpp"
#include "cqw/random.hpp"
#include "cqw/states.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cqw;
using cqw::testing::diag_state;
using cqw::testing::ket;
using cqw::testing::max_abs_diff;

namespace {

WiretapChannel random_channel(Rng& rng, std::size_t n, Eigen::Index d_b, Eigen::Index d_e) {
  WiretapChannel ch;
  ch.d_b = d_b;
  ch.d_e = d_e;
  for (std::size_t x = 0; x < n; ++x) {
    ch.symbols.push_back("s" + std::to_string(x));
    ch.outputs.push_back(random_density(rng, d_b * d_e, 1 + static_cast<Eigen::Index>(x % 3)));
  }
  return ch;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cqw_test_" + name);
}

}  // namespace

TEST_CASE("probability vectors") {
  const double ok[] = {0.25, 0.75};
  CHECK(validated_probabilities(ok, "p")[1] == 0.75);
  const double slightly[] = {0.5, 0.5 + 5e-11};
  const auto p = validated_probabilities(slightly, "p");
  CHECK(p[0] + p[1] == 1.0);
  const double bad[] = {0.5, 0.6};
  CHECK_THROWS_AS(validated_probabilities(bad, "p"), InvalidArgument);
  const double neg[] = {1.5, -0.5};
  CHECK_THROWS_AS(validated_probabilities(neg, "p"), InvalidArgument);
}

TEST_CASE("cq state") {
  Rng rng(1);
  const CqState cq({0.3, 0.7}, {random_density(rng, 2), random_density(rng, 2)});
  CHECK(cq.size() == 2);
  CHECK(cq.symbols()[1] == "1");
  CHECK(cq.joint().trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_eigenvalue(cq.joint()) >= -1e-12);
  // Block-diagonal joint operator.
  CHECK(std::abs(cq.joint()(0, 2)) == 0.0);
  CHECK_THROWS_AS(CqState({1.0}, {random_density(rng, 2), random_density(rng, 2)}), InvalidArgument);
  CHECK_THROWS_AS(CqState({0.5, 0.5}, {random_density(rng, 2), random_density(rng, 3)}), InvalidArgument);
  CHECK_THROWS_AS(CqState({0.5, 0.5}, {random_density(rng, 2), diag_state({0.5, 0.2})}), InvalidArgument);
}

TEST_CASE("reduce_wiretap") {
  Rng rng(2);
  SUBCASE("non-leaking channel gives Eve a constant state") {
    const DensityOperator sigma = random_density(rng, 3);
    WiretapChannel ch;
    ch.d_b = 2;
    ch.d_e = 3;
    for (int x = 0; x < 3; ++x) {
      ch.symbols.push_back(std::to_string(x));
      ch.outputs.emplace_back(tensor(random_density(rng, 2).op(), sigma.op()));
    }
    const double p[] = {0.2, 0.3, 0.5};
    const auto red = reduce_wiretap(ch, p);
    for (const auto& blk : red.xe.blocks()) CHECK(max_abs_diff(blk.op(), sigma.op()) <= 1e-14);
  }
  SUBCASE("single symbol") {
    const auto ch = random_channel(rng, 1, 2, 2);
    const double p[] = {1.0};
    const auto red = reduce_wiretap(ch, p);
    CHECK(red.xb.size() == 1);
    const Eigen::Index dims[] = {2, 2};
    const Eigen::Index keep[] = {0};
    CHECK(max_abs_diff(red.xb.joint(), partial_trace(ch.outputs[0].op(), dims, keep)) <= 1e-15);
  }
  SUBCASE("tracing commutes with mixing") {
    const auto ch = random_channel(rng, 2, 2, 3);
    const double p[] = {0.4, 0.6};
    const auto red = reduce_wiretap(ch, p);
    const HermitianOperator mix = 0.4 * ch.outputs[0].op() + 0.6 * ch.outputs[1].op();
    const Eigen::Index dims[] = {2, 3};
    const Eigen::Index keep_b[] = {0}, keep_e[] = {1};
    CHECK(max_abs_diff(red.rho_b.op(), partial_trace(mix, dims, keep_b)) <= 1e-14);
    CHECK(max_abs_diff(red.rho_e.op(), partial_trace(mix, dims, keep_e)) <= 1e-14);
    CHECK(max_abs_diff(red.xb.marginal().op(), red.rho_b.op()) <= 1e-10);
    CHECK(max_abs_diff(red.xe.marginal().op(), red.rho_e.op()) <= 1e-10);
  }
  SUBCASE("length mismatch") {
    const auto ch = random_channel(rng, 2, 2, 2);
    const double p[] = {1.0};
    CHECK_THROWS_AS(reduce_wiretap(ch, p), InvalidArgument);
  }
}

TEST_CASE("ensemble_to_cq") {
  const double s = 1.0 / std::numbers::sqrt2;
  SUBCASE("orthonormal uniform") {
    PureStateEnsemble ens{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {ket({1, 0, 0}), ket({0, 1, 0}), ket({0, 0, 1})}};
    CHECK(max_abs_diff(ensemble_to_cq(ens).marginal().op(), HermitianOperator::identity(3) * (1.0 / 3)) <= 1e-15);
  }
  SUBCASE("single vector") {
    PureStateEnsemble ens{{1.0}, {ket({s, Complex(0, s)})}};
    CHECK(entropy(ensemble_to_cq(ens).marginal()) <= 1e-12);
  }
  SUBCASE("zero and plus") {
    PureStateEnsemble ens{{0.5, 0.5}, {ket({1, 0}), ket({s, s})}};
    const auto e = eig_hermitian(ensemble_to_cq(ens).marginal().op());
    CHECK(e.eigenvalues(0) == doctest::Approx((1 - s) / 2).epsilon(1e-12));
    CHECK(e.eigenvalues(1) == doctest::Approx((1 + s) / 2).epsilon(1e-12));
  }
}

TEST_CASE("bpsk channel") {
  SUBCASE("zero photons") {
    const auto b = bpsk_channel({0.3, 0.0});
    CHECK(b.p_b == 1.0);
    CHECK(b.p_e == 1.0);
  }
  SUBCASE("balanced splitter") {
    for (double nbar : {0.1, 1.0, 7.0}) {
      const auto b = bpsk_channel({0.5, nbar});
      CHECK(b.p_b == b.p_e);
    }
  }
  SUBCASE("Bob spectrum matches the closed form") {
    const auto b = bpsk_channel({0.9, 0.1});
    const double p_x[] = {0.5, 0.5};
    const auto red = reduce_wiretap(b.channel, p_x);
    const auto e = eig_hermitian(red.rho_b.op());
    const double g = std::exp(-2 * 0.9 * 0.1);
    CHECK(std::abs(e.eigenvalues(0) - 0.5 * (1 - g)) <= 1e-10);
    CHECK(std::abs(e.eigenvalues(1) - 0.5 * (1 + g)) <= 1e-10);
    CHECK(std::abs(b.p_b - 0.5 * (1 + g)) <= 1e-15);
  }
  SUBCASE("arm overlaps") {
    for (double eta : {0.2, 0.5, 0.9})
      for (double nbar : {0.1, 1.0, 3.0}) {
        const auto b = bpsk_channel({eta, nbar});
        const double p_x[] = {0.5, 0.5};
        const auto red = reduce_wiretap(b.channel, p_x);
        CHECK(std::abs(fidelity(red.xb.block(0).op(), red.xb.block(1).op()) - std::exp(-4 * eta * nbar)) <= 1e-12);
        CHECK(std::abs(fidelity(red.xe.block(0).op(), red.xe.block(1).op()) -
                       std::exp(-4 * (1 - eta) * nbar)) <= 1e-12);
      }
  }
  SUBCASE("parameter ranges") {
    CHECK_THROWS_AS(bpsk_channel({0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(bpsk_channel({1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(bpsk_channel({0.5, -1.0}), InvalidArgument);
  }
}

TEST_CASE("channel files") {
  Rng rng(3);
  SUBCASE("round trip") {
    WiretapChannel ch = random_channel(rng, 3, 2, 3);
    ch.p_x = {0.2, 0.3, 0.5};
    const auto path = temp_file("roundtrip.wtc.json");
    save_channel(ch, path);
    const WiretapChannel back = load_channel(path);
    std::filesystem::remove(path);
    REQUIRE(back.size() == 3);
    CHECK(back.symbols == ch.symbols);
    CHECK(back.p_x == ch.p_x);
    for (std::size_t x = 0; x < 3; ++x) CHECK(max_abs_diff(back.outputs[x].op(), ch.outputs[x].op()) <= 1e-15);
  }
  SUBCASE("flat matrices are accepted") {
    const auto ch = parse_channel(R"({"symbols":["a"],"d_b":1,"d_e":2,
      "outputs":[[[0.5,0],[0,0],[0,0],[0.5,0]]]})");
    CHECK(ch.outputs[0].dim() == 2);
    CHECK(ch.p_x.empty());
  }
  SUBCASE("missing field") {
    try {
      parse_channel(R"({"symbols":["a"],"d_e":1,"outputs":[[[[1,0]]]]})");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("d_b") != std::string::npos);
    }
  }
  SUBCASE("non-PSD output names the symbol") {
    try {
      parse_channel(R"({"symbols":["good","bad"],"d_b":2,"d_e":1,
        "outputs":[[[[1,0],[0,0]],[[0,0],[0,0]]], [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]]})");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("bad") != std::string::npos);
      CHECK(std::string(e.what()).find("outputs[1]") != std::string::npos);
    }
  }
  SUBCASE("malformed JSON") { CHECK_THROWS_AS(parse_channel("{"), ParseError); }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_channel(temp_file("does_not_exist.json")), IoError); }
}
