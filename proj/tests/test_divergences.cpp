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
#include <numbers>

#include "cqw/divergences.hpp"
#include "cqw/oracles.hpp"
#include "cqw/random.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cqw;
using cqw::testing::diag_state;
using cqw::testing::ket;

namespace {

DensityOperator correlated_bit() {
  return DensityOperator(HermitianOperator::diagonal(std::vector<double>{0.5, 0.0, 0.0, 0.5}));
}

CqState correlated_cq() { return CqState({0.5, 0.5}, {diag_state({1, 0}), diag_state({0, 1})}); }

}  // namespace

TEST_CASE("relative entropy") {
  Rng rng(1);
  const auto rho = random_density(rng, 3);
  CHECK(std::abs(rel_entropy(rho, rho).value()) <= 1e-12);
  const double want = 0.5 * 1.0 + 0.5 * std::log2(2.0 / 3.0);
  CHECK(rel_entropy(diag_state({0.5, 0.5}), diag_state({0.25, 0.75})).value() == doctest::Approx(want).epsilon(1e-12));
  CHECK(rel_entropy(diag_state({1, 0}), diag_state({0, 1})).is_infinite());
  CHECK_THROWS_AS(rel_entropy(diag_state({1, 0}), diag_state({0, 1})).value(), NumericError);
  for (int t = 0; t < 10; ++t) CHECK(rel_entropy(random_density(rng, 3), random_density(rng, 3)).value() >= 0.0);
}

TEST_CASE("relative entropy variance") {
  Rng rng(2);
  const auto rho = random_density(rng, 3);
  CHECK(std::abs(rel_entropy_variance(rho, rho)) <= 1e-12);
  const auto prod = DensityOperator(HermitianOperator::identity(4) * 0.25);
  CHECK(std::abs(rel_entropy_variance(correlated_bit(), prod)) <= 1e-12);

  const std::vector<double> p = random_probabilities(rng, 4), q = random_probabilities(rng, 4);
  double d = 0.0, v = 0.0;
  for (int i = 0; i < 4; ++i) d += p[i] * std::log2(p[i] / q[i]);
  for (int i = 0; i < 4; ++i) v += p[i] * std::pow(std::log2(p[i] / q[i]) - d, 2);
  const DensityOperator dp(HermitianOperator::diagonal(p)), dq(HermitianOperator::diagonal(q));
  CHECK(rel_entropy_variance(dp, dq) == doctest::Approx(v).epsilon(1e-10));
  CHECK_THROWS_AS(rel_entropy_variance(diag_state({1, 0}), diag_state({0, 1})), InvalidArgument);
}

TEST_CASE("max relative entropy") {
  Rng rng(3);
  const auto rho = random_density(rng, 3);
  CHECK(std::abs(d_max(rho, rho).value()) <= 1e-10);
  CHECK(d_max(diag_state({0.5, 0.5}), diag_state({0.25, 0.75})).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d_max(diag_state({1, 0}), diag_state({0, 1})).is_infinite());
  for (int t = 0; t < 20; ++t) {
    const auto w = random_density(rng, 3, 1 + t % 3), tau = random_density(rng, 3);
    const double dm = d_max(w, tau).value();
    CHECK(min_eigenvalue(std::exp2(dm) * tau.op() - w.op()) >= -1e-9);
    CHECK(min_eigenvalue(std::exp2(dm - 0.01) * tau.op() - w.op()) < 0.0);
    CHECK(rel_entropy(w, tau).value() <= dm + 1e-8);
  }
}

TEST_CASE("hypothesis testing relative entropy examples") {
  Rng rng(4);
  const auto rho = random_density(rng, 3);
  const auto same = d_h_epsilon(rho, rho, 0.5);
  CHECK(same.value_bits == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d_h_epsilon(rho, rho, 0.2).value_bits == doctest::Approx(-std::log2(0.8)).epsilon(1e-9));

  const auto cl = d_h_epsilon(diag_state({0.5, 0.5}), diag_state({0.75, 0.25}), 0.25);
  CHECK(cl.beta == doctest::Approx(5.0 / 8.0).epsilon(1e-10));
  CHECK(cl.value_bits == doctest::Approx(std::log2(8.0 / 5.0)).epsilon(1e-10));
  CHECK(cl.achieved_alpha == doctest::Approx(0.75).epsilon(1e-10));

  const auto perfect = d_h_epsilon(diag_state({1, 0}), diag_state({0, 1}), 0.1);
  CHECK(perfect.perfect_distinguishability);
  CHECK(perfect.value_bits == doctest::Approx(d_h_cap_bits()));
  CHECK(d_h_cap_bits() == doctest::Approx(std::log2(1e10)));

  CHECK_THROWS_AS(d_h_epsilon(rho, rho, 0.0), InvalidArgument);
  CHECK_THROWS_AS(d_h_epsilon(rho, rho, 1.0), InvalidArgument);
}

TEST_CASE("hypothesis testing test operator invariants") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto dim = 2 + t % 4;
    const auto rho = random_density(rng, dim, 1 + t % dim), sigma = random_density(rng, dim);
    const double eps = 0.05 + 0.9 * rng.uniform();
    const auto r = d_h_epsilon(rho, sigma, eps);
    const HermitianOperator lambda = r.test();
    CHECK(min_eigenvalue(lambda) >= -1e-9);
    CHECK(max_eigenvalue(lambda) <= 1.0 + 1e-9);
    CHECK(r.achieved_alpha >= 1.0 - eps - 1e-8);
    CHECK(std::abs(trace_product(lambda, rho.op()) - r.achieved_alpha) <= 1e-10);
    CHECK(r.value_bits == doctest::Approx(-std::log2(trace_product(lambda, sigma.op()))).epsilon(1e-9));
    CHECK(r.mix_weight >= 0.0);
    CHECK(r.mix_weight <= 1.0);
    // Weak duality certificate closes the gap at the optimum.
    CHECK(std::abs(r.beta - r.dual_beta) <= 1e-8 * std::max(1.0, r.beta));
  }
}

TEST_CASE("hypothesis testing is monotone in eps") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(rng, 3), sigma = random_density(rng, 3);
    double prev = -1.0;
    for (double eps : {0.1, 0.3, 0.5, 0.7}) {
      const double v = d_h_epsilon(rho, sigma, eps).value_bits;
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("hypothesis testing matches classical brute force") {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    const auto dim = static_cast<Eigen::Index>(2 + t % 5);
    const auto p = random_probabilities(rng, dim), q = random_probabilities(rng, dim);
    for (double eps : {0.1, 0.25, 0.5}) {
      const double want = oracle::classical_d_h(p, q, eps).value();
      const double got = d_h_epsilon(HermitianOperator::diagonal(p), HermitianOperator::diagonal(q), eps).value_bits;
      CHECK(std::abs(got - want) <= 1e-6);
    }
  }
}

TEST_CASE("blockwise hypothesis testing equals the dense problem") {
  Rng rng(8);
  const CqState cq({0.3, 0.7}, {random_density(rng, 2), random_density(rng, 2)});
  const auto blk = i_h_epsilon(cq, 0.1);
  const auto dense = d_h_epsilon(cq.joint(), cq.product_of_marginals(), 0.1);
  CHECK(blk.value_bits == doctest::Approx(dense.value_bits).epsilon(1e-9));
  CHECK(blk.test_blocks.size() == 2);
}

TEST_CASE("entropy and entropy variance") {
  const auto mixed = diag_state({0.5, 0.5});
  CHECK(entropy(mixed) == doctest::Approx(1.0));
  CHECK(std::abs(entropy_variance(mixed)) <= 1e-14);
  const double s = 1.0 / std::numbers::sqrt2;
  const auto pure = DensityOperator::pure(ket({s, Complex(0, s)}));
  CHECK(std::abs(entropy(pure)) <= 1e-12);
  CHECK(std::abs(entropy_variance(pure)) <= 1e-12);
  for (double p : {0.1, 0.25, 0.4}) {
    const double h = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    const double v = p * std::pow(std::log2(p) + h, 2) + (1 - p) * std::pow(std::log2(1 - p) + h, 2);
    CHECK(entropy(diag_state({p, 1 - p})) == doctest::Approx(h).epsilon(1e-12));
    CHECK(entropy_variance(diag_state({p, 1 - p})) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("mutual information") {
  Rng rng(9);
  const auto rho = random_density(rng, 3);
  const auto prod = mutual_info(CqState({0.2, 0.8}, {rho, rho}));
  CHECK(std::abs(prod.info_bits) <= 1e-12);
  CHECK(std::abs(prod.variance_bits2) <= 1e-12);
  const auto corr = mutual_info(correlated_cq());
  CHECK(corr.info_bits == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(corr.variance_bits2) <= 1e-12);
  for (int t = 0; t < 20; ++t) {
    PureStateEnsemble ens;
    ens.p = random_probabilities(rng, 3);
    for (int x = 0; x < 3; ++x) ens.vectors.push_back(random_unit_vector(rng, 3));
    const auto cq = ensemble_to_cq(ens);
    const auto mi = mutual_info(cq);
    CHECK(std::abs(mi.info_bits - entropy(cq.marginal())) <= 1e-9);
    CHECK(std::abs(mi.variance_bits2 - entropy_variance(cq.marginal())) <= 1e-9);
  }
}

TEST_CASE("max mutual information upper bound") {
  Rng rng(10);
  const auto rho = random_density(rng, 2);
  CHECK(std::abs(i_max_upper(CqState({0.5, 0.5}, {rho, rho}))) <= 1e-10);
  CHECK(i_max_upper(correlated_cq()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(i_max_upper(correlated_bit(), 2, 2).value() == doctest::Approx(1.0).epsilon(1e-12));
  for (int t = 0; t < 20; ++t) {
    const CqState cq(random_probabilities(rng, 3), {random_density(rng, 2), random_density(rng, 2), random_density(rng, 2)});
    CHECK(i_max_upper(cq) >= mutual_info(cq).info_bits - 1e-9);
  }
  // rho_AB <= 2 rho_A (x) rho_B implies a value of at most one bit.
  for (int t = 0; t < 20; ++t) {
    const auto rab = random_density(rng, 4);
    const Eigen::Index dims[] = {2, 2};
    const Eigen::Index ka[] = {0}, kb[] = {1};
    const auto prod = tensor(partial_trace(rab.op(), dims, ka), partial_trace(rab.op(), dims, kb));
    if (min_eigenvalue(2.0 * prod - rab.op()) >= 0.0) CHECK(i_max_upper(rab, 2, 2).value() <= 1.0 + 1e-9);
  }
}

TEST_CASE("lemma 1 penalty") {
  CHECK(lemma1_penalty(1.0) == doctest::Approx(std::log2(3.0)));
  CHECK(lemma1_penalty(0.1) == doctest::Approx(std::log2(300.0)));
  CHECK(lemma1_gap(0.5, 0.1) == doctest::Approx(8.2288).epsilon(1e-4));
  CHECK_THROWS_AS(lemma1_gap(0.5, std::sqrt(3.0)), InvalidArgument);
  CHECK_THROWS_AS(lemma1_gap(0.5, 0.5), InvalidArgument);
  CHECK_THROWS_AS(lemma1_gap(1.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(lemma1_penalty(0.0), InvalidArgument);
}
