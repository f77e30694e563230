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
#include <random>
#include <span>

#include "cqw/linalg.hpp"

namespace cqw {

/// Seedable 64-bit generator (mt19937_64). Uniform and normal variates are
/// derived by hand so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a sub-task: seeded with seed + index.
  static Rng derived(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  /// Inverse-CDF draw from a probability vector.
  std::size_t categorical(std::span<const double> p);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Random instances for property checks.
CVector random_unit_vector(Rng& rng, Eigen::Index dim);
Matrix random_unitary(Rng& rng, Eigen::Index dim);
/// Ginibre-distributed density operator of the given rank (full rank by default).
DensityOperator random_density(Rng& rng, Eigen::Index dim, Eigen::Index rank = 0);
HermitianOperator random_hermitian(Rng& rng, Eigen::Index dim);
/// U diag(lambda) U^dagger with lambda drawn uniformly from [lo, hi].
HermitianOperator random_spectrum_operator(Rng& rng, Eigen::Index dim, double lo, double hi);
std::vector<double> random_probabilities(Rng& rng, std::size_t n);

}  // namespace cqw
