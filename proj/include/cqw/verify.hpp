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
#include <string>
#include <vector>

namespace cqw {

/// Pass/fail counts for one named property plus the extreme value of its
/// monitored statistic (e.g. the smallest residual seen).
struct AssertionStats {
  std::string name;
  std::string statistic;  // e.g. "min residual"
  bool track_max = true;  // extreme = max when true, min otherwise
  std::size_t passed = 0;
  std::size_t failed = 0;
  double extreme = 0.0;

  void record(bool ok, double value);
  std::size_t total() const { return passed + failed; }
};

struct VerifyResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<AssertionStats> assertions;
  /// Informational values that are not asserted.
  std::vector<std::pair<std::string, double>> reports;

  bool ok() const;
  std::string summary() const;
  AssertionStats* find(const std::string& name);
};

/// np, hn, convex-split, prop1, protocol, metrics
const std::vector<std::string>& verify_suites();
std::size_t default_trials(const std::string& suite);

/// trials = 0 selects the suite default. Throws InvalidArgument for unknown suites.
VerifyResult run_verify(const std::string& suite, std::uint64_t seed, std::size_t trials = 0);

}  // namespace cqw
