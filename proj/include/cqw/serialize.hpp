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

#include <string>

#include "cqw/bounds.hpp"

namespace cqw {

/// Deterministic JSON: fixed key order, shortest round-trip numbers,
/// non-finite values as null.
std::string report_to_json(const BoundReport& report);

/// Header n,normal_approx,asymptote,capacity; numbers with 17 significant digits.
std::string curve_to_csv(const Curve& curve);

}  // namespace cqw
