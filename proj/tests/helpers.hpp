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

#include <cmath>
#include <complex>

#include "cqw/linalg.hpp"

namespace cqw::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }
inline double max_abs_diff(const HermitianOperator& a, const HermitianOperator& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

inline CVector ket(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& c : v) out(i++) = c;
  return out;
}

inline DensityOperator diag_state(std::initializer_list<double> p) {
  std::vector<double> v(p);
  return DensityOperator(HermitianOperator::diagonal(v));
}

}  // namespace cqw::testing
