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
#include "cqw/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace cqw {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) {
  if (!std::isfinite(v)) return ojson(nullptr);
  return ojson(v == 0.0 ? 0.0 : v);  // no negative zero
}

ojson terms_json(const std::vector<BoundTerm>& terms) {
  ojson arr = ojson::array();
  for (const auto& t : terms) arr.push_back(ojson{{"name", t.name}, {"value_bits", number(t.value_bits)}});
  return arr;
}

}  // namespace

std::string report_to_json(const BoundReport& r) {
  ojson j;
  j["mode"] = r.mode;
  j["valid"] = r.valid;
  if (!r.valid) j["reason"] = r.reason;
  j["rate_bits"] = r.valid ? number(r.rate_bits) : ojson(nullptr);
  j["vacuous"] = r.vacuous;
  ojson params = ojson::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) params[key] = number(*v);
  };
  put("eps1", r.params.eps1);
  put("eps2", r.params.eps2);
  put("eta1", r.params.eta1);
  put("eta2", r.params.eta2);
  put("gamma", r.params.gamma);
  if (r.params.n) params["n"] = *r.params.n;
  j["params"] = std::move(params);
  j["terms"] = terms_json(r.terms);
  j["derived"] = terms_json(r.derived);
  j["flags"] = r.flags;
  return j.dump(2) + "\n";
}

std::string curve_to_csv(const Curve& c) {
  std::string out = "n,normal_approx,asymptote,capacity\n";
  char line[160];
  for (const auto& p : c.points) {
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g\n", static_cast<unsigned long long>(p.n),
                  p.rate_per_use_bits, c.asymptote, c.capacity);
    out += line;
  }
  return out;
}

}  // namespace cqw
