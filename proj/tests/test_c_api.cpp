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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "cqw/cqw.h"
#include "doctest.h"

#ifndef CQW_DATA_DIR
#error "CQW_DATA_DIR must point at the data directory"
#endif

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  cqw_string_free(s);
  return out;
}

const std::string kData = CQW_DATA_DIR;

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(cqw_status_name(CQW_OK)) == "ok");
  CHECK(std::string(cqw_status_name(CQW_ERR_IO)) == "i/o error");
  CHECK(std::string(cqw_status_name(static_cast<cqw_status>(99))) == "unknown status");
  CHECK(std::string(cqw_version()).size() > 0);
}

TEST_CASE("loading channels") {
  cqw_channel* ch = nullptr;
  CHECK(cqw_channel_load("/nonexistent/channel.json", &ch) == CQW_ERR_IO);
  CHECK(ch == nullptr);
  CHECK(std::string(cqw_last_error()).size() > 0);

  CHECK(cqw_channel_parse("{not json", &ch) == CQW_ERR_PARSE);
  CHECK(cqw_channel_parse(R"({"symbols":["a"],"d_b":1,"d_e":1,"outputs":[[[[0.5,0]]]]})", &ch) != CQW_OK);
  CHECK(cqw_channel_load(nullptr, &ch) == CQW_ERR_INVALID_ARGUMENT);

  REQUIRE(cqw_channel_load((kData + "/nonleaking.wtc.json").c_str(), &ch) == CQW_OK);
  CHECK(cqw_channel_symbol_count(ch) == 2);
  char* text = nullptr;
  REQUIRE(cqw_channel_to_json(ch, &text) == CQW_OK);
  const std::string json = take(text);
  cqw_channel* again = nullptr;
  REQUIRE(cqw_channel_parse(json.c_str(), &again) == CQW_OK);
  REQUIRE(cqw_channel_to_json(again, &text) == CQW_OK);
  CHECK(take(text) == json);
  cqw_channel_free(again);
  cqw_channel_free(ch);
  cqw_channel_free(nullptr);
}

TEST_CASE("bounds through the C interface") {
  cqw_channel* ch = nullptr;
  REQUIRE(cqw_channel_load((kData + "/nonleaking.wtc.json").c_str(), &ch) == CQW_OK);
  cqw_bound_options opts;
  cqw_bound_options_init(&opts);
  CHECK(opts.eps1 == 0.01);
  CHECK(opts.eta1 < 0);

  cqw_report* r = nullptr;
  CHECK(cqw_bound_public(ch, &opts, &r) == CQW_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  opts.eps1 = 0.2;
  opts.eta1 = 0.1;
  CHECK(cqw_bound_private(ch, &opts, &r) == CQW_ERR_INVALID_ARGUMENT);
  opts.eta2 = 0.1;
  CHECK(cqw_bound_private(ch, &opts, &r) == CQW_ERR_INVALID_ARGUMENT);
  opts.eta2 = 0.05;

  cqw_report* pub = nullptr;
  cqw_report* priv = nullptr;
  REQUIRE(cqw_bound_public(ch, &opts, &pub) == CQW_OK);
  REQUIRE(cqw_bound_private(ch, &opts, &priv) == CQW_OK);
  CHECK(cqw_report_valid(pub) == 1);
  CHECK(cqw_report_term_count(pub) > 0);
  const char* name = nullptr;
  double v = 0;
  REQUIRE(cqw_report_term(pub, 0, &name, &v) == CQW_OK);
  CHECK(std::string(name).size() > 0);
  CHECK(cqw_report_term(pub, 1000, &name, &v) == CQW_ERR_INVALID_ARGUMENT);
  double eve = 1;
  REQUIRE(cqw_report_find(priv, "-I_max(E;X)", &eve) == CQW_OK);
  CHECK(std::abs(eve) <= 1e-12);
  CHECK(cqw_report_find(priv, "no such term", &eve) == CQW_ERR_INVALID_ARGUMENT);
  CHECK(std::abs(cqw_report_rate(priv) + 2 * std::log2(1 / 0.05) - cqw_report_rate(pub)) <= 1e-12);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(cqw_report_json(priv, &a) == CQW_OK);
  cqw_report* priv2 = nullptr;
  REQUIRE(cqw_bound_private(ch, &opts, &priv2) == CQW_OK);
  REQUIRE(cqw_report_json(priv2, &b) == CQW_OK);
  CHECK(take(a) == take(b));

  const double px[] = {0.25, 0.75};
  opts.p_x = px;
  opts.p_x_len = 2;
  cqw_report* skewed = nullptr;
  REQUIRE(cqw_bound_public(ch, &opts, &skewed) == CQW_OK);
  CHECK(cqw_report_rate(skewed) != cqw_report_rate(pub));
  opts.p_x_len = 1;
  CHECK(cqw_bound_public(ch, &opts, &r) == CQW_ERR_INVALID_ARGUMENT);
  opts.p_x = nullptr;
  opts.p_x_len = 0;

  CHECK(cqw_bound_second_order(ch, &opts, &r) == CQW_ERR_INVALID_ARGUMENT);
  opts.n = 1000;
  cqw_report* so = nullptr;
  REQUIRE(cqw_bound_second_order(ch, &opts, &so) == CQW_OK);
  double ie = 1;
  REQUIRE(cqw_report_find(so, "I(X;E)", &ie) == CQW_OK);
  CHECK(std::abs(ie) <= 1e-12);

  for (cqw_report* x : {pub, priv, priv2, skewed, so}) cqw_report_free(x);
  cqw_channel_free(ch);
}

TEST_CASE("BPSK curve") {
  cqw_curve* c = nullptr;
  CHECK(cqw_bpsk_curve(0.9, 0.5, 0.01, 0.01, 1e7, 1e3, 10, &c) == CQW_ERR_INVALID_ARGUMENT);
  CHECK(cqw_bpsk_curve(1.5, 0.5, 0.01, 0.01, 1e3, 1e7, 10, &c) == CQW_ERR_INVALID_ARGUMENT);
  REQUIRE(cqw_bpsk_curve(0.9, 0.5, 0.01, 0.01, 1e3, 1e7, 10, &c) == CQW_OK);
  REQUIRE(cqw_curve_size(c) == 10);
  std::uint64_t n0 = 0, n1 = 0;
  double r0, r1, asym, cap;
  REQUIRE(cqw_curve_row(c, 0, &n0, &r0, &asym, &cap) == CQW_OK);
  REQUIRE(cqw_curve_row(c, 9, &n1, &r1, &asym, &cap) == CQW_OK);
  CHECK(n0 == 1000);
  CHECK(n1 == 10000000);
  CHECK(r0 < r1);
  CHECK(r1 < asym);
  CHECK(asym <= cap);
  CHECK(cqw_curve_row(c, 10, &n0, &r0, &asym, &cap) == CQW_ERR_INVALID_ARGUMENT);
  char* csv = nullptr;
  REQUIRE(cqw_curve_csv(c, &csv) == CQW_OK);
  const std::string text = take(csv);
  CHECK(text.rfind("n,normal_approx,asymptote,capacity\n", 0) == 0);
  CHECK(cqw_curve_write_csv(c, "/nonexistent/dir/out.csv") == CQW_ERR_IO);
  cqw_curve_free(c);

  cqw_channel* ch = nullptr;
  REQUIRE(cqw_channel_bpsk(0.9, 0.5, &ch) == CQW_OK);
  CHECK(cqw_channel_symbol_count(ch) == 2);
  cqw_channel_free(ch);
}

TEST_CASE("verification through the C interface") {
  cqw_verify_result* r = nullptr;
  CHECK(cqw_verify_run("bogus", 0, 0, &r) == CQW_ERR_INVALID_ARGUMENT);
  REQUIRE(cqw_verify_run("hn", 7, 100, &r) == CQW_OK);
  CHECK(cqw_verify_passed(r) == 1);
  REQUIRE(cqw_verify_assertion_count(r) >= 1);
  const char* name = nullptr;
  size_t passed = 0, total = 0;
  double extreme = 0;
  REQUIRE(cqw_verify_assertion(r, 0, &name, &passed, &total, &extreme) == CQW_OK);
  CHECK(total == 100);
  CHECK(passed == 100);
  CHECK(extreme >= -1e-9);
  char* s = nullptr;
  REQUIRE(cqw_verify_summary(r, &s) == CQW_OK);
  CHECK(take(s).find("result: PASS") != std::string::npos);
  cqw_verify_free(r);
}
