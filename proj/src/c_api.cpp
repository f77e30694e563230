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
#include "cqw/cqw.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "cqw/bounds.hpp"
#include "cqw/serialize.hpp"
#include "cqw/states.hpp"
#include "cqw/verify.hpp"

struct cqw_channel {
  cqw::WiretapChannel ch;
};

struct cqw_report {
  cqw::BoundReport report;
};

struct cqw_curve {
  cqw::Curve curve;
};

struct cqw_verify_result {
  cqw::VerifyResult result;
};

namespace {

thread_local std::string g_last_error;

cqw_status fail(cqw_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
cqw_status guarded(F&& body) {
  try {
    return body();
  } catch (const cqw::InvalidArgument& e) {
    return fail(CQW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const cqw::ParseError& e) {
    return fail(CQW_ERR_PARSE, e.what());
  } catch (const cqw::IoError& e) {
    return fail(CQW_ERR_IO, e.what());
  } catch (const cqw::NumericError& e) {
    return fail(CQW_ERR_NUMERIC, e.what());
  } catch (const cqw::ResourceError& e) {
    return fail(CQW_ERR_RESOURCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CQW_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(CQW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CQW_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define CQW_REQUIRE(cond, msg) \
  if (!(cond)) return fail(CQW_ERR_INVALID_ARGUMENT, msg)

std::vector<double> resolve_px(const cqw::WiretapChannel& ch, const cqw_bound_options& o) {
  if (o.p_x) {
    if (o.p_x_len != ch.size())
      throw cqw::InvalidArgument("p_x has " + std::to_string(o.p_x_len) + " entries for " +
                                 std::to_string(ch.size()) + " symbols");
    return std::vector<double>(o.p_x, o.p_x + o.p_x_len);
  }
  if (!ch.p_x.empty()) return ch.p_x;
  return std::vector<double>(ch.size(), 1.0 / static_cast<double>(ch.size()));
}

cqw_status emit_report(cqw::BoundReport r, cqw_report** out) {
  if (!r.valid) return fail(CQW_ERR_INVALID_ARGUMENT, r.mode + " bound: " + r.reason);
  *out = new cqw_report{std::move(r)};
  return CQW_OK;
}

}  // namespace

extern "C" {

const char* cqw_version(void) { return "1.0.0"; }

const char* cqw_last_error(void) { return g_last_error.c_str(); }

const char* cqw_status_name(cqw_status status) {
  switch (status) {
    case CQW_OK: return "ok";
    case CQW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CQW_ERR_PARSE: return "parse error";
    case CQW_ERR_IO: return "i/o error";
    case CQW_ERR_NUMERIC: return "numeric error";
    case CQW_ERR_RESOURCE: return "resource limit";
    case CQW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void cqw_string_free(char* s) { std::free(s); }

cqw_status cqw_channel_load(const char* path, cqw_channel** out) {
  CQW_REQUIRE(path && out, "cqw_channel_load: null argument");
  return guarded([&] {
    *out = new cqw_channel{cqw::load_channel(path)};
    return CQW_OK;
  });
}

cqw_status cqw_channel_parse(const char* json_text, cqw_channel** out) {
  CQW_REQUIRE(json_text && out, "cqw_channel_parse: null argument");
  return guarded([&] {
    *out = new cqw_channel{cqw::parse_channel(json_text)};
    return CQW_OK;
  });
}

cqw_status cqw_channel_save(const cqw_channel* ch, const char* path) {
  CQW_REQUIRE(ch && path, "cqw_channel_save: null argument");
  return guarded([&] {
    cqw::save_channel(ch->ch, path);
    return CQW_OK;
  });
}

cqw_status cqw_channel_to_json(const cqw_channel* ch, char** out) {
  CQW_REQUIRE(ch && out, "cqw_channel_to_json: null argument");
  return guarded([&] {
    *out = dup_string(cqw::channel_to_json(ch->ch));
    return CQW_OK;
  });
}

cqw_status cqw_channel_bpsk(double eta, double nbar, cqw_channel** out) {
  CQW_REQUIRE(out, "cqw_channel_bpsk: null argument");
  return guarded([&] {
    *out = new cqw_channel{cqw::bpsk_channel(cqw::BpskParams{eta, nbar}).channel};
    return CQW_OK;
  });
}

size_t cqw_channel_symbol_count(const cqw_channel* ch) { return ch ? ch->ch.size() : 0; }

void cqw_channel_free(cqw_channel* ch) { delete ch; }

void cqw_bound_options_init(cqw_bound_options* o) {
  if (!o) return;
  o->eps1 = 0.01;
  o->eps2 = 0.01;
  o->eta1 = -1.0;
  o->eta2 = -1.0;
  o->n = 0;
  o->maximal_error = 0;
  o->p_x = nullptr;
  o->p_x_len = 0;
}

cqw_status cqw_bound_public(const cqw_channel* ch, const cqw_bound_options* o, cqw_report** out) {
  CQW_REQUIRE(ch && o && out, "cqw_bound_public: null argument");
  CQW_REQUIRE(o->eta1 >= 0.0, "public bound: eta1 is required");
  return guarded([&] {
    const auto red = cqw::reduce_wiretap(ch->ch, resolve_px(ch->ch, *o));
    const auto crit = o->maximal_error ? cqw::ErrorCriterion::maximal : cqw::ErrorCriterion::average;
    return emit_report(cqw::oneshot_public_lower(red.xb, o->eps1, o->eta1, crit), out);
  });
}

cqw_status cqw_bound_private(const cqw_channel* ch, const cqw_bound_options* o, cqw_report** out) {
  CQW_REQUIRE(ch && o && out, "cqw_bound_private: null argument");
  CQW_REQUIRE(o->eta1 >= 0.0, "private bound: eta1 is required");
  CQW_REQUIRE(o->eta2 >= 0.0, "private bound: eta2 is required");
  return guarded([&] {
    const cqw::PrivateSlack slack{o->eps1, o->eps2, o->eta1, o->eta2};
    return emit_report(cqw::oneshot_private_lower(ch->ch, resolve_px(ch->ch, *o), slack), out);
  });
}

cqw_status cqw_bound_second_order(const cqw_channel* ch, const cqw_bound_options* o, cqw_report** out) {
  CQW_REQUIRE(ch && o && out, "cqw_bound_second_order: null argument");
  CQW_REQUIRE(o->n > 0, "second-order bound: n is required");
  return guarded([&] {
    return emit_report(cqw::second_order_report(ch->ch, resolve_px(ch->ch, *o), o->n, o->eps1, o->eps2), out);
  });
}

int cqw_report_valid(const cqw_report* r) { return r && r->report.valid ? 1 : 0; }

double cqw_report_rate(const cqw_report* r) { return r ? r->report.rate_bits : 0.0; }

size_t cqw_report_term_count(const cqw_report* r) { return r ? r->report.terms.size() : 0; }

cqw_status cqw_report_term(const cqw_report* r, size_t index, const char** name, double* value_bits) {
  CQW_REQUIRE(r, "cqw_report_term: null report");
  CQW_REQUIRE(index < r->report.terms.size(), "cqw_report_term: index out of range");
  const auto& t = r->report.terms[index];
  if (name) *name = t.name.c_str();
  if (value_bits) *value_bits = t.value_bits;
  return CQW_OK;
}

cqw_status cqw_report_find(const cqw_report* r, const char* name, double* value_bits) {
  CQW_REQUIRE(r && name && value_bits, "cqw_report_find: null argument");
  const cqw::BoundTerm* t = r->report.find_term(name);
  if (!t) return fail(CQW_ERR_INVALID_ARGUMENT, std::string("report has no term \"") + name + "\"");
  *value_bits = t->value_bits;
  return CQW_OK;
}

cqw_status cqw_report_json(const cqw_report* r, char** out) {
  CQW_REQUIRE(r && out, "cqw_report_json: null argument");
  return guarded([&] {
    *out = dup_string(cqw::report_to_json(r->report));
    return CQW_OK;
  });
}

void cqw_report_free(cqw_report* r) { delete r; }

cqw_status cqw_bpsk_curve(double eta, double nbar, double eps1, double eps2, double n_min, double n_max,
                          size_t points, cqw_curve** out) {
  CQW_REQUIRE(out, "cqw_bpsk_curve: null argument");
  return guarded([&] {
    const cqw::BpskParams p{eta, nbar};
    p.validate();
    const auto grid = cqw::log_grid(n_min, n_max, points);
    *out = new cqw_curve{cqw::bpsk_curve(p, grid, eps1, eps2)};
    return CQW_OK;
  });
}

size_t cqw_curve_size(const cqw_curve* c) { return c ? c->curve.points.size() : 0; }

cqw_status cqw_curve_row(const cqw_curve* c, size_t index, uint64_t* n, double* normal_approx, double* asymptote,
                         double* capacity) {
  CQW_REQUIRE(c, "cqw_curve_row: null curve");
  CQW_REQUIRE(index < c->curve.points.size(), "cqw_curve_row: index out of range");
  const auto& p = c->curve.points[index];
  if (n) *n = p.n;
  if (normal_approx) *normal_approx = p.rate_per_use_bits;
  if (asymptote) *asymptote = c->curve.asymptote;
  if (capacity) *capacity = c->curve.capacity;
  return CQW_OK;
}

cqw_status cqw_curve_csv(const cqw_curve* c, char** out) {
  CQW_REQUIRE(c && out, "cqw_curve_csv: null argument");
  return guarded([&] {
    *out = dup_string(cqw::curve_to_csv(c->curve));
    return CQW_OK;
  });
}

cqw_status cqw_curve_write_csv(const cqw_curve* c, const char* path) {
  CQW_REQUIRE(c && path, "cqw_curve_write_csv: null argument");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) return fail(CQW_ERR_IO, std::string("cannot open ") + path + " for writing");
    f << cqw::curve_to_csv(c->curve);
    f.close();
    if (!f) return fail(CQW_ERR_IO, std::string("failed writing ") + path);
    return CQW_OK;
  });
}

void cqw_curve_free(cqw_curve* c) { delete c; }

cqw_status cqw_verify_run(const char* suite, uint64_t seed, size_t trials, cqw_verify_result** out) {
  CQW_REQUIRE(suite && out, "cqw_verify_run: null argument");
  return guarded([&] {
    *out = new cqw_verify_result{cqw::run_verify(suite, seed, trials)};
    return CQW_OK;
  });
}

int cqw_verify_passed(const cqw_verify_result* r) { return r && r->result.ok() ? 1 : 0; }

size_t cqw_verify_assertion_count(const cqw_verify_result* r) { return r ? r->result.assertions.size() : 0; }

cqw_status cqw_verify_assertion(const cqw_verify_result* r, size_t index, const char** name, size_t* passed,
                                size_t* total, double* extreme) {
  CQW_REQUIRE(r, "cqw_verify_assertion: null result");
  CQW_REQUIRE(index < r->result.assertions.size(), "cqw_verify_assertion: index out of range");
  const auto& a = r->result.assertions[index];
  if (name) *name = a.name.c_str();
  if (passed) *passed = a.passed;
  if (total) *total = a.total();
  if (extreme) *extreme = a.extreme;
  return CQW_OK;
}

cqw_status cqw_verify_summary(const cqw_verify_result* r, char** out) {
  CQW_REQUIRE(r && out, "cqw_verify_summary: null argument");
  return guarded([&] {
    *out = dup_string(r->result.summary());
    return CQW_OK;
  });
}

void cqw_verify_free(cqw_verify_result* r) { delete r; }

}  // extern "C"
