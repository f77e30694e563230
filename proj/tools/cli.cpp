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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqw/cqw.h"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;
constexpr int kComputation = 4;

int exit_code_for(cqw_status s) {
  switch (s) {
    case CQW_OK: return kOk;
    case CQW_ERR_INVALID_ARGUMENT: return kUsage;
    case CQW_ERR_PARSE:
    case CQW_ERR_IO: return kIo;
    default: return kComputation;
  }
}

int report_failure(cqw_status s) {
  std::cerr << "cqw: " << cqw_status_name(s) << ": " << cqw_last_error() << "\n";
  return exit_code_for(s);
}

// Writes text to path, or stdout when path is empty.
int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (f) f << text;
  if (f) f.close();
  if (!f) {
    std::cerr << "cqw: cannot write " << path << "\n";
    return kIo;
  }
  return kOk;
}

std::string take(char* s) {
  std::string out(s ? s : "");
  cqw_string_free(s);
  return out;
}

struct BpskArgs {
  double eta = 0.0, nbar = 0.0, eps1 = 0.01, eps2 = 0.01;
  double n_min = 1e3, n_max = 1e7;
  std::size_t points = 50;
  std::string out;
};

int run_bpsk(const BpskArgs& a) {
  cqw_curve* curve = nullptr;
  cqw_status s = cqw_bpsk_curve(a.eta, a.nbar, a.eps1, a.eps2, a.n_min, a.n_max, a.points, &curve);
  if (s != CQW_OK) return report_failure(s);
  char* csv = nullptr;
  s = cqw_curve_csv(curve, &csv);
  cqw_curve_free(curve);
  if (s != CQW_OK) return report_failure(s);
  return emit(take(csv), a.out);
}

struct BoundArgs {
  std::string channel;
  std::string mode = "public";
  std::vector<double> px;
  double eps1 = 0.01, eps2 = 0.01;
  double eta1 = -1.0, eta2 = -1.0;
  std::uint64_t n = 0;
  bool maximal = false;
  std::string out;
};

int run_bound(const BoundArgs& a) {
  if (a.mode == "private" && (a.eta1 < 0.0 || a.eta2 < 0.0)) {
    std::cerr << "cqw: private mode requires --eta1 and --eta2\n";
    return kUsage;
  }
  if (a.mode == "public" && a.eta1 < 0.0) {
    std::cerr << "cqw: public mode requires --eta1\n";
    return kUsage;
  }
  if (a.mode == "second-order" && a.n == 0) {
    std::cerr << "cqw: second-order mode requires --n\n";
    return kUsage;
  }

  cqw_channel* ch = nullptr;
  cqw_status s = cqw_channel_load(a.channel.c_str(), &ch);
  if (s != CQW_OK) return report_failure(s);

  cqw_bound_options opts;
  cqw_bound_options_init(&opts);
  opts.eps1 = a.eps1;
  opts.eps2 = a.eps2;
  opts.eta1 = a.eta1;
  opts.eta2 = a.eta2;
  opts.n = a.n;
  opts.maximal_error = a.maximal ? 1 : 0;
  if (!a.px.empty()) {
    opts.p_x = a.px.data();
    opts.p_x_len = a.px.size();
  }

  cqw_report* rep = nullptr;
  if (a.mode == "public")
    s = cqw_bound_public(ch, &opts, &rep);
  else if (a.mode == "private")
    s = cqw_bound_private(ch, &opts, &rep);
  else
    s = cqw_bound_second_order(ch, &opts, &rep);
  cqw_channel_free(ch);
  if (s != CQW_OK) return report_failure(s);

  char* json = nullptr;
  s = cqw_report_json(rep, &json);
  cqw_report_free(rep);
  if (s != CQW_OK) return report_failure(s);
  return emit(take(json), a.out);
}

struct ChannelArgs {
  double eta = 0.0, nbar = 0.0;
  std::string out;
};

int run_channel(const ChannelArgs& a) {
  cqw_channel* ch = nullptr;
  cqw_status s = cqw_channel_bpsk(a.eta, a.nbar, &ch);
  if (s != CQW_OK) return report_failure(s);
  char* json = nullptr;
  s = cqw_channel_to_json(ch, &json);
  cqw_channel_free(ch);
  if (s != CQW_OK) return report_failure(s);
  return emit(take(json), a.out);
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

int run_verify(const VerifyArgs& a) {
  cqw_verify_result* res = nullptr;
  cqw_status s = cqw_verify_run(a.suite.c_str(), a.seed, a.trials, &res);
  if (s != CQW_OK) return report_failure(s);
  char* text = nullptr;
  s = cqw_verify_summary(res, &text);
  const bool passed = cqw_verify_passed(res) != 0;
  cqw_verify_free(res);
  if (s != CQW_OK) return report_failure(s);
  std::cout << take(text);
  return passed ? kOk : kAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength bounds and checks for classical-quantum wiretap channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cqw_version());

  BpskArgs bpsk;
  auto* c_bpsk = app.add_subcommand("bpsk", "Normal-approximation curve for BPSK over a pure-loss channel (CSV)");
  c_bpsk->add_option("--eta", bpsk.eta, "Transmissivity in (0, 1)")->required();
  c_bpsk->add_option("--nbar", bpsk.nbar, "Mean photon number (>= 0)")->required();
  c_bpsk->add_option("--eps1", bpsk.eps1, "Reliability error")->capture_default_str();
  c_bpsk->add_option("--eps2", bpsk.eps2, "Secrecy error")->capture_default_str();
  c_bpsk->add_option("--n-min", bpsk.n_min, "Smallest blocklength")->capture_default_str();
  c_bpsk->add_option("--n-max", bpsk.n_max, "Largest blocklength")->capture_default_str();
  c_bpsk->add_option("--points", bpsk.points, "Grid points (log spaced)")->capture_default_str();
  c_bpsk->add_option("--out", bpsk.out, "Output file (default: stdout)");

  BoundArgs bound;
  auto* c_bound = app.add_subcommand("bound", "Itemized rate bound for a channel file (JSON)");
  c_bound->add_option("channel", bound.channel, "Channel file (.wtc.json)")->required();
  c_bound->add_option("--mode", bound.mode, "public, private or second-order")
      ->check(CLI::IsMember({"public", "private", "second-order"}))
      ->capture_default_str();
  c_bound->add_option("--px", bound.px, "Input distribution, comma separated")->delimiter(',');
  c_bound->add_option("--eps1", bound.eps1, "Reliability error")->capture_default_str();
  c_bound->add_option("--eps2", bound.eps2, "Secrecy error")->capture_default_str();
  c_bound->add_option("--eta1", bound.eta1, "Decoding slack");
  c_bound->add_option("--eta2", bound.eta2, "Secrecy slack");
  c_bound->add_option("--n", bound.n, "Blocklength (second-order mode)");
  c_bound->add_flag("--maximal", bound.maximal, "Maximal instead of average error (public mode)");
  c_bound->add_option("--out", bound.out, "Output file (default: stdout)");

  ChannelArgs chan;
  auto* c_chan = app.add_subcommand("bpsk-channel", "Write the BPSK pure-loss wiretap channel as a channel file");
  c_chan->add_option("--eta", chan.eta, "Transmissivity in (0, 1)")->required();
  c_chan->add_option("--nbar", chan.nbar, "Mean photon number (>= 0)")->required();
  c_chan->add_option("--out", chan.out, "Output file (default: stdout)");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Run a randomized verification suite");
  c_verify->add_option("suite", verify.suite, "np, hn, convex-split, prop1, protocol or metrics")->required();
  c_verify->add_option("--seed", verify.seed, "Random seed")->envname("TOOLKIT_SEED")->capture_default_str();
  c_verify->add_option("--trials", verify.trials, "Number of trials (0: suite default)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (c_bpsk->parsed()) return run_bpsk(bpsk);
  if (c_bound->parsed()) return run_bound(bound);
  if (c_chan->parsed()) return run_channel(chan);
  return run_verify(verify);
}
