/* Copyright 2026 The fpool Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fpool/baselines.hpp"
#include "fpool/fft.hpp"
#include "fpool/kernels.hpp"
#include "fpool/metrics.hpp"
#include "fpool/netpbm.hpp"
#include "fpool/plan.hpp"
#include "fpool/signals.hpp"
#include "fpool/spectral.hpp"

namespace fpool::cli {

namespace {

constexpr double kExactTol = 1e-9;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

RealSignal load_signal(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) return make_signal(cfg.signal, cfg.n);
  if (ends_with(cfg.input, ".csv")) return read_csv_signal(cfg.input);
  const NetpbmImage img = read_netpbm(cfg.input);
  if (cfg.row >= img.pixels.height())
    throw DomainError("--row " + std::to_string(cfg.row) + " outside image of height " +
                      std::to_string(img.pixels.height()));
  const auto line = img.pixels.plane(0).subspan(cfg.row * img.pixels.width(),
                                                img.pixels.width());
  return RealSignal(std::vector<double>(line.begin(), line.end()));
}

std::string source_of(const ExperimentConfig& cfg) {
  return cfg.input.empty() ? "synthetic:" + cfg.signal : cfg.input;
}

std::size_t resolved_m(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.stride == 0) throw DomainError("--stride must be >= 1");
  return cfg.m ? cfg.m : fpool_output_length(n, cfg.stride);
}

std::size_t resolved_window(const ExperimentConfig& cfg) {
  return cfg.window ? cfg.window : cfg.stride;
}

void row(std::ostream& out, long shift, const std::string& series, double value) {
  out << shift << ',' << series << ',' << format_value(value) << '\n';
}

void summary_row(std::ostream& out, const std::string& series, double value) {
  out << "all," << series << ',' << format_value(value) << '\n';
}

PoolingKind parse_pooling(const std::string& name, std::size_t stride, std::size_t window,
                          bool odd_padding) {
  if (name == "fpool") return FPoolKind{stride, odd_padding};
  if (name == "max") return MaxPool{window, stride};
  if (name == "avg") return AvgPool{window, stride};
  if (name == "stride") return StridePool{stride};
  if (name == "blur") return BlurStridePool{window, stride};
  throw DomainError("unknown pooling '" + name + "' (fpool|max|avg|stride|blur)");
}

// Applies a pooling given an explicit F-pooling plan for the fpool case.
RealSignal apply_pooling(const PoolingKind& kind, const FPoolPlan& plan, const RealSignal& x) {
  return is_fpool(kind) ? pool1d(plan, x) : pool_baseline(kind, x);
}

}  // namespace

std::string format_value(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_header(std::ostream& out, const ExperimentConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
  out << "# command=" << cfg.command << '\n';
  for (const auto& [k, v] : extra) out << "# " << k << '=' << v << '\n';
}

int cmd_demo1d(const ExperimentConfig& cfg, std::ostream& out) {
  const RealSignal x = load_signal(cfg);
  const std::size_t n = x.size();
  const std::size_t m = resolved_m(cfg, n);
  const std::size_t window = resolved_window(cfg);
  if (n % cfg.stride != 0)
    throw DomainError("signal length " + std::to_string(n) + " not divisible by stride " +
                      std::to_string(cfg.stride));
  const FPoolPlan plan = make_plan(n, m, cfg.odd_padding);

  const std::vector<std::pair<std::string, PoolingKind>> poolings = {
      {"fpool", FPoolKind{cfg.stride, cfg.odd_padding}},
      {"max", MaxPool{window, cfg.stride}},
      {"avg", AvgPool{window, cfg.stride}},
      {"stride", StridePool{cfg.stride}},
      {"blur", BlurStridePool{window, cfg.stride}},
  };

  write_header(out, cfg,
               {{"source", source_of(cfg)},
                {"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"stride", std::to_string(cfg.stride)},
                {"window", std::to_string(window) + " (max/avg/blur window; max window = stride unless set)"},
                {"shift", std::to_string(cfg.shift)},
                {"odd_padding", cfg.odd_padding ? "on" : "off"},
                {"upsampler", "inverse fpool " + std::to_string(m) + "->" + std::to_string(n)},
                {"series", "<pooling>/pool_up_shift/<t>, <pooling>/shift_pool_up/<t>, <pooling>/max_gap"}});
  out << "shift,series,value\n";

  const ShiftSpec s{cfg.shift};
  for (std::size_t t = 0; t < n; ++t) row(out, cfg.shift, "input/x/" + std::to_string(t), x[t]);

  int code = kOk;
  for (const auto& [name, kind] : poolings) {
    const RealSignal a = circular_shift(unpool1d(plan, apply_pooling(kind, plan, x)), s);
    const RealSignal b = unpool1d(plan, apply_pooling(kind, plan, circular_shift(x, s)));
    for (std::size_t t = 0; t < n; ++t)
      row(out, cfg.shift, name + "/pool_up_shift/" + std::to_string(t), a[t]);
    for (std::size_t t = 0; t < n; ++t)
      row(out, cfg.shift, name + "/shift_pool_up/" + std::to_string(t), b[t]);
    const double gap = max_abs_diff(a.view(), b.view());
    row(out, cfg.shift, name + "/max_gap", gap);
    if (name == "fpool" && plan.symmetric() && gap > kExactTol * std::max(x.norm(), 1e-300)) {
      std::cerr << "fpool demo1d: F-pooling gap " << gap << " breaks exact shift-equivalence\n";
      code = kContractViolation;
    }
  }
  return code;
}

int cmd_oddpad(const ExperimentConfig& cfg, std::ostream& out) {
  const RealSignal x = load_signal(cfg);
  const std::size_t n = x.size();
  const std::size_t m = resolved_m(cfg, n);
  if (cfg.shift_min < -static_cast<long>(n) || cfg.shift_max > static_cast<long>(n) ||
      cfg.shift_min > cfg.shift_max)
    throw DomainError("shift range must lie within [-n, n]");

  const FPoolPlan plan_odd = make_plan(n, m, true);
  const FPoolPlan plan_plain = make_plan(n, m, false);

  // Input with the unmatched Nyquist bin (n - m/2) and its partner removed.
  RealSignal x_zeroed = x;
  if (m % 2 == 0 && m < n) {
    ComplexSpectrum spec = dft(x);
    spec[n - m / 2] = Complex{};
    spec[m / 2] = Complex{};
    const ComplexSignal back = idft(spec);
    for (std::size_t t = 0; t < n; ++t) x_zeroed[t] = back[t].real() / static_cast<double>(n);
  }

  write_header(out, cfg,
               {{"source", source_of(cfg)},
                {"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"shift_min", std::to_string(cfg.shift_min)},
                {"shift_max", std::to_string(cfg.shift_max)},
                {"error", "max |S(U(P(x))) - U(P(S(x)))|, U = inverse fpool of the same plan"},
                {"series", "odd_padding, no_odd_padding, no_odd_padding_nyquist_zeroed"}});
  out << "shift,series,value\n";

  auto error = [&](const FPoolPlan& plan, const RealSignal& sig, long s) {
    const RealSignal a = circular_shift(unpool1d(plan, pool1d(plan, sig)), ShiftSpec{s});
    const RealSignal b = unpool1d(plan, pool1d(plan, circular_shift(sig, ShiftSpec{s})));
    return max_abs_diff(a.view(), b.view());
  };

  int code = kOk;
  double worst_odd = 0.0, worst_plain = 0.0, worst_zeroed = 0.0;
  for (long s = cfg.shift_min; s <= cfg.shift_max; ++s) {
    const double e_odd = error(plan_odd, x, s);
    const double e_plain = error(plan_plain, x, s);
    const double e_zero = error(plan_plain, x_zeroed, s);
    row(out, s, "odd_padding", e_odd);
    row(out, s, "no_odd_padding", e_plain);
    row(out, s, "no_odd_padding_nyquist_zeroed", e_zero);
    worst_odd = std::max(worst_odd, e_odd);
    worst_plain = std::max(worst_plain, e_plain);
    worst_zeroed = std::max(worst_zeroed, e_zero);
  }
  summary_row(out, "odd_padding/max", worst_odd);
  summary_row(out, "no_odd_padding/max", worst_plain);
  summary_row(out, "no_odd_padding_nyquist_zeroed/max", worst_zeroed);
  if (worst_odd > kExactTol * std::max(x.norm(), 1e-300)) {
    std::cerr << "fpool oddpad: odd-padded error " << worst_odd << " breaks exactness\n";
    code = kContractViolation;
  }
  return code;
}

int cmd_transitivity(const ExperimentConfig& cfg, std::ostream& out) {
  TransitivityConfig tc;
  tc.n = cfg.n;
  tc.factor = cfg.stride;
  tc.odd_padding = cfg.odd_padding;
  tc.shift_min = cfg.shift_min;
  tc.shift_max = cfg.shift_max;
  if (tc.shift_min > tc.shift_max) throw DomainError("shift_min exceeds shift_max");
  const TransitivityReport report = transitivity_report(cfg.seed, tc);

  std::vector<std::pair<std::string, std::string>> extra = {
      {"n", std::to_string(cfg.n)},
      {"factor", std::to_string(cfg.stride)},
      {"odd_padding", cfg.odd_padding ? "on" : "off"},
      {"seed", std::to_string(cfg.seed)},
      {"tolerance", "1e-9 * |segment input|"}};
  for (const auto& seg : report.segments)
    extra.emplace_back("segment", seg.segment + " ; expected=" + seg.expected +
                                      " ; verdict=" + (seg.exact ? "ok" : "fail") +
                                      " ; max_error=" + format_value(seg.max_error) +
                                      " ; worst_shift=" + std::to_string(seg.worst_shift));
  write_header(out, cfg, extra);
  out << "shift,series,value\n";
  for (const auto& r : report.rows) row(out, r.shift, r.segment, r.error);
  int code = kOk;
  for (const auto& seg : report.segments) {
    summary_row(out, seg.segment + "/max_error", seg.max_error);
    summary_row(out, seg.segment + "/exact", seg.exact ? 1.0 : 0.0);
    if (seg.expected == "ok" && !seg.exact) {
      std::cerr << "fpool transitivity: segment '" << seg.segment << "' is not exact\n";
      code = kContractViolation;
    }
  }
  return code;
}

int cmd_pool_image(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.input.empty()) throw DomainError("pool: --input image is required");
  if (cfg.output.empty() || cfg.output == "-") throw DomainError("pool: --output path is required");
  NetpbmImage img = read_netpbm(cfg.input);
  const PoolingKind kind =
      parse_pooling(cfg.pooling, cfg.stride, resolved_window(cfg), cfg.odd_padding);
  validate(kind);
  const RealImage& x = img.pixels;
  RealImage y;
  if (is_fpool(kind)) {
    const FPoolPlan rows = make_plan(x.height(), fpool_output_length(x.height(), cfg.stride),
                                     cfg.odd_padding);
    const FPoolPlan cols = make_plan(x.width(), fpool_output_length(x.width(), cfg.stride),
                                     cfg.odd_padding);
    y = pool2d(rows, cols, x);
  } else {
    y = pool_baseline(kind, x, true);
  }
  const NetpbmImage result{img.format, img.maxval, std::move(y)};
  write_netpbm(cfg.output, result);
  log << "# command=pool\n# input=" << cfg.input << "\n# output=" << cfg.output
      << "\n# pooling=" << describe(kind) << "\n# size=" << result.pixels.height() << "x"
      << result.pixels.width() << '\n';
  return kOk;
}

int cmd_consistency(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.shift_min > cfg.shift_max) throw DomainError("shift_min exceeds shift_max");
  if (cfg.seeds == 0) throw DomainError("--seeds must be >= 1");
  const std::vector<long> shifts = shift_range(cfg.shift_min, cfg.shift_max);
  if (shifts.size() < 2) throw DomainError("consistency needs at least two shifts");

  ToyClassifierConfig base;
  base.padding = cfg.padding;
  base.size = cfg.size;
  base.channels = cfg.channels;

  const std::size_t window = resolved_window(cfg);
  const std::vector<std::pair<std::string, PoolingKind>> variants = {
      {"fpool", FPoolKind{cfg.stride, cfg.odd_padding}},
      {"max", MaxPool{window, cfg.stride}},
      {"avg", AvgPool{window, cfg.stride}},
      {"blur", BlurStridePool{window, cfg.stride}},
  };

  write_header(out, cfg,
               {{"seed", std::to_string(cfg.seed)},
                {"seeds", std::to_string(cfg.seeds)},
                {"size", std::to_string(cfg.size)},
                {"channels", std::to_string(cfg.channels)},
                {"padding", to_string(cfg.padding)},
                {"stride", std::to_string(cfg.stride)},
                {"window", std::to_string(window)},
                {"odd_padding", cfg.odd_padding ? "on" : "off"},
                {"shifts", "diagonal " + std::to_string(cfg.shift_min) + ".." +
                               std::to_string(cfg.shift_max)},
                {"model", "conv3x3 > relu > pool > gap > linear > softmax, untrained"}});
  out << "shift,series,value\n";

  int code = kOk;
  for (const auto& [name, kind] : variants) {
    ToyClassifierConfig tc = base;
    tc.pooling = kind;
    double sum_consistency = 0.0, sum_std = 0.0;
    for (std::size_t k = 0; k < cfg.seeds; ++k) {
      const std::uint64_t seed = cfg.seed + k;
      const ConsistencyResult r = toy_classifier_consistency(seed, shifts, tc);
      const std::string prefix = name + "/seed" + std::to_string(seed);
      for (std::size_t i = 0; i < shifts.size(); ++i) {
        row(out, shifts[i], prefix + "/prob", r.probabilities[i]);
        row(out, shifts[i], prefix + "/class", static_cast<double>(r.classes[i]));
      }
      summary_row(out, prefix + "/consistency", r.consistency);
      summary_row(out, prefix + "/std", r.std);
      sum_consistency += r.consistency;
      sum_std += r.std;
      if (name == "fpool" && cfg.padding == Padding::kCircular &&
          (r.consistency != 1.0 || r.std > kExactTol)) {
        std::cerr << "fpool consistency: F-pooling classifier is not shift invariant (seed "
                  << seed << ")\n";
        code = kContractViolation;
      }
    }
    summary_row(out, name + "/mean_consistency", sum_consistency / static_cast<double>(cfg.seeds));
    summary_row(out, name + "/mean_std", sum_std / static_cast<double>(cfg.seeds));
  }
  return code;
}

int cmd_retention(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.corpus == 0) throw DomainError("--corpus must be >= 1");
  std::vector<RealSignal> corpus;
  for (std::size_t i = 0; i < cfg.corpus; ++i) corpus.push_back(random_signal(cfg.n, cfg.seed + i));
  const auto rows = retention_ablation(cfg.rates, corpus, cfg.odd_padding);
  std::string rates;
  for (double r : cfg.rates) rates += (rates.empty() ? "" : " ") + format_value(r);
  write_header(out, cfg,
               {{"n", std::to_string(cfg.n)},
                {"m", std::to_string(cfg.n / 2)},
                {"rates", rates},
                {"corpus", std::to_string(cfg.corpus) + " random signals from seed " +
                               std::to_string(cfg.seed)},
                {"odd_padding", cfg.odd_padding ? "on" : "off"},
                {"rate_definition", "per-axis fraction of bins kept: round(rate * n)"}});
  out << "shift,series,value\n";
  for (const auto& r : rows) {
    const std::string prefix = "rate" + format_value(r.rate);
    summary_row(out, prefix + "/kept_bins", static_cast<double>(r.kept_bins));
    summary_row(out, prefix + "/mean_error", r.mean_error);
    summary_row(out, prefix + "/relative_error", r.relative_error);
  }
  return kOk;
}

int cmd_bench(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.reps == 0) throw DomainError("--reps must be >= 1");
  if (cfg.stride == 0) throw DomainError("--stride must be >= 1");
  write_header(out, cfg,
               {{"stride", std::to_string(cfg.stride)},
                {"reps", std::to_string(cfg.reps)},
                {"threads", std::to_string(kernels::max_threads())},
                {"note", "wall-clock timings; not deterministic"}});
  out << "n,m,path,seconds_per_call,max_abs_diff_vs_matrix\n";
  using clock = std::chrono::steady_clock;
  for (std::size_t n : cfg.sizes) {
    const std::size_t m = fpool_output_length(n, cfg.stride);
    const FPoolPlan plan = make_plan(n, m, cfg.odd_padding);
    const RealSignal x = random_signal(n, cfg.seed);
    const RealSignal ref = pool1d(plan, x);

    auto time = [&](auto&& fn) {
      RealSignal y;
      const auto t0 = clock::now();
      for (std::size_t r = 0; r < cfg.reps; ++r) y = fn();
      const double dt = std::chrono::duration<double>(clock::now() - t0).count();
      return std::make_pair(dt / static_cast<double>(cfg.reps), max_abs_diff(y.view(), ref.view()));
    };
    auto report = [&](const std::string& path, std::pair<double, double> r) {
      out << n << ',' << m << ',' << path << ',' << format_value(r.first) << ','
          << format_value(r.second) << '\n';
    };
    report("matrix_serial", time([&] {
             std::vector<double> y(m);
             kernels::serial::gemv(plan.forward_real(), x.view(), y);
             return RealSignal(std::move(y));
           }));
    report("matrix_omp", time([&] { return pool1d(plan, x); }));
    report("fft", time([&] { return pool1d_fast(plan, x); }));
  }
  return kOk;
}

int run(const ExperimentConfig& cfg, std::ostream& err) {
  try {
    std::ostringstream buffer;
    int code = kOk;
    if (cfg.command == "demo1d")
      code = cmd_demo1d(cfg, buffer);
    else if (cfg.command == "oddpad")
      code = cmd_oddpad(cfg, buffer);
    else if (cfg.command == "transitivity")
      code = cmd_transitivity(cfg, buffer);
    else if (cfg.command == "pool")
      code = cmd_pool_image(cfg, buffer);
    else if (cfg.command == "consistency")
      code = cmd_consistency(cfg, buffer);
    else if (cfg.command == "retention")
      code = cmd_retention(cfg, buffer);
    else if (cfg.command == "bench")
      code = cmd_bench(cfg, buffer);
    else
      throw DomainError("unknown command '" + cfg.command + "'");

    // The pool command writes its image itself; its text goes to stdout.
    if (cfg.command == "pool" || cfg.output.empty() || cfg.output == "-") {
      std::cout << buffer.str();
      std::cout.flush();
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw IoError(cfg.output, "cannot open for writing");
      f << buffer.str();
      if (!f) throw IoError(cfg.output, "write failed");
    }
    return code;
  } catch (const IoError& e) {
    err << "fpool: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ContractViolation& e) {
    err << "fpool: numerical contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const DomainError& e) {
    err << "fpool: config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace fpool::cli
