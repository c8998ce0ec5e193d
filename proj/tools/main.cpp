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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using fpool::cli::ExperimentConfig;

void add_signal_options(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--input", cfg.input, "CSV signal or PGM/PPM image (row taken with --row)");
  app->add_option("--signal", cfg.signal,
                  "synthetic signal: tone:f, sine:f, impulse, const:c, rand:seed, row:r");
  app->add_option("--row", cfg.row, "image row used as the 1D signal");
  app->add_option("--n", cfg.n, "synthetic signal length");
  app->add_option("--m", cfg.m, "pooled length (default n / stride)");
  app->add_option("--stride", cfg.stride, "pooling factor");
}

void add_odd_padding(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--odd-padding", cfg.odd_padding, "zero the unmatched Nyquist bin (true|false)");
}

void add_shift_range(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--shift-min", cfg.shift_min, "first shift");
  app->add_option("--shift-max", cfg.shift_max, "last shift");
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  std::string padding = "circular";

  CLI::App app{"fpool: frequency-domain pooling experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output,-o", cfg.output, "output path (default stdout)");

  auto* demo = app.add_subcommand("demo1d", "pooling vs shift on a 1D signal, one shift");
  add_signal_options(demo, cfg);
  add_odd_padding(demo, cfg);
  demo->add_option("--shift", cfg.shift, "shift applied to the input");
  demo->add_option("--window", cfg.window, "window of max/avg/blur pooling (default stride)");

  auto* oddpad = app.add_subcommand("oddpad", "shift error with and without odd padding");
  add_signal_options(oddpad, cfg);
  add_shift_range(oddpad, cfg);

  auto* trans = app.add_subcommand("transitivity", "equivalence of stacked F-poolings");
  trans->add_option("--n", cfg.n, "signal length");
  trans->add_option("--stride", cfg.stride, "pooling factor of each F-pooling");
  trans->add_option("--seed", cfg.seed, "random seed");
  add_odd_padding(trans, cfg);
  add_shift_range(trans, cfg);

  auto* pool = app.add_subcommand("pool", "pool a PGM/PPM image");
  pool->add_option("--input", cfg.input, "input image")->required();
  pool->add_option("--pooling", cfg.pooling, "fpool|max|avg|stride|blur");
  pool->add_option("--stride", cfg.stride, "pooling factor");
  pool->add_option("--window", cfg.window, "window of max/avg/blur pooling (default stride)");
  add_odd_padding(pool, cfg);

  auto* cons = app.add_subcommand("consistency", "shift consistency of a toy classifier");
  cons->add_option("--seed", cfg.seed, "first seed");
  cons->add_option("--seeds", cfg.seeds, "number of seeds");
  cons->add_option("--size", cfg.size, "input side length");
  cons->add_option("--channels", cfg.channels, "conv channels");
  cons->add_option("--stride", cfg.stride, "pooling factor");
  cons->add_option("--window", cfg.window, "window of max/avg/blur pooling (default stride)");
  cons->add_option("--padding", padding, "circular|zero");
  add_odd_padding(cons, cfg);
  add_shift_range(cons, cfg);

  auto* ret = app.add_subcommand("retention", "reconstruction error vs kept frequency rate");
  ret->add_option("--n", cfg.n, "signal length (pooled to n / 2)");
  ret->add_option("--rates", cfg.rates, "kept fraction of bins per rate");
  ret->add_option("--corpus", cfg.corpus, "number of random signals");
  ret->add_option("--seed", cfg.seed, "first seed");
  add_odd_padding(ret, cfg);

  auto* bench = app.add_subcommand("bench", "time matrix and FFT pooling paths");
  bench->add_option("--sizes", cfg.sizes, "signal lengths");
  bench->add_option("--stride", cfg.stride, "pooling factor");
  bench->add_option("--reps", cfg.reps, "repetitions per timing");
  bench->add_option("--seed", cfg.seed, "random seed");
  add_odd_padding(bench, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fpool::cli::kConfigError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "transitivity") {
    const fpool::TransitivityConfig defaults;
    if (trans->count("--n") == 0) cfg.n = defaults.n;
    if (trans->count("--stride") == 0) cfg.stride = defaults.factor;
    if (trans->count("--shift-min") == 0) cfg.shift_min = defaults.shift_min;
    if (trans->count("--shift-max") == 0) cfg.shift_max = defaults.shift_max;
  }
  try {
    cfg.padding = fpool::parse_padding(padding);
  } catch (const std::exception& e) {
    std::cerr << "fpool: config error: " << e.what() << '\n';
    return fpool::cli::kConfigError;
  }
  return fpool::cli::run(cfg, std::cerr);
}
