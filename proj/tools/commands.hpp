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


// Experiment commands behind the `fpool` CLI. Each command validates its
// config, writes CSV (or an image) and returns a process exit code.

#ifndef FPOOL_TOOLS_COMMANDS_HPP_
#define FPOOL_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fpool/pipeline.hpp"

namespace fpool::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kContractViolation = 4,
};

struct ExperimentConfig {
  std::string command;
  std::string input;            // csv / pgm / ppm path; empty means synthetic
  std::string signal = "row:256";
  std::size_t row = 0;          // row taken from an image input
  std::size_t n = 512;
  std::size_t m = 0;            // 0: derived from n and stride
  std::size_t stride = 4;
  std::size_t window = 0;       // 0: same as stride
  bool odd_padding = true;
  Padding padding = Padding::kCircular;
  long shift = 2;
  long shift_min = -7;
  long shift_max = 7;
  std::uint64_t seed = 0;
  std::size_t seeds = 10;
  std::size_t size = 32;
  std::size_t channels = 8;
  std::string pooling = "fpool";
  std::vector<double> rates = {0.5, 0.375, 0.25};
  std::size_t corpus = 32;
  std::vector<std::size_t> sizes = {64, 256, 1024};
  std::size_t reps = 20;
  std::string output;           // empty or "-": stdout
};

// Resolved config as "# key=value" lines.
void write_header(std::ostream& out, const ExperimentConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& extra = {});

// Shortest round-trippable decimal form.
std::string format_value(double v);

int cmd_demo1d(const ExperimentConfig& cfg, std::ostream& out);
int cmd_oddpad(const ExperimentConfig& cfg, std::ostream& out);
int cmd_transitivity(const ExperimentConfig& cfg, std::ostream& out);
int cmd_pool_image(const ExperimentConfig& cfg, std::ostream& log);
int cmd_consistency(const ExperimentConfig& cfg, std::ostream& out);
int cmd_retention(const ExperimentConfig& cfg, std::ostream& out);
int cmd_bench(const ExperimentConfig& cfg, std::ostream& out);

// Dispatches on cfg.command, routes CSV to cfg.output and maps exceptions
// to exit codes (errors are reported on `err`).
int run(const ExperimentConfig& cfg, std::ostream& err);

}  // namespace fpool::cli

#endif  // FPOOL_TOOLS_COMMANDS_HPP_
