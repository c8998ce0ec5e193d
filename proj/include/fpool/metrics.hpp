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


// Shift sweeps, consistency and the frequency-retention ablation.

#ifndef FPOOL_METRICS_HPP_
#define FPOOL_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "fpool/pipeline.hpp"
#include "fpool/types.hpp"

namespace fpool {

struct Summary {
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

Summary summarize(std::span<const double> values);

struct SweepRecord {
  long shift = 0;
  double error = 0.0;
  bool exact = false;  // error <= exact_tolerance
};

struct SweepResult {
  std::vector<SweepRecord> records;
  Summary summary;
};

inline constexpr double kExactTolerance = 1e-9;

// Per-shift equivalence_error. Shifts must lie in [-n, n] where n is the
// signal width; 2D pipelines use diagonal shifts unless `diagonal` is false,
// in which case only the width is shifted. Shifts are evaluated in parallel
// and merged in request order.
SweepResult shift_sweep(const Pipeline& p, const Upsampler& up, std::span<const long> shifts,
                        const RealImage& x, bool diagonal = true,
                        double exact_tolerance = kExactTolerance);
SweepResult shift_sweep(const Pipeline& p, const Upsampler& up, std::span<const long> shifts,
                        const RealSignal& x, double exact_tolerance = kExactTolerance);

std::vector<long> shift_range(long lo, long hi);

// Fraction of unordered pairs of predictions that agree. Needs at least two.
double consistency_from_predictions(std::span<const std::size_t> classes);

struct RetentionRow {
  double rate = 0.0;
  std::size_t kept_bins = 0;  // input bins that survive, after odd padding
  double total_error = 0.0;   // sum over the corpus of |P_bar P x - x|^2
  double mean_error = 0.0;
  double relative_error = 0.0;  // total_error / total energy
};

// Factor-2 F-pooling that fills only round(rate * n) output bins. Rates must
// lie in (0, 0.5]; every corpus signal must have the same length n.
std::vector<RetentionRow> retention_ablation(std::span<const double> rates,
                                             std::span<const RealSignal> corpus,
                                             bool odd_padding = true);

}  // namespace fpool

#endif  // FPOOL_METRICS_HPP_
