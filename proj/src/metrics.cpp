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

#include "fpool/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fpool/plan.hpp"

namespace fpool {

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

SweepResult shift_sweep(const Pipeline& p, const Upsampler& up, std::span<const long> shifts,
                        const RealImage& x, bool diagonal, double exact_tolerance) {
  const long n = static_cast<long>(x.width());
  for (long s : shifts)
    if (std::labs(s) > n) throw DomainError("shift_sweep: shift outside [-n, n]");

  SweepResult r;
  r.records.resize(shifts.size());
  const long count = static_cast<long>(shifts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const long s = shifts[i];
    const Shift2D shift{diagonal ? s : 0, s};
    const double err = equivalence_error(p, up, shift, x);
    r.records[i] = {s, err, err <= exact_tolerance};
  }
  std::vector<double> errors;
  errors.reserve(r.records.size());
  for (const auto& rec : r.records) errors.push_back(rec.error);
  r.summary = summarize(errors);
  return r;
}

SweepResult shift_sweep(const Pipeline& p, const Upsampler& up, std::span<const long> shifts,
                        const RealSignal& x, double exact_tolerance) {
  return shift_sweep(p, up, shifts, RealImage::from_signal(x), false, exact_tolerance);
}

std::vector<long> shift_range(long lo, long hi) {
  std::vector<long> out;
  for (long s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

double consistency_from_predictions(std::span<const std::size_t> classes) {
  if (classes.size() < 2)
    throw DomainError("consistency_from_predictions: need at least two predictions");
  std::size_t agree = 0, pairs = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j, ++pairs)
      if (classes[i] == classes[j]) ++agree;
  return static_cast<double>(agree) / static_cast<double>(pairs);
}

std::vector<RetentionRow> retention_ablation(std::span<const double> rates,
                                             std::span<const RealSignal> corpus,
                                             bool odd_padding) {
  if (corpus.empty()) throw DomainError("retention_ablation: empty corpus");
  const std::size_t n = corpus.front().size();
  if (n < 2) throw DomainError("retention_ablation: signals need at least 2 samples");
  for (const auto& x : corpus)
    if (x.size() != n) throw DomainError("retention_ablation: signals differ in length");
  const std::size_t m = n / 2;

  double energy = 0.0;
  for (const auto& x : corpus) energy += x.squared_norm();

  std::vector<RetentionRow> rows;
  for (double rate : rates) {
    if (!(rate > 0.0 && rate <= 0.5))
      throw DomainError("retention_ablation: rate must lie in (0, 0.5]");
    const auto bins = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(rate * static_cast<double>(n))), 1, m);
    const FPoolPlan plan = make_truncated_plan(n, m, bins, odd_padding);
    RetentionRow row;
    row.rate = rate;
    row.kept_bins = static_cast<std::size_t>(
        std::count(plan.kept_mask().begin(), plan.kept_mask().end(), true));
    for (const auto& x : corpus) {
      const RealSignal rec = unpool1d(plan, pool1d(plan, x));
      for (std::size_t i = 0; i < n; ++i) row.total_error += (rec[i] - x[i]) * (rec[i] - x[i]);
    }
    row.mean_error = row.total_error / static_cast<double>(corpus.size());
    row.relative_error = energy > 0.0 ? row.total_error / energy : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fpool
