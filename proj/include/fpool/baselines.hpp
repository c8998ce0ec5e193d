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


// Comparison poolings and the replacement rules that turn a strided pooling
// into a stride-1 pooling followed by F-pooling.
//
// All windows are circular: window i covers samples i*s .. i*s + k - 1
// modulo n. Lengths must be divisible by the stride.

#ifndef FPOOL_BASELINES_HPP_
#define FPOOL_BASELINES_HPP_

#include <string>
#include <variant>
#include <vector>

#include "fpool/types.hpp"

namespace fpool {

struct FPoolKind {
  std::size_t factor = 2;
  bool odd_padding = false;
};
struct MaxPool {
  std::size_t window = 2;
  std::size_t stride = 2;
};
struct AvgPool {
  std::size_t window = 2;
  std::size_t stride = 2;
};
struct StridePool {
  std::size_t stride = 2;
};
// Box blur of the given width (taps 1/width) then subsampling.
struct BlurStridePool {
  std::size_t width = 2;
  std::size_t stride = 2;
};

using PoolingKind = std::variant<FPoolKind, MaxPool, AvgPool, StridePool, BlurStridePool>;

std::string describe(const PoolingKind& kind);
std::size_t stride_of(const PoolingKind& kind);
bool is_fpool(const PoolingKind& kind);
// Raises DomainError for zero windows or strides.
void validate(const PoolingKind& kind);

// Output length of an F-pooling by `factor`: round(n / factor), at least 1.
std::size_t fpool_output_length(std::size_t n, std::size_t factor);

// Max / Avg / Stride / BlurStride on a signal. FPoolKind is rejected; use
// the plan API for it.
RealSignal pool_baseline(const PoolingKind& kind, const RealSignal& x);

// Baseline along the width of every row of every channel, and optionally
// along the height too (separable; exact for max and mean over a box).
RealImage pool_baseline(const PoolingKind& kind, const RealImage& x, bool both_axes);

// Max(k, s) -> [Max(k, 1), FPool(s)], Stride(s) -> [Stride(1), FPool(s)],
// BlurStride(w, s) -> [BlurStride(w, 1), FPool(s)], Avg(k, s) -> [FPool(s)].
// Stride 1 poolings and F-poolings come back unchanged.
std::vector<PoolingKind> replace_rule(const PoolingKind& original);

}  // namespace fpool

#endif  // FPOOL_BASELINES_HPP_
