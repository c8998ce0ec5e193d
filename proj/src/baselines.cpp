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

#include "fpool/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace fpool {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// One strided, windowed reduction over a circular line.
template <typename Reduce>
void reduce_line(std::span<const double> in, std::span<double> out, std::size_t window,
                 std::size_t stride, Reduce reduce) {
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t start = i * stride;
    out[i] = reduce([&](std::size_t j) { return in[(start + j) % n]; }, window);
  }
}

void pool_line(const PoolingKind& kind, std::span<const double> in, std::span<double> out) {
  std::visit(
      overloaded{
          [&](const MaxPool& p) {
            reduce_line(in, out, p.window, p.stride, [](auto at, std::size_t k) {
              double v = -std::numeric_limits<double>::infinity();
              for (std::size_t j = 0; j < k; ++j) v = std::max(v, at(j));
              return v;
            });
          },
          [&](const AvgPool& p) {
            reduce_line(in, out, p.window, p.stride, [](auto at, std::size_t k) {
              double v = 0.0;
              for (std::size_t j = 0; j < k; ++j) v += at(j);
              return v / static_cast<double>(k);
            });
          },
          [&](const StridePool& p) {
            reduce_line(in, out, 1, p.stride, [](auto at, std::size_t) { return at(0); });
          },
          [&](const BlurStridePool& p) {
            const std::size_t n = in.size();
            std::vector<double> blurred(n);
            const double tap = 1.0 / static_cast<double>(p.width);
            for (std::size_t t = 0; t < n; ++t) {
              double v = 0.0;
              for (std::size_t j = 0; j < p.width; ++j) v += tap * in[(t + j) % n];
              blurred[t] = v;
            }
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = blurred[i * p.stride];
          },
          [](const FPoolKind&) {
            throw DomainError("pool_baseline: F-pooling needs a plan");
          },
      },
      kind);
}

std::size_t checked_output_length(const PoolingKind& kind, std::size_t n) {
  validate(kind);
  const std::size_t s = stride_of(kind);
  if (n % s != 0)
    throw DomainError("pool_baseline: length " + std::to_string(n) +
                      " not divisible by stride " + std::to_string(s));
  return n / s;
}

}  // namespace

std::string describe(const PoolingKind& kind) {
  return std::visit(
      overloaded{
          [](const FPoolKind& p) {
            return "fpool(" + std::to_string(p.factor) + (p.odd_padding ? ",odd" : "") + ")";
          },
          [](const MaxPool& p) {
            return "max(" + std::to_string(p.window) + "," + std::to_string(p.stride) + ")";
          },
          [](const AvgPool& p) {
            return "avg(" + std::to_string(p.window) + "," + std::to_string(p.stride) + ")";
          },
          [](const StridePool& p) { return "stride(" + std::to_string(p.stride) + ")"; },
          [](const BlurStridePool& p) {
            return "blur(" + std::to_string(p.width) + "," + std::to_string(p.stride) + ")";
          },
      },
      kind);
}

std::size_t stride_of(const PoolingKind& kind) {
  return std::visit(
      overloaded{
          [](const FPoolKind& p) { return p.factor; },
          [](const MaxPool& p) { return p.stride; },
          [](const AvgPool& p) { return p.stride; },
          [](const StridePool& p) { return p.stride; },
          [](const BlurStridePool& p) { return p.stride; },
      },
      kind);
}

bool is_fpool(const PoolingKind& kind) { return std::holds_alternative<FPoolKind>(kind); }

void validate(const PoolingKind& kind) {
  const bool ok = std::visit(
      overloaded{
          [](const FPoolKind& p) { return p.factor >= 1; },
          [](const MaxPool& p) { return p.window >= 1 && p.stride >= 1; },
          [](const AvgPool& p) { return p.window >= 1 && p.stride >= 1; },
          [](const StridePool& p) { return p.stride >= 1; },
          [](const BlurStridePool& p) { return p.width >= 1 && p.stride >= 1; },
      },
      kind);
  if (!ok) throw DomainError("pooling " + describe(kind) + ": windows and strides must be >= 1");
}

std::size_t fpool_output_length(std::size_t n, std::size_t factor) {
  if (factor == 0) throw DomainError("fpool: factor must be >= 1");
  const auto m = static_cast<std::size_t>(
      std::lround(static_cast<double>(n) / static_cast<double>(factor)));
  return std::max<std::size_t>(m, 1);
}

RealSignal pool_baseline(const PoolingKind& kind, const RealSignal& x) {
  const std::size_t m = checked_output_length(kind, x.size());
  std::vector<double> out(m);
  pool_line(kind, x.view(), out);
  return RealSignal(std::move(out));
}

RealImage pool_baseline(const PoolingKind& kind, const RealImage& x, bool both_axes) {
  const std::size_t w_out = checked_output_length(kind, x.width());
  const std::size_t h_out = both_axes ? checked_output_length(kind, x.height()) : x.height();
  const std::size_t h = x.height(), w = x.width();

  RealImage across(x.channels(), h, w_out);
  for (std::size_t c = 0; c < x.channels(); ++c)
    for (std::size_t y = 0; y < h; ++y)
      pool_line(kind, x.plane(c).subspan(y * w, w), across.plane(c).subspan(y * w_out, w_out));
  if (!both_axes) return across;

  RealImage out(x.channels(), h_out, w_out);
  std::vector<double> column(h), pooled(h_out);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    for (std::size_t i = 0; i < w_out; ++i) {
      for (std::size_t y = 0; y < h; ++y) column[y] = across.at(c, y, i);
      pool_line(kind, column, pooled);
      for (std::size_t y = 0; y < h_out; ++y) out.at(c, y, i) = pooled[y];
    }
  }
  return out;
}

std::vector<PoolingKind> replace_rule(const PoolingKind& original) {
  validate(original);
  const std::size_t s = stride_of(original);
  if (s == 1 || is_fpool(original)) return {original};
  const FPoolKind fpool{s, false};
  return std::visit(
      overloaded{
          [&](const MaxPool& p) -> std::vector<PoolingKind> {
            return {MaxPool{p.window, 1}, fpool};
          },
          [&](const AvgPool&) -> std::vector<PoolingKind> { return {fpool}; },
          [&](const StridePool&) -> std::vector<PoolingKind> {
            return {StridePool{1}, fpool};
          },
          [&](const BlurStridePool& p) -> std::vector<PoolingKind> {
            return {BlurStridePool{p.width, 1}, fpool};
          },
          [&](const FPoolKind& p) -> std::vector<PoolingKind> { return {p}; },
      },
      original);
}

}  // namespace fpool
