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

#include <benchmark/benchmark.h>

#include <vector>

#include "fpool/kernels.hpp"
#include "fpool/plan.hpp"
#include "fpool/signals.hpp"

namespace {

using namespace fpool;

void BM_Pool1dSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FPoolPlan& plan = *shared_plan(n, n / 4, true);
  const RealSignal x = random_signal(n, 1);
  std::vector<double> y(plan.m());
  for (auto _ : state) {
    kernels::serial::gemv(plan.forward_real(), x.view(), y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_Pool1dOmp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FPoolPlan& plan = *shared_plan(n, n / 4, true);
  const RealSignal x = random_signal(n, 1);
  std::vector<double> y(plan.m());
  for (auto _ : state) {
    kernels::omp::gemv(plan.forward_real(), x.view(), y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_Pool1dFft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FPoolPlan& plan = *shared_plan(n, n / 4, true);
  const RealSignal x = random_signal(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pool1d_fast(plan, x));
}

RealImage bench_image(std::size_t channels, std::size_t side) {
  const RealSignal x = random_signal(channels * side * side, 2);
  return RealImage(channels, side, side, x.samples());
}

void BM_Pool2dSerial(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const FPoolPlan& plan = *shared_plan(side, side / 2, true);
  const RealImage x = bench_image(8, side);
  const RealMatrix& p = plan.forward_real();
  std::vector<double> rows(plan.m() * side), out(plan.m() * plan.m());
  for (auto _ : state) {
    for (std::size_t c = 0; c < x.channels(); ++c) {
      kernels::serial::gemm(p, x.plane(c), side, rows);
      kernels::serial::gemm_nt(rows, plan.m(), p, out);
      benchmark::DoNotOptimize(out.data());
    }
  }
}

void BM_Pool2dOmp(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const FPoolPlan& plan = *shared_plan(side, side / 2, true);
  const RealImage x = bench_image(8, side);
  for (auto _ : state) benchmark::DoNotOptimize(pool2d(plan, plan, x));
}

BENCHMARK(BM_Pool1dSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Pool1dOmp)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Pool1dFft)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Pool2dSerial)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Pool2dOmp)->RangeMultiplier(2)->Range(32, 256);

}  // namespace

BENCHMARK_MAIN();
