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

#include <gtest/gtest.h>

#include "fpool/kernels.hpp"
#include "oracles.hpp"

namespace fpool {
namespace {

RealMatrix random_matrix(std::size_t r, std::size_t c, oracle::Gen& g) {
  RealMatrix a(r, c);
  const auto v = g.normal(r * c);
  std::copy(v.begin(), v.end(), a.data());
  return a;
}

TEST(KernelsTest, DotMatchesPlainSum) {
  oracle::Gen g(1);
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 129u}) {
    const auto a = g.normal(n), b = g.normal(n);
    double ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) ref += a[i] * b[i];
    EXPECT_NEAR(kernels::dot(a, b), ref, 1e-12 * n);
  }
}

TEST(KernelsTest, GemvMatchesDefinition) {
  oracle::Gen g(2);
  const RealMatrix a = random_matrix(5, 9, g);
  const auto x = g.normal(9);
  std::vector<double> y(5);
  kernels::serial::gemv(a, x, y);
  for (std::size_t r = 0; r < 5; ++r) {
    double ref = 0.0;
    for (std::size_t c = 0; c < 9; ++c) ref += a(r, c) * x[c];
    EXPECT_NEAR(y[r], ref, 1e-12);
  }
}

TEST(KernelsTest, SerialAndOmpAgreeBitForBit) {
  oracle::Gen g(3);
  // Big enough to cross the parallel threshold.
  const RealMatrix a = random_matrix(300, 257, g);
  const auto x = g.normal(257);
  std::vector<double> ys(300), yo(300);
  kernels::serial::gemv(a, x, ys);
  kernels::omp::gemv(a, x, yo);
  EXPECT_EQ(ys, yo);

  ComplexMatrix ac(200, 190);
  const auto re = g.normal(200 * 190), im = g.normal(200 * 190);
  for (std::size_t i = 0; i < re.size(); ++i) ac.data()[i] = {re[i], im[i]};
  std::vector<Complex> cs(200), co(200);
  kernels::serial::gemv(ac, std::span<const double>(x.data(), 190), cs);
  kernels::omp::gemv(ac, std::span<const double>(x.data(), 190), co);
  EXPECT_EQ(cs, co);

  std::vector<Complex> xc(190);
  for (std::size_t i = 0; i < 190; ++i) xc[i] = {x[i], -x[i] / 3};
  kernels::serial::gemv(ac, xc, cs);
  kernels::omp::gemv(ac, xc, co);
  EXPECT_EQ(cs, co);

  const auto b = g.normal(257 * 40);
  std::vector<double> cs2(300 * 40), co2(300 * 40);
  kernels::serial::gemm(a, b, 40, cs2);
  kernels::omp::gemm(a, b, 40, co2);
  EXPECT_EQ(cs2, co2);

  const auto at = g.normal(90 * 257);
  std::vector<double> ns(90 * 300), no(90 * 300);
  kernels::serial::gemm_nt(at, 90, a, ns);
  kernels::omp::gemm_nt(at, 90, a, no);
  EXPECT_EQ(ns, no);
}

TEST(KernelsTest, GemmAndGemmNtMatchDefinition) {
  oracle::Gen g(4);
  const RealMatrix a = random_matrix(4, 6, g);
  const auto b = g.normal(6 * 3);
  std::vector<double> c(4 * 3);
  kernels::serial::gemm(a, b, 3, c);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double ref = 0.0;
      for (std::size_t k = 0; k < 6; ++k) ref += a(i, k) * b[k * 3 + j];
      EXPECT_NEAR(c[i * 3 + j], ref, 1e-12);
    }
  const auto l = g.normal(2 * 6);
  std::vector<double> d(2 * 4);
  kernels::serial::gemm_nt(l, 2, a, d);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double ref = 0.0;
      for (std::size_t k = 0; k < 6; ++k) ref += l[i * 6 + k] * a(j, k);
      EXPECT_NEAR(d[i * 4 + j], ref, 1e-12);
    }
}

}  // namespace
}  // namespace fpool
