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

#include <cmath>
#include <limits>
#include <numbers>

#include "fpool/signals.hpp"
#include "fpool/spectral.hpp"
#include "oracles.hpp"

namespace fpool {
namespace {


TEST(RealSignalTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(RealSignal(std::vector<double>{}), DomainError);
  EXPECT_THROW(RealSignal({1.0, std::numeric_limits<double>::quiet_NaN()}), DomainError);
  EXPECT_THROW(RealSignal({std::numeric_limits<double>::infinity()}), DomainError);
}

TEST(DftTest, ConstantGoesToDc) {
  const ComplexSpectrum s = dft(RealSignal(std::vector<double>(6, 2.5)));
  EXPECT_NEAR(s[0].real(), 15.0, 1e-12);
  EXPECT_NEAR(s[0].imag(), 0.0, 1e-12);
  for (std::size_t k = 1; k < 6; ++k) EXPECT_LT(std::abs(s[k]), 1e-12);
}

TEST(DftTest, ImpulseIsFlat) {
  const ComplexSpectrum s = dft(RealSignal({1.0, 0.0, 0.0, 0.0}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(s[k] - Complex(1.0, 0.0)), 1e-15);
}

TEST(DftTest, MatchesDirectSummation) {
  oracle::Gen g(21);
  const auto x = g.normal(8);
  const auto ref = oracle::dft(x);
  const ComplexSpectrum s = dft(RealSignal(x));
  for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(s[k] - ref[k]), 1e-12);
}

TEST(DftTest, InverseOfDcSpectrum) {
  ComplexSpectrum s{std::vector<Complex>(5)};
  s[0] = 5.0 * 1.5;
  const ComplexSignal x = idft(s);
  for (const Complex& v : x) EXPECT_LT(std::abs(v - Complex(5.0 * 1.5, 0.0)), 1e-12);
}

TEST(DftTest, RoundTripScalesByN) {
  oracle::Gen g(22);
  const auto x = g.normal(7);
  const ComplexSignal back = idft(dft(RealSignal(x)));
  for (std::size_t j = 0; j < 7; ++j) {
    EXPECT_NEAR(back[j].real(), 7.0 * x[j], 1e-10);
    EXPECT_NEAR(back[j].imag(), 0.0, 1e-10);
  }
}

TEST(DftTest, ConjugateSymmetricSpectrumGivesRealSignal) {
  oracle::Gen g(23);
  for (std::size_t n : {6u, 7u}) {
    ComplexSpectrum s{std::vector<Complex>(n)};
    s[0] = g.normal(1)[0];
    for (std::size_t k = 1; 2 * k < n; ++k) {
      const auto v = g.normal(2);
      s[k] = {v[0], v[1]};
      s[n - k] = std::conj(s[k]);
    }
    if (n % 2 == 0) s[n / 2] = g.normal(1)[0];
    for (const Complex& v : idft(s)) EXPECT_LT(std::abs(v.imag()), 1e-10);
  }
}

TEST(DftTest, ParsevalAndConjugateSymmetry) {
  oracle::Gen g(24);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.size(1, 64);
    const RealSignal x(g.normal(n));
    const ComplexSpectrum s = dft(x);
    EXPECT_NEAR(s.squared_norm(), n * x.squared_norm(), 1e-8 * n * x.squared_norm());
    for (std::size_t k = 1; k < n; ++k)
      EXPECT_LT(std::abs(s[k] - std::conj(s[n - k])), 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST(DftTest, Linearity) {
  oracle::Gen g(25);
  const auto a = g.normal(12), b = g.normal(12);
  std::vector<double> c(12);
  for (std::size_t i = 0; i < 12; ++i) c[i] = 2.0 * a[i] - 0.5 * b[i];
  const auto sa = dft(RealSignal(a)), sb = dft(RealSignal(b)), sc = dft(RealSignal(c));
  for (std::size_t k = 0; k < 12; ++k)
    EXPECT_LT(std::abs(sc[k] - (2.0 * sa[k] - 0.5 * sb[k])), 1e-10);
}

TEST(DftTest, MatricesAreSharedPerLength) {
  EXPECT_EQ(dft_matrix(9).get(), dft_matrix(9).get());
  const auto f = dft_matrix(5), fi = idft_matrix(5);
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ((*fi)(j, k), std::conj((*f)(j, k)));
}

TEST(CircularShiftTest, Examples) {
  const RealSignal x({1, 2, 3, 4});
  EXPECT_EQ(circular_shift(x, {1}), RealSignal({4, 1, 2, 3}));
  EXPECT_EQ(circular_shift(x, {-1}), RealSignal({2, 3, 4, 1}));
  EXPECT_EQ(circular_shift(x, {4}), x);
  EXPECT_EQ(circular_shift(x, {-8}), x);
}

TEST(CircularShiftTest, ComposesAndPreservesNorm) {
  oracle::Gen g(26);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.size(1, 40);
    const RealSignal x(g.normal(n));
    const long a = g.integer(-90, 90), b = g.integer(-90, 90);
    EXPECT_EQ(circular_shift(circular_shift(x, {a}), {b}), circular_shift(x, {a + b}));
    EXPECT_EQ(RealSignal(oracle::shift(x.samples(), a)), circular_shift(x, {a}));
    EXPECT_DOUBLE_EQ(circular_shift(x, {a}).squared_norm(), x.squared_norm());
  }
}

TEST(CircularShiftTest, ImageShiftsBothAxes) {
  RealImage img(1, 2, 3, std::vector<double>{0, 1, 2, 3, 4, 5});
  const RealImage s = circular_shift(img, Shift2D{1, 1});
  EXPECT_EQ(s, RealImage(1, 2, 3, std::vector<double>{5, 3, 4, 2, 0, 1}));
}

TEST(ShiftPhaseTest, ZeroIsIdentity) {
  oracle::Gen g(27);
  const ComplexSpectrum s = dft(RealSignal(g.normal(9)));
  const ComplexSpectrum t = shift_phase(s, 0.0);
  for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(s[k], t[k]);
}

TEST(ShiftPhaseTest, IntegerShiftMatchesTimeDomain) {
  oracle::Gen g(28);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = g.size(2, 33);
    const RealSignal x(g.normal(n));
    const long d = g.integer(-2 * static_cast<long>(n), 2 * static_cast<long>(n));
    const ComplexSpectrum a = shift_phase(dft(x), static_cast<double>(d));
    const ComplexSpectrum b = dft(circular_shift(x, {d}));
    for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-10);
  }
}

TEST(ShiftPhaseTest, HalfPeriodNegatesOddFrequencies) {
  oracle::Gen g(29);
  const std::size_t n = 10;
  const ComplexSpectrum s = dft(RealSignal(g.normal(n)));
  const ComplexSpectrum t = shift_phase(s, n / 2.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (static_cast<long>(signed_frequency(k, n)) % 2 == 0) ? 1.0 : -1.0;
    EXPECT_LT(std::abs(t[k] - sign * s[k]), 1e-10);
  }
}

TEST(ShiftPhaseTest, SignedFrequency) {
  EXPECT_EQ(signed_frequency(0, 8), 0.0);
  EXPECT_EQ(signed_frequency(3, 8), 3.0);
  EXPECT_EQ(signed_frequency(4, 8), 4.0);
  EXPECT_EQ(signed_frequency(5, 8), -3.0);
  EXPECT_EQ(signed_frequency(4, 7), -3.0);
}

TEST(LowHighSplitTest, ConstantIsAllLow) {
  const RealSignal x(std::vector<double>(10, -3.0));
  for (std::size_t mu = 1; mu <= 5; ++mu) {
    const LowHighSplit s = low_high_split(x, mu);
    EXPECT_LT(max_abs_diff(s.low.view(), x.view()), 1e-12);
    EXPECT_LT(s.high.norm(), 1e-12);
  }
}

TEST(LowHighSplitTest, ToneAboveBandIsAllHigh) {
  const RealSignal x = tone(16, 5.0);
  const LowHighSplit s = low_high_split(x, 4);
  EXPECT_LT(s.low.norm(), 1e-12);
  EXPECT_LT(max_abs_diff(s.high.view(), x.view()), 1e-12);
}

TEST(LowHighSplitTest, MatchesMaskOracleAndIsOrthogonal) {
  oracle::Gen g(30);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = g.size(1, 40);
    const std::size_t mu = g.size(1, (n + 1) / 2);
    const RealSignal x(g.normal(n));
    std::vector<bool> keep(n, false);
    for (std::size_t k = 0; k < mu; ++k) keep[k] = true;
    // Without a conjugate partner the top tail bin drops out of the band.
    for (std::size_t k = n - mu + (2 * mu < n ? 1 : 0); k < n; ++k) keep[k] = true;
    const auto ref = oracle::masked(x.samples(), keep);
    const LowHighSplit s = low_high_split(x, mu);
    EXPECT_LT(oracle::max_diff(s.low.samples(), ref), 1e-10) << "n=" << n << " mu=" << mu;
    EXPECT_LT(s.imag_residue, 1e-10);
    EXPECT_LE(std::abs(inner_product(s.low.view(), s.high.view())), 1e-9 * x.squared_norm());
    EXPECT_NEAR(x.squared_norm(), s.low.squared_norm() + s.high.squared_norm(),
                1e-8 * x.squared_norm());
  }
}

TEST(LowHighSplitTest, LiteralMaskKeepsUnmatchedBin) {
  oracle::Gen g(31);
  const std::size_t n = 16, mu = 4;
  const RealSignal x(g.normal(n));
  std::vector<bool> keep = kept_band(n, mu, NyquistBin::kKeepUnmatched);
  EXPECT_TRUE(keep[12]);
  EXPECT_FALSE(kept_band(n, mu)[12]);
  const LowHighSplit s = low_high_split(x, mu, NyquistBin::kKeepUnmatched);
  EXPECT_LT(oracle::max_diff(s.low.samples(), oracle::masked(x.samples(), keep)), 1e-10);
  EXPECT_GT(s.imag_residue, 1e-6);
}

TEST(LowHighSplitTest, CommutesWithShift) {
  oracle::Gen g(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.size(2, 30);
    const std::size_t mu = g.size(1, (n + 1) / 2);
    const RealSignal x(g.normal(n));
    const long d = g.integer(-40, 40);
    const LowHighSplit a = low_high_split(circular_shift(x, {d}), mu);
    const LowHighSplit b = low_high_split(x, mu);
    EXPECT_LT(max_abs_diff(a.low.view(), circular_shift(b.low, {d}).view()), 1e-9);
    EXPECT_LT(max_abs_diff(a.high.view(), circular_shift(b.high, {d}).view()), 1e-9);
  }
}

TEST(LowHighSplitTest, Linearity) {
  oracle::Gen g(33);
  const RealSignal a(g.normal(14)), b(g.normal(14));
  std::vector<double> c(14);
  for (std::size_t i = 0; i < 14; ++i) c[i] = 3.0 * a[i] + b[i];
  const auto sa = low_high_split(a, 4), sb = low_high_split(b, 4),
             sc = low_high_split(RealSignal(c), 4);
  for (std::size_t i = 0; i < 14; ++i)
    EXPECT_NEAR(sc.low[i], 3.0 * sa.low[i] + sb.low[i], 1e-10);
}

TEST(LowHighSplitTest, MuOutOfRange) {
  const RealSignal x(std::vector<double>(9, 1.0));
  EXPECT_THROW(low_high_split(x, 0), DomainError);
  EXPECT_THROW(low_high_split(x, 6), DomainError);
  EXPECT_NO_THROW(low_high_split(x, 5));
}

}  // namespace
}  // namespace fpool
