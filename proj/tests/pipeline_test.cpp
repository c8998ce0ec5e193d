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

#include <random>

#include "fpool/pipeline.hpp"
#include "fpool/plan.hpp"
#include "fpool/spectral.hpp"
#include "oracles.hpp"

namespace fpool {
namespace {

RealImage random_image(oracle::Gen& g, std::size_t c, std::size_t h, std::size_t w) {
  return RealImage(c, h, w, g.normal(c * h * w));
}

// Direct circular cross-correlation, kernel centred at (kh/2, kw/2).
RealImage reference_conv(const Conv& c, const RealImage& x) {
  const long h = static_cast<long>(x.height()), w = static_cast<long>(x.width());
  const long kh = static_cast<long>(c.kernel_h), kw = static_cast<long>(c.kernel_w);
  RealImage out(c.out_channels, x.height(), x.width());
  for (std::size_t o = 0; o < c.out_channels; ++o)
    for (long y = 0; y < h; ++y)
      for (long i = 0; i < w; ++i) {
        double acc = c.bias[o];
        for (std::size_t ch = 0; ch < c.in_channels; ++ch)
          for (long a = 0; a < kh; ++a)
            for (long b = 0; b < kw; ++b) {
              const long sy = y + a - kh / 2, sx = i + b - kw / 2;
              if (c.padding == Padding::kZero && (sy < 0 || sy >= h || sx < 0 || sx >= w))
                continue;
              acc += c.weights[((o * c.in_channels + ch) * c.kernel_h + a) * c.kernel_w + b] *
                     x.at(ch, ((sy % h) + h) % h, ((sx % w) + w) % w);
            }
        out.at(o, y, i) = acc;
      }
  return out;
}

TEST(PipelineTest, EmptyIsIdentity) {
  oracle::Gen g(71);
  const Pipeline p({2, 4, 5}, Rank::k2D, {});
  const RealImage x = random_image(g, 2, 4, 5);
  EXPECT_EQ(p.output(x), x);
  EXPECT_EQ(p.output_shape(), (Shape{2, 4, 5}));
  EXPECT_EQ(p.describe(), "identity");
}

TEST(PipelineTest, ReluExample) {
  const Pipeline p({1, 1, 2}, Rank::k1D, {ReLU{}});
  const auto stages = p.forward(RealImage(1, 1, 2, std::vector<double>{-1.0, 2.0}));
  ASSERT_EQ(stages.size(), 2u);
  EXPECT_EQ(stages[1], RealImage(1, 1, 2, std::vector<double>{0.0, 2.0}));
}

TEST(PipelineTest, IdentityConvLeavesInput) {
  oracle::Gen g(72);
  for (Padding pad : {Padding::kCircular, Padding::kZero}) {
    const Pipeline p({3, 6, 7}, Rank::k2D, {Conv::identity(3, 3, 3, pad)});
    const RealImage x = random_image(g, 3, 6, 7);
    EXPECT_EQ(p.output(x), x);
  }
}

TEST(PipelineTest, ConvMatchesDirectDefinition) {
  oracle::Gen g(73);
  std::mt19937_64 rng(5);
  for (Padding pad : {Padding::kCircular, Padding::kZero}) {
    const Conv c = Conv::random(2, 3, 3, 5, pad, rng);
    const RealImage x = random_image(g, 2, 7, 6);
    const Pipeline p({2, 7, 6}, Rank::k2D, {c});
    EXPECT_LT(max_abs_diff(p.output(x).view(), reference_conv(c, x).view()), 1e-12);
  }
}

TEST(PipelineTest, StageShapes) {
  std::mt19937_64 rng(1);
  const Pipeline p({3, 16, 16}, Rank::k2D,
                   {Conv::random(3, 4, 3, 3, Padding::kCircular, rng), ReLU{},
                    Pooling{FPoolKind{2, true}}, Pooling{MaxPool{2, 2}}, GlobalAvg{},
                    Linear::random(4, 5, rng)});
  const std::vector<Shape> expect = {{4, 16, 16}, {4, 16, 16}, {4, 8, 8},
                                     {4, 4, 4},   {4, 1, 1},   {5, 1, 1}};
  EXPECT_EQ(p.stage_shapes(), expect);
  const Pipeline q({1, 1, 20}, Rank::k1D, {Pooling{FPoolKind{3, false}}});
  EXPECT_EQ(q.output_shape(), (Shape{1, 1, 7}));
}

TEST(PipelineTest, Errors) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(Pipeline({1, 2, 8}, Rank::k1D, {}), DomainError);
  EXPECT_THROW(Pipeline({2, 8, 8}, Rank::k2D, {Conv::random(3, 2, 3, 3, Padding::kZero, rng)}),
               DomainError);
  EXPECT_THROW(Pipeline({1, 1, 10}, Rank::k1D, {Pooling{MaxPool{4, 4}}}), DomainError);
  EXPECT_THROW(Pipeline({2, 1, 1}, Rank::k1D, {Linear::random(3, 1, rng)}), DomainError);
  const Pipeline p({1, 1, 8}, Rank::k1D, {ReLU{}});
  EXPECT_THROW(p.output(RealImage(1, 1, 9)), DomainError);
  EXPECT_THROW(parse_padding("reflect"), DomainError);
  EXPECT_EQ(parse_padding("zero"), Padding::kZero);
}

TEST(EquivarianceTest, CircularConvAndReluCommuteWithShifts) {
  oracle::Gen g(74);
  std::mt19937_64 rng(2);
  const Pipeline p({2, 9, 11}, Rank::k2D,
                   {Conv::random(2, 3, 3, 3, Padding::kCircular, rng), ReLU{}});
  const RealImage x = random_image(g, 2, 9, 11);
  for (int trial = 0; trial < 20; ++trial) {
    const Shift2D s{g.integer(-9, 9), g.integer(-11, 11)};
    EXPECT_LE(max_abs_diff(p.output(circular_shift(x, s)).view(),
                           circular_shift(p.output(x), s).view()),
              1e-9);
  }
}

TEST(EquivarianceTest, ZeroPaddedConvBreaksShiftEquivariance) {
  oracle::Gen g(75);
  std::mt19937_64 rng(3);
  const Pipeline p({1, 1, 16}, Rank::k1D, {Conv::random(1, 1, 1, 3, Padding::kZero, rng)});
  const RealImage x = random_image(g, 1, 1, 16);
  double worst = 0.0;
  for (long s = 1; s < 16; ++s)
    worst = std::max(worst, max_abs_diff(p.output(circular_shift(x, Shift2D{0, s})).view(),
                                         circular_shift(p.output(x), Shift2D{0, s}).view()));
  EXPECT_GT(worst, 1e-3);
}

TEST(EquivarianceTest, FPoolAloneIsExact) {
  oracle::Gen g(76);
  const Pipeline p({1, 1, 24}, Rank::k1D, {Pooling{FPoolKind{4, true}}});
  const Upsampler up = Upsampler::for_pipeline(p, true);
  const RealSignal x(g.normal(24));
  for (long s = -24; s <= 24; ++s) {
    const double e = equivalence_error(p, up, ShiftSpec{s}, x);
    EXPECT_LE(e, 1e-9);
    EXPECT_NEAR(e, equivalence_error(p, up, ShiftSpec{-s}, x), 1e-9);
  }
}

TEST(EquivarianceTest, ConvReluFPoolIsExact) {
  oracle::Gen g(77);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    const Pipeline p1({2, 1, 32}, Rank::k1D,
                      {Conv::random(2, 4, 1, 5, Padding::kCircular, rng), ReLU{},
                       Pooling{FPoolKind{2, true}}});
    const Pipeline p2({2, 12, 12}, Rank::k2D,
                      {Conv::random(2, 3, 3, 3, Padding::kCircular, rng), ReLU{},
                       Pooling{FPoolKind{3, true}}});
    const RealImage x1 = random_image(g, 2, 1, 32), x2 = random_image(g, 2, 12, 12);
    const Upsampler u1 = Upsampler::for_pipeline(p1, true), u2 = Upsampler::for_pipeline(p2, true);
    for (long s = -12; s <= 12; ++s) {
      EXPECT_LE(equivalence_error(p1, u1, Shift2D{0, s}, x1), 1e-9);
      EXPECT_LE(equivalence_error(p2, u2, Shift2D::diagonal(s), x2), 1e-9);
      EXPECT_LE(equivalence_error(p2, u2, Shift2D{s, -2 * s}, x2), 1e-9);
    }
  }
}

TEST(EquivarianceTest, MaxPoolIsVisiblyNotEquivalent) {
  oracle::Gen g(78);
  const Pipeline p({1, 1, 64}, Rank::k1D, {Pooling{MaxPool{4, 4}}});
  const Upsampler up = Upsampler::inverse_fpool({1, 1, 16}, {1, 1, 64}, Rank::k1D, true);
  const RealSignal x(g.normal(64));
  EXPECT_GT(equivalence_error(p, up, ShiftSpec{2}, x), 1e-3 * x.norm());
}

TEST(EquivarianceTest, UpsamplerShapes) {
  const Upsampler chain =
      Upsampler::chain({{1, 4, 4}, {1, 8, 8}, {1, 16, 16}}, Rank::k2D, true);
  const RealImage y = chain.apply(RealImage(2, 4, 4, 1.0));
  EXPECT_EQ(shape_of(y), (Shape{2, 16, 16}));
  for (double v : y.data()) EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_EQ(Upsampler().apply(RealImage(1, 3, 3, 2.0)), RealImage(1, 3, 3, 2.0));
}

TEST(TransitivityTest, VerdictsFollowTheTruthTable) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const TransitivityReport r = transitivity_report(seed, TransitivityConfig{});
    ASSERT_EQ(r.segments.size(), 5u);
    for (const auto& s : r.segments) {
      if (s.expected == "ok") {
        EXPECT_TRUE(s.exact) << s.segment;
        EXPECT_LE(s.max_error, 1e-9 * s.input_norm) << s.segment;
      }
      if (s.expected == "fail") {
        EXPECT_FALSE(s.exact) << s.segment;
        EXPECT_GT(s.max_error, 1e-6 * s.input_norm) << s.segment;
      }
    }
    // The purely linear cascade of two F-poolings is exact as well.
    EXPECT_TRUE(r.segments[3].exact);
    EXPECT_EQ(r.rows.size(), 5u * 33u);
  }
}

TEST(ToyClassifierTest, SoftmaxAndArgmax) {
  const auto p = softmax(std::vector<double>{1.0, 1.0, 1.0, 1.0});
  for (double v : p) EXPECT_DOUBLE_EQ(v, 0.25);
  const auto q = softmax(std::vector<double>{1000.0, 0.0});
  EXPECT_NEAR(q[0], 1.0, 1e-15);
  EXPECT_EQ(argmax(std::vector<double>{0.1, 0.7, 0.7}), 1u);
}

TEST(ToyClassifierTest, FPoolClassifierIsShiftInvariant) {
  std::vector<long> shifts;
  for (long s = 0; s < 32; ++s) shifts.push_back(s);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    ToyClassifierConfig cfg;
    const ConsistencyResult r = toy_classifier_consistency(seed, shifts, cfg);
    EXPECT_EQ(r.consistency, 1.0);
    EXPECT_LE(r.std, 1e-9);
    EXPECT_EQ(r.classes.size(), shifts.size());
  }
}

TEST(ToyClassifierTest, TwinsShareWeights) {
  ToyClassifierConfig a, b;
  b.pooling = MaxPool{2, 2};
  const Pipeline pa = make_toy_classifier(3, a), pb = make_toy_classifier(3, b);
  EXPECT_EQ(std::get<Conv>(pa.layers()[0]).weights, std::get<Conv>(pb.layers()[0]).weights);
  EXPECT_EQ(std::get<Linear>(pa.layers()[4]).weights, std::get<Linear>(pb.layers()[4]).weights);
  EXPECT_EQ(make_toy_input(3, a), make_toy_input(3, b));
}

TEST(ToyClassifierTest, MaxTwinVariesWithShift) {
  std::vector<long> shifts;
  for (long s = 0; s < 32; ++s) shifts.push_back(s);
  ToyClassifierConfig cfg;
  cfg.pooling = MaxPool{2, 2};
  const ConsistencyResult r = toy_classifier_consistency(1, shifts, cfg);
  EXPECT_LE(r.consistency, 1.0);
  EXPECT_GT(r.std, 0.0);
}

}  // namespace
}  // namespace fpool
