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


// Layer pipelines and the shift-equivalence harness.
//
// A pipeline is an ordered list of layers over a RealImage (channels x
// height x width). 1D pipelines use height 1 and only ever touch the width
// axis. Only Pooling layers change the spatial resolution; convolutions are
// always stride 1 with "same" output size.
//
// The harness compares S(U(p(x))) with U(p(S(x))) for a circular shift S
// and an upsampler U back to the input resolution.

#ifndef FPOOL_PIPELINE_HPP_
#define FPOOL_PIPELINE_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "fpool/baselines.hpp"
#include "fpool/plan.hpp"
#include "fpool/types.hpp"

namespace fpool {

enum class Padding { kCircular, kZero };
enum class Rank { k1D, k2D };

std::string to_string(Padding p);
Padding parse_padding(const std::string& s);

struct Shape {
  std::size_t channels = 1;
  std::size_t height = 1;
  std::size_t width = 1;
  friend bool operator==(const Shape&, const Shape&) = default;
};

Shape shape_of(const RealImage& x);

// Stride-1 convolution, kernel centred at (kernel_h / 2, kernel_w / 2).
// weights are laid out [out][in][kh][kw].
struct Conv {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kernel_h = 1;
  std::size_t kernel_w = 1;
  Padding padding = Padding::kCircular;
  std::vector<double> weights;
  std::vector<double> bias;

  static Conv random(std::size_t in, std::size_t out, std::size_t kh, std::size_t kw,
                     Padding padding, std::mt19937_64& rng);
  // Delta kernel: out channel c copies in channel c.
  static Conv identity(std::size_t channels, std::size_t kh, std::size_t kw,
                       Padding padding);
};

struct ReLU {};

struct Pooling {
  PoolingKind kind;
};

// Spatial mean per channel; output is channels x 1 x 1.
struct GlobalAvg {};

// Dense layer over the flattened input; output is out x 1 x 1.
struct Linear {
  std::size_t in_features = 1;
  std::size_t out_features = 1;
  std::vector<double> weights;  // [out][in]
  std::vector<double> bias;

  static Linear random(std::size_t in, std::size_t out, std::mt19937_64& rng);
};

using Layer = std::variant<Conv, ReLU, Pooling, GlobalAvg, Linear>;

std::string describe(const Layer& layer);

class Pipeline {
 public:
  // Validates stage shapes and builds F-pooling plans up front.
  Pipeline(Shape input, Rank rank, std::vector<Layer> layers);

  const Shape& input_shape() const { return input_; }
  // stage_shapes()[i] is the shape after layer i.
  const std::vector<Shape>& stage_shapes() const { return stages_; }
  const Shape& output_shape() const { return stages_.empty() ? input_ : stages_.back(); }
  Rank rank() const { return rank_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::string describe() const;

  // Outputs of every stage: [0] is the input, [i + 1] follows layer i.
  std::vector<RealImage> forward(const RealImage& x) const;
  RealImage output(const RealImage& x) const;

 private:
  RealImage apply(std::size_t index, const RealImage& x) const;

  struct PoolPlans {
    std::shared_ptr<const FPoolPlan> rows;  // null for 1D
    std::shared_ptr<const FPoolPlan> cols;
  };

  Shape input_;
  Rank rank_;
  std::vector<Layer> layers_;
  std::vector<Shape> stages_;
  std::vector<PoolPlans> plans_;
};

// Inverse F-pooling stages applied in order, each mapping (h, w) -> (h', w').
class Upsampler {
 public:
  // Identity.
  Upsampler() = default;
  // One inverse F-pooling from `from` straight to `to` (spatial dims only).
  static Upsampler inverse_fpool(const Shape& from, const Shape& to, Rank rank,
                                 bool odd_padding);
  // The pipeline's output resolution back to its input resolution.
  static Upsampler for_pipeline(const Pipeline& p, bool odd_padding);
  // Chain of inverse F-poolings through the given spatial sizes, first to last.
  static Upsampler chain(const std::vector<Shape>& sizes, Rank rank, bool odd_padding);

  RealImage apply(const RealImage& y) const;
  std::string describe() const;

 private:
  struct Stage {
    std::shared_ptr<const FPoolPlan> rows;  // null when the height is unchanged
    std::shared_ptr<const FPoolPlan> cols;  // null when the width is unchanged
  };
  std::vector<Stage> stages_;
  std::string label_ = "identity";
};

// Odd padding used by the default upsampler: true when the last pooling
// layer is an F-pooling with odd padding.
bool default_upsampler_odd_padding(const Pipeline& p);

// max |S(U(p(x))) - U(p(S(x)))|. For 1D pipelines dy is ignored.
double equivalence_error(const Pipeline& p, const Upsampler& up, Shift2D shift,
                         const RealImage& x);
double equivalence_error(const Pipeline& p, const Upsampler& up, ShiftSpec shift,
                         const RealSignal& x);

struct TransitivityConfig {
  std::size_t n = 32;
  std::size_t factor = 2;
  bool odd_padding = true;
  long shift_min = -16;
  long shift_max = 16;
  double tolerance = 1e-9;  // relative to the segment input norm
};

struct TransitivityRow {
  std::string segment;
  long shift = 0;
  double error = 0.0;
  bool exact = false;
};

struct TransitivitySegment {
  std::string segment;
  std::string expected;  // "ok", "fail" or "measured"
  double max_error = 0.0;
  double input_norm = 0.0;
  long worst_shift = 0;
  bool exact = false;
};

struct TransitivityReport {
  std::vector<TransitivityRow> rows;
  std::vector<TransitivitySegment> segments;
};

// Two stacked F-poolings with a ReLU between them, judged per single-pool
// segment and end to end with a non-coupled inverse F-pooling; plus the
// purely linear cascade and the chained-inverse variant.
TransitivityReport transitivity_report(std::uint64_t seed, const TransitivityConfig& cfg);

struct ToyClassifierConfig {
  PoolingKind pooling = FPoolKind{2, false};
  Padding padding = Padding::kCircular;
  std::size_t in_channels = 3;
  std::size_t channels = 8;
  std::size_t size = 32;
  std::size_t classes = 10;
  std::size_t kernel = 3;
};

// Conv -> ReLU -> Pooling -> GlobalAvg -> Linear, random weights from seed.
// Weights and input depend only on the seed and the sizes, never on the
// pooling kind, so two configs that differ only in pooling are twins.
Pipeline make_toy_classifier(std::uint64_t seed, const ToyClassifierConfig& cfg);
RealImage make_toy_input(std::uint64_t seed, const ToyClassifierConfig& cfg);

std::vector<double> softmax(std::span<const double> logits);
// Lowest index wins ties.
std::size_t argmax(std::span<const double> values);

struct ConsistencyResult {
  double consistency = 0.0;
  double std = 0.0;
  std::size_t designated_class = 0;  // class predicted at shift 0 (or the first shift)
  std::vector<long> shifts;
  std::vector<std::size_t> classes;
  std::vector<double> probabilities;  // of designated_class, per shift
};

// Diagonal shifts of the seeded toy input through the seeded classifier.
ConsistencyResult toy_classifier_consistency(std::uint64_t seed,
                                             const std::vector<long>& shifts,
                                             const ToyClassifierConfig& cfg);

}  // namespace fpool

#endif  // FPOOL_PIPELINE_HPP_
