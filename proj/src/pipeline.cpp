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

#include "fpool/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fpool/kernels.hpp"
#include "fpool/metrics.hpp"
#include "fpool/spectral.hpp"

namespace fpool {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> normal_vector(std::size_t count, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(count);
  for (auto& x : v) x = dist(rng);
  return v;
}

RealImage conv_forward(const Conv& conv, const RealImage& x) {
  const std::size_t h = x.height(), w = x.width();
  const long kh = static_cast<long>(conv.kernel_h), kw = static_cast<long>(conv.kernel_w);
  const long oy = kh / 2, ox = kw / 2;
  RealImage out(conv.out_channels, h, w);
  const long outs = static_cast<long>(conv.out_channels);
#pragma omp parallel for schedule(static) if (outs > 1 && h * w >= 256)
  for (long o = 0; o < outs; ++o) {
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t i = 0; i < w; ++i) {
        double acc = conv.bias[o];
        for (std::size_t c = 0; c < conv.in_channels; ++c) {
          const double* wk =
              conv.weights.data() + (o * conv.in_channels + c) * conv.kernel_h * conv.kernel_w;
          for (long a = 0; a < kh; ++a) {
            long sy = static_cast<long>(y) + a - oy;
            if (conv.padding == Padding::kZero && (sy < 0 || sy >= static_cast<long>(h)))
              continue;
            const std::size_t yy = wrap_index(sy, h);
            for (long b = 0; b < kw; ++b) {
              long sx = static_cast<long>(i) + b - ox;
              if (conv.padding == Padding::kZero && (sx < 0 || sx >= static_cast<long>(w)))
                continue;
              acc += wk[a * kw + b] * x.at(c, yy, wrap_index(sx, w));
            }
          }
        }
        out.at(static_cast<std::size_t>(o), y, i) = acc;
      }
    }
  }
  return out;
}

}  // namespace

std::string to_string(Padding p) { return p == Padding::kCircular ? "circular" : "zero"; }

Padding parse_padding(const std::string& s) {
  if (s == "circular") return Padding::kCircular;
  if (s == "zero") return Padding::kZero;
  throw DomainError("padding must be 'circular' or 'zero', got '" + s + "'");
}

Shape shape_of(const RealImage& x) { return {x.channels(), x.height(), x.width()}; }

Conv Conv::random(std::size_t in, std::size_t out, std::size_t kh, std::size_t kw,
                  Padding padding, std::mt19937_64& rng) {
  Conv c{in, out, kh, kw, padding, {}, {}};
  const double scale = std::sqrt(2.0 / static_cast<double>(in * kh * kw));
  c.weights = normal_vector(out * in * kh * kw, scale, rng);
  c.bias = normal_vector(out, 0.1, rng);
  return c;
}

Conv Conv::identity(std::size_t channels, std::size_t kh, std::size_t kw, Padding padding) {
  Conv c{channels, channels, kh, kw, padding, {}, {}};
  c.weights.assign(channels * channels * kh * kw, 0.0);
  c.bias.assign(channels, 0.0);
  for (std::size_t ch = 0; ch < channels; ++ch)
    c.weights[((ch * channels + ch) * kh + kh / 2) * kw + kw / 2] = 1.0;
  return c;
}

Linear Linear::random(std::size_t in, std::size_t out, std::mt19937_64& rng) {
  Linear l{in, out, {}, {}};
  l.weights = normal_vector(in * out, std::sqrt(1.0 / static_cast<double>(in)), rng);
  l.bias = normal_vector(out, 0.1, rng);
  return l;
}

std::string describe(const Layer& layer) {
  return std::visit(
      overloaded{
          [](const Conv& c) {
            return "conv" + std::to_string(c.kernel_h) + "x" + std::to_string(c.kernel_w) +
                   "[" + std::to_string(c.in_channels) + "->" +
                   std::to_string(c.out_channels) + "," + to_string(c.padding) + "]";
          },
          [](const ReLU&) { return std::string("relu"); },
          [](const Pooling& p) { return describe(p.kind); },
          [](const GlobalAvg&) { return std::string("gap"); },
          [](const Linear& l) {
            return "linear[" + std::to_string(l.in_features) + "->" +
                   std::to_string(l.out_features) + "]";
          },
      },
      layer);
}

Pipeline::Pipeline(Shape input, Rank rank, std::vector<Layer> layers)
    : input_(input), rank_(rank), layers_(std::move(layers)) {
  if (input_.channels == 0 || input_.height == 0 || input_.width == 0)
    throw DomainError("Pipeline: input dimensions must be positive");
  if (rank_ == Rank::k1D && input_.height != 1)
    throw DomainError("Pipeline: 1D pipelines take height-1 inputs");
  Shape cur = input_;
  for (const auto& layer : layers_) {
    PoolPlans plans;
    std::visit(
        overloaded{
            [&](const Conv& c) {
              if (c.in_channels != cur.channels)
                throw DomainError("Pipeline: conv expects " + std::to_string(c.in_channels) +
                                  " channels, stage has " + std::to_string(cur.channels));
              if (c.weights.size() != c.in_channels * c.out_channels * c.kernel_h * c.kernel_w ||
                  c.bias.size() != c.out_channels || c.kernel_h == 0 || c.kernel_w == 0)
                throw DomainError("Pipeline: malformed conv weights");
              if (rank_ == Rank::k1D && c.kernel_h != 1)
                throw DomainError("Pipeline: 1D conv kernels have height 1");
              cur.channels = c.out_channels;
            },
            [&](const ReLU&) {},
            [&](const Pooling& p) {
              validate(p.kind);
              if (const auto* f = std::get_if<FPoolKind>(&p.kind)) {
                const std::size_t w = fpool_output_length(cur.width, f->factor);
                plans.cols = shared_plan(cur.width, w, f->odd_padding);
                cur.width = w;
                if (rank_ == Rank::k2D) {
                  const std::size_t h = fpool_output_length(cur.height, f->factor);
                  plans.rows = shared_plan(cur.height, h, f->odd_padding);
                  cur.height = h;
                }
              } else {
                const std::size_t s = stride_of(p.kind);
                if (cur.width % s != 0 || (rank_ == Rank::k2D && cur.height % s != 0))
                  throw DomainError("Pipeline: " + fpool::describe(p.kind) +
                                    " stride does not divide the stage size");
                cur.width /= s;
                if (rank_ == Rank::k2D) cur.height /= s;
              }
            },
            [&](const GlobalAvg&) { cur.height = cur.width = 1; },
            [&](const Linear& l) {
              const std::size_t flat = cur.channels * cur.height * cur.width;
              if (l.in_features != flat || l.weights.size() != l.in_features * l.out_features ||
                  l.bias.size() != l.out_features)
                throw DomainError("Pipeline: linear layer expects " +
                                  std::to_string(l.in_features) + " features, stage has " +
                                  std::to_string(flat));
              cur = {l.out_features, 1, 1};
            },
        },
        layer);
    stages_.push_back(cur);
    plans_.push_back(std::move(plans));
  }
}

std::string Pipeline::describe() const {
  if (layers_.empty()) return "identity";
  std::string s;
  for (const auto& layer : layers_) {
    if (!s.empty()) s += " > ";
    s += fpool::describe(layer);
  }
  return s;
}

RealImage Pipeline::apply(std::size_t index, const RealImage& x) const {
  const Layer& layer = layers_[index];
  return std::visit(
      overloaded{
          [&](const Conv& c) { return conv_forward(c, x); },
          [&](const ReLU&) {
            RealImage out = x;
            for (double& v : out.view()) v = std::max(v, 0.0);
            return out;
          },
          [&](const Pooling& p) {
            if (is_fpool(p.kind)) {
              const auto& plans = plans_[index];
              RealImage out = pool_columns(*plans.cols, x);
              return plans.rows ? pool_rows(*plans.rows, out) : out;
            }
            return pool_baseline(p.kind, x, rank_ == Rank::k2D);
          },
          [&](const GlobalAvg&) {
            RealImage out(x.channels(), 1, 1);
            for (std::size_t c = 0; c < x.channels(); ++c) {
              const auto plane = x.plane(c);
              out.at(c, 0, 0) = std::accumulate(plane.begin(), plane.end(), 0.0) /
                                static_cast<double>(plane.size());
            }
            return out;
          },
          [&](const Linear& l) {
            RealImage out(l.out_features, 1, 1);
            for (std::size_t o = 0; o < l.out_features; ++o)
              out.at(o, 0, 0) =
                  l.bias[o] + kernels::dot(std::span<const double>(l.weights).subspan(
                                              o * l.in_features, l.in_features),
                                          x.view());
            return out;
          },
      },
      layer);
}

std::vector<RealImage> Pipeline::forward(const RealImage& x) const {
  if (shape_of(x) != input_)
    throw DomainError("Pipeline: input shape does not match the pipeline");
  std::vector<RealImage> stages;
  stages.reserve(layers_.size() + 1);
  stages.push_back(x);
  for (std::size_t i = 0; i < layers_.size(); ++i) stages.push_back(apply(i, stages.back()));
  return stages;
}

RealImage Pipeline::output(const RealImage& x) const {
  if (shape_of(x) != input_)
    throw DomainError("Pipeline: input shape does not match the pipeline");
  RealImage cur = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) cur = apply(i, cur);
  return cur;
}

Upsampler Upsampler::inverse_fpool(const Shape& from, const Shape& to, Rank rank,
                                   bool odd_padding) {
  return chain({from, to}, rank, odd_padding);
}

Upsampler Upsampler::chain(const std::vector<Shape>& sizes, Rank rank, bool odd_padding) {
  Upsampler u;
  u.label_.clear();
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const Shape& from = sizes[i];
    const Shape& to = sizes[i + 1];
    if (from.width > to.width || from.height > to.height)
      throw DomainError("Upsampler: target is smaller than source");
    if (rank == Rank::k1D && (from.height != 1 || to.height != 1))
      throw DomainError("Upsampler: 1D stages have height 1");
    Stage st;
    if (from.width != to.width) st.cols = shared_plan(to.width, from.width, odd_padding);
    if (from.height != to.height) st.rows = shared_plan(to.height, from.height, odd_padding);
    u.stages_.push_back(std::move(st));
    if (!u.label_.empty()) u.label_ += ",";
    u.label_ += std::to_string(from.height) + "x" + std::to_string(from.width) + "->" +
                std::to_string(to.height) + "x" + std::to_string(to.width);
  }
  u.label_ = "ifpool[" + u.label_ + (odd_padding ? ",odd" : "") + "]";
  return u;
}

Upsampler Upsampler::for_pipeline(const Pipeline& p, bool odd_padding) {
  Shape out = p.output_shape();
  Shape in = p.input_shape();
  in.channels = out.channels;
  return inverse_fpool(out, in, p.rank(), odd_padding);
}

RealImage Upsampler::apply(const RealImage& y) const {
  RealImage cur = y;
  for (const auto& st : stages_) {
    if (st.cols) cur = unpool_columns(*st.cols, cur);
    if (st.rows) cur = unpool_rows(*st.rows, cur);
  }
  return cur;
}

std::string Upsampler::describe() const { return label_; }

bool default_upsampler_odd_padding(const Pipeline& p) {
  for (auto it = p.layers().rbegin(); it != p.layers().rend(); ++it) {
    if (const auto* pool = std::get_if<Pooling>(&*it)) {
      const auto* f = std::get_if<FPoolKind>(&pool->kind);
      return f != nullptr && f->odd_padding;
    }
  }
  return false;
}

double equivalence_error(const Pipeline& p, const Upsampler& up, Shift2D shift,
                         const RealImage& x) {
  if (p.rank() == Rank::k1D) shift.dy = 0;
  const RealImage lhs = circular_shift(up.apply(p.output(x)), shift);
  const RealImage rhs = up.apply(p.output(circular_shift(x, shift)));
  if (!lhs.same_shape(rhs) || lhs.height() != x.height() || lhs.width() != x.width())
    throw DomainError("equivalence_error: upsampler does not return the input resolution");
  return max_abs_diff(lhs.view(), rhs.view());
}

double equivalence_error(const Pipeline& p, const Upsampler& up, ShiftSpec shift,
                         const RealSignal& x) {
  return equivalence_error(p, up, Shift2D{0, shift.delta_t}, RealImage::from_signal(x));
}

TransitivityReport transitivity_report(std::uint64_t seed, const TransitivityConfig& cfg) {
  if (cfg.factor < 2) throw DomainError("transitivity_report: factor must be >= 2");
  std::mt19937_64 rng(seed);
  const RealImage x(1, 1, cfg.n, normal_vector(cfg.n, 1.0, rng));
  const Pooling pool{FPoolKind{cfg.factor, cfg.odd_padding}};
  const Shape in{1, 1, cfg.n};

  const Pipeline first(in, Rank::k1D, {pool});
  const Shape mid = first.output_shape();
  const Pipeline second(mid, Rank::k1D, {ReLU{}, pool});
  const Pipeline whole(in, Rank::k1D, {pool, ReLU{}, pool});
  const Pipeline linear(in, Rank::k1D, {pool, pool});
  const Shape out = whole.output_shape();

  const RealImage z = first.output(x);

  struct Case {
    std::string name;
    std::string expected;
    const Pipeline* pipeline;
    Upsampler up;
    const RealImage* input;
  };
  const bool odd = cfg.odd_padding;
  std::vector<Case> cases = {
      {"fpool#1 | U=ifpool(" + std::to_string(mid.width) + "->" + std::to_string(in.width) + ")",
       "ok", &first, Upsampler::inverse_fpool(mid, in, Rank::k1D, odd), &x},
      {"relu>fpool#2 | U=ifpool(" + std::to_string(out.width) + "->" +
           std::to_string(mid.width) + ")",
       "ok", &second, Upsampler::inverse_fpool(out, mid, Rank::k1D, odd), &z},
      {"fpool#1>relu>fpool#2 | U=ifpool(" + std::to_string(out.width) + "->" +
           std::to_string(in.width) + ")",
       "fail", &whole, Upsampler::inverse_fpool(out, in, Rank::k1D, odd), &x},
      {"fpool#1>fpool#2 | U=ifpool(" + std::to_string(out.width) + "->" +
           std::to_string(in.width) + ")",
       "measured", &linear, Upsampler::inverse_fpool(out, in, Rank::k1D, odd), &x},
      {"fpool#1>relu>fpool#2 | U=ifpool(" + std::to_string(out.width) + "->" +
           std::to_string(mid.width) + "->" + std::to_string(in.width) + ")",
       "measured", &whole, Upsampler::chain({out, mid, in}, Rank::k1D, odd), &x},
  };

  TransitivityReport report;
  for (const auto& c : cases) {
    TransitivitySegment seg{c.name, c.expected, 0.0, c.input->norm(), 0, true};
    const double tol = cfg.tolerance * seg.input_norm;
    for (long s = cfg.shift_min; s <= cfg.shift_max; ++s) {
      const double err = equivalence_error(*c.pipeline, c.up, Shift2D{0, s}, *c.input);
      report.rows.push_back({c.name, s, err, err <= tol});
      if (err > seg.max_error) {
        seg.max_error = err;
        seg.worst_shift = s;
      }
    }
    seg.exact = seg.max_error <= tol;
    report.segments.push_back(seg);
  }
  return report;
}

Pipeline make_toy_classifier(std::uint64_t seed, const ToyClassifierConfig& cfg) {
  std::mt19937_64 rng(seed);
  Conv conv = Conv::random(cfg.in_channels, cfg.channels, cfg.kernel, cfg.kernel,
                           cfg.padding, rng);
  Linear head = Linear::random(cfg.channels, cfg.classes, rng);
  return Pipeline({cfg.in_channels, cfg.size, cfg.size}, Rank::k2D,
                  {std::move(conv), ReLU{}, Pooling{cfg.pooling}, GlobalAvg{},
                   std::move(head)});
}

RealImage make_toy_input(std::uint64_t seed, const ToyClassifierConfig& cfg) {
  // Separate stream from the weights.
  std::mt19937_64 rng(seed ^ 0x5bd1e995a3c64f21ULL);
  const std::size_t count = cfg.in_channels * cfg.size * cfg.size;
  return RealImage(cfg.in_channels, cfg.size, cfg.size, normal_vector(count, 1.0, rng));
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw DomainError("softmax: empty input");
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) sum += p[i] = std::exp(logits[i] - top);
  for (double& v : p) v /= sum;
  return p;
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw DomainError("argmax: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

ConsistencyResult toy_classifier_consistency(std::uint64_t seed,
                                             const std::vector<long>& shifts,
                                             const ToyClassifierConfig& cfg) {
  if (shifts.size() < 2)
    throw DomainError("toy_classifier_consistency: need at least two shifts");
  const Pipeline net = make_toy_classifier(seed, cfg);
  const RealImage x = make_toy_input(seed, cfg);

  const long count = static_cast<long>(shifts.size());
  std::vector<std::vector<double>> probs(shifts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const RealImage logits = net.output(circular_shift(x, Shift2D::diagonal(shifts[i])));
    probs[i] = softmax(logits.view());
  }

  ConsistencyResult r;
  r.shifts = shifts;
  const auto zero = std::find(shifts.begin(), shifts.end(), 0L);
  const std::size_t ref = zero == shifts.end() ? 0 : static_cast<std::size_t>(zero - shifts.begin());
  r.designated_class = argmax(probs[ref]);
  for (const auto& p : probs) {
    r.classes.push_back(argmax(p));
    r.probabilities.push_back(p[r.designated_class]);
  }
  r.consistency = consistency_from_predictions(r.classes);
  r.std = summarize(r.probabilities).std;
  return r;
}

}  // namespace fpool
