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

#include "fpool/types.hpp"

#include <cmath>
#include <numeric>

namespace fpool {

namespace {

void check_finite(std::span<const double> v, const char* what) {
  for (double s : v) {
    if (!std::isfinite(s)) throw DomainError(std::string(what) + ": non-finite sample");
  }
}

}  // namespace

RealSignal::RealSignal(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw DomainError("RealSignal: length must be positive");
  check_finite(samples_, "RealSignal");
}

RealSignal::RealSignal(std::initializer_list<double> samples)
    : RealSignal(std::vector<double>(samples)) {}

RealSignal RealSignal::zeros(std::size_t n) {
  return RealSignal(std::vector<double>(n, 0.0));
}

double RealSignal::squared_norm() const {
  return std::inner_product(samples_.begin(), samples_.end(), samples_.begin(), 0.0);
}

double RealSignal::norm() const { return std::sqrt(squared_norm()); }

double RealSignal::mean() const {
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double ComplexSpectrum::squared_norm() const {
  double s = 0.0;
  for (const auto& b : bins_) s += std::norm(b);
  return s;
}

RealImage::RealImage(std::size_t channels, std::size_t height, std::size_t width,
                     double fill)
    : channels_(channels), height_(height), width_(width),
      data_(channels * height * width, fill) {
  if (channels == 0 || height == 0 || width == 0)
    throw DomainError("RealImage: dimensions must be positive");
}

RealImage::RealImage(std::size_t channels, std::size_t height, std::size_t width,
                     std::vector<double> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  if (channels == 0 || height == 0 || width == 0)
    throw DomainError("RealImage: dimensions must be positive");
  if (data_.size() != channels * height * width)
    throw DomainError("RealImage: data size does not match dimensions");
  check_finite(data_, "RealImage");
}

RealImage RealImage::from_signal(const RealSignal& x) {
  return RealImage(1, 1, x.size(), x.samples());
}

double RealImage::norm() const {
  return std::sqrt(std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0));
}

}  // namespace fpool
