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

#ifndef FPOOL_TYPES_HPP_
#define FPOOL_TYPES_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpool {

using Complex = std::complex<double>;

// Real 1D sample grid. Length is at least one and every sample is finite.
class RealSignal {
 public:
  RealSignal() = default;
  explicit RealSignal(std::vector<double> samples);
  RealSignal(std::initializer_list<double> samples);
  static RealSignal zeros(std::size_t n);

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double& operator[](std::size_t i) { return samples_[i]; }

  std::span<const double> view() const { return samples_; }
  std::span<double> view() { return samples_; }
  const std::vector<double>& samples() const { return samples_; }

  double norm() const;
  double squared_norm() const;
  double mean() const;

  friend bool operator==(const RealSignal&, const RealSignal&) = default;

 private:
  std::vector<double> samples_;
};

// DFT coefficients in standard bin order: bin k is frequency k for
// k < n/2, negative frequencies live at the tail.
class ComplexSpectrum {
 public:
  ComplexSpectrum() = default;
  explicit ComplexSpectrum(std::vector<Complex> bins) : bins_(std::move(bins)) {}

  std::size_t size() const { return bins_.size(); }
  const Complex& operator[](std::size_t k) const { return bins_[k]; }
  Complex& operator[](std::size_t k) { return bins_[k]; }
  std::span<const Complex> view() const { return bins_; }
  std::span<Complex> view() { return bins_; }
  const std::vector<Complex>& bins() const { return bins_; }

  double squared_norm() const;

 private:
  std::vector<Complex> bins_;
};

// Integer circular shift. out[(j + delta_t) mod n] = x[j].
struct ShiftSpec {
  long delta_t = 0;
};

// 2D shift (rows, cols). Diagonal shifts use dy == dx.
struct Shift2D {
  long dy = 0;
  long dx = 0;
  static Shift2D diagonal(long d) { return {d, d}; }
};

// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<const T> view() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

// Channel-major real image: channels x height x width. A 1D feature map
// is an image with height 1.
class RealImage {
 public:
  RealImage() = default;
  RealImage(std::size_t channels, std::size_t height, std::size_t width,
            double fill = 0.0);
  RealImage(std::size_t channels, std::size_t height, std::size_t width,
            std::vector<double> data);
  static RealImage from_signal(const RealSignal& x);

  std::size_t channels() const { return channels_; }
  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t plane_size() const { return height_ * width_; }
  std::size_t size() const { return data_.size(); }

  double& at(std::size_t c, std::size_t y, std::size_t x) {
    return data_[(c * height_ + y) * width_ + x];
  }
  double at(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * height_ + y) * width_ + x];
  }
  std::span<double> plane(std::size_t c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const double> plane(std::size_t c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const double> view() const { return data_; }
  std::span<double> view() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const RealImage& o) const {
    return channels_ == o.channels_ && height_ == o.height_ && width_ == o.width_;
  }
  double norm() const;

  friend bool operator==(const RealImage&, const RealImage&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> data_;
};

// Raised on precondition violations (bad lengths, out-of-range parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised on unreadable or malformed files. Carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Raised when a numerical identity that must hold by construction does not
// (for example P * P_bar != I at plan build).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::size_t wrap_index(long i, std::size_t n) {
  const long ln = static_cast<long>(n);
  long r = i % ln;
  return static_cast<std::size_t>(r < 0 ? r + ln : r);
}

}  // namespace fpool

#endif  // FPOOL_TYPES_HPP_
