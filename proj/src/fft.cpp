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

#include "fpool/fft.hpp"

#include <cmath>
#include <numbers>

namespace fpool::fft {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

// e^{-2 pi i k / n}, reduced mod n first so large k keep full accuracy.
Complex unit_root(std::size_t k, std::size_t n) {
  const double angle =
      -2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

struct FftPlan::Radix2 {
  std::size_t n;
  std::vector<std::size_t> bitrev;
  std::vector<Complex> twiddle;  // forward twiddles w^k, k < n/2

  explicit Radix2(std::size_t size) : n(size), bitrev(size), twiddle(size / 2) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      bitrev[i] = r;
    }
    for (std::size_t k = 0; k < n / 2; ++k) twiddle[k] = unit_root(k, n);
  }

  void run(std::span<const Complex> in, std::span<Complex> out, bool inv) const {
    for (std::size_t i = 0; i < n; ++i) out[bitrev[i]] = in[i];
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t step = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          Complex w = twiddle[j * step];
          if (inv) w = std::conj(w);
          const Complex u = out[start + j];
          const Complex v = out[start + j + half] * w;
          out[start + j] = u + v;
          out[start + j + half] = u - v;
        }
      }
    }
  }
};

// jk = (j^2 + k^2 - (k - j)^2) / 2 turns the DFT into a convolution with a
// chirp, evaluated by a power-of-two FFT of length >= 2n - 1.
struct FftPlan::Bluestein {
  std::size_t n;
  Radix2 inner;
  std::vector<Complex> chirp;          // e^{-pi i j^2 / n}
  std::vector<Complex> kernel_fwd;     // FFT of conj(chirp), wrapped
  std::vector<Complex> kernel_inv;     // FFT of chirp, wrapped

  explicit Bluestein(std::size_t size)
      : n(size), inner(next_power_of_two(2 * size - 1)), chirp(size) {
    // j^2 mod 2n keeps the angle argument small.
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t sq = (j * j) % (2 * n);
      const double angle =
          -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
      chirp[j] = {std::cos(angle), std::sin(angle)};
    }
    kernel_fwd = make_kernel(false);
    kernel_inv = make_kernel(true);
  }

  std::vector<Complex> make_kernel(bool inv) const {
    const std::size_t m = inner.n;
    std::vector<Complex> b(m, Complex{});
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = inv ? chirp[j] : std::conj(chirp[j]);
      b[j] = c;
      if (j != 0) b[m - j] = c;
    }
    std::vector<Complex> out(m);
    inner.run(b, out, false);
    return out;
  }

  void run(std::span<const Complex> in, std::span<Complex> out, bool inv) const {
    const std::size_t m = inner.n;
    std::vector<Complex> a(m, Complex{});
    for (std::size_t j = 0; j < n; ++j)
      a[j] = in[j] * (inv ? std::conj(chirp[j]) : chirp[j]);
    std::vector<Complex> fa(m);
    inner.run(a, fa, false);
    const auto& kernel = inv ? kernel_inv : kernel_fwd;
    for (std::size_t i = 0; i < m; ++i) fa[i] *= kernel[i];
    inner.run(fa, a, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = a[k] * scale * (inv ? std::conj(chirp[k]) : chirp[k]);
  }
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("FftPlan: length must be positive");
  if (is_power_of_two(n))
    radix2_ = std::make_unique<Radix2>(n);
  else
    bluestein_ = std::make_unique<Bluestein>(n);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::transform(std::span<const Complex> in, std::span<Complex> out,
                        bool inv) const {
  if (in.size() != n_ || out.size() != n_)
    throw DomainError("FftPlan: length mismatch");
  if (radix2_)
    radix2_->run(in, out, inv);
  else
    bluestein_->run(in, out, inv);
}

void FftPlan::forward(std::span<const Complex> in, std::span<Complex> out) const {
  transform(in, out, false);
}

void FftPlan::inverse(std::span<const Complex> in, std::span<Complex> out) const {
  transform(in, out, true);
}

std::vector<Complex> forward(std::span<const Complex> in) {
  std::vector<Complex> out(in.size());
  FftPlan(in.size()).forward(in, out);
  return out;
}

std::vector<Complex> forward(std::span<const double> in) {
  std::vector<Complex> c(in.begin(), in.end());
  return forward(std::span<const Complex>(c));
}

std::vector<Complex> inverse(std::span<const Complex> in) {
  std::vector<Complex> out(in.size());
  FftPlan(in.size()).inverse(in, out);
  return out;
}

}  // namespace fpool::fft
