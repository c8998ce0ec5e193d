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

#include "fpool/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fpool/fft.hpp"
#include "fpool/kernels.hpp"

namespace fpool {

namespace {

struct MatrixCache {
  std::mutex mu;
  std::map<std::size_t, std::shared_ptr<const ComplexMatrix>> forward;
  std::map<std::size_t, std::shared_ptr<const ComplexMatrix>> inverse;
};

MatrixCache& cache() {
  static MatrixCache c;
  return c;
}

std::shared_ptr<const ComplexMatrix> build_dft_matrix(std::size_t n, bool conj) {
  auto f = std::make_shared<ComplexMatrix>(n, n);
  // Only n distinct roots; index them by jk mod n.
  std::vector<Complex> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    roots[k] = {std::cos(angle), conj ? -std::sin(angle) : std::sin(angle)};
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) (*f)(r, c) = roots[(r * c) % n];
  return f;
}

std::shared_ptr<const ComplexMatrix> cached(std::size_t n, bool conj) {
  if (n == 0) throw DomainError("dft_matrix: length must be positive");
  auto& c = cache();
  std::lock_guard lock(c.mu);
  auto& slot = conj ? c.inverse[n] : c.forward[n];
  if (!slot) slot = build_dft_matrix(n, conj);
  return slot;
}

}  // namespace

std::shared_ptr<const ComplexMatrix> dft_matrix(std::size_t n) { return cached(n, false); }
std::shared_ptr<const ComplexMatrix> idft_matrix(std::size_t n) { return cached(n, true); }

ComplexSpectrum dft(const RealSignal& x) {
  auto f = dft_matrix(x.size());
  std::vector<Complex> bins(x.size());
  kernels::omp::gemv(*f, x.view(), bins);
  return ComplexSpectrum(std::move(bins));
}

ComplexSpectrum dft(std::span<const Complex> x) {
  if (x.empty()) throw DomainError("dft: empty input");
  auto f = dft_matrix(x.size());
  std::vector<Complex> bins(x.size());
  kernels::omp::gemv(*f, x, bins);
  return ComplexSpectrum(std::move(bins));
}

ComplexSignal idft(const ComplexSpectrum& s) {
  if (s.size() == 0) throw DomainError("idft: empty spectrum");
  auto f = idft_matrix(s.size());
  ComplexSignal out(s.size());
  kernels::omp::gemv(*f, s.view(), out);
  return out;
}

ComplexSpectrum dft_fast(const RealSignal& x) {
  return ComplexSpectrum(fft::forward(x.view()));
}

ComplexSignal idft_fast(const ComplexSpectrum& s) {
  if (s.size() == 0) throw DomainError("idft_fast: empty spectrum");
  return fft::inverse(s.view());
}

RealSignal circular_shift(const RealSignal& x, ShiftSpec s) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j)
    out[wrap_index(static_cast<long>(j) + s.delta_t, n)] = x[j];
  return RealSignal(std::move(out));
}

RealImage circular_shift(const RealImage& x, Shift2D s) {
  RealImage out(x.channels(), x.height(), x.width());
  const std::size_t h = x.height(), w = x.width();
  for (std::size_t c = 0; c < x.channels(); ++c) {
    for (std::size_t y = 0; y < h; ++y) {
      const std::size_t ty = wrap_index(static_cast<long>(y) + s.dy, h);
      for (std::size_t i = 0; i < w; ++i)
        out.at(c, ty, wrap_index(static_cast<long>(i) + s.dx, w)) = x.at(c, y, i);
    }
  }
  return out;
}

double signed_frequency(std::size_t k, std::size_t n) {
  return 2 * k <= n ? static_cast<double>(k)
                    : static_cast<double>(k) - static_cast<double>(n);
}

ComplexSpectrum shift_phase(const ComplexSpectrum& s, double delta_t) {
  const std::size_t n = s.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Reduce f * dt mod n before scaling to keep the phase accurate.
    const double turns = std::fmod(signed_frequency(k, n) * delta_t,
                                   static_cast<double>(n));
    const double angle = -2.0 * std::numbers::pi * turns / static_cast<double>(n);
    out[k] = s[k] * Complex(std::cos(angle), std::sin(angle));
  }
  return ComplexSpectrum(std::move(out));
}

std::vector<bool> kept_band(std::size_t n, std::size_t mu, NyquistBin policy) {
  if (mu < 1 || mu > (n + 1) / 2)
    throw DomainError("kept_band: mu must lie in [1, ceil(n/2)]");
  std::vector<bool> kept(n, false);
  for (std::size_t k = 0; k < mu; ++k) kept[k] = true;
  for (std::size_t k = n - mu; k < n; ++k) kept[k] = true;
  if (policy == NyquistBin::kDropUnmatched && 2 * mu < n) kept[n - mu] = false;
  return kept;
}

LowHighSplit low_high_split(const RealSignal& x, std::size_t mu, NyquistBin policy) {
  return split_by_mask(x, kept_band(x.size(), mu, policy));
}

LowHighSplit split_by_mask(const RealSignal& x, const std::vector<bool>& kept) {
  const std::size_t n = x.size();
  if (kept.size() != n) throw DomainError("split_by_mask: mask length mismatch");
  ComplexSpectrum s = dft(x);
  for (std::size_t k = 0; k < n; ++k)
    if (!kept[k]) s[k] = Complex{};
  const ComplexSignal back = idft(s);
  std::vector<double> low(n), high(n);
  double residue = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    low[j] = back[j].real() * inv_n;
    high[j] = x[j] - low[j];
    residue = std::max(residue, std::abs(back[j].imag() * inv_n));
  }
  return {RealSignal(std::move(low)), RealSignal(std::move(high)), residue};
}

double inner_product(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("inner_product: length mismatch");
  return kernels::dot(a, b);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fpool
