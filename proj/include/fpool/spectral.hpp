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


// Exact DFT/IDFT by dense DFT matrices, circular shifts, the shift theorem
// and the low/high frequency split.
//
// Conventions: forward bins are X[k] = sum_j x[j] e^{-2 pi i jk/n}; both the
// forward and the inverse transform are unscaled, so idft(dft(x)) = n x.
// Callers place 1/n and 1/m explicitly.

#ifndef FPOOL_SPECTRAL_HPP_
#define FPOOL_SPECTRAL_HPP_

#include <memory>
#include <span>
#include <vector>

#include "fpool/types.hpp"

namespace fpool {

using ComplexSignal = std::vector<Complex>;

// F_n with entries w^{jk}, w = e^{-2 pi i/n}. Matrices are built once per
// length and shared read-only.
std::shared_ptr<const ComplexMatrix> dft_matrix(std::size_t n);
// F_n^* (entrywise conjugate of F_n).
std::shared_ptr<const ComplexMatrix> idft_matrix(std::size_t n);

ComplexSpectrum dft(const RealSignal& x);
ComplexSpectrum dft(std::span<const Complex> x);
ComplexSignal idft(const ComplexSpectrum& s);

// Same transforms through fft::FftPlan.
ComplexSpectrum dft_fast(const RealSignal& x);
ComplexSignal idft_fast(const ComplexSpectrum& s);

RealSignal circular_shift(const RealSignal& x, ShiftSpec s);
// Shifts every channel plane of an image by (dy, dx).
RealImage circular_shift(const RealImage& x, Shift2D s);

// Signed frequency of bin k: k for 2k <= n, k - n above. The Nyquist bin of
// an even length counts as +n/2.
double signed_frequency(std::size_t k, std::size_t n);

// Multiplies bin k by e^{-2 pi i f(k) delta_t / n}. For integer delta_t this
// is the spectrum of circular_shift by delta_t.
ComplexSpectrum shift_phase(const ComplexSpectrum& s, double delta_t);

// How to treat bin n - mu, which has no conjugate partner in the kept set
// {0..mu-1} U {n-mu..n-1} whenever 2 mu < n.
enum class NyquistBin {
  kDropUnmatched,  // symmetric band |f| <= mu - 1; x_l is real
  kKeepUnmatched,  // literal mask; x_l picks up an imaginary residue
};

// kept[k] for the mask L_mu of length n.
std::vector<bool> kept_band(std::size_t n, std::size_t mu,
                            NyquistBin policy = NyquistBin::kDropUnmatched);

struct LowHighSplit {
  RealSignal low;
  RealSignal high;
  // max |Im| of (1/n) F^* L F x, the part dropped when taking x_l real.
  double imag_residue = 0.0;
};

// x_l = (1/n) F^* L_mu F x (real part) and x_h = x - x_l.
// Requires 1 <= mu <= ceil(n/2).
LowHighSplit low_high_split(const RealSignal& x, std::size_t mu,
                            NyquistBin policy = NyquistBin::kDropUnmatched);

// Split by an explicit kept-bin mask of length n.
LowHighSplit split_by_mask(const RealSignal& x, const std::vector<bool>& kept);

double inner_product(std::span<const double> a, std::span<const double> b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace fpool

#endif  // FPOOL_SPECTRAL_HPP_
