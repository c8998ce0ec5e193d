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


// Fast DFT: iterative radix-2 for power-of-two lengths, Bluestein's chirp-z
// for everything else. Same sign and scaling conventions as the dense matrix
// path (forward e^{-2 pi i jk/n}, both directions unscaled). It is never the
// oracle for anything; tests check it against the matrix path.

#ifndef FPOOL_FFT_HPP_
#define FPOOL_FFT_HPP_

#include <memory>
#include <span>
#include <vector>

#include "fpool/types.hpp"

namespace fpool::fft {

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

// Precomputed twiddles for one transform length. Immutable once built.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const { return n_; }

  // Unscaled transforms, out may not alias in.
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  struct Radix2;
  struct Bluestein;

  void transform(std::span<const Complex> in, std::span<Complex> out,
                 bool inverse) const;

  std::size_t n_;
  std::unique_ptr<Radix2> radix2_;
  std::unique_ptr<Bluestein> bluestein_;
};

std::vector<Complex> forward(std::span<const Complex> in);
std::vector<Complex> forward(std::span<const double> in);
std::vector<Complex> inverse(std::span<const Complex> in);

}  // namespace fpool::fft

#endif  // FPOOL_FFT_HPP_
