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


// F-pooling and its coupled inverse.
//
// A plan for (n, m) holds the pooling matrix
//
//   P     = (1/n) F_m^* D F_n        (m x n)
//   P_bar = (1/m) F_n^* D^T F_m      (n x m)
//
// where D selects input bins into the m output bins: the first ceil(m/2)
// rows take bins 0, 1, ... and the last floor(m/2) rows take the tail bins
// n - floor(m/2), ..., n - 1. For even m < n the tail row holding bin
// n - m/2 has no conjugate partner; odd padding zeroes that row, which
// makes both matrices real and restores exact shift-equivalence.
//
// Real signals go through Re(P) and Re(P_bar); the imaginary parts are
// dropped and can be inspected with the *_with_residue variants.

#ifndef FPOOL_PLAN_HPP_
#define FPOOL_PLAN_HPP_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fpool/fft.hpp"
#include "fpool/spectral.hpp"
#include "fpool/types.hpp"

namespace fpool {

class FPoolPlan {
 public:
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  bool odd_padding() const { return odd_padding_; }
  // Number of output bins D fills before odd padding (m for a plain plan).
  std::size_t kept_bins() const { return kept_bins_; }

  const ComplexMatrix& forward() const { return p_; }
  const ComplexMatrix& inverse() const { return p_bar_; }
  const RealMatrix& forward_real() const { return p_re_; }
  const RealMatrix& inverse_real() const { return p_bar_re_; }

  // Input bin selected by output row r of D, or nullopt for a zero row.
  const std::vector<std::optional<std::size_t>>& selection() const { return selection_; }

  // True when the kept band is conjugate-symmetric, so P x and P_bar y are
  // real for real inputs (odd kept count, odd padding, or m == n).
  bool symmetric() const { return symmetric_; }
  // kept_mask()[k] is true when input bin k survives P_bar P.
  const std::vector<bool>& kept_mask() const { return kept_mask_; }

  const fft::FftPlan& fft_n() const { return *fft_n_; }
  const fft::FftPlan& fft_m() const { return *fft_m_; }

 private:
  friend FPoolPlan make_plan(std::size_t, std::size_t, bool);
  friend FPoolPlan make_truncated_plan(std::size_t, std::size_t, std::size_t, bool);
  FPoolPlan() = default;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t kept_bins_ = 0;
  bool odd_padding_ = false;
  bool symmetric_ = false;
  std::vector<bool> kept_mask_;
  std::vector<std::optional<std::size_t>> selection_;
  ComplexMatrix p_;
  ComplexMatrix p_bar_;
  RealMatrix p_re_;
  RealMatrix p_bar_re_;
  std::shared_ptr<const fft::FftPlan> fft_n_;
  std::shared_ptr<const fft::FftPlan> fft_m_;
};

// Requires 1 <= m <= n. When the kept band allows it, P * P_bar = I is
// checked to 1e-9 and a ContractViolation is raised if it fails.
FPoolPlan make_plan(std::size_t n, std::size_t m, bool odd_padding = false);

// Pools to m samples but fills only kept_bins (<= m) of the output bins,
// for the frequency-retention ablation.
FPoolPlan make_truncated_plan(std::size_t n, std::size_t m, std::size_t kept_bins,
                              bool odd_padding);

// Process-wide cache of plain plans; built once, shared read-only.
std::shared_ptr<const FPoolPlan> shared_plan(std::size_t n, std::size_t m, bool odd_padding);

struct PoolOutput {
  RealSignal values;
  double imag_residue = 0.0;  // max |Im| of the discarded part
};

RealSignal pool1d(const FPoolPlan& plan, const RealSignal& x);
RealSignal unpool1d(const FPoolPlan& plan, const RealSignal& y);
PoolOutput pool1d_with_residue(const FPoolPlan& plan, const RealSignal& x);
PoolOutput unpool1d_with_residue(const FPoolPlan& plan, const RealSignal& y);

// Complex P x and P_bar y, used where the imaginary part matters.
ComplexSignal pool1d_complex(const FPoolPlan& plan, std::span<const Complex> x);
ComplexSignal unpool1d_complex(const FPoolPlan& plan, std::span<const Complex> y);

// FFT route: forward FFT, bin selection, inverse FFT. Matches the matrix
// route to rounding.
RealSignal pool1d_fast(const FPoolPlan& plan, const RealSignal& x);
RealSignal unpool1d_fast(const FPoolPlan& plan, const RealSignal& y);

// Y = Re(P_r) X Re(P_c)^T per channel. plan_r pools the height, plan_c the
// width.
RealImage pool2d(const FPoolPlan& plan_r, const FPoolPlan& plan_c, const RealImage& x);
RealImage unpool2d(const FPoolPlan& plan_r, const FPoolPlan& plan_c, const RealImage& y);

// Axis-wise application; the other axis is left alone.
RealImage pool_rows(const FPoolPlan& plan, const RealImage& x);     // height
RealImage pool_columns(const FPoolPlan& plan, const RealImage& x);  // width
RealImage unpool_rows(const FPoolPlan& plan, const RealImage& y);
RealImage unpool_columns(const FPoolPlan& plan, const RealImage& y);

// Squared errors of the reconstruction P_bar P x against x and x_l.
struct ReconstructionDecomposition {
  double err_total = 0.0;    // |P_bar P x - x|^2
  double err_low = 0.0;      // |P_bar P x - x_l|^2
  double energy_high = 0.0;  // |x_h|^2
};

ReconstructionDecomposition reconstruction_decomposition(const RealSignal& x,
                                                         const FPoolPlan& plan);

// Same split for an arbitrary downsampled y (length m) upsampled by P_bar.
ReconstructionDecomposition reconstruction_decomposition(const RealSignal& x,
                                                         const RealSignal& y,
                                                         const FPoolPlan& plan);

}  // namespace fpool

#endif  // FPOOL_PLAN_HPP_
