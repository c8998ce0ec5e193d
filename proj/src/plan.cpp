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

#include "fpool/plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <numbers>

#include "fpool/kernels.hpp"

namespace fpool {

namespace {

constexpr double kRoundTripTol = 1e-9;
// m * m * n above which plans are assembled with FFTs instead of direct sums.
constexpr std::size_t kDirectBuildLimit = std::size_t{1} << 28;

std::vector<Complex> roots_of_unity(std::size_t n, double sign) {
  std::vector<Complex> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle =
        sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    roots[k] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

RealMatrix real_part(const ComplexMatrix& a) {
  RealMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).real();
  return r;
}

// max |(P P_bar - I)_{ij}|
double roundtrip_defect(const ComplexMatrix& p, const ComplexMatrix& p_bar) {
  const std::size_t m = p.rows(), n = p.cols();
  double worst = 0.0;
  std::vector<Complex> col(n), out(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < n; ++t) col[t] = p_bar(t, j);
    kernels::omp::gemv(p, std::span<const Complex>(col), out);
    for (std::size_t i = 0; i < m; ++i)
      worst = std::max(worst, std::abs(out[i] - Complex(i == j ? 1.0 : 0.0, 0.0)));
  }
  return worst;
}

// Random probes for plans too large for the full m x m product.
double probe_roundtrip_defect(const ComplexMatrix& p, const ComplexMatrix& p_bar) {
  const std::size_t m = p.rows(), n = p.cols();
  std::vector<Complex> v(m), mid(n), out(m);
  double worst = 0.0;
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
  };
  for (int probe = 0; probe < 8; ++probe) {
    double scale = 0.0;
    for (auto& c : v) {
      c = {next(), next()};
      scale = std::max(scale, std::abs(c));
    }
    kernels::omp::gemv(p_bar, std::span<const Complex>(v), mid);
    kernels::omp::gemv(p, std::span<const Complex>(mid), out);
    for (std::size_t i = 0; i < m; ++i)
      worst = std::max(worst, std::abs(out[i] - v[i]) / scale);
  }
  return worst;
}

using Selection = std::vector<std::optional<std::size_t>>;

// P(r', j)     = 1/n sum_r e^{+2 pi i r' r/m} e^{-2 pi i bin(r) j/n}
// P_bar(t, r') = 1/m sum_r e^{+2 pi i bin(r) t/n} e^{-2 pi i r r'/m}
void build_direct(const Selection& sel, std::size_t n, std::size_t m, ComplexMatrix& p,
                  ComplexMatrix& p_bar) {
  const auto w_n = roots_of_unity(n, -1.0);
  const auto w_n_inv = roots_of_unity(n, 1.0);
  const auto w_m = roots_of_unity(m, -1.0);
  const auto w_m_inv = roots_of_unity(m, 1.0);
  p = ComplexMatrix(m, n);
  p_bar = ComplexMatrix(n, m);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (!sel[r]) continue;
    const std::size_t bin = *sel[r];
    for (std::size_t rp = 0; rp < m; ++rp) {
      const Complex a = w_m_inv[(rp * r) % m] * inv_n;
      const Complex b = w_m[(r * rp) % m] * inv_m;
      for (std::size_t j = 0; j < n; ++j) {
        p(rp, j) += a * w_n[(bin * j) % n];
        p_bar(j, rp) += b * w_n_inv[(bin * j) % n];
      }
    }
  }
}

// Column j of P is (1/n) F_m^* (D F_n e_j); column r' of P_bar is
// (1/m) F_n^* (D^T F_m e_r').
void build_via_fft(const Selection& sel, const fft::FftPlan& fft_n,
                   const fft::FftPlan& fft_m, ComplexMatrix& p, ComplexMatrix& p_bar) {
  const std::size_t n = fft_n.size(), m = fft_m.size();
  const auto w_n = roots_of_unity(n, -1.0);
  const auto w_m = roots_of_unity(m, -1.0);
  p = ComplexMatrix(m, n);
  p_bar = ComplexMatrix(n, m);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<Complex> z(m), col(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < m; ++r)
      z[r] = sel[r] ? w_n[(*sel[r] * j) % n] : Complex{};
    fft_m.inverse(z, col);
    for (std::size_t r = 0; r < m; ++r) p(r, j) = col[r] * inv_n;
  }
  std::vector<Complex> zn(n), coln(n);
  for (std::size_t rp = 0; rp < m; ++rp) {
    std::fill(zn.begin(), zn.end(), Complex{});
    for (std::size_t r = 0; r < m; ++r)
      if (sel[r]) zn[*sel[r]] = w_m[(r * rp) % m];
    fft_n.inverse(zn, coln);
    for (std::size_t t = 0; t < n; ++t) p_bar(t, rp) = coln[t] * inv_m;
  }
}

}  // namespace

FPoolPlan make_truncated_plan(std::size_t n, std::size_t m, std::size_t kept_bins,
                              bool odd_padding) {
  if (m == 0) throw DomainError("make_plan: output length must be positive");
  if (m > n) throw DomainError("make_plan: output length exceeds input length");
  if (kept_bins == 0 || kept_bins > m)
    throw DomainError("make_plan: kept bins must lie in [1, m]");

  FPoolPlan plan;
  plan.n_ = n;
  plan.m_ = m;
  plan.kept_bins_ = kept_bins;
  plan.odd_padding_ = odd_padding;

  // D: low rows take bins 0..low-1, the last `high` rows take the tail.
  const std::size_t low = (kept_bins + 1) / 2;
  const std::size_t high = kept_bins / 2;
  plan.selection_.assign(m, std::nullopt);
  for (std::size_t r = 0; r < low; ++r) plan.selection_[r] = r;
  for (std::size_t i = 0; i < high; ++i) plan.selection_[m - high + i] = n - high + i;

  const bool unmatched = kept_bins % 2 == 0 && kept_bins < n;
  if (unmatched && odd_padding) plan.selection_[m - high] = std::nullopt;
  plan.symmetric_ = !unmatched || odd_padding;

  plan.kept_mask_.assign(n, false);
  for (const auto& bin : plan.selection_)
    if (bin) plan.kept_mask_[*bin] = true;

  plan.fft_n_ = std::make_shared<const fft::FftPlan>(n);
  plan.fft_m_ = std::make_shared<const fft::FftPlan>(m);

  const std::size_t work = m * m * n;
  if (work <= kDirectBuildLimit)
    build_direct(plan.selection_, n, m, plan.p_, plan.p_bar_);
  else
    build_via_fft(plan.selection_, *plan.fft_n_, *plan.fft_m_, plan.p_, plan.p_bar_);
  plan.p_re_ = real_part(plan.p_);
  plan.p_bar_re_ = real_part(plan.p_bar_);

  // Every row of D live means D D^T = I_m and hence P P_bar = I_m.
  const bool full_rank = std::all_of(plan.selection_.begin(), plan.selection_.end(),
                                     [](const auto& b) { return b.has_value(); });
  if (full_rank) {
    const double defect = work <= kDirectBuildLimit
                              ? roundtrip_defect(plan.p_, plan.p_bar_)
                              : probe_roundtrip_defect(plan.p_, plan.p_bar_);
    if (defect > kRoundTripTol)
      throw ContractViolation("make_plan: P * P_bar deviates from identity by " +
                              std::to_string(defect));
  }
  return plan;
}

FPoolPlan make_plan(std::size_t n, std::size_t m, bool odd_padding) {
  return make_truncated_plan(n, m, m, odd_padding);
}

std::shared_ptr<const FPoolPlan> shared_plan(std::size_t n, std::size_t m,
                                             bool odd_padding) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, bool>,
                  std::shared_ptr<const FPoolPlan>>
      plans;
  const auto key = std::make_tuple(n, m, odd_padding);
  {
    std::lock_guard lock(mu);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
  }
  auto plan = std::make_shared<const FPoolPlan>(make_plan(n, m, odd_padding));
  std::lock_guard lock(mu);
  return plans.emplace(key, std::move(plan)).first->second;
}

namespace {

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw DomainError(std::string(what) + ": expected length " + std::to_string(want) +
                      ", got " + std::to_string(got));
}

PoolOutput apply_with_residue(const ComplexMatrix& a, std::span<const double> x) {
  std::vector<Complex> out(a.rows());
  kernels::omp::gemv(a, x, out);
  std::vector<double> re(a.rows());
  double residue = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    re[i] = out[i].real();
    residue = std::max(residue, std::abs(out[i].imag()));
  }
  return {RealSignal(std::move(re)), residue};
}

RealSignal apply_real(const RealMatrix& a, std::span<const double> x) {
  std::vector<double> out(a.rows());
  kernels::omp::gemv(a, x, out);
  return RealSignal(std::move(out));
}

}  // namespace

RealSignal pool1d(const FPoolPlan& plan, const RealSignal& x) {
  check_len(x.size(), plan.n(), "pool1d");
  return apply_real(plan.forward_real(), x.view());
}

RealSignal unpool1d(const FPoolPlan& plan, const RealSignal& y) {
  check_len(y.size(), plan.m(), "unpool1d");
  return apply_real(plan.inverse_real(), y.view());
}

PoolOutput pool1d_with_residue(const FPoolPlan& plan, const RealSignal& x) {
  check_len(x.size(), plan.n(), "pool1d");
  return apply_with_residue(plan.forward(), x.view());
}

PoolOutput unpool1d_with_residue(const FPoolPlan& plan, const RealSignal& y) {
  check_len(y.size(), plan.m(), "unpool1d");
  return apply_with_residue(plan.inverse(), y.view());
}

ComplexSignal pool1d_complex(const FPoolPlan& plan, std::span<const Complex> x) {
  check_len(x.size(), plan.n(), "pool1d_complex");
  ComplexSignal out(plan.m());
  kernels::omp::gemv(plan.forward(), x, out);
  return out;
}

ComplexSignal unpool1d_complex(const FPoolPlan& plan, std::span<const Complex> y) {
  check_len(y.size(), plan.m(), "unpool1d_complex");
  ComplexSignal out(plan.n());
  kernels::omp::gemv(plan.inverse(), y, out);
  return out;
}

RealSignal pool1d_fast(const FPoolPlan& plan, const RealSignal& x) {
  check_len(x.size(), plan.n(), "pool1d_fast");
  const std::size_t n = plan.n(), m = plan.m();
  std::vector<Complex> in(x.view().begin(), x.view().end()), spec(n);
  plan.fft_n().forward(in, spec);
  std::vector<Complex> selected(m), back(m);
  for (std::size_t r = 0; r < m; ++r)
    if (const auto& bin = plan.selection()[r]) selected[r] = spec[*bin];
  plan.fft_m().inverse(selected, back);
  std::vector<double> out(m);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) out[i] = back[i].real() * inv_n;
  return RealSignal(std::move(out));
}

RealSignal unpool1d_fast(const FPoolPlan& plan, const RealSignal& y) {
  check_len(y.size(), plan.m(), "unpool1d_fast");
  const std::size_t n = plan.n(), m = plan.m();
  std::vector<Complex> in(y.view().begin(), y.view().end()), spec(m);
  plan.fft_m().forward(in, spec);
  std::vector<Complex> padded(n), back(n);
  for (std::size_t r = 0; r < m; ++r)
    if (const auto& bin = plan.selection()[r]) padded[*bin] = spec[r];
  plan.fft_n().inverse(padded, back);
  std::vector<double> out(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) out[i] = back[i].real() * inv_m;
  return RealSignal(std::move(out));
}

namespace {

// Applies `a` (out x in) along the height of every channel plane.
RealImage along_height(const RealMatrix& a, const RealImage& x) {
  check_len(x.height(), a.cols(), "pool along height");
  RealImage out(x.channels(), a.rows(), x.width());
  const long channels = static_cast<long>(x.channels());
  if (channels > 1) {
#pragma omp parallel for schedule(static)
    for (long c = 0; c < channels; ++c)
      kernels::serial::gemm(a, x.plane(c), x.width(), out.plane(c));
  } else {
    kernels::omp::gemm(a, x.plane(0), x.width(), out.plane(0));
  }
  return out;
}

// Applies `a` (out x in) along the width: out_plane = plane * a^T.
RealImage along_width(const RealMatrix& a, const RealImage& x) {
  check_len(x.width(), a.cols(), "pool along width");
  RealImage out(x.channels(), x.height(), a.rows());
  const long channels = static_cast<long>(x.channels());
  if (channels > 1) {
#pragma omp parallel for schedule(static)
    for (long c = 0; c < channels; ++c)
      kernels::serial::gemm_nt(x.plane(c), x.height(), a, out.plane(c));
  } else {
    kernels::omp::gemm_nt(x.plane(0), x.height(), a, out.plane(0));
  }
  return out;
}

}  // namespace

RealImage pool_rows(const FPoolPlan& plan, const RealImage& x) {
  return along_height(plan.forward_real(), x);
}
RealImage pool_columns(const FPoolPlan& plan, const RealImage& x) {
  return along_width(plan.forward_real(), x);
}
RealImage unpool_rows(const FPoolPlan& plan, const RealImage& y) {
  return along_height(plan.inverse_real(), y);
}
RealImage unpool_columns(const FPoolPlan& plan, const RealImage& y) {
  return along_width(plan.inverse_real(), y);
}

RealImage pool2d(const FPoolPlan& plan_r, const FPoolPlan& plan_c, const RealImage& x) {
  check_len(x.height(), plan_r.n(), "pool2d height");
  check_len(x.width(), plan_c.n(), "pool2d width");
  return pool_columns(plan_c, pool_rows(plan_r, x));
}

RealImage unpool2d(const FPoolPlan& plan_r, const FPoolPlan& plan_c, const RealImage& y) {
  check_len(y.height(), plan_r.m(), "unpool2d height");
  check_len(y.width(), plan_c.m(), "unpool2d width");
  return unpool_columns(plan_c, unpool_rows(plan_r, y));
}

ReconstructionDecomposition reconstruction_decomposition(const RealSignal& x,
                                                         const RealSignal& y,
                                                         const FPoolPlan& plan) {
  check_len(x.size(), plan.n(), "reconstruction_decomposition");
  const RealSignal rec = unpool1d(plan, y);
  const LowHighSplit split = split_by_mask(x, plan.kept_mask());
  ReconstructionDecomposition d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e_total = rec[i] - x[i];
    const double e_low = rec[i] - split.low[i];
    d.err_total += e_total * e_total;
    d.err_low += e_low * e_low;
  }
  d.energy_high = split.high.squared_norm();
  return d;
}

ReconstructionDecomposition reconstruction_decomposition(const RealSignal& x,
                                                         const FPoolPlan& plan) {
  return reconstruction_decomposition(x, pool1d(plan, x), plan);
}

}  // namespace fpool
