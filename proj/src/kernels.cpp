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

#include "fpool/kernels.hpp"

#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fpool::kernels {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

namespace {

void check_gemv(std::size_t rows, std::size_t cols, std::size_t nx, std::size_t ny) {
  if (nx != cols || ny != rows) throw DomainError("gemv: dimension mismatch");
}

inline Complex row_times_real(std::span<const Complex> row, std::span<const double> x) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    re += row[j].real() * x[j];
    im += row[j].imag() * x[j];
  }
  return {re, im};
}

inline Complex row_times_complex(std::span<const Complex> row,
                                 std::span<const Complex> x) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
    im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
  }
  return {re, im};
}

// c row i = sum_k a(i,k) * b row k
inline void gemm_row(const RealMatrix& a, std::span<const double> b,
                     std::size_t cols_b, std::size_t i, std::span<double> c) {
  double* out = c.data() + i * cols_b;
  for (std::size_t j = 0; j < cols_b; ++j) out[j] = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double aik = a(i, k);
    const double* brow = b.data() + k * cols_b;
    for (std::size_t j = 0; j < cols_b; ++j) out[j] += aik * brow[j];
  }
}

void check_gemm(const RealMatrix& a, std::size_t b_size, std::size_t cols_b,
                std::size_t c_size) {
  if (b_size != a.cols() * cols_b || c_size != a.rows() * cols_b)
    throw DomainError("gemm: dimension mismatch");
}

void check_gemm_nt(std::size_t a_size, std::size_t rows_a, const RealMatrix& b,
                   std::size_t c_size) {
  if (a_size != rows_a * b.cols() || c_size != rows_a * b.rows())
    throw DomainError("gemm_nt: dimension mismatch");
}

inline bool worth_threading(std::size_t work) { return work >= kParallelThreshold; }

}  // namespace

namespace serial {

void gemv(const RealMatrix& a, std::span<const double> x, std::span<double> y) {
  check_gemv(a.rows(), a.cols(), x.size(), y.size());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
}

void gemv(const ComplexMatrix& a, std::span<const double> x, std::span<Complex> y) {
  check_gemv(a.rows(), a.cols(), x.size(), y.size());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = row_times_real(a.row(i), x);
}

void gemv(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
  check_gemv(a.rows(), a.cols(), x.size(), y.size());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = row_times_complex(a.row(i), x);
}

void gemm(const RealMatrix& a, std::span<const double> b, std::size_t cols_b,
          std::span<double> c) {
  check_gemm(a, b.size(), cols_b, c.size());
  for (std::size_t i = 0; i < a.rows(); ++i) gemm_row(a, b, cols_b, i, c);
}

void gemm_nt(std::span<const double> a, std::size_t rows_a, const RealMatrix& b,
             std::span<double> c) {
  check_gemm_nt(a.size(), rows_a, b, c.size());
  const std::size_t k = b.cols();
  for (std::size_t i = 0; i < rows_a; ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      c[i * b.rows() + j] = dot(a.subspan(i * k, k), b.row(j));
}

}  // namespace serial

namespace omp {

void gemv(const RealMatrix& a, std::span<const double> x, std::span<double> y) {
  check_gemv(a.rows(), a.cols(), x.size(), y.size());
  const long rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) if (worth_threading(a.rows() * a.cols()))
  for (long i = 0; i < rows; ++i) y[i] = dot(a.row(i), x);
}

void gemv(const ComplexMatrix& a, std::span<const double> x, std::span<Complex> y) {
  check_gemv(a.rows(), a.cols(), x.size(), y.size());
  const long rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) if (worth_threading(a.rows() * a.cols()))
  for (long i = 0; i < rows; ++i) y[i] = row_times_real(a.row(i), x);
}

void gemv(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
  check_gemv(a.rows(), a.cols(), x.size(), y.size());
  const long rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) if (worth_threading(a.rows() * a.cols()))
  for (long i = 0; i < rows; ++i) y[i] = row_times_complex(a.row(i), x);
}

void gemm(const RealMatrix& a, std::span<const double> b, std::size_t cols_b,
          std::span<double> c) {
  check_gemm(a, b.size(), cols_b, c.size());
  const long rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) \
    if (worth_threading(a.rows() * a.cols() * cols_b))
  for (long i = 0; i < rows; ++i) gemm_row(a, b, cols_b, i, c);
}

void gemm_nt(std::span<const double> a, std::size_t rows_a, const RealMatrix& b,
             std::span<double> c) {
  check_gemm_nt(a.size(), rows_a, b, c.size());
  const std::size_t k = b.cols();
  const long rows = static_cast<long>(rows_a);
#pragma omp parallel for schedule(static) \
    if (worth_threading(rows_a * b.rows() * k))
  for (long i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      c[i * b.rows() + j] = dot(a.subspan(i * k, k), b.row(j));
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace fpool::kernels
