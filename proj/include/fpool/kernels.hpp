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


// Dense linear-algebra kernels behind the matrix path of every transform.
//
// Each kernel exists twice: `serial::` is the plain reference kept for
// testing, `omp::` splits the output rows across OpenMP threads. Both call
// the same row kernels, so every output element is accumulated in the same
// order and the two paths agree bit for bit.

#ifndef FPOOL_KERNELS_HPP_
#define FPOOL_KERNELS_HPP_

#include <span>

#include "fpool/types.hpp"

namespace fpool::kernels {

// Inner product with four interleaved partial sums.
double dot(std::span<const double> a, std::span<const double> b);

namespace serial {

// y = A x
void gemv(const RealMatrix& a, std::span<const double> x, std::span<double> y);
// y = A x for complex A and real x.
void gemv(const ComplexMatrix& a, std::span<const double> x, std::span<Complex> y);
// y = A x, both complex.
void gemv(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y);
// C = A B, with B given row-major as (rows_b x cols_b) in a flat span.
void gemm(const RealMatrix& a, std::span<const double> b, std::size_t cols_b,
          std::span<double> c);
// C = A B^T: c(i, j) = dot(row i of A, row j of B), B flat (rows_b x a.cols()).
void gemm_nt(std::span<const double> a, std::size_t rows_a, const RealMatrix& b,
             std::span<double> c);

}  // namespace serial

namespace omp {

void gemv(const RealMatrix& a, std::span<const double> x, std::span<double> y);
void gemv(const ComplexMatrix& a, std::span<const double> x, std::span<Complex> y);
void gemv(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y);
void gemm(const RealMatrix& a, std::span<const double> b, std::size_t cols_b,
          std::span<double> c);
void gemm_nt(std::span<const double> a, std::size_t rows_a, const RealMatrix& b,
             std::span<double> c);

}  // namespace omp

// Number of threads the OpenMP kernels would use (1 without OpenMP).
int max_threads();
bool openmp_enabled();

// Work (multiply-adds) below which the omp:: kernels stay on one thread.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

}  // namespace fpool::kernels

#endif  // FPOOL_KERNELS_HPP_
