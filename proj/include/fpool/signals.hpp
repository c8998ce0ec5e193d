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


// Synthetic inputs and single-column CSV signals.
//
// Signal specs:
//   tone:f      cos(2 pi f t / n)
//   sine:f      sin(2 pi f t / n)
//   impulse     1 at t = 0
//   const:c     constant c
//   rand:seed   standard normal samples
//   row:r       row r of the built-in synthetic image (width n)

#ifndef FPOOL_SIGNALS_HPP_
#define FPOOL_SIGNALS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fpool/types.hpp"

namespace fpool {

RealSignal make_signal(const std::string& spec, std::size_t n);

RealSignal tone(std::size_t n, double frequency, double phase = 0.0);
RealSignal random_signal(std::size_t n, std::uint64_t seed);

// Deterministic grayscale test picture in [0, 255]: smooth blobs, a few hard
// edges and mild texture. Width and height are free; the default is 512.
RealImage synthetic_image(std::size_t height = 512, std::size_t width = 512,
                          std::uint64_t seed = 7);

// One value per line; blank lines, '#' comments and a non-numeric header
// line are skipped.
RealSignal read_csv_signal(const std::string& path);

}  // namespace fpool

#endif  // FPOOL_SIGNALS_HPP_
