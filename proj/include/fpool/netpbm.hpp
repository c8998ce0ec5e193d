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


// Minimal netpbm codec: P2 (ASCII gray), P5 (binary gray), P6 (binary RGB).
// Samples wider than 8 bits (maxval > 255) use two big-endian bytes.

#ifndef FPOOL_NETPBM_HPP_
#define FPOOL_NETPBM_HPP_

#include <string>
#include <string_view>

#include "fpool/types.hpp"

namespace fpool {

enum class NetpbmFormat { kP2, kP5, kP6 };

struct NetpbmImage {
  NetpbmFormat format = NetpbmFormat::kP5;
  unsigned maxval = 255;
  RealImage pixels;  // 1 channel for P2/P5, 3 for P6; values in [0, maxval]
};

NetpbmImage decode_netpbm(std::string_view bytes, const std::string& path = "<memory>");
NetpbmImage read_netpbm(const std::string& path);

// Values are clamped to [0, maxval] and rounded half-up here, and only here.
std::string encode_netpbm(const NetpbmImage& image);
void write_netpbm(const std::string& path, const NetpbmImage& image);

}  // namespace fpool

#endif  // FPOOL_NETPBM_HPP_
