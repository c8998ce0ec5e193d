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

#include "fpool/signals.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

namespace fpool {

namespace {

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw DomainError(what + ": cannot parse '" + text + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw DomainError("signal seed: cannot parse '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RealSignal tone(std::size_t n, double frequency, double phase) {
  if (n == 0) throw DomainError("tone: length must be positive");
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t)
    v[t] = std::cos(2.0 * std::numbers::pi * frequency * static_cast<double>(t) /
                        static_cast<double>(n) +
                    phase);
  return RealSignal(std::move(v));
}

RealSignal random_signal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_signal: length must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return RealSignal(std::move(v));
}

RealSignal make_signal(const std::string& spec, std::size_t n) {
  if (n == 0) throw DomainError("signal length must be positive");
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "impulse") {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    return RealSignal(std::move(v));
  }
  if (arg.empty()) throw DomainError("signal spec '" + spec + "' needs an argument");
  if (kind == "tone") return tone(n, parse_double(arg, "tone frequency"));
  if (kind == "sine")
    return tone(n, parse_double(arg, "sine frequency"), -std::numbers::pi / 2.0);
  if (kind == "const") return RealSignal(std::vector<double>(n, parse_double(arg, "constant")));
  if (kind == "rand") return random_signal(n, parse_seed(arg));
  if (kind == "row") {
    const auto row = static_cast<std::size_t>(parse_seed(arg));
    const RealImage img = synthetic_image(std::max<std::size_t>(row + 1, 512), n);
    const auto plane = img.plane(0).subspan(row * n, n);
    return RealSignal(std::vector<double>(plane.begin(), plane.end()));
  }
  throw DomainError("unknown signal spec '" + spec + "'");
}

RealImage synthetic_image(std::size_t height, std::size_t width, std::uint64_t seed) {
  if (height == 0 || width == 0) throw DomainError("synthetic_image: empty size");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Blob {
    double cy, cx, radius, amplitude;
  };
  std::vector<Blob> blobs(12);
  for (auto& b : blobs)
    b = {unit(rng), unit(rng), 0.05 + 0.2 * unit(rng), 60.0 * (unit(rng) - 0.3)};
  const double edge_x = 0.3 + 0.4 * unit(rng);
  const double edge_slope = unit(rng) - 0.5;

  RealImage img(1, height, width);
  std::normal_distribution<double> grain(0.0, 6.0);
  for (std::size_t y = 0; y < height; ++y) {
    const double fy = static_cast<double>(y) / static_cast<double>(height);
    for (std::size_t x = 0; x < width; ++x) {
      const double fx = static_cast<double>(x) / static_cast<double>(width);
      double v = 90.0 + 50.0 * fy;
      for (const auto& b : blobs) {
        const double d2 = (fy - b.cy) * (fy - b.cy) + (fx - b.cx) * (fx - b.cx);
        v += b.amplitude * std::exp(-d2 / (b.radius * b.radius));
      }
      if (fx > edge_x + edge_slope * fy) v += 45.0;
      if (static_cast<std::size_t>(fy * 16) % 5 == 2 && fx < 0.25) v -= 35.0;
      v += 12.0 * std::sin(2.0 * std::numbers::pi * 37.0 * fx) * (fy > 0.6 ? 1.0 : 0.0);
      v += grain(rng);
      img.at(0, y, x) = std::clamp(v, 0.0, 255.0);
    }
  }
  return img;
}

RealSignal read_csv_signal(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError(path, "cannot open for reading");
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    // Keep the first column only.
    if (const auto comma = line.find(','); comma != std::string::npos)
      line = trim(line.substr(0, comma));
    try {
      values.push_back(parse_double(line, "csv value"));
    } catch (const DomainError&) {
      if (values.empty() && lineno == 1) continue;  // header
      throw IoError(path, "line " + std::to_string(lineno) + ": not a number");
    }
  }
  if (values.empty()) throw IoError(path, "no samples");
  return RealSignal(std::move(values));
}

}  // namespace fpool
