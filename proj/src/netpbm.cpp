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

#include "fpool/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace fpool {

namespace {

class Reader {
 public:
  Reader(std::string_view bytes, const std::string& path) : bytes_(bytes), path_(path) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long number() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (v > 0xffffffffUL) fail("header value out of range");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number at byte " + std::to_string(start));
    return v;
  }

  // Exactly one whitespace byte separates the header from binary data.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      fail("missing whitespace after header");
    ++pos_;
  }

  unsigned binary_sample(bool wide) {
    const std::size_t need = wide ? 2 : 1;
    if (pos_ + need > bytes_.size()) fail("truncated pixel data");
    unsigned v = static_cast<unsigned char>(bytes_[pos_]);
    if (wide) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_ + 1]);
    pos_ += need;
    return v;
  }

  std::string_view magic() {
    if (bytes_.size() < 2) fail("file too short");
    pos_ = 2;
    return bytes_.substr(0, 2);
  }

  [[noreturn]] void fail(const std::string& what) const { throw IoError(path_, what); }

 private:
  std::string_view bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

NetpbmImage decode_netpbm(std::string_view bytes, const std::string& path) {
  Reader in(bytes, path);
  NetpbmImage img;
  const auto magic = in.magic();
  if (magic == "P2")
    img.format = NetpbmFormat::kP2;
  else if (magic == "P5")
    img.format = NetpbmFormat::kP5;
  else if (magic == "P6")
    img.format = NetpbmFormat::kP6;
  else
    in.fail("unsupported netpbm magic '" + std::string(magic) + "'");

  const auto width = in.number();
  const auto height = in.number();
  const auto maxval = in.number();
  if (width == 0 || height == 0) in.fail("zero image dimension");
  if (maxval == 0 || maxval > 65535) in.fail("maxval must lie in [1, 65535]");
  img.maxval = static_cast<unsigned>(maxval);

  const std::size_t channels = img.format == NetpbmFormat::kP6 ? 3 : 1;
  RealImage pixels(channels, height, width);
  const bool wide = maxval > 255;
  if (img.format == NetpbmFormat::kP2) {
    for (std::size_t y = 0; y < height; ++y)
      for (std::size_t x = 0; x < width; ++x) {
        const auto v = in.number();
        if (v > maxval) in.fail("sample exceeds maxval");
        pixels.at(0, y, x) = static_cast<double>(v);
      }
  } else {
    in.single_whitespace();
    for (std::size_t y = 0; y < height; ++y)
      for (std::size_t x = 0; x < width; ++x)
        for (std::size_t c = 0; c < channels; ++c) {
          const unsigned v = in.binary_sample(wide);
          if (v > maxval) in.fail("sample exceeds maxval");
          pixels.at(c, y, x) = static_cast<double>(v);
        }
  }
  img.pixels = std::move(pixels);
  return img;
}

NetpbmImage read_netpbm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(path, "cannot open for reading");
  const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_netpbm(bytes, path);
}

std::string encode_netpbm(const NetpbmImage& image) {
  const RealImage& px = image.pixels;
  const std::size_t channels = image.format == NetpbmFormat::kP6 ? 3 : 1;
  if (px.channels() != channels)
    throw DomainError("encode_netpbm: channel count does not match the format");
  if (image.maxval == 0 || image.maxval > 65535)
    throw DomainError("encode_netpbm: maxval must lie in [1, 65535]");

  const double top = static_cast<double>(image.maxval);
  auto quantize = [top](double v) {
    return static_cast<unsigned>(std::floor(std::clamp(v, 0.0, top) + 0.5));
  };

  std::ostringstream out;
  const char* magic = image.format == NetpbmFormat::kP2   ? "P2"
                      : image.format == NetpbmFormat::kP5 ? "P5"
                                                          : "P6";
  out << magic << '\n' << px.width() << ' ' << px.height() << '\n' << image.maxval << '\n';
  if (image.format == NetpbmFormat::kP2) {
    for (std::size_t y = 0; y < px.height(); ++y) {
      for (std::size_t x = 0; x < px.width(); ++x)
        out << (x ? " " : "") << quantize(px.at(0, y, x));
      out << '\n';
    }
  } else {
    const bool wide = image.maxval > 255;
    for (std::size_t y = 0; y < px.height(); ++y)
      for (std::size_t x = 0; x < px.width(); ++x)
        for (std::size_t c = 0; c < channels; ++c) {
          const unsigned v = quantize(px.at(c, y, x));
          if (wide) out.put(static_cast<char>(v >> 8));
          out.put(static_cast<char>(v & 0xff));
        }
  }
  return out.str();
}

void write_netpbm(const std::string& path, const NetpbmImage& image) {
  const std::string bytes = encode_netpbm(image);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path, "cannot open for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError(path, "write failed");
}

}  // namespace fpool
