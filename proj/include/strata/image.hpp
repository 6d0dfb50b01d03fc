// Copyright 2026 The Strata Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "strata/error.hpp"

namespace strata {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // height * width

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(w * h, fill) {}

  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  std::size_t size() const { return pixels.size(); }
};

/// Writes binary PGM: "P5\n<w> <h>\n255\n" followed by the raster bytes.
inline void write_pgm(const GrayImage& img, std::ostream& out) {
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("IoError: cannot open " + path.string() + " for writing");
  write_pgm(img, out);
  if (!out) throw FormatError("IoError: short write to " + path.string());
}

namespace detail {
// Reads the next PNM header token, skipping whitespace and '#' comments.
inline std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
        tok.push_back(static_cast<char>(in.get()));
      return tok;
    }
  }
  return tok;
}
}  // namespace detail

/// Reads binary PGM (P5, maxval 255).
inline GrayImage read_pgm(std::istream& in) {
  if (detail::pnm_token(in) != "P5") throw FormatError("InvalidValue: not a P5 PGM stream");
  const std::string ws = detail::pnm_token(in);
  const std::string hs = detail::pnm_token(in);
  const std::string ms = detail::pnm_token(in);
  long w = 0, h = 0, maxval = 0;
  try {
    w = std::stol(ws);
    h = std::stol(hs);
    maxval = std::stol(ms);
  } catch (const std::exception&) {
    throw FormatError("InvalidValue: malformed PGM header");
  }
  if (w <= 0 || h <= 0) throw FormatError("InvalidValue: non-positive PGM dimensions");
  if (maxval != 255) throw FormatError("InvalidValue: PGM maxval must be 255");
  in.get();  // single whitespace after maxval
  GrayImage img(static_cast<std::size_t>(w), static_cast<std::size_t>(h));
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
    throw FormatError("InvalidValue: truncated PGM payload");
  return img;
}

inline GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("IoError: cannot open " + path.string());
  return read_pgm(in);
}

}  // namespace strata
