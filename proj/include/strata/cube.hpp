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
//
// Hyperspectral cube container and its on-disk format: a UTF-8 `key = value`
// header file next to a raw interleaved binary payload (ENVI-style). In
// memory the cube is always canonical band-sequential (one contiguous plane
// per band) regardless of the on-disk interleave.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "strata/error.hpp"
#include "strata/image.hpp"

namespace strata {

enum class DataKind { Float32, Uint16 };
enum class Interleave { BSQ, BIL, BIP };
enum class ByteOrder { Little, Big };

inline std::size_t element_size(DataKind kind) {
  return kind == DataKind::Float32 ? 4 : 2;
}

inline const char* to_string(DataKind k) { return k == DataKind::Float32 ? "float32" : "uint16"; }
inline const char* to_string(Interleave i) {
  switch (i) {
    case Interleave::BSQ: return "bsq";
    case Interleave::BIL: return "bil";
    default: return "bip";
  }
}
inline const char* to_string(ByteOrder b) { return b == ByteOrder::Little ? "little" : "big"; }

struct CubeHeader {
  std::size_t samples = 0;  // image width in pixels
  std::size_t lines = 0;    // image height in pixels
  std::size_t bands = 0;
  DataKind data_kind = DataKind::Float32;
  Interleave interleave = Interleave::BSQ;
  ByteOrder byte_order = ByteOrder::Little;
  std::optional<std::vector<double>> wavelengths;  // nm, strictly increasing

  std::size_t pixel_count() const { return samples * lines; }
  std::size_t value_count() const { return samples * lines * bands; }
  std::size_t payload_size() const { return value_count() * element_size(data_kind); }

  void validate() const {
    if (samples < 1 || lines < 1 || bands < 1)
      throw ValueError("InvalidValue: samples, lines and bands must all be >= 1");
    if (wavelengths) {
      if (wavelengths->size() != bands)
        throw FormatError("InvalidValue: wavelengths: expected " + std::to_string(bands) +
                          " entries, got " + std::to_string(wavelengths->size()));
      for (std::size_t i = 1; i < wavelengths->size(); ++i)
        if (!((*wavelengths)[i] > (*wavelengths)[i - 1]))
          throw FormatError("NonIncreasingWavelengths: at index " + std::to_string(i));
    }
  }
};

/// H x W x B reflectance (or raw count) cube. `values` is canonical
/// band-sequential: value(x, y, b) = values[(b * lines + y) * samples + x].
/// Invariant: every value is finite and >= 0.
struct SpectralCube {
  CubeHeader header;
  std::vector<double> values;

  std::size_t width() const { return header.samples; }
  std::size_t height() const { return header.lines; }
  std::size_t bands() const { return header.bands; }
  std::size_t pixel_count() const { return header.pixel_count(); }

  double& at(std::size_t x, std::size_t y, std::size_t b) {
    return values[(b * header.lines + y) * header.samples + x];
  }
  double at(std::size_t x, std::size_t y, std::size_t b) const {
    return values[(b * header.lines + y) * header.samples + x];
  }
  std::span<double> band_plane(std::size_t b) {
    return {values.data() + b * header.pixel_count(), header.pixel_count()};
  }
  std::span<const double> band_plane(std::size_t b) const {
    return {values.data() + b * header.pixel_count(), header.pixel_count()};
  }
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <class T>
inline T parse_number(std::string_view text, const std::string& key) {
  T value{};
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw FormatError("InvalidValue: " + key + ": cannot parse '" + std::string(t) + "'");
  return value;
}

}  // namespace detail

/// Parses a cube header from `key = value` text. Keys are case-insensitive;
/// `#` starts a comment; unknown keys are reported through `warnings` and
/// ignored. Required keys: samples, lines, bands, data_kind, interleave,
/// byte_order. Optional: wavelengths (comma-separated, one per band).
inline CubeHeader parse_header(std::string_view text,
                               std::vector<std::string>* warnings = nullptr) {
  CubeHeader header;
  bool have[6] = {false, false, false, false, false, false};
  enum { kSamples, kLines, kBands, kDataKind, kInterleave, kByteOrder };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("InvalidValue: expected 'key = value', got '" + std::string(line) + "'");
    const std::string key = detail::lower(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));

    if (key == "samples") {
      header.samples = detail::parse_number<std::size_t>(value, key);
      have[kSamples] = true;
    } else if (key == "lines") {
      header.lines = detail::parse_number<std::size_t>(value, key);
      have[kLines] = true;
    } else if (key == "bands") {
      header.bands = detail::parse_number<std::size_t>(value, key);
      have[kBands] = true;
    } else if (key == "data_kind") {
      const std::string v = detail::lower(value);
      if (v == "float32")
        header.data_kind = DataKind::Float32;
      else if (v == "uint16")
        header.data_kind = DataKind::Uint16;
      else
        throw FormatError("InvalidValue: data_kind: '" + v + "' (want float32 or uint16)");
      have[kDataKind] = true;
    } else if (key == "interleave") {
      const std::string v = detail::lower(value);
      if (v == "bsq")
        header.interleave = Interleave::BSQ;
      else if (v == "bil")
        header.interleave = Interleave::BIL;
      else if (v == "bip")
        header.interleave = Interleave::BIP;
      else
        throw FormatError("InvalidValue: interleave: '" + v + "' (want bsq, bil or bip)");
      have[kInterleave] = true;
    } else if (key == "byte_order") {
      const std::string v = detail::lower(value);
      if (v == "little")
        header.byte_order = ByteOrder::Little;
      else if (v == "big")
        header.byte_order = ByteOrder::Big;
      else
        throw FormatError("InvalidValue: byte_order: '" + v + "' (want little or big)");
      have[kByteOrder] = true;
    } else if (key == "wavelengths") {
      std::vector<double> wl;
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        wl.push_back(detail::parse_number<double>(rest.substr(0, comma), key));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
      header.wavelengths = std::move(wl);
    } else if (warnings) {
      warnings->push_back("unknown key ignored: " + key);
    }
  }

  static constexpr std::array<const char*, 6> names = {"samples",   "lines",      "bands",
                                                       "data_kind", "interleave", "byte_order"};
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!have[i]) throw FormatError(std::string("MissingField: ") + names[i]);
  if (header.samples < 1 || header.lines < 1 || header.bands < 1)
    throw FormatError("InvalidValue: samples, lines and bands must all be >= 1");
  header.validate();
  return header;
}

namespace detail {

inline double decode_element(const std::uint8_t* p, DataKind kind, ByteOrder order) {
  if (kind == DataKind::Float32) {
    std::uint32_t u = order == ByteOrder::Little
                          ? (std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
                             std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24)
                          : (std::uint32_t(p[3]) | std::uint32_t(p[2]) << 8 |
                             std::uint32_t(p[1]) << 16 | std::uint32_t(p[0]) << 24);
    return static_cast<double>(std::bit_cast<float>(u));
  }
  const std::uint16_t u = order == ByteOrder::Little
                              ? static_cast<std::uint16_t>(p[0] | p[1] << 8)
                              : static_cast<std::uint16_t>(p[1] | p[0] << 8);
  return static_cast<double>(u);
}

inline void encode_float(float v, ByteOrder order, std::uint8_t* p) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  if (order == ByteOrder::Little) {
    p[0] = static_cast<std::uint8_t>(u);
    p[1] = static_cast<std::uint8_t>(u >> 8);
    p[2] = static_cast<std::uint8_t>(u >> 16);
    p[3] = static_cast<std::uint8_t>(u >> 24);
  } else {
    p[3] = static_cast<std::uint8_t>(u);
    p[2] = static_cast<std::uint8_t>(u >> 8);
    p[1] = static_cast<std::uint8_t>(u >> 16);
    p[0] = static_cast<std::uint8_t>(u >> 24);
  }
}

// Flat payload index of (x, y, b) for each interleave layout.
inline std::size_t payload_index(const CubeHeader& h, std::size_t x, std::size_t y,
                                 std::size_t b, Interleave il) {
  switch (il) {
    case Interleave::BSQ: return (b * h.lines + y) * h.samples + x;
    case Interleave::BIL: return (y * h.bands + b) * h.samples + x;
    default:              return (y * h.samples + x) * h.bands + b;
  }
}

}  // namespace detail

/// Materializes a cube from its raw payload, canonicalizing to band-sequential
/// order. uint16 samples become reals without scaling.
inline SpectralCube read_cube(const CubeHeader& header, std::span<const std::uint8_t> payload) {
  header.validate();
  const std::size_t expected = header.payload_size();
  if (payload.size() != expected)
    throw FormatError("PayloadSizeMismatch: expected " + std::to_string(expected) +
                      " bytes, got " + std::to_string(payload.size()));

  SpectralCube cube;
  cube.header = header;
  cube.values.resize(header.value_count());
  const std::size_t esz = element_size(header.data_kind);

  // Canonical destination order is (b, y, x); read from the source layout.
  std::size_t dst = 0;
  for (std::size_t b = 0; b < header.bands; ++b)
    for (std::size_t y = 0; y < header.lines; ++y)
      for (std::size_t x = 0; x < header.samples; ++x) {
        const std::size_t src = detail::payload_index(header, x, y, b, header.interleave);
        const double v =
            detail::decode_element(payload.data() + src * esz, header.data_kind, header.byte_order);
        if (!std::isfinite(v) || v < 0.0)
          throw FormatError("InvalidValue: non-finite or negative sample at payload index " +
                            std::to_string(src));
        cube.values[dst++] = v;
      }
  return cube;
}

/// Serializes a cube as (header text, float32 little-endian payload) in the
/// requested interleave. read_cube(parse_header(h), b) is the identity on
/// float32-representable values.
inline std::pair<std::string, std::vector<std::uint8_t>> write_cube(const SpectralCube& cube,
                                                                    Interleave interleave) {
  cube.header.validate();
  if (cube.values.size() != cube.header.value_count())
    throw ValueError("InvalidValue: cube holds " + std::to_string(cube.values.size()) +
                     " values, header promises " + std::to_string(cube.header.value_count()));
  const CubeHeader& h = cube.header;

  std::ostringstream hdr;
  hdr << "samples = " << h.samples << "\n";
  hdr << "lines = " << h.lines << "\n";
  hdr << "bands = " << h.bands << "\n";
  hdr << "data_kind = float32\n";
  hdr << "interleave = " << to_string(interleave) << "\n";
  hdr << "byte_order = little\n";
  if (h.wavelengths) {
    hdr << "wavelengths = ";
    char buf[32];
    for (std::size_t i = 0; i < h.wavelengths->size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", (*h.wavelengths)[i]);
      hdr << (i ? "," : "") << buf;
    }
    hdr << "\n";
  }

  std::vector<std::uint8_t> payload(cube.values.size() * 4);
  std::size_t src = 0;
  for (std::size_t b = 0; b < h.bands; ++b)
    for (std::size_t y = 0; y < h.lines; ++y)
      for (std::size_t x = 0; x < h.samples; ++x) {
        const std::size_t dst = detail::payload_index(h, x, y, b, interleave);
        detail::encode_float(static_cast<float>(cube.values[src++]), ByteOrder::Little,
                             payload.data() + dst * 4);
      }
  return {hdr.str(), std::move(payload)};
}

struct RangeMode {
  enum Kind { MinMax, Fixed } kind = MinMax;
  double lo = 0.0;
  double hi = 1.0;

  static RangeMode minmax() { return {}; }
  static RangeMode fixed(double lo, double hi) { return {Fixed, lo, hi}; }
};

/// Linear map of one band plane into [0, 255], round half up. A constant
/// plane (or an empty fixed range) maps to all zeros.
inline GrayImage render_band(const SpectralCube& cube, std::size_t band,
                             RangeMode range = RangeMode::minmax()) {
  if (band >= cube.bands())
    throw ValueError("BandOutOfRange: band " + std::to_string(band) + " of " +
                     std::to_string(cube.bands()));
  const auto plane = cube.band_plane(band);
  double lo = range.lo, hi = range.hi;
  if (range.kind == RangeMode::MinMax) {
    const auto [mn, mx] = std::minmax_element(plane.begin(), plane.end());
    lo = *mn;
    hi = *mx;
  }
  GrayImage img(cube.width(), cube.height());
  if (!(hi > lo)) return img;  // degenerate range -> all 0
  const double scale = 255.0 / (hi - lo);
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const double v = std::clamp((plane[i] - lo) * scale, 0.0, 255.0);
    img.pixels[i] = static_cast<std::uint8_t>(std::floor(v + 0.5));
  }
  return img;
}

// ---------------------------------------------------------------------------
// File-level helpers. A cube on disk is <base>.hdr + <base>.raw.
// ---------------------------------------------------------------------------

inline std::filesystem::path payload_path_for(const std::filesystem::path& header_path) {
  std::filesystem::path p = header_path;
  p.replace_extension(".raw");
  return p;
}

inline void save_cube(const SpectralCube& cube, const std::filesystem::path& header_path,
                      Interleave interleave = Interleave::BSQ) {
  auto [hdr, payload] = write_cube(cube, interleave);
  {
    std::ofstream out(header_path);
    if (!out) throw FormatError("IoError: cannot open " + header_path.string());
    out << hdr;
  }
  std::ofstream raw(payload_path_for(header_path), std::ios::binary);
  if (!raw) throw FormatError("IoError: cannot open " + payload_path_for(header_path).string());
  raw.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!raw) throw FormatError("IoError: short write to " + payload_path_for(header_path).string());
}

inline SpectralCube load_cube(const std::filesystem::path& header_path,
                              std::vector<std::string>* warnings = nullptr) {
  std::ifstream hdr_in(header_path);
  if (!hdr_in) throw FormatError("IoError: cannot open " + header_path.string());
  std::ostringstream text;
  text << hdr_in.rdbuf();
  const CubeHeader header = parse_header(text.str(), warnings);

  std::ifstream raw(payload_path_for(header_path), std::ios::binary);
  if (!raw) throw FormatError("IoError: cannot open " + payload_path_for(header_path).string());
  std::vector<std::uint8_t> payload((std::istreambuf_iterator<char>(raw)),
                                    std::istreambuf_iterator<char>());
  return read_cube(header, payload);
}

}  // namespace strata
