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
// Synthetic multispectral phantoms: layered drawings composited from
// parameterized material spectra, with exact ground-truth masks, per-layer
// step scans, and a matching white-reference frame.
//
// The reflectance curves below are design constants, not measured data. They
// encode the qualitative physics that matters for layer separation: red chalk
// has an iron-oxide reflectance edge near 580 nm and is nearly
// indistinguishable from paper in the near infrared, while iron-gall ink
// grows increasingly transparent toward the infrared. Dry media composite by
// opacity (alpha over the underlying reflectance); wet media multiply it by a
// transmittance curve, with dilution d acting as T^d.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "strata/cube.hpp"
#include "strata/error.hpp"
#include "strata/evaluate.hpp"
#include "strata/image.hpp"
#include "strata/parallel.hpp"
#include "strata/rng.hpp"

namespace strata {

/// Reflectance (dry media) or transmittance (wet media) curve over
/// [400, 1000] nm, realized as control points with linear interpolation.
struct MaterialSpectrum {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (wavelength nm, value in [0,1])
  double opacity = 1.0;                           // dry media coverage, in [0,1]
  bool transmittance_mode = false;                // wet media multiply what's underneath

  double value_at(double wavelength) const {
    if (wavelength <= points.front().first) return points.front().second;
    if (wavelength >= points.back().first) return points.back().second;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (wavelength <= points[i].first) {
        const auto [w0, v0] = points[i - 1];
        const auto [w1, v1] = points[i];
        return v0 + (v1 - v0) * (wavelength - w0) / (w1 - w0);
      }
    }
    return points.back().second;
  }

  void validate() const {
    if (points.size() < 2) throw ValueError("InvalidValue: material needs >= 2 control points");
    if (points.front().first > 400.0 || points.back().first < 1000.0)
      throw ValueError("InvalidValue: material '" + name + "' must span [400, 1000] nm");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].second < 0.0 || points[i].second > 1.0)
        throw ValueError("InvalidValue: material '" + name + "' value outside [0, 1]");
      if (i > 0 && !(points[i].first > points[i - 1].first))
        throw ValueError("InvalidValue: material '" + name + "' wavelengths not increasing");
    }
  }
};

inline MaterialSpectrum paper_material() {
  return {"paper", {{400, 0.78}, {450, 0.84}, {500, 0.875}, {600, 0.90}, {1000, 0.90}}, 1.0, false};
}

/// Iron-gall ink in transmittance mode. Dilution d in (0, 1] thins the ink:
/// T_d = T_pure^d, so d -> 0 approaches full transparency.
inline MaterialSpectrum iron_gall_ink(double dilution) {
  if (!(dilution > 0.0) || dilution > 1.0)
    throw ValueError("UnknownDilution: dilution must be in (0, 1]");
  MaterialSpectrum ink{"iron_gall_ink",
                       {{400, 0.06},
                        {500, 0.07},
                        {600, 0.10},
                        {700, 0.25},
                        {800, 0.50},
                        {900, 0.70},
                        {1000, 0.82}},
                       1.0,
                       true};
  for (auto& [w, t] : ink.points) t = std::pow(t, dilution);
  if (dilution != 1.0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", dilution);
    ink.name += std::string(":") + buf;
  }
  return ink;
}

/// The parameterized material set: paper substrate, the dry drawing media of
/// the sample sheets (red/black/white chalk, graphite, charcoal), and pure
/// iron-gall ink.
inline std::vector<MaterialSpectrum> builtin_materials() {
  return {
      paper_material(),
      {"red_chalk",
       {{400, 0.10}, {550, 0.12}, {580, 0.20}, {620, 0.45}, {700, 0.72}, {800, 0.84},
        {900, 0.875}, {1000, 0.885}},
       0.95,
       false},
      {"graphite", {{400, 0.26}, {700, 0.25}, {1000, 0.24}}, 1.0, false},
      {"black_chalk", {{400, 0.09}, {700, 0.11}, {1000, 0.13}}, 0.95, false},
      {"white_chalk", {{400, 0.88}, {550, 0.93}, {1000, 0.92}}, 0.90, false},
      {"charcoal", {{400, 0.07}, {1000, 0.08}}, 1.0, false},
      iron_gall_ink(1.0),
  };
}

/// Resolves "red_chalk" or "iron_gall_ink:0.5" style names.
inline MaterialSpectrum find_material(std::string_view name) {
  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view base = name.substr(0, colon);
    if (base != "iron_gall_ink")
      throw ValueError("UnknownMaterial: only iron_gall_ink takes a dilution, got '" +
                       std::string(name) + "'");
    double d = 0.0;
    try {
      d = std::stod(std::string(name.substr(colon + 1)));
    } catch (const std::exception&) {
      throw ValueError("UnknownDilution: cannot parse '" + std::string(name) + "'");
    }
    return iron_gall_ink(d);
  }
  for (auto& m : builtin_materials())
    if (m.name == name) return m;
  throw ValueError("UnknownMaterial: '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Phantom geometry and spec.
// ---------------------------------------------------------------------------

struct Polyline {
  std::vector<std::pair<double, double>> points;
  double width = 1.0;  // stroke width in pixels
};

struct Polygon {
  std::vector<std::pair<double, double>> points;
};

struct Stroke {
  std::string material;
  std::variant<Polyline, Polygon> shape;
};

struct Illumination {
  enum Kind { Uniform, LinearGradient } kind = Uniform;
  enum Axis { X, Y } axis = X;
  double amplitude = 0.0;  // relative, in [0, 0.5]

  static Illumination uniform() { return {}; }
  static Illumination gradient(Axis axis, double amplitude) {
    return {LinearGradient, axis, amplitude};
  }

  double factor(std::size_t x, std::size_t y, std::size_t w, std::size_t h) const {
    if (kind == Uniform) return 1.0;
    const std::size_t pos = axis == X ? x : y;
    const std::size_t extent = axis == X ? w : h;
    if (extent <= 1) return 1.0;
    const double t = 2.0 * static_cast<double>(pos) / static_cast<double>(extent - 1) - 1.0;
    return 1.0 + amplitude * t;
  }
};

struct PhantomSpec {
  std::size_t width = 256;
  std::size_t height = 256;
  std::size_t bands = 1040;
  double wavelength_lo = 400.0;
  double wavelength_hi = 1000.0;
  std::vector<Stroke> strokes;  // creation order; consecutive same-material
                                // strokes form one drawing layer
  Illumination illumination;
  double noise_sigma = 0.01;  // additive Gaussian, reflectance units
  std::uint64_t seed = 0;
  bool antialias = false;  // 4x4 supersampled edge coverage
};

struct PhantomOutput {
  SpectralCube cube;
  SpectralCube white;
  LayerGroundTruth truth;
  std::vector<GrayImage> step_scans;  // substrate first, then one per layer
};

namespace detail {

inline double point_segment_dist2(double px, double py, double ax, double ay, double bx,
                                  double by) {
  const double vx = bx - ax, vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = px - (ax + t * vx), dy = py - (ay + t * vy);
  return dx * dx + dy * dy;
}

inline bool point_in_polyline(const Polyline& line, double x, double y) {
  const double r2 = 0.25 * line.width * line.width;
  for (std::size_t i = 0; i + 1 < line.points.size(); ++i)
    if (point_segment_dist2(x, y, line.points[i].first, line.points[i].second,
                            line.points[i + 1].first, line.points[i + 1].second) <= r2)
      return true;
  return false;
}

inline bool point_in_polygon(const Polygon& poly, double x, double y) {
  bool inside = false;  // even-odd rule
  const auto& pts = poly.points;
  for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
    const auto [xi, yi] = pts[i];
    const auto [xj, yj] = pts[j];
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
  }
  return inside;
}

inline bool point_in_stroke(const Stroke& stroke, double x, double y) {
  if (const auto* line = std::get_if<Polyline>(&stroke.shape))
    return point_in_polyline(*line, x, y);
  return point_in_polygon(std::get<Polygon>(stroke.shape), x, y);
}

// Coverage of each pixel by the stroke: center test for hard edges, 4x4
// subsamples when antialiasing.
inline std::vector<double> rasterize(const Stroke& stroke, std::size_t w, std::size_t h,
                                     bool antialias) {
  std::vector<double> coverage(w * h, 0.0);
  parallel_for_blocks(h, 16, [&](std::size_t, std::size_t y0, std::size_t y1) {
    for (std::size_t y = y0; y < y1; ++y)
      for (std::size_t x = 0; x < w; ++x) {
        double c = 0.0;
        if (antialias) {
          int hits = 0;
          for (int sy = 0; sy < 4; ++sy)
            for (int sx = 0; sx < 4; ++sx)
              hits += point_in_stroke(stroke, x + (sx + 0.5) / 4.0, y + (sy + 0.5) / 4.0);
          c = hits / 16.0;
        } else {
          c = point_in_stroke(stroke, x + 0.5, y + 0.5) ? 1.0 : 0.0;
        }
        coverage[y * w + x] = c;
      }
  });
  return coverage;
}

inline void check_in_bounds(const std::vector<std::pair<double, double>>& pts, std::size_t w,
                            std::size_t h, const std::string& what) {
  for (const auto& [x, y] : pts)
    if (x < 0.0 || y < 0.0 || x > static_cast<double>(w) || y > static_cast<double>(h))
      throw ValueError("GeometryOutOfBounds: " + what);
}

}  // namespace detail

inline void validate_phantom_spec(const PhantomSpec& spec) {
  if (spec.width < 1 || spec.height < 1 || spec.bands < 1)
    throw ValueError("InvalidValue: phantom dimensions must be >= 1");
  if (!(spec.wavelength_hi > spec.wavelength_lo))
    throw ValueError("InvalidValue: wavelength range");
  if (spec.noise_sigma < 0.0) throw ValueError("InvalidValue: noise_sigma must be >= 0");
  if (spec.illumination.kind == Illumination::LinearGradient &&
      (spec.illumination.amplitude < 0.0 || spec.illumination.amplitude > 0.5))
    throw ValueError("InvalidValue: illumination amplitude must be in [0, 0.5]");
  for (const auto& stroke : spec.strokes) {
    find_material(stroke.material);  // throws UnknownMaterial
    if (const auto* line = std::get_if<Polyline>(&stroke.shape)) {
      if (line->points.size() < 2)
        throw ValueError("InvalidValue: polyline needs >= 2 points");
      if (!(line->width > 0.0)) throw ValueError("InvalidValue: stroke width must be > 0");
      detail::check_in_bounds(line->points, spec.width, spec.height, stroke.material);
    } else {
      const auto& poly = std::get<Polygon>(stroke.shape);
      if (poly.points.size() < 3)
        throw ValueError("InvalidValue: polygon needs >= 3 points");
      detail::check_in_bounds(poly.points, spec.width, spec.height, stroke.material);
    }
  }
}

/// Composites the phantom. Per pixel, strokes apply in creation order (dry:
/// alpha blend scaled by coverage; wet: transmittance lerped to 1 by
/// coverage), then the illumination field multiplies and seeded Gaussian
/// noise is added (clamped at 0). The white frame is the illumination field
/// times flat 0.95 reflectance plus noise. Step scans are clean luminance
/// renderings (no illumination or noise), as if documented on a separate,
/// evenly lit scanner.
inline PhantomOutput generate_phantom(const PhantomSpec& spec) {
  validate_phantom_spec(spec);
  const std::size_t w = spec.width, h = spec.height, bands = spec.bands;
  const std::size_t n = w * h;

  std::vector<double> wavelengths(bands);
  const double step = (spec.wavelength_hi - spec.wavelength_lo) / static_cast<double>(bands);
  for (std::size_t b = 0; b < bands; ++b)
    wavelengths[b] = spec.wavelength_lo + (static_cast<double>(b) + 0.5) * step;

  // Sample material curves at the band wavelengths.
  struct Applied {
    std::vector<double> curve;  // reflectance or transmittance per band
    double opacity = 1.0;
    bool wet = false;
    std::vector<double> coverage;
    std::size_t layer = 0;
  };
  std::vector<Applied> applied(spec.strokes.size());
  std::vector<std::string> layer_names;
  std::vector<std::string> raw_names;
  for (std::size_t s = 0; s < spec.strokes.size(); ++s) {
    const MaterialSpectrum mat = find_material(spec.strokes[s].material);
    mat.validate();
    applied[s].curve.resize(bands);
    for (std::size_t b = 0; b < bands; ++b) applied[s].curve[b] = mat.value_at(wavelengths[b]);
    applied[s].opacity = mat.opacity;
    applied[s].wet = mat.transmittance_mode;
    applied[s].coverage = detail::rasterize(spec.strokes[s], w, h, spec.antialias);

    // Consecutive same-material strokes belong to one drawing layer.
    if (s == 0 || spec.strokes[s].material != spec.strokes[s - 1].material) {
      std::string name = spec.strokes[s].material;
      raw_names.push_back(name);
      const auto repeats = std::count(raw_names.begin(), raw_names.end() - 1, name);
      if (repeats > 0) name += "_" + std::to_string(repeats + 1);
      layer_names.push_back(name);
    }
    applied[s].layer = layer_names.size() - 1;
  }
  const std::size_t num_layers = layer_names.size();

  PhantomOutput out;
  out.truth.width = w;
  out.truth.height = h;
  for (std::size_t l = 0; l < num_layers; ++l) {
    GroundTruthLayer layer;
    layer.name = layer_names[l];
    layer.mask.assign(n, 0);
    out.truth.layers.push_back(std::move(layer));
  }
  for (std::size_t s = 0; s < applied.size(); ++s) {
    auto& mask = out.truth.layers[applied[s].layer].mask;
    for (std::size_t p = 0; p < n; ++p)
      if (applied[s].coverage[p] >= 0.5) mask[p] = 1;
  }

  const std::vector<double> paper = [&] {
    const MaterialSpectrum mat = paper_material();
    std::vector<double> curve(bands);
    for (std::size_t b = 0; b < bands; ++b) curve[b] = mat.value_at(wavelengths[b]);
    return curve;
  }();

  CubeHeader header;
  header.samples = w;
  header.lines = h;
  header.bands = bands;
  header.wavelengths = wavelengths;
  out.cube.header = header;
  out.cube.values.resize(n * bands);
  out.white.header = header;
  out.white.values.resize(n * bands);
  out.step_scans.assign(num_layers + 1, GrayImage(w, h));

  const std::uint64_t cube_seed = sub_seed(spec.seed, 1);
  const std::uint64_t white_seed = sub_seed(spec.seed, 2);
  const double inv_bands = 1.0 / static_cast<double>(bands);

  parallel_for_blocks(n, 2048, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> spectrum(bands);
    for (std::size_t p = begin; p < end; ++p) {
      const std::size_t x = p % w, y = p / w;
      std::copy(paper.begin(), paper.end(), spectrum.begin());

      auto luminance = [&] {
        double sum = 0.0;
        for (double v : spectrum) sum += v;
        return sum * inv_bands;
      };
      auto record_scan = [&](std::size_t index) {
        const double lum = std::clamp(luminance(), 0.0, 1.0);
        out.step_scans[index].pixels[p] = static_cast<std::uint8_t>(std::floor(lum * 255.0 + 0.5));
      };

      record_scan(0);  // substrate only
      std::size_t current_layer = 0;
      for (std::size_t s = 0; s < applied.size(); ++s) {
        while (current_layer < applied[s].layer) record_scan(++current_layer);
        const double c = applied[s].coverage[p];
        if (c > 0.0) {
          if (applied[s].wet) {
            for (std::size_t b = 0; b < bands; ++b)
              spectrum[b] *= 1.0 + c * (applied[s].curve[b] - 1.0);
          } else {
            const double alpha = applied[s].opacity * c;
            for (std::size_t b = 0; b < bands; ++b)
              spectrum[b] = (1.0 - alpha) * spectrum[b] + alpha * applied[s].curve[b];
          }
        }
      }
      while (current_layer < num_layers) record_scan(++current_layer);

      const double illum = spec.illumination.factor(x, y, w, h);
      for (std::size_t b = 0; b < bands; ++b) {
        const std::uint64_t counter = static_cast<std::uint64_t>(p) * bands + b;
        double v = spectrum[b] * illum;
        double wv = 0.95 * illum;
        if (spec.noise_sigma > 0.0) {
          v += spec.noise_sigma * counter_normal(cube_seed, counter);
          wv += spec.noise_sigma * counter_normal(white_seed, counter);
        }
        out.cube.values[b * n + p] = std::max(0.0, v);
        out.white.values[b * n + p] = std::max(0.0, wv);
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Phantom spec text format: `key = value` lines plus repeated `stroke =`
// entries, e.g.
//
//   width = 192
//   bands = 1040
//   illumination = gradient x 0.15
//   stroke = red_chalk line 20,30 170,40 width 3
//   stroke = iron_gall_ink:0.5 polygon 10,10 180,10 180,90 10,90
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::pair<double, double> parse_point(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos)
    throw FormatError("InvalidValue: stroke point '" + token + "' (want x,y)");
  try {
    return {std::stod(token.substr(0, comma)), std::stod(token.substr(comma + 1))};
  } catch (const std::exception&) {
    throw FormatError("InvalidValue: stroke point '" + token + "'");
  }
}

inline Stroke parse_stroke(std::string_view value) {
  const auto tokens = split_ws(value);
  if (tokens.size() < 3) throw FormatError("InvalidValue: stroke needs material, kind, points");
  Stroke stroke;
  stroke.material = tokens[0];
  if (tokens[1] == "line") {
    Polyline line;
    std::size_t i = 2;
    for (; i < tokens.size(); ++i) {
      if (tokens[i] == "width") break;
      line.points.push_back(parse_point(tokens[i]));
    }
    if (i + 1 < tokens.size() && tokens[i] == "width") {
      try {
        line.width = std::stod(tokens[i + 1]);
      } catch (const std::exception&) {
        throw FormatError("InvalidValue: stroke width '" + tokens[i + 1] + "'");
      }
    } else if (i != tokens.size()) {
      throw FormatError("InvalidValue: stroke: trailing tokens after points");
    }
    stroke.shape = std::move(line);
  } else if (tokens[1] == "polygon") {
    Polygon poly;
    for (std::size_t i = 2; i < tokens.size(); ++i) poly.points.push_back(parse_point(tokens[i]));
    stroke.shape = std::move(poly);
  } else {
    throw FormatError("InvalidValue: stroke kind '" + tokens[1] + "' (want line or polygon)");
  }
  return stroke;
}

}  // namespace detail

/// Serializes a spec in the exact format parse_phantom_spec reads, so a
/// generated phantom can be reproduced from its own manifest.
inline void write_phantom_spec(const PhantomSpec& spec, std::ostream& out) {
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "width = " << spec.width << "\n";
  out << "height = " << spec.height << "\n";
  out << "bands = " << spec.bands << "\n";
  out << "wavelength_lo = " << num(spec.wavelength_lo) << "\n";
  out << "wavelength_hi = " << num(spec.wavelength_hi) << "\n";
  out << "seed = " << spec.seed << "\n";
  out << "noise_sigma = " << num(spec.noise_sigma) << "\n";
  out << "antialias = " << (spec.antialias ? "true" : "false") << "\n";
  if (spec.illumination.kind == Illumination::Uniform)
    out << "illumination = uniform\n";
  else
    out << "illumination = gradient " << (spec.illumination.axis == Illumination::X ? "x" : "y")
        << " " << num(spec.illumination.amplitude) << "\n";
  for (const auto& stroke : spec.strokes) {
    out << "stroke = " << stroke.material;
    if (const auto* line = std::get_if<Polyline>(&stroke.shape)) {
      out << " line";
      for (const auto& [x, y] : line->points) out << " " << num(x) << "," << num(y);
      out << " width " << num(line->width);
    } else {
      out << " polygon";
      for (const auto& [x, y] : std::get<Polygon>(stroke.shape).points)
        out << " " << num(x) << "," << num(y);
    }
    out << "\n";
  }
}

inline PhantomSpec parse_phantom_spec(std::string_view text) {
  PhantomSpec spec;
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
    const std::string value{detail::trim(line.substr(eq + 1))};

    try {
      if (key == "width")
        spec.width = static_cast<std::size_t>(std::stoul(value));
      else if (key == "height")
        spec.height = static_cast<std::size_t>(std::stoul(value));
      else if (key == "bands")
        spec.bands = static_cast<std::size_t>(std::stoul(value));
      else if (key == "wavelength_lo")
        spec.wavelength_lo = std::stod(value);
      else if (key == "wavelength_hi")
        spec.wavelength_hi = std::stod(value);
      else if (key == "noise_sigma")
        spec.noise_sigma = std::stod(value);
      else if (key == "seed")
        spec.seed = std::stoull(value);
      else if (key == "antialias")
        spec.antialias = value == "true" || value == "1";
      else if (key == "illumination") {
        const auto tokens = detail::split_ws(value);
        if (tokens.size() == 1 && tokens[0] == "uniform") {
          spec.illumination = Illumination::uniform();
        } else if (tokens.size() == 3 && tokens[0] == "gradient") {
          if (tokens[1] != "x" && tokens[1] != "y")
            throw FormatError("InvalidValue: illumination axis '" + tokens[1] + "'");
          spec.illumination = Illumination::gradient(
              tokens[1] == "x" ? Illumination::X : Illumination::Y, std::stod(tokens[2]));
        } else {
          throw FormatError("InvalidValue: illumination '" + value + "'");
        }
      } else if (key == "stroke") {
        spec.strokes.push_back(detail::parse_stroke(value));
      } else {
        throw FormatError("InvalidValue: unknown phantom key '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw FormatError("InvalidValue: " + key + ": cannot parse '" + value + "'");
    }
  }
  return spec;
}

}  // namespace strata
