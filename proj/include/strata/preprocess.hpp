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
// First pipeline stages: white-reference channel normalization, spectral
// trimming, and boxcar band binning. The white reference is reduced to one
// spatial mean per band; each channel is then corrected with a multiplicative
// factor so the sensor response on the white surface becomes homogeneous.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "strata/cube.hpp"
#include "strata/error.hpp"
#include "strata/parallel.hpp"

namespace strata {

struct NormalizationFactors {
  std::vector<double> factors;  // one multiplicative factor per band, > 0
  double target = 0.0;          // the homogeneous response level
};

struct WhiteTarget {
  enum Kind { MeanOfMeans, Fixed } kind = MeanOfMeans;
  double value = 0.0;

  static WhiteTarget mean_of_means() { return {}; }
  static WhiteTarget fixed(double v) { return {Fixed, v}; }
};

namespace detail {
// Spatial mean of one band plane; fixed left-to-right summation order.
inline double plane_mean(std::span<const double> plane) {
  double sum = 0.0;
  for (double v : plane) sum += v;
  return sum / static_cast<double>(plane.size());
}
}  // namespace detail

/// factor[b] = target / spatial_mean(white band b). With mean_of_means the
/// target is the average of the band means, so overall signal scale is kept.
inline NormalizationFactors compute_white_factors(const SpectralCube& white,
                                                  WhiteTarget target = WhiteTarget::mean_of_means()) {
  const std::size_t bands = white.bands();
  std::vector<double> means(bands);
  parallel_for_blocks(bands, 8, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) means[b] = detail::plane_mean(white.band_plane(b));
  });
  for (std::size_t b = 0; b < bands; ++b)
    if (!(means[b] > 0.0))
      throw ValueError("ZeroBandMean: band " + std::to_string(b));

  NormalizationFactors out;
  if (target.kind == WhiteTarget::Fixed) {
    if (!(target.value > 0.0)) throw ValueError("InvalidValue: target must be > 0");
    out.target = target.value;
  } else {
    double sum = 0.0;
    for (double m : means) sum += m;  // fixed order
    out.target = sum / static_cast<double>(bands);
  }
  out.factors.resize(bands);
  for (std::size_t b = 0; b < bands; ++b) out.factors[b] = out.target / means[b];
  return out;
}

/// out[x,y,b] = in[x,y,b] * factor[b]. Takes the cube by value so callers can
/// move in and avoid the copy.
inline SpectralCube apply_normalization(SpectralCube cube, const NormalizationFactors& f) {
  if (f.factors.size() != cube.bands())
    throw ValueError("BandCountMismatch: cube has " + std::to_string(cube.bands()) +
                     " bands, factors have " + std::to_string(f.factors.size()));
  parallel_for_blocks(cube.bands(), 4, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const double factor = f.factors[b];
      for (double& v : cube.band_plane(b)) v *= factor;
    }
  });
  return cube;
}

/// Drops `leading` bands at the front and `trailing` at the back; the
/// wavelength axis is sliced to match.
inline SpectralCube trim_bands(const SpectralCube& cube, std::size_t leading,
                               std::size_t trailing) {
  if (leading + trailing >= cube.bands())
    throw ValueError("TrimExceedsBands: trim " + std::to_string(leading) + "+" +
                     std::to_string(trailing) + " of " + std::to_string(cube.bands()) + " bands");
  const std::size_t out_bands = cube.bands() - leading - trailing;

  SpectralCube out;
  out.header = cube.header;
  out.header.bands = out_bands;
  if (cube.header.wavelengths)
    out.header.wavelengths = std::vector<double>(cube.header.wavelengths->begin() + leading,
                                                 cube.header.wavelengths->begin() + leading +
                                                     out_bands);
  out.values.resize(out.header.value_count());
  const std::size_t plane = cube.pixel_count();
  parallel_for_blocks(out_bands, 4, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b)
      std::copy_n(cube.values.data() + (b + leading) * plane, plane,
                  out.values.data() + b * plane);
  });
  return out;
}

enum class BinRemainder { Strict, DropTail };

/// Boxcar binning: output band j is the arithmetic mean of input bands
/// [j*bin, (j+1)*bin); output wavelength j the mean of the constituents.
/// A band count not divisible by `bin` is an error under Strict; DropTail
/// discards the incomplete final group.
inline SpectralCube bin_bands(const SpectralCube& cube, std::size_t bin,
                              BinRemainder remainder = BinRemainder::Strict) {
  if (bin == 0) throw ValueError("InvalidValue: bin must be >= 1");
  if (cube.bands() % bin != 0 && remainder == BinRemainder::Strict)
    throw ValueError("IndivisibleBands: " + std::to_string(cube.bands()) +
                     " bands not divisible by " + std::to_string(bin));
  const std::size_t out_bands = cube.bands() / bin;
  if (out_bands == 0) throw ValueError("IndivisibleBands: bin wider than the band axis");

  SpectralCube out;
  out.header = cube.header;
  out.header.bands = out_bands;
  if (cube.header.wavelengths) {
    std::vector<double> wl(out_bands);
    for (std::size_t j = 0; j < out_bands; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < bin; ++i) sum += (*cube.header.wavelengths)[j * bin + i];
      wl[j] = sum / static_cast<double>(bin);
    }
    out.header.wavelengths = std::move(wl);
  }

  const std::size_t plane = cube.pixel_count();
  out.values.resize(out.header.value_count());
  const double inv = 1.0 / static_cast<double>(bin);
  parallel_for_blocks(out_bands, 2, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      double* dst = out.values.data() + j * plane;
      const double* first = cube.values.data() + (j * bin) * plane;
      std::copy_n(first, plane, dst);
      for (std::size_t i = 1; i < bin; ++i) {
        const double* src = cube.values.data() + (j * bin + i) * plane;
        for (std::size_t p = 0; p < plane; ++p) dst[p] += src[p];
      }
      for (std::size_t p = 0; p < plane; ++p) dst[p] *= inv;
    }
  });
  return out;
}

}  // namespace strata
