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
// Evaluation harness: ground-truth layer masks from sequential scans by
// differencing, integer translation registration, and scoring of cluster
// label maps against the known layers.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "strata/cluster.hpp"
#include "strata/error.hpp"
#include "strata/image.hpp"

namespace strata {

struct GroundTruthLayer {
  std::string name;
  std::vector<std::uint8_t> mask;  // height * width, 0 or 1
};

/// Ordered stack of binary per-layer masks; earlier entries were drawn first.
struct LayerGroundTruth {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<GroundTruthLayer> layers;

  std::size_t pixel_count() const { return width * height; }
};

struct ThresholdMode {
  enum Kind { Otsu, Fixed } kind = Otsu;
  std::uint8_t value = 0;

  static ThresholdMode otsu() { return {}; }
  static ThresholdMode fixed(std::uint8_t t) { return {Fixed, t}; }
};

/// Otsu's threshold of a 256-bin histogram: maximizes between-class variance,
/// ties to the smallest threshold. A pixel counts as foreground when its
/// value is strictly greater than the returned threshold.
inline std::uint8_t otsu_threshold(const std::array<std::size_t, 256>& hist) {
  std::size_t total = 0;
  double weighted_sum = 0.0;
  for (int v = 0; v < 256; ++v) {
    total += hist[v];
    weighted_sum += static_cast<double>(v) * hist[v];
  }
  if (total == 0) return 0;

  double best_var = -1.0;
  int best_t = 0;
  std::size_t count_bg = 0;
  double sum_bg = 0.0;
  for (int t = 0; t < 256; ++t) {
    count_bg += hist[t];
    sum_bg += static_cast<double>(t) * hist[t];
    const std::size_t count_fg = total - count_bg;
    if (count_bg == 0 || count_fg == 0) continue;
    const double mean_bg = sum_bg / count_bg;
    const double mean_fg = (weighted_sum - sum_bg) / count_fg;
    const double var = static_cast<double>(count_bg) * static_cast<double>(count_fg) *
                       (mean_bg - mean_fg) * (mean_bg - mean_fg);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return static_cast<std::uint8_t>(best_t);
}

/// Layer i's mask is |scan[i+1] - scan[i]| > threshold. Scans must be ordered
/// by creation step; with Otsu the threshold is computed per difference image.
inline LayerGroundTruth derive_layers(const std::vector<GrayImage>& scans,
                                      ThresholdMode threshold = ThresholdMode::otsu()) {
  if (scans.size() < 2) throw ValueError("TooFewScans: need at least 2 scans");
  for (std::size_t i = 1; i < scans.size(); ++i)
    if (scans[i].width != scans[0].width || scans[i].height != scans[0].height)
      throw ValueError("DimensionMismatch: scan " + std::to_string(i));

  LayerGroundTruth truth;
  truth.width = scans[0].width;
  truth.height = scans[0].height;
  const std::size_t n = truth.pixel_count();

  for (std::size_t i = 0; i + 1 < scans.size(); ++i) {
    std::vector<std::uint8_t> diff(n);
    for (std::size_t p = 0; p < n; ++p) {
      const int d = static_cast<int>(scans[i + 1].pixels[p]) - scans[i].pixels[p];
      diff[p] = static_cast<std::uint8_t>(d < 0 ? -d : d);
    }
    std::uint8_t t = threshold.value;
    if (threshold.kind == ThresholdMode::Otsu) {
      std::array<std::size_t, 256> hist{};
      for (std::uint8_t v : diff) hist[v]++;
      t = otsu_threshold(hist);
    }
    GroundTruthLayer layer;
    layer.name = "layer_" + std::to_string(i + 1);
    layer.mask.resize(n);
    for (std::size_t p = 0; p < n; ++p) layer.mask[p] = diff[p] > t ? 1 : 0;
    truth.layers.push_back(std::move(layer));
  }
  return truth;
}

inline double mask_iou(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    inter += a[p] && b[p];
    uni += a[p] || b[p];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// Integer shift (dx, dy) in [-max_shift, max_shift]^2 maximizing zero-mean
/// normalized cross-correlation over the overlap, under the convention
/// moving(x, y) = reference(x - dx, y - dy). Ties prefer the smallest
/// |dx| + |dy|, then the lexicographically smaller (dx, dy).
inline std::pair<int, int> register_translation(const GrayImage& reference,
                                                const GrayImage& moving, int max_shift) {
  if (reference.width != moving.width || reference.height != moving.height)
    throw ValueError("DimensionMismatch: reference and moving differ in size");
  const int w = static_cast<int>(reference.width);
  const int h = static_cast<int>(reference.height);
  if (max_shift < 0 || 2 * max_shift >= std::min(w, h))
    throw ValueError("InvalidValue: max_shift must be < min(width, height) / 2");

  double best_ncc = -std::numeric_limits<double>::infinity();
  int best_dx = 0, best_dy = 0, best_cost = std::numeric_limits<int>::max();
  bool any_valid = false;

  for (int dy = -max_shift; dy <= max_shift; ++dy) {
    for (int dx = -max_shift; dx <= max_shift; ++dx) {
      const int x0 = std::max(0, dx), x1 = std::min(w, w + dx);
      const int y0 = std::max(0, dy), y1 = std::min(h, h + dy);
      const std::size_t count = static_cast<std::size_t>(x1 - x0) * (y1 - y0);
      double sum_m = 0.0, sum_r = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
          sum_m += moving.at(x, y);
          sum_r += reference.at(x - dx, y - dy);
        }
      const double mean_m = sum_m / count, mean_r = sum_r / count;
      double cross = 0.0, var_m = 0.0, var_r = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
          const double a = moving.at(x, y) - mean_m;
          const double b = reference.at(x - dx, y - dy) - mean_r;
          cross += a * b;
          var_m += a * a;
          var_r += b * b;
        }
      if (!(var_m > 0.0) || !(var_r > 0.0)) continue;  // cannot normalize
      any_valid = true;
      const double ncc = cross / std::sqrt(var_m * var_r);
      const int cost = std::abs(dx) + std::abs(dy);
      const bool better =
          ncc > best_ncc ||
          (ncc == best_ncc &&
           (cost < best_cost || (cost == best_cost && std::pair(dx, dy) < std::pair(best_dx, best_dy))));
      if (better) {
        best_ncc = ncc;
        best_dx = dx;
        best_dy = dy;
        best_cost = cost;
      }
    }
  }
  if (!any_valid) throw ValueError("DegenerateImage: zero variance in every overlap");
  return {best_dx, best_dy};
}

struct MatchReport {
  std::vector<std::string> assignment;                  // cluster index -> region name
  std::vector<std::pair<std::string, double>> per_layer_iou;  // in layer order
  double pixel_accuracy = 0.0;
  double purity = 0.0;
};

namespace detail {

// Minimum-cost perfect assignment on a square matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns row -> column.
inline std::vector<int> hungarian_min_cost(const std::vector<double>& cost, int n) {
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace detail

/// Scores a label map against layered ground truth.
///
/// The contingency table counts cluster pixels inside each layer's FULL mask,
/// so a cluster that recovers strokes concealed under a later layer is
/// credited with that overlap. The assignment maximizes total overlap over
/// maps clusters -> {layers, background} that are injective when K <= R and
/// surjective when K > R (extra clusters join their best region). Pixel
/// accuracy uses later-layer precedence as each pixel's true region.
inline MatchReport match_clusters(const LabelMap& labels, const LayerGroundTruth& truth) {
  if (labels.width != truth.width || labels.height != truth.height)
    throw ValueError("DimensionMismatch: label map and ground truth differ in size");
  const std::size_t n = labels.size();
  const int k = static_cast<int>(labels.num_clusters);
  const int num_layers = static_cast<int>(truth.layers.size());
  const int r = num_layers + 1;  // + background

  std::vector<double> overlap(static_cast<std::size_t>(k) * r, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const std::uint32_t c = labels.labels[p];
    bool in_any = false;
    for (int l = 0; l < num_layers; ++l)
      if (truth.layers[l].mask[p]) {
        overlap[c * r + l] += 1.0;
        in_any = true;
      }
    if (!in_any) overlap[c * r + num_layers] += 1.0;
  }

  std::vector<int> cluster_region(k, -1);
  if (k <= r) {
    // Pad with zero-overlap dummy clusters; maximize total overlap.
    double max_o = 0.0;
    for (double v : overlap) max_o = std::max(max_o, v);
    std::vector<double> cost(static_cast<std::size_t>(r) * r, 0.0);
    for (int c = 0; c < k; ++c)
      for (int j = 0; j < r; ++j) cost[c * r + j] = max_o - overlap[c * r + j];
    const auto row_to_col = detail::hungarian_min_cost(cost, r);
    for (int c = 0; c < k; ++c) cluster_region[c] = row_to_col[c];
  } else {
    // One core cluster per region; the rest take their argmax region. Dummy
    // columns priced at the row maximum make that the Hungarian optimum.
    std::vector<double> row_max(k, 0.0);
    std::vector<int> row_arg(k, 0);
    for (int c = 0; c < k; ++c) {
      for (int j = 0; j < r; ++j)
        if (overlap[c * r + j] > row_max[c]) {
          row_max[c] = overlap[c * r + j];
          row_arg[c] = j;
        }
    }
    std::vector<double> cost(static_cast<std::size_t>(k) * k, 0.0);
    for (int c = 0; c < k; ++c)
      for (int j = 0; j < k; ++j)
        cost[c * k + j] = j < r ? row_max[c] - overlap[c * r + j] : 0.0;
    const auto row_to_col = detail::hungarian_min_cost(cost, k);
    for (int c = 0; c < k; ++c)
      cluster_region[c] = row_to_col[c] < r ? row_to_col[c] : row_arg[c];
  }

  MatchReport report;
  report.assignment.resize(k);
  for (int c = 0; c < k; ++c)
    report.assignment[c] =
        cluster_region[c] == num_layers ? "background" : truth.layers[cluster_region[c]].name;

  for (int l = 0; l < num_layers; ++l) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const bool pred = cluster_region[labels.labels[p]] == l;
      const bool gt = truth.layers[l].mask[p] != 0;
      inter += pred && gt;
      uni += pred || gt;
    }
    report.per_layer_iou.emplace_back(truth.layers[l].name,
                                      uni == 0 ? 1.0 : static_cast<double>(inter) / uni);
  }

  std::size_t correct = 0;
  for (std::size_t p = 0; p < n; ++p) {
    int truth_region = num_layers;
    for (int l = 0; l < num_layers; ++l)
      if (truth.layers[l].mask[p]) truth_region = l;  // later layer wins
    correct += cluster_region[labels.labels[p]] == truth_region;
  }
  report.pixel_accuracy = static_cast<double>(correct) / static_cast<double>(n);

  double purity_sum = 0.0;
  for (int c = 0; c < k; ++c)
    purity_sum += *std::max_element(overlap.begin() + c * r, overlap.begin() + (c + 1) * r);
  report.purity = purity_sum / static_cast<double>(n);
  return report;
}

}  // namespace strata
