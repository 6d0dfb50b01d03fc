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
// Brute-force reference implementations used only by tests. These are written
// independently of the library (no Eigen, no strata headers) so they stay a
// genuinely separate route to the same answers.

#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver for dense symmetric matrices.
// ---------------------------------------------------------------------------

struct JacobiResult {
  std::vector<double> eigenvalues;   // descending
  std::vector<double> eigenvectors;  // row i = unit eigenvector of eigenvalues[i]
};

// `a` is n x n row-major symmetric. Plain cyclic sweeps, no pivot ordering.
inline JacobiResult jacobi_symmetric_eig(std::vector<double> a, std::size_t n) {
  assert(a.size() == n * n);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_diag_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 200 && off_diag_norm() > 1e-14 * (1.0 + std::abs(a[0])); ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {  // rotate rows/cols p and q
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // accumulate eigenvectors (columns of v)
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

  JacobiResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t col = order[r];
    out.eigenvalues[r] = a[col * n + col];
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors[r * n + k] = v[k * n + col];
  }
  return out;
}

// Sample covariance (divisor N-1) of N points with D dims, row-major points.
inline std::vector<double> sample_covariance(const std::vector<double>& points, std::size_t n,
                                             std::size_t d) {
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += points[i * d + j];
  for (auto& m : mean) m /= static_cast<double>(n);
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        cov[a * d + b] += (points[i * d + a] - mean[a]) * (points[i * d + b] - mean[b]);
  for (auto& c : cov) c /= static_cast<double>(n - 1);
  return cov;
}

// ---------------------------------------------------------------------------
// Exhaustive k-means: minimum inertia over every partition of the points
// into at most K non-empty groups. Only usable for tiny instances (K^N maps).
// ---------------------------------------------------------------------------

inline double partition_inertia(const std::vector<double>& points, std::size_t n, std::size_t d,
                                const std::vector<int>& labels, int k) {
  std::vector<double> sums(static_cast<std::size_t>(k) * d, 0.0);
  std::vector<int> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    counts[labels[i]]++;
    for (std::size_t j = 0; j < d; ++j) sums[labels[i] * d + j] += points[i * d + j];
  }
  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = sums[labels[i] * d + j] / counts[labels[i]];
      const double diff = points[i * d + j] - c;
      inertia += diff * diff;
    }
  }
  return inertia;
}

inline double best_partition_inertia(const std::vector<double>& points, std::size_t n,
                                     std::size_t d, int k) {
  std::vector<int> labels(n, 0);
  double best = std::numeric_limits<double>::infinity();
  // Odometer over k^n assignments; empty groups are fine to skip implicitly
  // because any assignment using fewer groups is also enumerated.
  for (;;) {
    best = std::min(best, partition_inertia(points, n, d, labels, k));
    std::size_t pos = 0;
    while (pos < n && ++labels[pos] == k) labels[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive cluster -> region assignment for segmentation scoring.
//
// Regions are the layers' full masks in order, then background (pixels inside
// no mask). A valid assignment maps every cluster to one region; it must be
// injective when K <= R and surjective when K > R. The oracle enumerates all
// valid maps and maximizes total overlap.
// ---------------------------------------------------------------------------

struct MatchOracleResult {
  double best_total = 0.0;
  std::vector<int> assignment;        // cluster -> region index (background = R-1)
  std::vector<double> per_layer_iou;  // one per layer
  double pixel_accuracy = 0.0;
  double purity = 0.0;
};

inline MatchOracleResult oracle_match(const std::vector<int>& labels, int num_clusters,
                                      const std::vector<std::vector<bool>>& layer_masks) {
  const std::size_t n = labels.size();
  const int num_layers = static_cast<int>(layer_masks.size());
  const int num_regions = num_layers + 1;  // + background

  // Contingency against full masks; overlapping pixels count for every layer.
  std::vector<std::vector<double>> overlap(num_clusters, std::vector<double>(num_regions, 0.0));
  for (std::size_t p = 0; p < n; ++p) {
    bool in_any = false;
    for (int l = 0; l < num_layers; ++l)
      if (layer_masks[l][p]) {
        overlap[labels[p]][l] += 1.0;
        in_any = true;
      }
    if (!in_any) overlap[labels[p]][num_layers] += 1.0;
  }

  const bool need_surjective = num_clusters > num_regions;
  std::vector<int> map(num_clusters, 0);
  MatchOracleResult best;
  best.best_total = -1.0;

  for (;;) {
    bool valid = true;
    if (need_surjective) {
      std::vector<bool> hit(num_regions, false);
      for (int c = 0; c < num_clusters; ++c) hit[map[c]] = true;
      for (int r = 0; r < num_regions; ++r) valid = valid && hit[r];
    } else {
      for (int a = 0; a < num_clusters && valid; ++a)
        for (int b = a + 1; b < num_clusters; ++b) valid = valid && map[a] != map[b];
    }
    if (valid) {
      double total = 0.0;
      for (int c = 0; c < num_clusters; ++c) total += overlap[c][map[c]];
      if (total > best.best_total) {
        best.best_total = total;
        best.assignment = map;
      }
    }
    int pos = 0;
    while (pos < num_clusters && ++map[pos] == num_regions) map[pos++] = 0;
    if (pos == num_clusters) break;
  }

  // Metrics from the best map, recomputed from first principles.
  best.per_layer_iou.assign(num_layers, 0.0);
  for (int l = 0; l < num_layers; ++l) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const bool pred = best.assignment[labels[p]] == l;
      const bool truth = layer_masks[l][p];
      inter += pred && truth;
      uni += pred || truth;
    }
    best.per_layer_iou[l] = uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
  }
  std::size_t correct = 0;
  for (std::size_t p = 0; p < n; ++p) {
    int truth_region = num_layers;  // background
    for (int l = 0; l < num_layers; ++l)
      if (layer_masks[l][p]) truth_region = l;  // later layer wins
    correct += best.assignment[labels[p]] == truth_region;
  }
  best.pixel_accuracy = static_cast<double>(correct) / n;
  double purity_sum = 0.0;
  for (int c = 0; c < num_clusters; ++c)
    purity_sum += *std::max_element(overlap[c].begin(), overlap[c].end());
  best.purity = purity_sum / static_cast<double>(n);
  return best;
}

}  // namespace oracles
