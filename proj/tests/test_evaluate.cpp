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

#include "strata/evaluate.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "strata/rng.hpp"

namespace {

using namespace strata;

TEST(Otsu, SeparatesBimodalHistogram) {
  std::array<std::size_t, 256> hist{};
  hist[10] = 500;
  hist[200] = 100;
  const std::uint8_t t = otsu_threshold(hist);
  EXPECT_GE(t, 10);
  EXPECT_LT(t, 200);

  std::array<std::size_t, 256> flat{};
  flat[0] = 100;  // constant image -> threshold 0, nothing above it
  EXPECT_EQ(otsu_threshold(flat), 0);
}

TEST(DeriveLayers, StrokeDifference) {
  GrayImage blank(8, 8, 255);
  GrayImage stroked = blank;
  for (std::size_t x = 2; x < 6; ++x) stroked.at(x, 3) = 30;

  const auto truth = derive_layers({blank, stroked}, ThresholdMode::fixed(10));
  ASSERT_EQ(truth.layers.size(), 1u);
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 0; x < 8; ++x)
      EXPECT_EQ(truth.layers[0].mask[y * 8 + x], (y == 3 && x >= 2 && x < 6) ? 1 : 0);
}

TEST(DeriveLayers, IdenticalScansGiveEmptyMask) {
  GrayImage scan(6, 6, 200);
  for (auto mode : {ThresholdMode::fixed(10), ThresholdMode::otsu()}) {
    const auto truth = derive_layers({scan, scan}, mode);
    for (std::uint8_t v : truth.layers[0].mask) EXPECT_EQ(v, 0);
  }
}

TEST(DeriveLayers, ErrorsOnBadInput) {
  GrayImage a(4, 4), b(5, 4);
  EXPECT_THROW(derive_layers({a}), ValueError);
  EXPECT_THROW(derive_layers({a, b}), ValueError);
}

TEST(DeriveLayers, AdditiveScansGiveDisjointMasks) {
  // Each scan darkens a fresh disjoint region; derived masks must not overlap.
  GrayImage s0(10, 10, 240), s1 = s0, s2 = s0;
  for (std::size_t x = 0; x < 4; ++x) s1.at(x, 2) = 40;
  s2 = s1;
  for (std::size_t x = 5; x < 9; ++x) s2.at(x, 7) = 60;

  const auto truth = derive_layers({s0, s1, s2}, ThresholdMode::fixed(10));
  ASSERT_EQ(truth.layers.size(), 2u);
  for (std::size_t p = 0; p < 100; ++p)
    EXPECT_FALSE(truth.layers[0].mask[p] && truth.layers[1].mask[p]);
  EXPECT_GT(mask_iou(truth.layers[0].mask, truth.layers[0].mask), 0.99);
}

GrayImage random_texture(std::size_t w, std::size_t h, std::uint64_t seed) {
  GrayImage img(w, h);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = static_cast<std::uint8_t>(splitmix64(seed ^ splitmix64(i)) % 256);
  return img;
}

TEST(RegisterTranslation, IdentityAndKnownShift) {
  const GrayImage big = random_texture(74, 74, 15);
  auto window = [&](int ox, int oy) {
    GrayImage out(64, 64);
    for (std::size_t y = 0; y < 64; ++y)
      for (std::size_t x = 0; x < 64; ++x) out.at(x, y) = big.at(x + ox, y + oy);
    return out;
  };

  const GrayImage ref = window(5, 5);
  EXPECT_EQ(register_translation(ref, ref, 5), std::make_pair(0, 0));

  // moving(x, y) = ref(x - 3, y + 2) -> shift (3, -2).
  const GrayImage mov = window(2, 7);
  EXPECT_EQ(register_translation(ref, mov, 5), std::make_pair(3, -2));
}

TEST(RegisterTranslation, AllShiftsRecoveredExactly) {
  const GrayImage big = random_texture(80, 80, 99);
  GrayImage ref(64, 64);
  for (std::size_t y = 0; y < 64; ++y)
    for (std::size_t x = 0; x < 64; ++x) ref.at(x, y) = big.at(x + 8, y + 8);
  for (int dy = -3; dy <= 3; dy += 3)
    for (int dx = -3; dx <= 3; dx += 2) {
      GrayImage mov(64, 64);
      for (std::size_t y = 0; y < 64; ++y)
        for (std::size_t x = 0; x < 64; ++x)
          mov.at(x, y) = big.at(x + 8 - dx, y + 8 - dy);
      EXPECT_EQ(register_translation(ref, mov, 5), std::make_pair(dx, dy));
    }
}

TEST(RegisterTranslation, DegenerateAndPreconditionErrors) {
  GrayImage flat(32, 32, 128);
  EXPECT_THROW(register_translation(flat, flat, 4), ValueError);
  const GrayImage tex = random_texture(32, 32, 1);
  EXPECT_THROW(register_translation(tex, tex, 16), ValueError);
  GrayImage other(16, 32, 0);
  EXPECT_THROW(register_translation(tex, other, 4), ValueError);
}

LayerGroundTruth two_region_truth() {
  // 4x4 grid: layer A = left two columns, layer B (later) = top row.
  LayerGroundTruth truth;
  truth.width = 4;
  truth.height = 4;
  GroundTruthLayer a{"chalk", std::vector<std::uint8_t>(16, 0)};
  GroundTruthLayer b{"ink", std::vector<std::uint8_t>(16, 0)};
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 2; ++x) a.mask[y * 4 + x] = 1;
  for (std::size_t x = 0; x < 4; ++x) b.mask[x] = 1;
  truth.layers = {a, b};
  return truth;
}

TEST(MatchClusters, PerfectLabels) {
  // Labels exactly matching the precedence regions of a disjoint 2-layer truth.
  LayerGroundTruth truth;
  truth.width = 4;
  truth.height = 2;
  truth.layers = {{"a", {1, 1, 0, 0, 1, 1, 0, 0}}, {"b", {0, 0, 1, 0, 0, 0, 1, 0}}};
  LabelMap labels{4, 2, 3, {0, 0, 1, 2, 0, 0, 1, 2}};
  const MatchReport report = match_clusters(labels, truth);
  EXPECT_DOUBLE_EQ(report.per_layer_iou[0].second, 1.0);
  EXPECT_DOUBLE_EQ(report.per_layer_iou[1].second, 1.0);
  EXPECT_DOUBLE_EQ(report.pixel_accuracy, 1.0);
  EXPECT_DOUBLE_EQ(report.purity, 1.0);
  EXPECT_EQ(report.assignment[0], "a");
  EXPECT_EQ(report.assignment[1], "b");
  EXPECT_EQ(report.assignment[2], "background");
}

TEST(MatchClusters, PermutationInvariance) {
  const LayerGroundTruth truth = two_region_truth();
  LabelMap labels{4, 4, 3, {}};
  labels.labels = {1, 1, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2};
  const MatchReport base = match_clusters(labels, truth);

  LabelMap permuted = labels;
  const std::uint32_t perm[3] = {2, 0, 1};
  for (auto& l : permuted.labels) l = perm[l];
  const MatchReport other = match_clusters(permuted, truth);

  EXPECT_EQ(base.pixel_accuracy, other.pixel_accuracy);
  EXPECT_EQ(base.purity, other.purity);
  for (std::size_t i = 0; i < base.per_layer_iou.size(); ++i)
    EXPECT_EQ(base.per_layer_iou[i].second, other.per_layer_iou[i].second);
}

TEST(MatchClusters, MatchesExhaustiveOracle) {
  const LayerGroundTruth truth = two_region_truth();
  // Hand-built noisy 3-cluster labeling.
  LabelMap labels{4, 4, 3, {1, 1, 2, 2, 0, 1, 2, 2, 0, 0, 2, 0, 0, 0, 2, 2}};

  std::vector<int> flat(labels.labels.begin(), labels.labels.end());
  std::vector<std::vector<bool>> masks;
  for (const auto& layer : truth.layers) {
    std::vector<bool> m(layer.mask.size());
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = layer.mask[p] != 0;
    masks.push_back(m);
  }
  const auto oracle = oracles::oracle_match(flat, 3, masks);
  const MatchReport report = match_clusters(labels, truth);

  EXPECT_DOUBLE_EQ(report.pixel_accuracy, oracle.pixel_accuracy);
  EXPECT_DOUBLE_EQ(report.purity, oracle.purity);
  for (std::size_t l = 0; l < 2; ++l)
    EXPECT_DOUBLE_EQ(report.per_layer_iou[l].second, oracle.per_layer_iou[l]);
}

TEST(MatchClusters, SurjectiveWhenMoreClustersThanRegions) {
  const LayerGroundTruth truth = two_region_truth();
  // 5 clusters over 3 regions: extras must share.
  LabelMap labels{4, 4, 5, {1, 1, 2, 3, 0, 0, 3, 3, 0, 4, 2, 2, 0, 4, 2, 2}};

  std::vector<int> flat(labels.labels.begin(), labels.labels.end());
  std::vector<std::vector<bool>> masks;
  for (const auto& layer : truth.layers) {
    std::vector<bool> m(layer.mask.size());
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = layer.mask[p] != 0;
    masks.push_back(m);
  }
  const auto oracle = oracles::oracle_match(flat, 5, masks);
  const MatchReport report = match_clusters(labels, truth);

  EXPECT_DOUBLE_EQ(report.pixel_accuracy, oracle.pixel_accuracy);
  EXPECT_DOUBLE_EQ(report.purity, oracle.purity);
  for (std::size_t l = 0; l < 2; ++l)
    EXPECT_DOUBLE_EQ(report.per_layer_iou[l].second, oracle.per_layer_iou[l]);
  // Every region received at least one cluster.
  bool chalk = false, ink = false, bg = false;
  for (const auto& name : report.assignment) {
    chalk |= name == "chalk";
    ink |= name == "ink";
    bg |= name == "background";
  }
  EXPECT_TRUE(chalk && ink && bg);
}

TEST(MatchClusters, ConcealedLayerGetsRecoveryCredit) {
  // Chalk fully covered by ink: the chalk-under-ink cluster must still map to
  // chalk, and chalk IoU is computed against the full original mask.
  LayerGroundTruth truth;
  truth.width = 4;
  truth.height = 4;
  GroundTruthLayer chalk{"chalk", std::vector<std::uint8_t>(16, 0)};
  GroundTruthLayer ink{"ink", std::vector<std::uint8_t>(16, 0)};
  chalk.mask[0] = chalk.mask[1] = 1;
  ink.mask[0] = ink.mask[1] = ink.mask[2] = ink.mask[3] = 1;
  truth.layers = {chalk, ink};

  LabelMap labels{4, 4, 3, {}};
  labels.labels.assign(16, 2);
  labels.labels[0] = labels.labels[1] = 0;  // chalk-under-ink spectral cluster
  labels.labels[2] = labels.labels[3] = 1;  // ink-only cluster

  const MatchReport report = match_clusters(labels, truth);
  EXPECT_EQ(report.assignment[0], "chalk");
  EXPECT_EQ(report.assignment[1], "ink");
  EXPECT_DOUBLE_EQ(report.per_layer_iou[0].second, 1.0);  // full chalk recovered
  EXPECT_DOUBLE_EQ(report.per_layer_iou[1].second, 0.5);  // ink-only half of ink mask
  // Covered chalk pixels count as ink under precedence, so 2 of 16 are "wrong".
  EXPECT_DOUBLE_EQ(report.pixel_accuracy, 14.0 / 16.0);
  EXPECT_DOUBLE_EQ(report.purity, 1.0);
}

TEST(MatchClusters, DimensionMismatch) {
  LayerGroundTruth truth = two_region_truth();
  LabelMap labels{3, 3, 2, std::vector<std::uint32_t>(9, 0)};
  EXPECT_THROW(match_clusters(labels, truth), ValueError);
}

}  // namespace
