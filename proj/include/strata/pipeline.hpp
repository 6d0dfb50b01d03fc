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
// End-to-end orchestration of the separation workflow (preprocess -> PCA ->
// clustering), artifact writing, and the built-in phantom scenarios. Every
// run writes a manifest that echoes the full configuration, so a run can be
// reproduced byte for byte from its output directory.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/cluster.hpp"
#include "strata/cube.hpp"
#include "strata/error.hpp"
#include "strata/evaluate.hpp"
#include "strata/pca.hpp"
#include "strata/phantom.hpp"
#include "strata/preprocess.hpp"
#include "strata/version.hpp"

namespace strata {

enum class PreprocessOrder { TrimBinNorm, NormTrimBin };
enum class ClusterMethod { KMeans, Gmm };

inline const char* to_string(PreprocessOrder o) {
  return o == PreprocessOrder::TrimBinNorm ? "trim-bin-norm" : "norm-trim-bin";
}
inline const char* to_string(ClusterMethod m) {
  return m == ClusterMethod::KMeans ? "kmeans" : "gmm";
}
inline const char* to_string(CovarianceType c) {
  return c == CovarianceType::Full ? "full" : "diag";
}

struct PipelineConfig {
  std::size_t trim_leading = 4;
  std::size_t trim_trailing = 4;
  std::size_t bin = 4;
  bool drop_tail = false;
  PreprocessOrder order = PreprocessOrder::TrimBinNorm;
  WhiteTarget white_target = WhiteTarget::mean_of_means();
  PcaSelector pca = PcaSelector::variance_target(0.995);
  ClusterMethod method = ClusterMethod::Gmm;
  std::size_t k = 0;  // required; there is no sensible default cluster count
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  CovarianceType covariance = CovarianceType::Full;
  double reg = 1e-6;
  double kmeans_tol = 1e-4;
  std::size_t kmeans_max_iter = 300;
  double gmm_tol = 1e-6;
  std::size_t gmm_max_iter = 300;
};

/// Applies trim/bin/normalize in the configured order. Consumes both cubes.
inline SpectralCube preprocess_pipeline(SpectralCube cube, SpectralCube white,
                                        const PipelineConfig& config) {
  const BinRemainder remainder = config.drop_tail ? BinRemainder::DropTail : BinRemainder::Strict;
  if (config.order == PreprocessOrder::NormTrimBin) {
    const NormalizationFactors f = compute_white_factors(white, config.white_target);
    white.values.clear();
    cube = apply_normalization(std::move(cube), f);
    if (config.trim_leading + config.trim_trailing > 0)
      cube = trim_bands(cube, config.trim_leading, config.trim_trailing);
    if (config.bin > 1) cube = bin_bands(cube, config.bin, remainder);
    return cube;
  }
  // trim-bin-norm: the white frame passes through the same band pipeline so
  // the factors line up with the binned cube.
  if (config.trim_leading + config.trim_trailing > 0)
    white = trim_bands(white, config.trim_leading, config.trim_trailing);
  if (config.bin > 1) white = bin_bands(white, config.bin, remainder);
  const NormalizationFactors f = compute_white_factors(white, config.white_target);
  white.values.clear();
  if (config.trim_leading + config.trim_trailing > 0)
    cube = trim_bands(cube, config.trim_leading, config.trim_trailing);
  if (config.bin > 1) cube = bin_bands(cube, config.bin, remainder);
  return apply_normalization(std::move(cube), f);
}

struct SeparateResult {
  SpectralCube processed;
  PcaModel model;
  ScoreCube scores;
  LabelMap labels;
  std::optional<KMeansModel> kmeans;
  std::optional<GmmModel> gmm;
};

namespace detail {

inline KMeansParams kmeans_params(const PipelineConfig& config) {
  KMeansParams p;
  p.k = config.k;
  p.seed = config.seed;
  p.max_iter = config.kmeans_max_iter;
  p.tol = config.kmeans_tol;
  p.restarts = config.restarts;
  return p;
}

inline GmmParams gmm_params(const PipelineConfig& config) {
  GmmParams p;
  p.k = config.k;
  p.covariance = config.covariance;
  p.seed = config.seed;
  p.max_iter = config.gmm_max_iter;
  p.tol = config.gmm_tol;
  p.reg = config.reg;
  p.restarts = config.restarts;
  return p;
}

}  // namespace detail

/// The full workflow on in-memory cubes.
inline SeparateResult run_separate(SpectralCube cube, SpectralCube white,
                                   const PipelineConfig& config,
                                   std::vector<std::string>* warnings = nullptr) {
  if (config.k == 0) throw ValueError("InvalidValue: cluster count k is required");
  SeparateResult result;
  result.processed = preprocess_pipeline(std::move(cube), std::move(white), config);
  result.model = fit_pca(result.processed, config.pca);
  result.scores = project(result.processed, result.model);
  if (config.method == ClusterMethod::KMeans) {
    auto fit = kmeans_fit(result.scores, detail::kmeans_params(config), warnings);
    result.kmeans = std::move(fit.model);
    result.labels = std::move(fit.labels);
  } else {
    result.gmm = gmm_fit(result.scores, detail::gmm_params(config), warnings);
    result.labels = gmm_assign(result.scores, *result.gmm);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Artifact writing.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline void write_config_echo(std::ostream& out, const PipelineConfig& config) {
  out << "version = " << kVersionString << "\n";
  out << "trim = " << config.trim_leading << "," << config.trim_trailing << "\n";
  out << "bin = " << config.bin << "\n";
  out << "drop_tail = " << (config.drop_tail ? "true" : "false") << "\n";
  out << "order = " << to_string(config.order) << "\n";
  if (config.white_target.kind == WhiteTarget::MeanOfMeans)
    out << "white_target = mean\n";
  else
    out << "white_target = " << fmt17(config.white_target.value) << "\n";
  if (config.pca.kind == PcaSelector::FixedK)
    out << "pca = fixed_k:" << config.pca.k << "\n";
  else
    out << "pca = variance:" << fmt17(config.pca.ratio) << "\n";
  out << "method = " << to_string(config.method) << "\n";
  out << "k = " << config.k << "\n";
  out << "seed = " << config.seed << "\n";
  out << "restarts = " << config.restarts << "\n";
  out << "covariance = " << to_string(config.covariance) << "\n";
  out << "reg = " << fmt17(config.reg) << "\n";
}

inline std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("IoError: cannot open " + path.string());
  return out;
}

}  // namespace detail

inline void write_cluster_sidecar(const SeparateResult& result, const PipelineConfig& config,
                                  const std::filesystem::path& path) {
  auto out = detail::open_text(path);
  out << "method = " << to_string(config.method) << "\n";
  out << "k = " << config.k << "\n";
  out << "seed = " << config.seed << "\n";
  out << "restarts = " << config.restarts << "\n";
  if (result.kmeans) {
    out << "inertia = " << detail::fmt17(result.kmeans->inertia) << "\n";
    out << "iterations = " << result.kmeans->iterations << "\n";
  }
  if (result.gmm) {
    out << "log_likelihood = " << detail::fmt17(result.gmm->log_likelihood) << "\n";
    out << "iterations = " << result.gmm->iterations << "\n";
  }
}

/// Writes every artifact of a separate run: processed cube, PCA model, score
/// summary, label map + per-cluster extractions, and the manifest.
inline void write_separate_artifacts(const SeparateResult& result, const PipelineConfig& config,
                                     const std::string& cube_path, const std::string& white_path,
                                     const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  save_cube(result.processed, out_dir / "processed.hdr", Interleave::BSQ);
  save_pca_model(result.model, out_dir / "pca_model.txt");

  {
    auto out = detail::open_text(out_dir / "scores_summary.txt");
    out << "k = " << result.model.k << "\n";
    out << "cumulative_ratio = " << detail::fmt17(result.model.cumulative_ratio()) << "\n";
    for (std::size_t j = 0; j < result.model.k; ++j) {
      double lo = 0.0, hi = 0.0, mean = 0.0;
      const std::size_t n = result.scores.pixel_count();
      lo = hi = n ? result.scores.pixel(0)[j] : 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        const double v = result.scores.pixel(p)[j];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
      }
      mean /= static_cast<double>(n);
      out << "component " << j << ": eigenvalue=" << detail::fmt17(result.model.explained_variance[j])
          << " ratio=" << detail::fmt17(result.model.explained_ratio[j])
          << " min=" << detail::fmt17(lo) << " max=" << detail::fmt17(hi)
          << " mean=" << detail::fmt17(mean) << "\n";
    }
  }

  write_pgm(render_label_map(result.labels), out_dir / "labels.pgm");
  write_cluster_sidecar(result, config, out_dir / "labels_info.txt");

  for (std::uint32_t c = 0; c < result.labels.num_clusters; ++c) {
    write_pgm(extract_layer(result.labels, {c}, ExtractMode::Mask),
              out_dir / ("cluster_" + std::to_string(c) + "_mask.pgm"));
    write_pgm(extract_layer(result.labels, {c}, ExtractMode::Inverse),
              out_dir / ("cluster_" + std::to_string(c) + "_inverse.pgm"));
  }

  auto manifest = detail::open_text(out_dir / "manifest.txt");
  manifest << "command = separate\n";
  manifest << "cube = " << cube_path << "\n";
  manifest << "white = " << white_path << "\n";
  detail::write_config_echo(manifest, config);
  manifest << "post_bin_bands = " << result.processed.bands() << "\n";
  manifest << "k_chosen = " << result.model.k << "\n";
  manifest << "cumulative_explained_ratio = " << detail::fmt17(result.model.cumulative_ratio())
           << "\n";
  for (std::size_t j = 0; j < result.model.k; ++j)
    manifest << "explained_ratio_" << j << " = " << detail::fmt17(result.model.explained_ratio[j])
             << "\n";
  if (result.kmeans) manifest << "inertia = " << detail::fmt17(result.kmeans->inertia) << "\n";
  if (result.gmm)
    manifest << "log_likelihood = " << detail::fmt17(result.gmm->log_likelihood) << "\n";
}

/// `metric = value` lines (6 decimals) plus the cluster assignment table.
inline void write_match_report(const MatchReport& report, std::ostream& out) {
  out << "pixel_accuracy = " << detail::fmt6(report.pixel_accuracy) << "\n";
  out << "purity = " << detail::fmt6(report.purity) << "\n";
  for (const auto& [name, iou] : report.per_layer_iou)
    out << "iou_" << name << " = " << detail::fmt6(iou) << "\n";
  out << "assignment:\n";
  for (std::size_t c = 0; c < report.assignment.size(); ++c)
    out << "cluster " << c << " -> " << report.assignment[c] << "\n";
}

// ---------------------------------------------------------------------------
// Label-map and ground-truth file loading (the evaluate surfaces).
// ---------------------------------------------------------------------------

/// Rebuilds a LabelMap from a rendered label image: distinct gray levels in
/// ascending order become cluster ids 0..K-1.
inline LabelMap label_map_from_image(const GrayImage& img) {
  std::vector<int> level_to_cluster(256, -1);
  std::vector<std::uint8_t> levels;
  for (std::uint8_t v : img.pixels)
    if (level_to_cluster[v] < 0) {
      level_to_cluster[v] = 0;
      levels.push_back(v);
    }
  std::sort(levels.begin(), levels.end());
  for (std::size_t i = 0; i < levels.size(); ++i) level_to_cluster[levels[i]] = static_cast<int>(i);

  LabelMap out;
  out.width = img.width;
  out.height = img.height;
  out.num_clusters = levels.size();
  out.labels.resize(img.pixels.size());
  for (std::size_t p = 0; p < img.pixels.size(); ++p)
    out.labels[p] = static_cast<std::uint32_t>(level_to_cluster[img.pixels[p]]);
  return out;
}

/// Loads a directory of binary PGM masks as ground-truth layers, in
/// lexicographic filename order (file names carry the creation order).
inline LayerGroundTruth load_truth_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".pgm")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw FormatError("IoError: no .pgm masks in " + dir.string());

  LayerGroundTruth truth;
  for (const auto& path : files) {
    const GrayImage img = read_pgm(path);
    if (truth.layers.empty()) {
      truth.width = img.width;
      truth.height = img.height;
    } else if (img.width != truth.width || img.height != truth.height) {
      throw ValueError("DimensionMismatch: mask " + path.string());
    }
    GroundTruthLayer layer;
    layer.name = path.stem().string();
    layer.mask.resize(img.pixels.size());
    for (std::size_t p = 0; p < img.pixels.size(); ++p) layer.mask[p] = img.pixels[p] > 127;
    truth.layers.push_back(std::move(layer));
  }
  return truth;
}

/// Writes phantom outputs: cube + white (header/raw pairs), per-layer masks,
/// step scans, the generating spec (reusable via --spec), and a manifest.
inline void write_phantom_artifacts(const PhantomOutput& phantom, const PhantomSpec& spec,
                                    const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  save_cube(phantom.cube, out_dir / "cube.hdr", Interleave::BSQ);
  save_cube(phantom.white, out_dir / "white.hdr", Interleave::BSQ);

  const fs::path mask_dir = out_dir / "masks";
  fs::create_directories(mask_dir);
  for (std::size_t l = 0; l < phantom.truth.layers.size(); ++l) {
    const auto& layer = phantom.truth.layers[l];
    GrayImage img(phantom.truth.width, phantom.truth.height);
    for (std::size_t p = 0; p < layer.mask.size(); ++p) img.pixels[p] = layer.mask[p] ? 255 : 0;
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "mask_%02zu_", l);
    std::string name = layer.name;
    for (auto& ch : name)
      if (ch == ':' || ch == '/' || ch == ' ') ch = '-';
    write_pgm(img, mask_dir / (std::string(prefix) + name + ".pgm"));
  }

  const fs::path scan_dir = out_dir / "scans";
  fs::create_directories(scan_dir);
  for (std::size_t i = 0; i < phantom.step_scans.size(); ++i) {
    char name[24];
    std::snprintf(name, sizeof name, "scan_%02zu.pgm", i);
    write_pgm(phantom.step_scans[i], scan_dir / name);
  }

  {
    auto spec_out = detail::open_text(out_dir / "phantom.spec");
    write_phantom_spec(spec, spec_out);
  }

  auto manifest = detail::open_text(out_dir / "manifest.txt");
  manifest << "command = phantom\n";
  manifest << "version = " << kVersionString << "\n";
  manifest << "spec = phantom.spec\n";
  manifest << "seed = " << spec.seed << "\n";
  manifest << "layers = " << phantom.truth.layers.size() << "\n";
  for (const auto& layer : phantom.truth.layers) manifest << "layer = " << layer.name << "\n";
  manifest << "scans = " << phantom.step_scans.size() << "\n";
}

// ---------------------------------------------------------------------------
// Score-cube serialization: a ScoreCube travels between CLI stages as a
// k-band cube. Cube values must be nonnegative but scores can be negative,
// so each component is shifted by its minimum on write; the per-component
// offsets live in a companion .offsets text file.
// ---------------------------------------------------------------------------

inline void save_score_cube(const ScoreCube& scores, const std::filesystem::path& header_path) {
  SpectralCube cube;
  cube.header.samples = scores.width;
  cube.header.lines = scores.height;
  cube.header.bands = std::max<std::size_t>(scores.k, 1);
  const std::size_t n = scores.pixel_count();
  cube.values.assign(n * cube.header.bands, 0.0);

  // Per-component offsets keep cube values nonnegative.
  std::vector<double> offsets(cube.header.bands, 0.0);
  for (std::size_t j = 0; j < scores.k; ++j) {
    double lo = 0.0;
    for (std::size_t p = 0; p < n; ++p) lo = std::min(lo, scores.pixel(p)[j]);
    offsets[j] = lo;
    for (std::size_t p = 0; p < n; ++p)
      cube.values[j * n + p] = scores.pixel(p)[j] - lo;
  }
  save_cube(cube, header_path, Interleave::BSQ);

  std::filesystem::path offsets_path = header_path;
  offsets_path.replace_extension(".offsets");
  auto out = detail::open_text(offsets_path);
  out << "k " << scores.k << "\n";
  detail::write_row(out, "offsets", offsets);
}

inline ScoreCube load_score_cube(const std::filesystem::path& header_path) {
  const SpectralCube cube = load_cube(header_path);
  std::filesystem::path offsets_path = header_path;
  offsets_path.replace_extension(".offsets");
  std::ifstream in(offsets_path);
  if (!in) throw FormatError("IoError: cannot open " + offsets_path.string());
  std::string label;
  std::size_t k = 0;
  if (!(in >> label >> k) || label != "k")
    throw FormatError("InvalidValue: score offsets: expected 'k <n>'");
  std::vector<double> offsets(cube.bands());
  if (!(in >> label) || label != "offsets")
    throw FormatError("InvalidValue: score offsets: expected 'offsets' row");
  for (auto& v : offsets)
    if (!(in >> v)) throw FormatError("InvalidValue: score offsets: truncated row");

  ScoreCube scores;
  scores.width = cube.width();
  scores.height = cube.height();
  scores.k = k;
  const std::size_t n = cube.pixel_count();
  scores.scores.resize(n * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t p = 0; p < n; ++p)
      scores.scores[p * k + j] = cube.values[j * n + p] + offsets[j];
  return scores;
}

// ---------------------------------------------------------------------------
// Method comparison on one shared score cube.
// ---------------------------------------------------------------------------

struct CompareResult {
  SpectralCube processed;
  PcaModel model;
  ScoreCube scores;
  KMeansModel kmeans;
  LabelMap kmeans_labels;
  GmmModel gmm;
  LabelMap gmm_labels;
};

inline CompareResult run_compare(SpectralCube cube, SpectralCube white,
                                 const PipelineConfig& config,
                                 std::vector<std::string>* warnings = nullptr) {
  if (config.k == 0) throw ValueError("InvalidValue: cluster count k is required");
  CompareResult result;
  result.processed = preprocess_pipeline(std::move(cube), std::move(white), config);
  result.model = fit_pca(result.processed, config.pca);
  result.scores = project(result.processed, result.model);

  auto km = kmeans_fit(result.scores, detail::kmeans_params(config), warnings);
  result.kmeans = std::move(km.model);
  result.kmeans_labels = std::move(km.labels);
  result.gmm = gmm_fit(result.scores, detail::gmm_params(config), warnings);
  result.gmm_labels = gmm_assign(result.scores, result.gmm);
  return result;
}

/// Side-by-side label maps from both clusterers plus matching reports when
/// ground truth is supplied.
inline void write_compare_artifacts(const CompareResult& result, const PipelineConfig& config,
                                    const std::string& cube_path, const std::string& white_path,
                                    const std::filesystem::path& out_dir,
                                    const LayerGroundTruth* truth) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  write_pgm(render_label_map(result.kmeans_labels), out_dir / "labels_kmeans.pgm");
  write_pgm(render_label_map(result.gmm_labels), out_dir / "labels_gmm.pgm");
  {
    auto out = detail::open_text(out_dir / "labels_kmeans_info.txt");
    out << "method = kmeans\nk = " << config.k << "\nseed = " << config.seed << "\n";
    out << "inertia = " << detail::fmt17(result.kmeans.inertia) << "\n";
    out << "iterations = " << result.kmeans.iterations << "\n";
  }
  {
    auto out = detail::open_text(out_dir / "labels_gmm_info.txt");
    out << "method = gmm\nk = " << config.k << "\nseed = " << config.seed << "\n";
    out << "log_likelihood = " << detail::fmt17(result.gmm.log_likelihood) << "\n";
    out << "iterations = " << result.gmm.iterations << "\n";
  }
  if (truth) {
    auto km_report = detail::open_text(out_dir / "report_kmeans.txt");
    write_match_report(match_clusters(result.kmeans_labels, *truth), km_report);
    auto gmm_report = detail::open_text(out_dir / "report_gmm.txt");
    write_match_report(match_clusters(result.gmm_labels, *truth), gmm_report);
  }

  auto manifest = detail::open_text(out_dir / "manifest.txt");
  manifest << "command = compare\n";
  manifest << "cube = " << cube_path << "\n";
  manifest << "white = " << white_path << "\n";
  detail::write_config_echo(manifest, config);
  manifest << "post_bin_bands = " << result.processed.bands() << "\n";
  manifest << "k_chosen = " << result.model.k << "\n";
  manifest << "cumulative_explained_ratio = " << detail::fmt17(result.model.cumulative_ratio())
           << "\n";
  manifest << "inertia = " << detail::fmt17(result.kmeans.inertia) << "\n";
  manifest << "log_likelihood = " << detail::fmt17(result.gmm.log_likelihood) << "\n";
}

// ---------------------------------------------------------------------------
// Built-in phantom scenarios.
// ---------------------------------------------------------------------------

namespace detail {
inline Stroke line_stroke(std::string material, std::vector<std::pair<double, double>> pts,
                          double width) {
  Stroke s;
  s.material = std::move(material);
  s.shape = Polyline{std::move(pts), width};
  return s;
}
inline Stroke polygon_stroke(std::string material, std::vector<std::pair<double, double>> pts) {
  Stroke s;
  s.material = std::move(material);
  s.shape = Polygon{std::move(pts)};
  return s;
}
}  // namespace detail

/// Three-material sample sheet: graphite sketch, red-chalk underdrawing, then
/// iron-gall pen lines and a diluted wash, on a 256x256x1040 cube.
inline PhantomSpec default_phantom_spec(std::uint64_t seed = 0) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.strokes = {
      detail::line_stroke("graphite", {{30, 40}, {120, 80}, {200, 60}}, 3.0),
      detail::line_stroke("graphite", {{40, 200}, {140, 160}, {220, 185}}, 3.0),
      detail::line_stroke("red_chalk", {{50, 60}, {180, 190}}, 4.0),
      detail::line_stroke("red_chalk", {{70, 220}, {210, 100}}, 4.0),
      detail::line_stroke("iron_gall_ink", {{90, 30}, {95, 230}}, 3.0),
      detail::line_stroke("iron_gall_ink", {{160, 40}, {215, 200}}, 3.0),
      detail::polygon_stroke("iron_gall_ink:0.5",
                             {{130, 130}, {240, 130}, {240, 240}, {130, 240}}),
  };
  return spec;
}

/// Concealed-chalk scenario: red-chalk strokes fully overlaid by a diluted
/// iron-gall wash, leaving paper-only and ink-only regions as well.
inline PhantomSpec concealed_phantom_spec(std::uint64_t seed = 0) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.strokes = {
      detail::line_stroke("red_chalk", {{40, 150}, {210, 160}}, 5.0),
      detail::line_stroke("red_chalk", {{50, 185}, {200, 175}}, 5.0),
      detail::line_stroke("red_chalk", {{60, 205}, {190, 215}}, 5.0),
      detail::polygon_stroke("iron_gall_ink:0.5", {{20, 120}, {236, 120}, {236, 236}, {20, 236}}),
  };
  return spec;
}

/// Two materials under a lateral illumination gradient: graphite strokes and
/// an iron-gall wash laid down in two dilutions ("two bowl" wash). The
/// gradient stretches the background into a long cloud in score space while
/// the two dilutions form nearby tight clusters; the scenario behind the
/// background-split comparison of the two clusterers.
inline PhantomSpec gradient_phantom_spec(std::uint64_t seed = 0) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.illumination = Illumination::gradient(Illumination::X, 0.15);
  spec.strokes = {
      detail::line_stroke("graphite", {{30, 180}, {220, 195}}, 6.0),
      detail::line_stroke("graphite", {{40, 215}, {215, 230}}, 6.0),
      detail::polygon_stroke("iron_gall_ink:0.5", {{20, 20}, {236, 20}, {236, 70}, {20, 70}}),
      detail::polygon_stroke("iron_gall_ink:0.3", {{20, 95}, {236, 95}, {236, 145}, {20, 145}}),
  };
  return spec;
}

inline PhantomSpec preset_phantom_spec(std::string_view name, std::uint64_t seed = 0) {
  if (name == "default") return default_phantom_spec(seed);
  if (name == "concealed") return concealed_phantom_spec(seed);
  if (name == "gradient") return gradient_phantom_spec(seed);
  throw ValueError("InvalidValue: unknown phantom preset '" + std::string(name) +
                   "' (want default, concealed or gradient)");
}

}  // namespace strata
