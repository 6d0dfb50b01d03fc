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
// Acceptance suite: one scenario per criterion, one pass/fail line each.
// Run with no arguments for the full suite, or pass criterion numbers.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "strata/strata.hpp"

namespace {

using namespace strata;
namespace fs = std::filesystem;

struct Check {
  std::ostringstream log;
  bool ok = true;

  template <class T>
  void expect(bool cond, const T& detail) {
    if (!cond) {
      ok = false;
      log << "    FAILED: " << detail << "\n";
    }
  }
  template <class T>
  void note(const T& detail) {
    log << "    " << detail << "\n";
  }
};

// --------------------------------------------------------------------------
// 1. Band-count law: 1040 bands -> trim(4,4) -> bin(4) -> exactly 258.
// --------------------------------------------------------------------------
void criterion_band_count(Check& c) {
  PhantomSpec spec;
  spec.width = 32;
  spec.height = 32;
  spec.bands = 1040;
  Stroke stroke;
  stroke.material = "graphite";
  stroke.shape = Polyline{{{4.0, 8.0}, {28.0, 24.0}}, 3.0};
  spec.strokes = {stroke};
  const PhantomOutput phantom = generate_phantom(spec);
  const SpectralCube trimmed = trim_bands(phantom.cube, 4, 4);
  c.expect(trimmed.bands() == 1032, "trim(4,4) of 1040 bands != 1032");
  const SpectralCube binned = bin_bands(trimmed, 4);
  c.expect(binned.bands() == 258,
           "bin(4) gave " + std::to_string(binned.bands()) + " bands, want 258");
  c.note("1040 -> " + std::to_string(trimmed.bands()) + " -> " + std::to_string(binned.bands()));
}

// --------------------------------------------------------------------------
// 2. Variance target on the default 3-material phantom: k <= 6, cumulative
//    ratio >= 0.995, and the Pythagorean residual identity within 1e-6.
// --------------------------------------------------------------------------
void criterion_variance_target(Check& c) {
  PhantomOutput phantom = generate_phantom(default_phantom_spec(0));
  PipelineConfig config;
  config.k = 1;  // clustering unused here
  const SpectralCube processed =
      preprocess_pipeline(std::move(phantom.cube), std::move(phantom.white), config);
  const PcaModel model = fit_pca(processed, PcaSelector::variance_target(0.995));
  c.note("k = " + std::to_string(model.k) +
         ", cumulative ratio = " + std::to_string(model.cumulative_ratio()));
  c.expect(model.k <= 6, "variance_target(0.995) selected k = " + std::to_string(model.k));
  c.expect(model.cumulative_ratio() >= 0.995, "cumulative explained ratio below 0.995");

  const ScoreCube scores = project(processed, model);
  const SpectralCube back = reconstruct(scores, model);
  double residual = 0.0;
  for (std::size_t i = 0; i < processed.values.size(); ++i) {
    const double d = processed.values[i] - back.values[i];
    residual += d * d;
  }
  residual /= static_cast<double>(processed.pixel_count() - 1);
  const double residual_ratio = residual / model.total_variance;
  const double gap = std::abs(residual_ratio - (1.0 - model.cumulative_ratio()));
  c.note("residual ratio gap = " + std::to_string(gap));
  c.expect(gap < 1e-6, "reconstruction residual does not match 1 - cumulative ratio");
}

// --------------------------------------------------------------------------
// 3. PCA oracle equivalence on 100 random small cubes.
// --------------------------------------------------------------------------
void criterion_pca_oracle(Check& c) {
  SplitMix rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t bands = 2 + rng.index(7);  // 2..8
    const std::size_t n = 10 + rng.index(91);    // 10..100
    std::vector<double> spectra(n * bands);
    for (auto& v : spectra) v = 10.0 * rng.uniform01();

    SpectralCube cube;
    cube.header.samples = n;
    cube.header.lines = 1;
    cube.header.bands = bands;
    cube.values.resize(n * bands);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t b = 0; b < bands; ++b) cube.values[b * n + p] = spectra[p * bands + b];

    const PcaModel model = fit_pca(cube, PcaSelector::fixed_k(bands));
    const auto cov = oracles::sample_covariance(spectra, n, bands);
    const auto oracle = oracles::jacobi_symmetric_eig(cov, bands);

    for (std::size_t i = 0; i < bands; ++i) {
      const double gap =
          std::abs(model.explained_variance[i] - std::max(0.0, oracle.eigenvalues[i]));
      if (gap > 1e-8) {
        c.expect(false, "trial " + std::to_string(trial) + ": eigenvalue " + std::to_string(i) +
                            " differs by " + std::to_string(gap));
        return;
      }
      const double gap_prev = i == 0 ? 1.0 : oracle.eigenvalues[i - 1] - oracle.eigenvalues[i];
      const double gap_next =
          i + 1 == bands ? 1.0 : oracle.eigenvalues[i] - oracle.eigenvalues[i + 1];
      if (std::min(gap_prev, gap_next) < 1e-6) continue;  // sign/subspace ambiguity
      double dot = 0.0;
      for (std::size_t b = 0; b < bands; ++b)
        dot += model.components[i * bands + b] * oracle.eigenvectors[i * bands + b];
      if (std::abs(std::abs(dot) - 1.0) > 1e-8) {
        c.expect(false, "trial " + std::to_string(trial) + ": eigenvector " + std::to_string(i) +
                            " |dot| = " + std::to_string(std::abs(dot)));
        return;
      }
    }
  }
  c.note("100 cubes, eigenvalues within 1e-8, eigenvectors match up to sign");
}

// --------------------------------------------------------------------------
// 4. EM monotonicity: 50+ seeded GMM fits, ll never drops by more than 1e-9.
// --------------------------------------------------------------------------
void criterion_em_monotonic(Check& c) {
  int fits = 0;
  for (const std::size_t k : {2u, 3u, 5u}) {
    for (const CovarianceType cov : {CovarianceType::Full, CovarianceType::Diagonal}) {
      for (std::uint64_t seed = 0; seed < 9; ++seed) {
        // Seeded anisotropic 3-blob data.
        const std::uint64_t data_seed = sub_seed(seed, k + (cov == CovarianceType::Full));
        ScoreCube scores;
        scores.width = 600;
        scores.height = 1;
        scores.k = 3;
        scores.scores.resize(600 * 3);
        std::uint64_t ctr = 0;
        for (std::size_t p = 0; p < 600; ++p) {
          const int blob = static_cast<int>(p % 3);
          const double cx = blob * 4.0, cy = blob == 1 ? 3.0 : 0.0;
          scores.scores[p * 3 + 0] = cx + counter_normal(data_seed, ctr++);
          scores.scores[p * 3 + 1] = cy + 0.5 * counter_normal(data_seed, ctr++);
          scores.scores[p * 3 + 2] = 2.0 * counter_normal(data_seed, ctr++);
        }
        GmmParams params;
        params.k = k;
        params.covariance = cov;
        params.seed = seed;
        const GmmModel model = gmm_fit(scores, params);
        ++fits;
        for (std::size_t i = 1; i < model.log_likelihood_history.size(); ++i) {
          const double drop =
              model.log_likelihood_history[i - 1] - model.log_likelihood_history[i];
          if (drop > 1e-9) {
            c.expect(false, "fit k=" + std::to_string(k) + " seed=" + std::to_string(seed) +
                                " iteration " + std::to_string(i) + " dropped by " +
                                std::to_string(drop));
            return;
          }
        }
      }
    }
  }
  c.note(std::to_string(fits) + " fits, log-likelihood non-decreasing (slack 1e-9)");
}

// --------------------------------------------------------------------------
// 5. Lloyd monotonicity plus small-instance optimality vs exhaustive oracle.
// --------------------------------------------------------------------------
void criterion_lloyd(Check& c) {
  SplitMix rng(777);
  int optimum_hits = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pts(12);
    for (auto& v : pts) v = 10.0 * rng.uniform01();
    ScoreCube scores;
    scores.width = 6;
    scores.height = 1;
    scores.k = 2;
    scores.scores = pts;

    KMeansParams params;
    params.k = 2;
    params.seed = static_cast<std::uint64_t>(trial);
    params.restarts = 10;
    const auto result = kmeans_fit(scores, params);

    for (std::size_t i = 1; i < result.model.inertia_history.size(); ++i)
      c.expect(result.model.inertia_history[i] <=
                   result.model.inertia_history[i - 1] * (1.0 + 1e-12),
               "inertia increased at iteration " + std::to_string(i));

    const double oracle = oracles::best_partition_inertia(pts, 6, 2, 2);
    c.expect(result.model.inertia >= oracle - 1e-9, "inertia below exhaustive optimum");
    if (result.model.inertia <= oracle + 1e-9) ++optimum_hits;
  }
  c.note("optimum reached in " + std::to_string(optimum_hits) + "/20 instances");
  c.expect(optimum_hits >= 19, "k-means++ (10 restarts) missed the optimum more than once");
}

// --------------------------------------------------------------------------
// 6. Concealed-chalk recovery: GMM K=4 seed 0 on the concealed phantom.
// --------------------------------------------------------------------------
void criterion_concealed_chalk(Check& c) {
  PhantomOutput phantom = generate_phantom(concealed_phantom_spec(0));
  PipelineConfig config;
  config.method = ClusterMethod::Gmm;
  config.k = 4;
  config.seed = 0;
  const LayerGroundTruth truth = phantom.truth;
  const SeparateResult result =
      run_separate(std::move(phantom.cube), std::move(phantom.white), config);
  const MatchReport report = match_clusters(result.labels, truth);

  double chalk_iou = -1.0, ink_iou = -1.0;
  for (const auto& [name, iou] : report.per_layer_iou) {
    if (name.find("red_chalk") != std::string::npos) chalk_iou = iou;
    if (name.find("iron_gall_ink") != std::string::npos) ink_iou = iou;
  }
  c.note("red chalk IoU = " + std::to_string(chalk_iou) +
         ", ink IoU = " + std::to_string(ink_iou));
  c.expect(chalk_iou >= 0.80, "concealed red chalk IoU below 0.80");
  c.expect(ink_iou >= 0.85, "ink IoU below 0.85");
}

// --------------------------------------------------------------------------
// 7. Background split: K-means splits the gradient background, GMM keeps it
//    whole, each in >= 7/10 seeds.
// --------------------------------------------------------------------------
void criterion_background_split(Check& c) {
  PhantomOutput phantom = generate_phantom(gradient_phantom_spec(0));
  const LayerGroundTruth truth = phantom.truth;
  PipelineConfig config;
  config.k = 4;
  const SpectralCube processed =
      preprocess_pipeline(std::move(phantom.cube), std::move(phantom.white), config);
  const PcaModel model = fit_pca(processed, config.pca);
  const ScoreCube scores = project(processed, model);

  std::vector<std::uint8_t> background(truth.pixel_count(), 1);
  for (const auto& layer : truth.layers)
    for (std::size_t p = 0; p < background.size(); ++p)
      if (layer.mask[p]) background[p] = 0;
  std::size_t n_bg = 0;
  for (auto v : background) n_bg += v;

  auto bg_fractions = [&](const LabelMap& labels) {
    std::vector<double> fracs(labels.num_clusters, 0.0);
    for (std::size_t p = 0; p < labels.size(); ++p)
      if (background[p]) fracs[labels.labels[p]] += 1.0;
    for (auto& f : fracs) f /= static_cast<double>(n_bg);
    std::sort(fracs.rbegin(), fracs.rend());
    return fracs;
  };

  int kmeans_split = 0, gmm_single = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    KMeansParams km;
    km.k = 4;
    km.seed = seed;
    km.restarts = 5;
    const auto km_fit = kmeans_fit(scores, km);
    const auto km_fracs = bg_fractions(km_fit.labels);
    if (km_fracs.size() >= 2 && km_fracs[0] >= 0.10 && km_fracs[1] >= 0.10) ++kmeans_split;

    GmmParams gp;
    gp.k = 4;
    gp.covariance = CovarianceType::Full;
    gp.seed = seed;
    gp.restarts = 5;
    const GmmModel gmm = gmm_fit(scores, gp);
    const auto gmm_fracs = bg_fractions(gmm_assign(scores, gmm));
    if (gmm_fracs[0] >= 0.90) ++gmm_single;
  }
  c.note("k-means split background in " + std::to_string(kmeans_split) +
         "/10 seeds; GMM single-cluster background in " + std::to_string(gmm_single) + "/10");
  c.expect(kmeans_split >= 7, "k-means split the background in fewer than 7/10 seeds");
  c.expect(gmm_single >= 7, "GMM kept the background whole in fewer than 7/10 seeds");
}

// --------------------------------------------------------------------------
// 8. Ground-truth loop: derive_layers on the step scans recovers every
//    stroke mask with IoU >= 0.99 at fixed threshold 10.
// --------------------------------------------------------------------------
void criterion_ground_truth_loop(Check& c) {
  PhantomSpec spec;
  spec.width = 128;
  spec.height = 128;
  spec.bands = 96;
  spec.noise_sigma = 0.01;
  spec.seed = 5;
  {
    Stroke graphite;
    graphite.material = "graphite";
    graphite.shape = Polyline{{{12, 14}, {110, 30}}, 3.5};
    Stroke chalk;
    chalk.material = "red_chalk";
    chalk.shape = Polyline{{{15, 100}, {115, 82}}, 5.0};
    Stroke ink;
    ink.material = "iron_gall_ink:0.5";
    ink.shape = Polygon{{{10, 50}, {118, 50}, {118, 120}, {10, 120}}};
    spec.strokes = {graphite, chalk, ink};
  }
  const PhantomOutput phantom = generate_phantom(spec);
  const LayerGroundTruth derived = derive_layers(phantom.step_scans, ThresholdMode::fixed(10));
  c.expect(derived.layers.size() == phantom.truth.layers.size(), "layer count mismatch");
  for (std::size_t l = 0; l < derived.layers.size(); ++l) {
    const double iou = mask_iou(derived.layers[l].mask, phantom.truth.layers[l].mask);
    c.note(phantom.truth.layers[l].name + " IoU = " + std::to_string(iou));
    c.expect(iou >= 0.99, phantom.truth.layers[l].name + " IoU below 0.99");
  }
}

// --------------------------------------------------------------------------
// 9. Registration: exact on noise-free shifts |d| <= 5; 10/10 noisy seeds.
// --------------------------------------------------------------------------
void criterion_registration(Check& c) {
  const std::size_t pad = 8, size = 64;
  GrayImage big(size + 2 * pad, size + 2 * pad);
  for (std::size_t i = 0; i < big.pixels.size(); ++i)
    big.pixels[i] = static_cast<std::uint8_t>(splitmix64(42 ^ splitmix64(i)) % 256);
  auto window = [&](int ox, int oy) {
    GrayImage out(size, size);
    for (std::size_t y = 0; y < size; ++y)
      for (std::size_t x = 0; x < size; ++x) out.at(x, y) = big.at(x + pad + ox, y + pad + oy);
    return out;
  };

  const GrayImage ref = window(0, 0);
  for (int dy = -5; dy <= 5; ++dy)
    for (int dx = -5; dx <= 5; ++dx) {
      const GrayImage mov = window(-dx, -dy);  // mov(x,y) = ref(x-dx, y-dy)
      const auto [rx, ry] = register_translation(ref, mov, 5);
      if (rx != dx || ry != dy) {
        c.expect(false, "noise-free shift (" + std::to_string(dx) + "," + std::to_string(dy) +
                            ") recovered as (" + std::to_string(rx) + "," + std::to_string(ry) +
                            ")");
        return;
      }
    }
  c.note("121 noise-free shifts exact");

  int noisy_hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GrayImage mov = window(-3, 2);  // true shift (3, -2)
    std::uint64_t ctr = 0;
    for (auto& px : mov.pixels) {
      const double noisy = px + 5.0 * counter_normal(seed + 1000, ctr++);
      px = static_cast<std::uint8_t>(std::clamp(noisy, 0.0, 255.0));
    }
    const auto [rx, ry] = register_translation(ref, mov, 5);
    noisy_hits += (rx == 3 && ry == -2);
  }
  c.note(std::to_string(noisy_hits) + "/10 noisy seeds recovered (3,-2)");
  c.expect(noisy_hits == 10, "noisy registration missed the true shift");
}

// --------------------------------------------------------------------------
// 10. Determinism: `separate` twice with the same config and different
//     --threads produces byte-identical artifacts.
// --------------------------------------------------------------------------

std::string cli_path() {
#ifdef STRATA_CLI_PATH
  return STRATA_CLI_PATH;
#else
  return "strata";
#endif
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& detail) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  std::sort(rel.begin(), rel.end());
  for (const auto& r : rel) {
    if (!fs::exists(b / r)) {
      detail = "missing " + (b / r).string();
      return false;
    }
    if (slurp(a / r) != slurp(b / r)) {
      detail = "differs: " + r.string();
      return false;
    }
  }
  return true;
}

void criterion_determinism(Check& c) {
  const fs::path work = fs::temp_directory_path() / "strata_acceptance_det";
  fs::remove_all(work);
  fs::create_directories(work);

  // A small but full-pipeline phantom via a spec file.
  {
    std::ofstream spec(work / "phantom.spec");
    spec << "width = 96\nheight = 96\nbands = 264\nseed = 11\nnoise_sigma = 0.01\n";
    spec << "stroke = graphite line 10,20 80,30 width 3\n";
    spec << "stroke = red_chalk line 12,70 84,60 width 4\n";
    spec << "stroke = iron_gall_ink:0.5 polygon 8,40 88,40 88,90 8,90\n";
  }
  const std::string spec_path = (work / "phantom.spec").string();
  c.expect(run_cli("--threads 1 phantom --spec " + spec_path + " --out " +
                   (work / "ph1").string()) == 0,
           "phantom run 1 failed");
  c.expect(run_cli("--threads 3 phantom --spec " + spec_path + " --out " +
                   (work / "ph2").string()) == 0,
           "phantom run 2 failed");
  std::string detail;
  c.expect(dirs_identical(work / "ph1", work / "ph2", detail),
           "phantom artifacts differ across thread counts: " + detail);

  const std::string sep_args = " separate --input " + (work / "ph1" / "cube.hdr").string() +
                               " --white " + (work / "ph1" / "white.hdr").string() +
                               " --trim 4,4 --bin 4 --k 4 --seed 7 --method gmm --out ";
  c.expect(run_cli("--threads 1" + sep_args + (work / "s1").string()) == 0, "separate 1 failed");
  c.expect(run_cli("--threads 1" + sep_args + (work / "s2").string()) == 0, "separate 2 failed");
  c.expect(run_cli("--threads 4" + sep_args + (work / "s3").string()) == 0, "separate 3 failed");

  c.expect(dirs_identical(work / "s1", work / "s2", detail),
           "repeat run artifacts differ: " + detail);
  c.expect(dirs_identical(work / "s1", work / "s3", detail),
           "thread-count artifacts differ: " + detail);
  c.note("phantom + separate byte-identical across reruns and --threads 1/3/4");
  fs::remove_all(work);
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "band-count law (1040 -> 258)", criterion_band_count},
      {2, "variance target 0.995", criterion_variance_target},
      {3, "PCA vs Jacobi oracle", criterion_pca_oracle},
      {4, "EM log-likelihood monotonicity", criterion_em_monotonic},
      {5, "Lloyd monotonicity + small-instance optimality", criterion_lloyd},
      {6, "concealed chalk recovery (GMM, K=4)", criterion_concealed_chalk},
      {7, "background split: k-means vs GMM", criterion_background_split},
      {8, "ground-truth loop via step scans", criterion_ground_truth_loop},
      {9, "translation registration", criterion_registration},
      {10, "byte-identical determinism", criterion_determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
      continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.log << "    EXCEPTION: " << e.what() << "\n";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, seconds);
    std::fputs(check.log.str().c_str(), stdout);
    std::fflush(stdout);
    failures += !check.ok;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
