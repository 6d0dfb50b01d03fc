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
// strata: multispectral sketch-layer separation. One subcommand per pipeline
// stage plus `separate`/`compare` for the end-to-end workflow.
//
// Exit codes: 0 success, 2 usage error, 3 format/parse error, 4 numeric or
// precondition error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "strata/strata.hpp"

namespace {

using namespace strata;
namespace fs = std::filesystem;

struct CommonPipelineOpts {
  std::string trim = "4,4";
  std::size_t bin = 4;
  bool drop_tail = false;
  std::string order = "trim-bin-norm";
  std::string target = "mean";
  std::optional<std::size_t> pca_k;
  double variance = 0.995;
  std::string method = "gmm";
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::string cov = "full";
  double reg = 1e-6;
};

void add_pipeline_flags(CLI::App* cmd, CommonPipelineOpts& opts, bool with_method) {
  cmd->add_option("--trim", opts.trim, "leading,trailing bands to drop")->capture_default_str();
  cmd->add_option("--bin", opts.bin, "spectral binning factor")->capture_default_str();
  cmd->add_flag("--drop-tail", opts.drop_tail, "drop an incomplete final bin group");
  cmd->add_option("--order", opts.order, "trim-bin-norm or norm-trim-bin")
      ->check(CLI::IsMember({"trim-bin-norm", "norm-trim-bin"}))
      ->capture_default_str();
  cmd->add_option("--target", opts.target, "white target: mean or a positive value")
      ->capture_default_str();
  cmd->add_option("--pca-k", opts.pca_k, "fixed PCA component count (overrides --variance)");
  cmd->add_option("--variance", opts.variance, "PCA explained-variance target")
      ->capture_default_str();
  if (with_method)
    cmd->add_option("--method", opts.method, "kmeans or gmm")
        ->check(CLI::IsMember({"kmeans", "gmm"}))
        ->capture_default_str();
  cmd->add_option("--k", opts.k, "cluster count")->required();
  cmd->add_option("--seed", opts.seed, "PRNG seed")->capture_default_str();
  cmd->add_option("--restarts", opts.restarts, "clustering restarts, best fit kept")
      ->capture_default_str();
  cmd->add_option("--cov", opts.cov, "GMM covariance: full or diag")
      ->check(CLI::IsMember({"full", "diag"}))
      ->capture_default_str();
  cmd->add_option("--reg", opts.reg, "GMM covariance ridge")->capture_default_str();
}

std::pair<std::size_t, std::size_t> parse_trim(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      const auto v = static_cast<std::size_t>(std::stoul(text));
      return {v, v};
    }
    return {static_cast<std::size_t>(std::stoul(text.substr(0, comma))),
            static_cast<std::size_t>(std::stoul(text.substr(comma + 1)))};
  } catch (const std::exception&) {
    throw FormatError("InvalidValue: --trim expects 'leading,trailing', got '" + text + "'");
  }
}

WhiteTarget parse_target(const std::string& text) {
  if (text == "mean") return WhiteTarget::mean_of_means();
  try {
    return WhiteTarget::fixed(std::stod(text));
  } catch (const std::exception&) {
    throw FormatError("InvalidValue: --target expects 'mean' or a number, got '" + text + "'");
  }
}

PipelineConfig make_config(const CommonPipelineOpts& opts) {
  PipelineConfig config;
  std::tie(config.trim_leading, config.trim_trailing) = parse_trim(opts.trim);
  config.bin = opts.bin;
  config.drop_tail = opts.drop_tail;
  config.order = opts.order == "norm-trim-bin" ? PreprocessOrder::NormTrimBin
                                               : PreprocessOrder::TrimBinNorm;
  config.white_target = parse_target(opts.target);
  config.pca = opts.pca_k ? PcaSelector::fixed_k(*opts.pca_k)
                          : PcaSelector::variance_target(opts.variance);
  config.method = opts.method == "kmeans" ? ClusterMethod::KMeans : ClusterMethod::Gmm;
  config.k = opts.k;
  config.seed = opts.seed;
  config.restarts = opts.restarts;
  config.covariance = opts.cov == "diag" ? CovarianceType::Diagonal : CovarianceType::Full;
  config.reg = opts.reg;
  return config;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand bodies.
// ---------------------------------------------------------------------------

void cmd_phantom(const std::string& out_dir, const std::string& spec_path,
                 const std::string& preset, std::optional<std::uint64_t> seed) {
  PhantomSpec spec;
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw FormatError("IoError: cannot open " + spec_path);
    std::ostringstream text;
    text << in.rdbuf();
    spec = parse_phantom_spec(text.str());
  } else {
    spec = preset_phantom_spec(preset, seed.value_or(0));
  }
  if (seed) spec.seed = *seed;

  std::cout << "phantom: " << spec.width << "x" << spec.height << "x" << spec.bands << ", "
            << spec.strokes.size() << " strokes, seed " << spec.seed << "\n";
  const PhantomOutput phantom = generate_phantom(spec);
  write_phantom_artifacts(phantom, spec, out_dir);
  std::cout << "phantom: wrote " << out_dir << " (" << phantom.truth.layers.size()
            << " layers, " << phantom.step_scans.size() << " scans)\n";
}

void cmd_normalize(const std::string& input, const std::string& white_path,
                   const std::string& target, const std::string& output) {
  std::vector<std::string> warnings;
  const SpectralCube white = load_cube(white_path, &warnings);
  const NormalizationFactors factors = compute_white_factors(white, parse_target(target));
  SpectralCube cube = load_cube(input, &warnings);
  print_warnings(warnings);
  cube = apply_normalization(std::move(cube), factors);
  save_cube(cube, output + ".hdr", Interleave::BSQ);
  std::cout << "normalize: wrote " << output << ".hdr (target " << factors.target << ")\n";
}

void cmd_bin(const std::string& input, const std::string& output, const std::string& trim,
             std::size_t bin, bool drop_tail, const std::string& order,
             const std::string& white_path, const std::string& target) {
  std::vector<std::string> warnings;
  SpectralCube cube = load_cube(input, &warnings);
  const auto [lead, trail] = parse_trim(trim);
  const BinRemainder remainder = drop_tail ? BinRemainder::DropTail : BinRemainder::Strict;

  if (!white_path.empty()) {
    PipelineConfig config;
    config.trim_leading = lead;
    config.trim_trailing = trail;
    config.bin = bin;
    config.drop_tail = drop_tail;
    config.order = order == "norm-trim-bin" ? PreprocessOrder::NormTrimBin
                                            : PreprocessOrder::TrimBinNorm;
    config.white_target = parse_target(target);
    cube = preprocess_pipeline(std::move(cube), load_cube(white_path, &warnings), config);
  } else {
    if (lead + trail > 0) cube = trim_bands(cube, lead, trail);
    if (bin > 1) cube = bin_bands(cube, bin, remainder);
  }
  print_warnings(warnings);
  save_cube(cube, output + ".hdr", Interleave::BSQ);
  std::cout << "bin: wrote " << output << ".hdr (" << cube.bands() << " bands)\n";
}

void cmd_pca(const std::string& input, const std::string& model_path,
             std::optional<std::size_t> fixed_k, double variance, const std::string& scores_path) {
  std::vector<std::string> warnings;
  const SpectralCube cube = load_cube(input, &warnings);
  print_warnings(warnings);
  const PcaSelector selector =
      fixed_k ? PcaSelector::fixed_k(*fixed_k) : PcaSelector::variance_target(variance);
  const PcaModel model = fit_pca(cube, selector);
  save_pca_model(model, model_path);
  std::cout << "pca: k = " << model.k
            << ", cumulative explained ratio = " << model.cumulative_ratio() << "\n";
  if (!scores_path.empty()) {
    save_score_cube(project(cube, model), scores_path + ".hdr");
    std::cout << "pca: wrote scores to " << scores_path << ".hdr\n";
  }
}

void cmd_cluster(const std::string& scores_path, const std::string& out_dir,
                 const std::string& method, std::size_t k, std::uint64_t seed,
                 std::size_t restarts, const std::string& cov, double reg) {
  const ScoreCube scores = load_score_cube(scores_path);
  fs::create_directories(out_dir);
  std::vector<std::string> warnings;

  SeparateResult result;  // reuse the sidecar writer's shape
  PipelineConfig config;
  config.method = method == "kmeans" ? ClusterMethod::KMeans : ClusterMethod::Gmm;
  config.k = k;
  config.seed = seed;
  config.restarts = restarts;
  config.covariance = cov == "diag" ? CovarianceType::Diagonal : CovarianceType::Full;
  config.reg = reg;

  if (config.method == ClusterMethod::KMeans) {
    auto fit = kmeans_fit(scores, detail::kmeans_params(config), &warnings);
    result.kmeans = std::move(fit.model);
    result.labels = std::move(fit.labels);
  } else {
    result.gmm = gmm_fit(scores, detail::gmm_params(config), &warnings);
    result.labels = gmm_assign(scores, *result.gmm);
  }
  print_warnings(warnings);

  write_pgm(render_label_map(result.labels), fs::path(out_dir) / "labels.pgm");
  write_cluster_sidecar(result, config, fs::path(out_dir) / "labels_info.txt");
  if (result.kmeans)
    std::cout << "cluster: kmeans inertia = " << result.kmeans->inertia << "\n";
  else
    std::cout << "cluster: gmm log-likelihood = " << result.gmm->log_likelihood << "\n";
}

void cmd_separate(const std::string& input, const std::string& white_path,
                  const std::string& out_dir, const CommonPipelineOpts& opts) {
  const PipelineConfig config = make_config(opts);
  std::vector<std::string> warnings;
  SpectralCube cube = load_cube(input, &warnings);
  SpectralCube white = load_cube(white_path, &warnings);
  std::cout << "separate: " << cube.width() << "x" << cube.height() << "x" << cube.bands()
            << " cube, method " << to_string(config.method) << ", k = " << config.k << "\n";
  const SeparateResult result = run_separate(std::move(cube), std::move(white), config, &warnings);
  print_warnings(warnings);
  write_separate_artifacts(result, config, input, white_path, out_dir);
  std::cout << "separate: post-bin bands = " << result.processed.bands()
            << ", pca k = " << result.model.k << "\n";
  std::cout << "separate: wrote " << out_dir << "\n";
}

void cmd_compare(const std::string& input, const std::string& white_path,
                 const std::string& out_dir, const std::string& truth_dir,
                 const CommonPipelineOpts& opts) {
  const PipelineConfig config = make_config(opts);
  std::vector<std::string> warnings;
  SpectralCube cube = load_cube(input, &warnings);
  SpectralCube white = load_cube(white_path, &warnings);
  const CompareResult result = run_compare(std::move(cube), std::move(white), config, &warnings);
  print_warnings(warnings);

  std::optional<LayerGroundTruth> truth;
  if (!truth_dir.empty()) truth = load_truth_dir(truth_dir);
  write_compare_artifacts(result, config, input, white_path, out_dir, truth ? &*truth : nullptr);
  std::cout << "compare: kmeans inertia = " << result.kmeans.inertia
            << ", gmm log-likelihood = " << result.gmm.log_likelihood << "\n";
  std::cout << "compare: wrote " << out_dir << "\n";
}

void cmd_evaluate(const std::string& labels_path, const std::string& truth_dir,
                  const std::string& report_path) {
  const LabelMap labels = label_map_from_image(read_pgm(labels_path));
  const LayerGroundTruth truth = load_truth_dir(truth_dir);
  const MatchReport report = match_clusters(labels, truth);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw FormatError("IoError: cannot open " + report_path);
    write_match_report(report, out);
    std::cout << "evaluate: wrote " << report_path << "\n";
  } else {
    write_match_report(report, std::cout);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata: multispectral sketch-layer separation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key = value file");
  app.set_version_flag("--version", std::string("strata ") + kVersionString);

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = all cores)")
      ->envname("STRATA_THREADS");

  auto threaded = [&](auto fn) {
    return [&, fn] {
      set_thread_count(threads);
      fn();
    };
  };

  // phantom
  auto* phantom = app.add_subcommand("phantom", "generate a synthetic layered drawing");
  phantom->fallthrough();
  std::string phantom_out, phantom_spec, phantom_preset = "default";
  std::optional<std::uint64_t> phantom_seed;
  phantom->add_option("--out", phantom_out, "output directory")->required();
  auto* spec_opt = phantom->add_option("--spec", phantom_spec, "phantom spec file");
  phantom->add_option("--preset", phantom_preset, "default, concealed or gradient")
      ->excludes(spec_opt)
      ->capture_default_str();
  phantom->add_option("--seed", phantom_seed, "override the spec seed");
  phantom->callback(threaded(
      [&] { cmd_phantom(phantom_out, phantom_spec, phantom_preset, phantom_seed); }));

  // normalize
  auto* normalize = app.add_subcommand("normalize", "white-reference channel normalization");
  normalize->fallthrough();
  std::string norm_input, norm_white, norm_target = "mean", norm_output;
  normalize->add_option("--input", norm_input, "cube header (.hdr)")->required();
  normalize->add_option("--white", norm_white, "white reference cube header")->required();
  normalize->add_option("--target", norm_target, "mean or a positive value")
      ->capture_default_str();
  normalize->add_option("--output", norm_output, "output base path")->required();
  normalize->callback(
      threaded([&] { cmd_normalize(norm_input, norm_white, norm_target, norm_output); }));

  // bin
  auto* bin = app.add_subcommand("bin", "spectral trimming and binning");
  bin->fallthrough();
  std::string bin_input, bin_output, bin_trim = "4,4", bin_order = "trim-bin-norm";
  std::string bin_white, bin_target = "mean";
  std::size_t bin_factor = 4;
  bool bin_drop_tail = false;
  bin->add_option("--input", bin_input, "cube header (.hdr)")->required();
  bin->add_option("--output", bin_output, "output base path")->required();
  bin->add_option("--trim", bin_trim, "leading,trailing bands to drop")->capture_default_str();
  bin->add_option("--bin", bin_factor, "binning factor")->capture_default_str();
  bin->add_flag("--drop-tail", bin_drop_tail, "drop an incomplete final group");
  bin->add_option("--order", bin_order, "trim-bin-norm or norm-trim-bin (with --white)")
      ->check(CLI::IsMember({"trim-bin-norm", "norm-trim-bin"}))
      ->capture_default_str();
  bin->add_option("--white", bin_white, "white cube: also normalize, in --order");
  bin->add_option("--target", bin_target, "white target (with --white)")->capture_default_str();
  bin->callback(threaded([&] {
    cmd_bin(bin_input, bin_output, bin_trim, bin_factor, bin_drop_tail, bin_order, bin_white,
            bin_target);
  }));

  // pca
  auto* pca = app.add_subcommand("pca", "fit a PCA model on a preprocessed cube");
  pca->fallthrough();
  std::string pca_input, pca_model, pca_scores;
  std::optional<std::size_t> pca_fixed_k;
  double pca_variance = 0.995;
  pca->add_option("--input", pca_input, "cube header (.hdr)")->required();
  pca->add_option("--model", pca_model, "output model file")->required();
  pca->add_option("--k", pca_fixed_k, "fixed component count");
  pca->add_option("--variance", pca_variance, "explained-variance target")->capture_default_str();
  pca->add_option("--scores", pca_scores, "also write projected scores (base path)");
  pca->callback(
      threaded([&] { cmd_pca(pca_input, pca_model, pca_fixed_k, pca_variance, pca_scores); }));

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster a score cube");
  cluster->fallthrough();
  std::string cl_scores, cl_out, cl_method = "gmm", cl_cov = "full";
  std::size_t cl_k = 0, cl_restarts = 1;
  std::uint64_t cl_seed = 0;
  double cl_reg = 1e-6;
  cluster->add_option("--scores", cl_scores, "score cube header (.hdr)")->required();
  cluster->add_option("--out", cl_out, "output directory")->required();
  cluster->add_option("--method", cl_method, "kmeans or gmm")
      ->check(CLI::IsMember({"kmeans", "gmm"}))
      ->capture_default_str();
  cluster->add_option("--k", cl_k, "cluster count")->required();
  cluster->add_option("--seed", cl_seed, "PRNG seed")->capture_default_str();
  cluster->add_option("--restarts", cl_restarts, "restarts, best fit kept")->capture_default_str();
  cluster->add_option("--cov", cl_cov, "GMM covariance: full or diag")
      ->check(CLI::IsMember({"full", "diag"}))
      ->capture_default_str();
  cluster->add_option("--reg", cl_reg, "GMM covariance ridge")->capture_default_str();
  cluster->callback(threaded([&] {
    cmd_cluster(cl_scores, cl_out, cl_method, cl_k, cl_seed, cl_restarts, cl_cov, cl_reg);
  }));

  // separate
  auto* separate = app.add_subcommand("separate", "end-to-end layer separation");
  separate->fallthrough();
  std::string sep_input, sep_white, sep_out;
  CommonPipelineOpts sep_opts;
  separate->add_option("--input", sep_input, "cube header (.hdr)")->required();
  separate->add_option("--white", sep_white, "white reference cube header")->required();
  separate->add_option("--out", sep_out, "output directory")->required();
  add_pipeline_flags(separate, sep_opts, /*with_method=*/true);
  separate->callback(threaded([&] { cmd_separate(sep_input, sep_white, sep_out, sep_opts); }));

  // compare
  auto* compare = app.add_subcommand("compare", "run both clusterers on one score cube");
  compare->fallthrough();
  std::string cmp_input, cmp_white, cmp_out, cmp_truth;
  CommonPipelineOpts cmp_opts;
  compare->add_option("--input", cmp_input, "cube header (.hdr)")->required();
  compare->add_option("--white", cmp_white, "white reference cube header")->required();
  compare->add_option("--out", cmp_out, "output directory")->required();
  compare->add_option("--truth", cmp_truth, "ground-truth mask directory (optional)");
  add_pipeline_flags(compare, cmp_opts, /*with_method=*/false);
  compare->callback(
      threaded([&] { cmd_compare(cmp_input, cmp_white, cmp_out, cmp_truth, cmp_opts); }));

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score a label map against ground truth");
  evaluate->fallthrough();
  std::string ev_labels, ev_truth, ev_report;
  evaluate->add_option("--labels", ev_labels, "label map PGM")->required();
  evaluate->add_option("--truth", ev_truth, "ground-truth mask directory")->required();
  evaluate->add_option("--report", ev_report, "report output file (default stdout)");
  evaluate->callback(threaded([&] { cmd_evaluate(ev_labels, ev_truth, ev_report); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
