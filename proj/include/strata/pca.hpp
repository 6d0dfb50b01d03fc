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
// PCA over pixel spectra. The model is fit from the B x B sample covariance
// (divisor N-1) of the pixel spectra; components are the top eigenvectors in
// descending eigenvalue order. B is small after binning (<= 258), so the
// covariance route is much cheaper than an SVD of the N x B data matrix.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "strata/cube.hpp"
#include "strata/error.hpp"
#include "strata/parallel.hpp"

namespace strata {

struct PcaModel {
  std::size_t bands = 0;
  std::size_t k = 0;
  std::vector<double> mean;                // B
  std::vector<double> components;          // k x B row-major, orthonormal rows
  std::vector<double> explained_variance;  // k eigenvalues, non-increasing
  std::vector<double> explained_ratio;     // eigenvalue / total variance
  double total_variance = 0.0;             // trace of the covariance

  double component(std::size_t row, std::size_t band) const {
    return components[row * bands + band];
  }
  double cumulative_ratio() const {
    double s = 0.0;
    for (double r : explained_ratio) s += r;
    return s;
  }
};

struct PcaSelector {
  enum Kind { FixedK, VarianceTarget } kind = VarianceTarget;
  std::size_t k = 0;
  double ratio = 0.995;

  static PcaSelector fixed_k(std::size_t k) { return {FixedK, k, 0.0}; }
  static PcaSelector variance_target(double ratio) { return {VarianceTarget, 0, ratio}; }
};

/// Per-pixel component scores, pixel-major: score(x, y, j) =
/// scores[(y * width + x) * k + j].
struct ScoreCube {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t k = 0;
  std::vector<double> scores;

  std::size_t pixel_count() const { return width * height; }
  const double* pixel(std::size_t p) const { return scores.data() + p * k; }
  double* pixel(std::size_t p) { return scores.data() + p * k; }
};

namespace detail {

// Symmetric eigendecomposition, eigenvalues descending, eigenvectors as rows.
// Small negative eigenvalues from roundoff are clamped to zero.
inline void symmetric_eig_desc(const Eigen::MatrixXd& m, Eigen::VectorXd& values,
                               Eigen::MatrixXd& rows) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw ValueError("DegenerateInput: eigendecomposition failed to converge");
  const auto& v = solver.eigenvalues();    // ascending
  const auto& vec = solver.eigenvectors();  // columns
  const Eigen::Index n = v.size();
  values.resize(n);
  rows.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values[i] = std::max(0.0, v[n - 1 - i]);
    rows.row(i) = vec.col(n - 1 - i).transpose();
  }
}

// Largest-|entry| coefficient is made positive so fits are reproducible.
inline void fix_component_sign(Eigen::MatrixXd& rows) {
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      const double a = std::abs(rows(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = c;
      }
    }
    if (rows(r, best) < 0.0) rows.row(r) *= -1.0;
  }
}

}  // namespace detail

inline PcaModel fit_pca(const SpectralCube& cube, PcaSelector selector) {
  const std::size_t bands = cube.bands();
  const std::size_t n = cube.pixel_count();
  if (n < 2) throw ValueError("DegenerateInput: need at least 2 pixels");
  if (selector.kind == PcaSelector::FixedK && selector.k > bands)
    throw ValueError("InvalidValue: k exceeds band count");

  PcaModel model;
  model.bands = bands;
  model.mean.resize(bands);
  for (std::size_t b = 0; b < bands; ++b) {
    double sum = 0.0;
    for (double v : cube.band_plane(b)) sum += v;
    model.mean[b] = sum / static_cast<double>(n);
  }

  // Centered copy, then covariance from band-pair plane dot products. Each
  // entry is one sequential sum, so the result is thread-count independent.
  std::vector<double> centered(cube.values.size());
  parallel_for_blocks(bands, 4, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const auto plane = cube.band_plane(b);
      double* dst = centered.data() + b * n;
      const double mean = model.mean[b];
      for (std::size_t p = 0; p < n; ++p) dst[p] = plane[p] - mean;
    }
  });

  Eigen::MatrixXd cov(bands, bands);
  parallel_for_blocks(bands, 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* pi = centered.data() + i * n;
      for (std::size_t j = i; j < bands; ++j) {
        const double* pj = centered.data() + j * n;
        double sum = 0.0;
        for (std::size_t p = 0; p < n; ++p) sum += pi[p] * pj[p];
        const double c = sum / static_cast<double>(n - 1);
        cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
        cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
      }
    }
  });
  centered.clear();
  centered.shrink_to_fit();

  model.total_variance = cov.trace();

  Eigen::VectorXd values;
  Eigen::MatrixXd rows;
  detail::symmetric_eig_desc(cov, values, rows);
  detail::fix_component_sign(rows);

  std::size_t k = 0;
  if (selector.kind == PcaSelector::FixedK) {
    k = selector.k;
  } else {
    // Smallest k whose cumulative ratio reaches the target; k = B always
    // reaches 1, so the target is always attainable.
    double cum = 0.0;
    k = bands;
    for (std::size_t i = 0; i < bands; ++i) {
      cum += model.total_variance > 0.0 ? values[static_cast<Eigen::Index>(i)] / model.total_variance
                                        : 1.0;
      if (cum >= selector.ratio) {
        k = i + 1;
        break;
      }
    }
  }

  model.k = k;
  model.components.resize(k * bands);
  model.explained_variance.resize(k);
  model.explained_ratio.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    model.explained_variance[i] = values[static_cast<Eigen::Index>(i)];
    model.explained_ratio[i] =
        model.total_variance > 0.0 ? model.explained_variance[i] / model.total_variance : 0.0;
    for (std::size_t b = 0; b < bands; ++b)
      model.components[i * bands + b] = rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b));
  }
  return model;
}

/// score[x,y] = components . (spectrum[x,y] - mean)
inline ScoreCube project(const SpectralCube& cube, const PcaModel& model) {
  if (model.bands != cube.bands())
    throw ValueError("BandCountMismatch: model has " + std::to_string(model.bands) +
                     " bands, cube has " + std::to_string(cube.bands()));
  ScoreCube out;
  out.width = cube.width();
  out.height = cube.height();
  out.k = model.k;
  const std::size_t n = cube.pixel_count();
  out.scores.assign(n * model.k, 0.0);

  // Band-outer accumulation: each pixel's dot products build up in band
  // order, independent of the pixel-block partition.
  parallel_for_blocks(n, 8192, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t b = 0; b < model.bands; ++b) {
      const double* plane = cube.values.data() + b * n;
      const double mean = model.mean[b];
      for (std::size_t p = begin; p < end; ++p) {
        const double centered = plane[p] - mean;
        double* s = out.scores.data() + p * model.k;
        for (std::size_t j = 0; j < model.k; ++j)
          s[j] += model.components[j * model.bands + b] * centered;
      }
    }
  });
  return out;
}

/// spectrum[x,y] = mean + scores^T . components
inline SpectralCube reconstruct(const ScoreCube& scores, const PcaModel& model) {
  if (scores.k != model.k)
    throw ValueError("ComponentCountMismatch: scores have " + std::to_string(scores.k) +
                     " components, model has " + std::to_string(model.k));
  SpectralCube out;
  out.header.samples = scores.width;
  out.header.lines = scores.height;
  out.header.bands = model.bands;
  const std::size_t n = scores.pixel_count();
  out.values.resize(n * model.bands);
  parallel_for_blocks(model.bands, 4, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      double* plane = out.values.data() + b * n;
      for (std::size_t p = 0; p < n; ++p) {
        double v = model.mean[b];
        const double* s = scores.pixel(p);
        for (std::size_t j = 0; j < model.k; ++j) v += s[j] * model.components[j * model.bands + b];
        plane[p] = v;
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Text serialization, 17 significant digits (exact double round trip).
// ---------------------------------------------------------------------------

namespace detail {
inline void write_row(std::ostream& out, const char* label, std::span<const double> row) {
  out << label;
  char buf[32];
  for (double v : row) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out << buf;
  }
  out << "\n";
}
}  // namespace detail

inline void save_pca_model(const PcaModel& model, std::ostream& out) {
  out << "bands " << model.bands << "\n";
  out << "k " << model.k << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", model.total_variance);
  out << "total_variance " << buf << "\n";
  detail::write_row(out, "mean", model.mean);
  for (std::size_t i = 0; i < model.k; ++i)
    detail::write_row(out, "component",
                      {model.components.data() + i * model.bands, model.bands});
  detail::write_row(out, "eigenvalues", model.explained_variance);
}

inline void save_pca_model(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("IoError: cannot open " + path.string());
  save_pca_model(model, out);
}

inline PcaModel load_pca_model(std::istream& in) {
  PcaModel model;
  std::string label;
  if (!(in >> label) || label != "bands" || !(in >> model.bands))
    throw FormatError("InvalidValue: pca model: expected 'bands <n>'");
  if (!(in >> label) || label != "k" || !(in >> model.k))
    throw FormatError("InvalidValue: pca model: expected 'k <n>'");
  if (!(in >> label) || label != "total_variance" || !(in >> model.total_variance))
    throw FormatError("InvalidValue: pca model: expected 'total_variance <v>'");

  auto read_row = [&](const char* expect, std::vector<double>& row, std::size_t count) {
    if (!(in >> label) || label != expect)
      throw FormatError(std::string("InvalidValue: pca model: expected '") + expect + "' row");
    row.resize(count);
    for (auto& v : row)
      if (!(in >> v)) throw FormatError("InvalidValue: pca model: truncated row");
  };
  read_row("mean", model.mean, model.bands);
  model.components.resize(model.k * model.bands);
  for (std::size_t i = 0; i < model.k; ++i) {
    std::vector<double> row;
    read_row("component", row, model.bands);
    std::copy(row.begin(), row.end(), model.components.begin() + i * model.bands);
  }
  read_row("eigenvalues", model.explained_variance, model.k);
  model.explained_ratio.resize(model.k);
  for (std::size_t i = 0; i < model.k; ++i)
    model.explained_ratio[i] =
        model.total_variance > 0.0 ? model.explained_variance[i] / model.total_variance : 0.0;
  return model;
}

inline PcaModel load_pca_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("IoError: cannot open " + path.string());
  return load_pca_model(in);
}

}  // namespace strata
