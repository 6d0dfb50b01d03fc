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
// Pixel clustering of PCA scores: Lloyd's K-means from k-means++ seeds, and
// Gaussian mixtures fit by EM (full or diagonal covariance, log-sum-exp
// E-step, ridge-regularized M-step). All randomness flows from the caller's
// seed; ties break to the lowest index; reductions merge fixed-size blocks in
// block order, so results are independent of the worker count.

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "strata/error.hpp"
#include "strata/image.hpp"
#include "strata/parallel.hpp"
#include "strata/pca.hpp"
#include "strata/rng.hpp"

namespace strata {

/// Per-pixel cluster assignment; every label is < num_clusters.
struct LabelMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t num_clusters = 0;
  std::vector<std::uint32_t> labels;

  std::size_t size() const { return labels.size(); }
};

struct KMeansParams {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t max_iter = 300;
  double tol = 1e-4;  // max centroid shift (Euclidean) that counts as converged
  std::size_t restarts = 1;
};

struct KMeansModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;  // k x dim
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_history;  // one entry per assignment pass
};

struct KMeansResult {
  KMeansModel model;
  LabelMap labels;
};

namespace detail {

inline double sq_dist(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// k-means++ seeding. Throws TooManyClusters when fewer than k distinct
// points exist (all remaining squared distances hit zero).
inline std::vector<double> kmeanspp_seeds(const ScoreCube& scores, std::size_t k, SplitMix& rng) {
  const std::size_t n = scores.pixel_count();
  const std::size_t dim = scores.k;
  std::vector<double> centroids(k * dim);
  std::vector<double> d2(n);

  const std::size_t first = rng.index(n);
  std::copy_n(scores.pixel(first), dim, centroids.begin());
  for (std::size_t p = 0; p < n; ++p) d2[p] = sq_dist(scores.pixel(p), centroids.data(), dim);

  for (std::size_t j = 1; j < k; ++j) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (!(total > 0.0))
      throw ValueError("TooManyClusters: fewer than " + std::to_string(k) +
                       " distinct score vectors");
    const double target = rng.uniform01() * total;
    double cum = 0.0;
    std::size_t pick = n - 1;
    for (std::size_t p = 0; p < n; ++p) {
      cum += d2[p];
      if (cum > target) {
        pick = p;
        break;
      }
    }
    double* c = centroids.data() + j * dim;
    std::copy_n(scores.pixel(pick), dim, c);
    for (std::size_t p = 0; p < n; ++p)
      d2[p] = std::min(d2[p], sq_dist(scores.pixel(p), c, dim));
  }
  return centroids;
}

// Nearest-centroid assignment; returns total inertia. Ties to lowest index.
inline double assign_labels(const ScoreCube& scores, const std::vector<double>& centroids,
                            std::size_t k, std::vector<std::uint32_t>& labels) {
  const std::size_t n = scores.pixel_count();
  const std::size_t dim = scores.k;
  labels.resize(n);
  constexpr std::size_t kBlock = 4096;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_inertia(n_blocks, 0.0);

  parallel_for_blocks(n, kBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
    double local = 0.0;
    for (std::size_t p = begin; p < end; ++p) {
      const double* x = scores.pixel(p);
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_dist(x, centroids.data() + c * dim, dim);
        if (d < best) {
          best = d;
          best_c = static_cast<std::uint32_t>(c);
        }
      }
      labels[p] = best_c;
      local += best;
    }
    block_inertia[blk] = local;
  });

  double inertia = 0.0;
  for (double v : block_inertia) inertia += v;  // fixed block order
  return inertia;
}

struct KMeansSingleRun {
  KMeansModel model;
  std::vector<std::uint32_t> labels;
};

inline KMeansSingleRun kmeans_single(const ScoreCube& scores, const KMeansParams& params,
                                     std::uint64_t run_seed, std::vector<std::string>* warnings) {
  const std::size_t n = scores.pixel_count();
  const std::size_t dim = scores.k;
  const std::size_t k = params.k;
  SplitMix rng(run_seed);

  KMeansSingleRun run;
  run.model.k = k;
  run.model.dim = dim;
  std::vector<double> centroids = kmeanspp_seeds(scores, k, rng);

  constexpr std::size_t kBlock = 4096;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_sums(n_blocks * k * dim);
  std::vector<std::size_t> block_counts(n_blocks * k);

  for (std::size_t iter = 1; iter <= params.max_iter; ++iter) {
    const double inertia = assign_labels(scores, centroids, k, run.labels);
    run.model.inertia_history.push_back(inertia);

    // Per-block partial sums, merged in block order.
    std::fill(block_sums.begin(), block_sums.end(), 0.0);
    std::fill(block_counts.begin(), block_counts.end(), 0);
    parallel_for_blocks(n, kBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
      double* sums = block_sums.data() + blk * k * dim;
      std::size_t* counts = block_counts.data() + blk * k;
      for (std::size_t p = begin; p < end; ++p) {
        const std::uint32_t c = run.labels[p];
        counts[c]++;
        const double* x = scores.pixel(p);
        double* dst = sums + c * dim;
        for (std::size_t i = 0; i < dim; ++i) dst[i] += x[i];
      }
    });
    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
      const double* bs = block_sums.data() + blk * k * dim;
      const std::size_t* bc = block_counts.data() + blk * k;
      for (std::size_t c = 0; c < k; ++c) {
        counts[c] += bc[c];
        for (std::size_t i = 0; i < dim; ++i) sums[c * dim + i] += bs[c * dim + i];
      }
    }

    std::vector<double> next(centroids);
    for (std::size_t c = 0; c < k; ++c)
      if (counts[c] > 0)
        for (std::size_t i = 0; i < dim; ++i)
          next[c * dim + i] = sums[c * dim + i] / static_cast<double>(counts[c]);

    // Empty clusters take the point farthest from its assigned centroid.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      double worst = -1.0;
      std::size_t worst_p = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (counts[run.labels[p]] <= 1) continue;  // don't empty a singleton
        const double d = sq_dist(scores.pixel(p), next.data() + run.labels[p] * dim, dim);
        if (d > worst) {
          worst = d;
          worst_p = p;
        }
      }
      if (worst < 0.0) continue;
      counts[run.labels[worst_p]]--;
      run.labels[worst_p] = static_cast<std::uint32_t>(c);
      counts[c] = 1;
      std::copy_n(scores.pixel(worst_p), dim, next.begin() + c * dim);
      if (warnings) warnings->push_back("EmptyClusterResolved: cluster " + std::to_string(c));
    }

    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      shift = std::max(shift, std::sqrt(sq_dist(next.data() + c * dim,
                                                centroids.data() + c * dim, dim)));
    centroids.swap(next);
    run.model.iterations = iter;
    if (shift < params.tol) break;
  }

  // Final assignment against the final centroids.
  run.model.inertia = assign_labels(scores, centroids, k, run.labels);
  run.model.inertia_history.push_back(run.model.inertia);
  run.model.centroids = std::move(centroids);
  return run;
}

}  // namespace detail

/// Lloyd's K-means. Restarts rerun seeding with derived seeds and keep the
/// lowest final inertia (earliest run wins ties).
inline KMeansResult kmeans_fit(const ScoreCube& scores, const KMeansParams& params,
                               std::vector<std::string>* warnings = nullptr) {
  if (params.k == 0) throw ValueError("InvalidValue: k must be >= 1");
  if (scores.pixel_count() == 0) throw ValueError("DegenerateInput: no pixels");
  if (params.k > scores.pixel_count())
    throw ValueError("TooManyClusters: k exceeds pixel count");

  detail::KMeansSingleRun best;
  bool have = false;
  const std::size_t restarts = std::max<std::size_t>(1, params.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    auto run = detail::kmeans_single(scores, params, sub_seed(params.seed, r), warnings);
    if (!have || run.model.inertia < best.model.inertia) {
      best = std::move(run);
      have = true;
    }
  }

  KMeansResult out;
  out.model = std::move(best.model);
  out.labels.width = scores.width;
  out.labels.height = scores.height;
  out.labels.num_clusters = params.k;
  out.labels.labels = std::move(best.labels);
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian mixture models.
// ---------------------------------------------------------------------------

enum class CovarianceType { Full, Diagonal };

struct GmmParams {
  std::size_t k = 2;
  CovarianceType covariance = CovarianceType::Full;
  std::uint64_t seed = 0;
  std::size_t max_iter = 300;
  double tol = 1e-6;  // per-pixel log-likelihood improvement that counts as converged
  double reg = 1e-6;  // ridge added to covariance diagonals
  std::size_t restarts = 1;
  std::size_t init_kmeans_iters = 10;
};

struct GmmModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  CovarianceType covariance_type = CovarianceType::Full;
  std::vector<double> weights;      // k, sums to 1
  std::vector<double> means;        // k x dim
  std::vector<double> covariances;  // full: k x dim x dim; diagonal: k x dim
  double log_likelihood = 0.0;      // final per-pixel average
  std::size_t iterations = 0;
  std::vector<double> log_likelihood_history;

  const double* mean(std::size_t c) const { return means.data() + c * dim; }
  const double* covariance(std::size_t c) const {
    return covariances.data() +
           c * (covariance_type == CovarianceType::Full ? dim * dim : dim);
  }
};

namespace detail {

// Per-component terms for the Gaussian log-density, from a Cholesky factor
// in the full case.
struct GaussTerms {
  std::vector<double> chol;     // full: dim x dim lower triangle (row-major)
  std::vector<double> inv_var;  // diagonal case
  double log_norm = 0.0;        // -0.5 * (dim*log(2pi) + log|Sigma|)
};

inline GaussTerms prepare_gauss(const GmmModel& model, std::size_t c) {
  const std::size_t dim = model.dim;
  GaussTerms t;
  constexpr double kLog2Pi = 1.8378770664093454836;
  if (model.covariance_type == CovarianceType::Diagonal) {
    t.inv_var.resize(dim);
    double logdet = 0.0;
    const double* v = model.covariance(c);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(v[i] > 0.0))
        throw ValueError("SingularCovariance: component " + std::to_string(c));
      t.inv_var[i] = 1.0 / v[i];
      logdet += std::log(v[i]);
    }
    t.log_norm = -0.5 * (static_cast<double>(dim) * kLog2Pi + logdet);
    return t;
  }
  Eigen::Map<const Eigen::MatrixXd> sigma(model.covariance(c), dim, dim);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw ValueError("SingularCovariance: component " + std::to_string(c));
  const Eigen::MatrixXd L = llt.matrixL();
  t.chol.assign(dim * dim, 0.0);
  double logdet = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) t.chol[i * dim + j] = L(i, j);
    logdet += 2.0 * std::log(L(i, i));
  }
  t.log_norm = -0.5 * (static_cast<double>(dim) * kLog2Pi + logdet);
  return t;
}

inline double gauss_log_density(const GaussTerms& t, const double* x, const double* mu,
                                std::size_t dim, CovarianceType type) {
  double quad = 0.0;
  if (type == CovarianceType::Diagonal) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = x[i] - mu[i];
      quad += d * d * t.inv_var[i];
    }
  } else {
    // Forward substitution y = L^-1 (x - mu); quad = |y|^2.
    double y[64];
    for (std::size_t i = 0; i < dim; ++i) {
      double s = x[i] - mu[i];
      for (std::size_t j = 0; j < i; ++j) s -= t.chol[i * dim + j] * y[j];
      y[i] = s / t.chol[i * dim + i];
      quad += y[i] * y[i];
    }
  }
  return t.log_norm - 0.5 * quad;
}

// Biased (divisor N) covariance of all points, the EM starting covariance.
inline std::vector<double> pooled_covariance(const ScoreCube& scores, CovarianceType type,
                                             double reg) {
  const std::size_t n = scores.pixel_count();
  const std::size_t dim = scores.k;
  std::vector<double> mean(dim, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const double* x = scores.pixel(p);
    for (std::size_t i = 0; i < dim; ++i) mean[i] += x[i];
  }
  for (auto& m : mean) m /= static_cast<double>(n);

  if (type == CovarianceType::Diagonal) {
    std::vector<double> var(dim, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      const double* x = scores.pixel(p);
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = x[i] - mean[i];
        var[i] += d * d;
      }
    }
    for (auto& v : var) v = v / static_cast<double>(n) + reg;
    return var;
  }
  std::vector<double> cov(dim * dim, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const double* x = scores.pixel(p);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        cov[i * dim + j] += (x[i] - mean[i]) * (x[j] - mean[j]);
  }
  for (auto& v : cov) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < dim; ++i) cov[i * dim + i] += reg;
  return cov;
}

inline GmmModel gmm_single(const ScoreCube& scores, const GmmParams& params,
                           std::uint64_t run_seed, std::vector<std::string>* warnings) {
  const std::size_t n = scores.pixel_count();
  const std::size_t dim = scores.k;
  const std::size_t k = params.k;

  GmmModel model;
  model.k = k;
  model.dim = dim;
  model.covariance_type = params.covariance;
  model.weights.assign(k, 1.0 / static_cast<double>(k));

  // Means from a short seeded k-means run; shared pooled covariance.
  KMeansParams init;
  init.k = k;
  init.seed = run_seed;
  init.max_iter = params.init_kmeans_iters;
  init.tol = 1e-3;
  init.restarts = 1;
  model.means = kmeans_fit(scores, init, nullptr).model.centroids;

  const std::vector<double> pooled = pooled_covariance(scores, params.covariance, params.reg);
  const std::size_t cov_stride = params.covariance == CovarianceType::Full ? dim * dim : dim;
  model.covariances.resize(k * cov_stride);
  for (std::size_t c = 0; c < k; ++c)
    std::copy(pooled.begin(), pooled.end(), model.covariances.begin() + c * cov_stride);

  std::vector<double> resp(n * k);
  constexpr std::size_t kBlock = 4096;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_ll(n_blocks);

  auto e_step = [&]() {
    std::vector<GaussTerms> terms(k);
    for (std::size_t c = 0; c < k; ++c) terms[c] = prepare_gauss(model, c);
    std::vector<double> log_w(k);
    for (std::size_t c = 0; c < k; ++c)
      log_w[c] = model.weights[c] > 0.0 ? std::log(model.weights[c])
                                        : -std::numeric_limits<double>::infinity();
    std::fill(block_ll.begin(), block_ll.end(), 0.0);
    parallel_for_blocks(n, kBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
      double local = 0.0;
      std::vector<double> logp(k);
      for (std::size_t p = begin; p < end; ++p) {
        const double* x = scores.pixel(p);
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          logp[c] = log_w[c] +
                    gauss_log_density(terms[c], x, model.mean(c), dim, params.covariance);
          mx = std::max(mx, logp[c]);
        }
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) sum += std::exp(logp[c] - mx);
        const double lse = mx + std::log(sum);
        local += lse;
        double* r = resp.data() + p * k;
        for (std::size_t c = 0; c < k; ++c) r[c] = std::exp(logp[c] - lse);
      }
      block_ll[blk] = local;
    });
    double total = 0.0;
    for (double v : block_ll) total += v;  // fixed block order
    return total / static_cast<double>(n);
  };

  auto m_step = [&]() {
    // Pass 1: responsibility mass and means.
    std::vector<double> block_acc(n_blocks * k * (dim + 1));
    parallel_for_blocks(n, kBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
      double* acc = block_acc.data() + blk * k * (dim + 1);
      for (std::size_t p = begin; p < end; ++p) {
        const double* x = scores.pixel(p);
        const double* r = resp.data() + p * k;
        for (std::size_t c = 0; c < k; ++c) {
          double* a = acc + c * (dim + 1);
          a[0] += r[c];
          for (std::size_t i = 0; i < dim; ++i) a[1 + i] += r[c] * x[i];
        }
      }
    });
    std::vector<double> mass(k, 0.0);
    std::vector<double> mean_sum(k * dim, 0.0);
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
      const double* acc = block_acc.data() + blk * k * (dim + 1);
      for (std::size_t c = 0; c < k; ++c) {
        mass[c] += acc[c * (dim + 1)];
        for (std::size_t i = 0; i < dim; ++i)
          mean_sum[c * dim + i] += acc[c * (dim + 1) + 1 + i];
      }
    }

    std::vector<bool> alive(k, true);
    for (std::size_t c = 0; c < k; ++c) {
      if (mass[c] > 1e-10) {
        for (std::size_t i = 0; i < dim; ++i)
          model.means[c * dim + i] = mean_sum[c * dim + i] / mass[c];
      } else {
        // Responsibility mass underflowed: freeze the component this round.
        alive[c] = false;
        if (warnings)
          warnings->push_back("EmptyComponentResolved: component " + std::to_string(c));
      }
    }

    // Pass 2: centered second moments (exact for zero-variance clusters).
    const std::size_t sstride = params.covariance == CovarianceType::Full ? dim * dim : dim;
    std::vector<double> block_scatter(n_blocks * k * sstride);
    parallel_for_blocks(n, kBlock, [&](std::size_t blk, std::size_t begin, std::size_t end) {
      double* acc = block_scatter.data() + blk * k * sstride;
      for (std::size_t p = begin; p < end; ++p) {
        const double* x = scores.pixel(p);
        const double* r = resp.data() + p * k;
        for (std::size_t c = 0; c < k; ++c) {
          const double* mu = model.mean(c);
          double* a = acc + c * sstride;
          if (params.covariance == CovarianceType::Diagonal) {
            for (std::size_t i = 0; i < dim; ++i) {
              const double d = x[i] - mu[i];
              a[i] += r[c] * d * d;
            }
          } else {
            for (std::size_t i = 0; i < dim; ++i) {
              const double di = x[i] - mu[i];
              for (std::size_t j = 0; j <= i; ++j)
                a[i * dim + j] += r[c] * di * (x[j] - mu[j]);
            }
          }
        }
      }
    });
    std::vector<double> scatter(k * sstride, 0.0);
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
      const double* acc = block_scatter.data() + blk * k * sstride;
      for (std::size_t i = 0; i < k * sstride; ++i) scatter[i] += acc[i];
    }

    double weight_sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      model.weights[c] = mass[c] / static_cast<double>(n);
      weight_sum += model.weights[c];
    }
    for (auto& w : model.weights) w /= weight_sum;

    for (std::size_t c = 0; c < k; ++c) {
      if (!alive[c]) continue;
      double* sigma = model.covariances.data() + c * sstride;
      if (params.covariance == CovarianceType::Diagonal) {
        for (std::size_t i = 0; i < dim; ++i)
          sigma[i] = scatter[c * sstride + i] / mass[c] + params.reg;
      } else {
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j <= i; ++j) {
            const double v = scatter[c * sstride + i * dim + j] / mass[c];
            sigma[i * dim + j] = v;
            sigma[j * dim + i] = v;
          }
        for (std::size_t i = 0; i < dim; ++i) sigma[i * dim + i] += params.reg;
      }
    }
  };

  double ll = e_step();
  model.log_likelihood_history.push_back(ll);
  for (std::size_t iter = 1; iter <= params.max_iter; ++iter) {
    m_step();
    const double next_ll = e_step();
    model.log_likelihood_history.push_back(next_ll);
    model.iterations = iter;
    const double delta = next_ll - ll;
    ll = next_ll;
    if (delta < params.tol) break;
  }
  model.log_likelihood = ll;
  return model;
}

}  // namespace detail

/// EM fit of a K-component Gaussian mixture. Initialization: means from a
/// short k-means++ run, uniform weights, pooled covariance.
inline GmmModel gmm_fit(const ScoreCube& scores, const GmmParams& params,
                        std::vector<std::string>* warnings = nullptr) {
  if (params.k == 0) throw ValueError("InvalidValue: k must be >= 1");
  if (scores.pixel_count() <= params.k)
    throw ValueError("TooFewPoints: need more pixels than components");
  if (scores.k > 64) throw ValueError("InvalidValue: score dimension above 64 unsupported");
  if (params.reg < 0.0) throw ValueError("InvalidValue: reg must be >= 0");

  GmmModel best;
  bool have = false;
  const std::size_t restarts = std::max<std::size_t>(1, params.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    GmmModel run = detail::gmm_single(scores, params, sub_seed(params.seed, r), warnings);
    if (!have || run.log_likelihood > best.log_likelihood) {
      best = std::move(run);
      have = true;
    }
  }
  return best;
}

/// Maximum-posterior component per pixel; ties to the lowest index.
inline LabelMap gmm_assign(const ScoreCube& scores, const GmmModel& model) {
  if (scores.k != model.dim)
    throw ValueError("DimensionMismatch: scores have " + std::to_string(scores.k) +
                     " dims, model has " + std::to_string(model.dim));
  if (model.dim > 64) throw ValueError("InvalidValue: score dimension above 64 unsupported");
  std::vector<detail::GaussTerms> terms(model.k);
  for (std::size_t c = 0; c < model.k; ++c) terms[c] = detail::prepare_gauss(model, c);
  std::vector<double> log_w(model.k);
  for (std::size_t c = 0; c < model.k; ++c)
    log_w[c] = model.weights[c] > 0.0 ? std::log(model.weights[c])
                                      : -std::numeric_limits<double>::infinity();

  LabelMap out;
  out.width = scores.width;
  out.height = scores.height;
  out.num_clusters = model.k;
  out.labels.resize(scores.pixel_count());
  parallel_for_blocks(scores.pixel_count(), 4096,
                      [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const double* x = scores.pixel(p);
      double best = -std::numeric_limits<double>::infinity();
      std::uint32_t best_c = 0;
      for (std::size_t c = 0; c < model.k; ++c) {
        const double lp = log_w[c] + detail::gauss_log_density(terms[c], x, model.mean(c),
                                                               model.dim, model.covariance_type);
        if (lp > best) {
          best = lp;
          best_c = static_cast<std::uint32_t>(c);
        }
      }
      out.labels[p] = best_c;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Label-map rendering.
// ---------------------------------------------------------------------------

/// Cluster i renders as gray level round(i * 255 / max(K-1, 1)); identical
/// grayscale values mean identical cluster membership.
inline GrayImage render_label_map(const LabelMap& labels) {
  if (labels.num_clusters < 1) throw ValueError("InvalidValue: label map with no clusters");
  GrayImage img(labels.width, labels.height);
  const double denom = static_cast<double>(std::max<std::size_t>(labels.num_clusters - 1, 1));
  for (std::size_t i = 0; i < labels.labels.size(); ++i)
    img.pixels[i] =
        static_cast<std::uint8_t>(std::floor(labels.labels[i] * 255.0 / denom + 0.5));
  return img;
}

enum class ExtractMode { Mask, Inverse };

/// Binary rendering of the chosen clusters: white on black in Mask mode,
/// swapped in Inverse mode for inverse display.
inline GrayImage extract_layer(const LabelMap& labels, const std::vector<std::uint32_t>& cluster_ids,
                               ExtractMode mode) {
  for (std::uint32_t id : cluster_ids)
    if (id >= labels.num_clusters)
      throw ValueError("InvalidClusterId: " + std::to_string(id));
  std::vector<bool> selected(labels.num_clusters, false);
  for (std::uint32_t id : cluster_ids) selected[id] = true;

  const std::uint8_t on = mode == ExtractMode::Mask ? 255 : 0;
  const std::uint8_t off = mode == ExtractMode::Mask ? 0 : 255;
  GrayImage img(labels.width, labels.height);
  for (std::size_t i = 0; i < labels.labels.size(); ++i)
    img.pixels[i] = selected[labels.labels[i]] ? on : off;
  return img;
}

}  // namespace strata
