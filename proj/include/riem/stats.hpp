#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "riem/error.hpp"
#include "riem/manifold.hpp"

namespace riem {

/// Points with nonnegative weights on a common manifold.
template <ManifoldLike M>
struct WeightedSample {
  std::vector<typename M::Point> points;
  std::vector<double> weights;

  static WeightedSample unweighted(std::vector<typename M::Point> pts) {
    WeightedSample s;
    s.weights.assign(pts.size(), 1.0);
    s.points = std::move(pts);
    return s;
  }
};

/// Throws unless the sample is nonempty, lengths match, weights are finite and
/// nonnegative with positive sum, and every point passes membership (offending
/// index reported in the message).
template <ManifoldLike M>
double validate_sample(const M& m, const WeightedSample<M>& sample) {
  if (sample.points.empty()) {
    throw InvalidInputError("weighted sample: at least one point is required");
  }
  if (sample.weights.size() != sample.points.size()) {
    throw InvalidInputError("weighted sample: points and weights differ in length");
  }
  double total = 0.0;
  for (const double w : sample.weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidInputError("weighted sample: weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw InvalidInputError("weighted sample: weight sum must be positive");
  }
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    if (!m.belongs(sample.points[i])) {
      throw NotOnManifoldError("weighted sample: point at index " + std::to_string(i) +
                               " is off the manifold");
    }
  }
  return total;
}

/// Weighted mean squared geodesic distance from `base` to the sample.
template <ManifoldLike M>
double variance(const M& m, const WeightedSample<M>& sample, const typename M::Point& base) {
  const double total = validate_sample(m, sample);
  if (!m.belongs(base)) {
    throw NotOnManifoldError("variance: base point is off the manifold");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    const double d = m.dist(base, sample.points[i]);
    acc += sample.weights[i] * d * d;
  }
  return acc / total;
}

template <ManifoldLike M>
struct FrechetResult {
  typename M::Point mean;
  int iterations = 0;
  /// Squared norm of the tangent update, one entry per iteration; the loop stops
  /// once this drops below epsilon.
  std::vector<double> update_sq_norms;
  bool converged = false;
  /// Weighted variance of the sample about the returned mean.
  double variance = 0.0;
};

/// Weighted Fréchet mean by the fixed-point iteration
///   m <- exp_m( sum_i w_i log_m(x_i) / sum_i w_i ),
/// started from the first sample point, stopping when the squared update norm
/// drops below epsilon or after max_iter iterations.  Non-convergence is
/// reported through the flag, not an error; a cut-locus log failure mid-run
/// raises MeanUndefinedError carrying the iteration index.
template <ManifoldLike M>
FrechetResult<M> frechet_mean(const M& m, const WeightedSample<M>& sample,
                              double epsilon = 1e-10, int max_iter = 64) {
  const double total = validate_sample(m, sample);
  if (!(epsilon > 0.0) || max_iter < 1) {
    throw InvalidInputError("frechet mean: epsilon must be positive and max_iter >= 1");
  }
  FrechetResult<M> out{sample.points.front(), 0, {}, false, 0.0};
  out.update_sq_norms.reserve(static_cast<std::size_t>(max_iter));
  for (int it = 1; it <= max_iter; ++it) {
    typename M::Tangent step = m.zero_tangent(out.mean);
    try {
      for (std::size_t i = 0; i < sample.points.size(); ++i) {
        if (sample.weights[i] == 0.0) {
          continue;
        }
        step = step + m.log(out.mean, sample.points[i]) * (sample.weights[i] / total);
      }
    } catch (const CutLocusError& e) {
      throw MeanUndefinedError("frechet mean: geodesic log failed at iteration " +
                                   std::to_string(it) + " (" + e.what() + ")",
                               it);
    }
    const double sq = m.inner(step, step);
    out.iterations = it;
    out.update_sq_norms.push_back(sq);
    out.mean = m.exp(step);
    if (sq < epsilon) {
      out.converged = true;
      break;
    }
  }
  out.variance = variance(m, sample, out.mean);
  return out;
}

template <ManifoldLike M>
struct TangentPcaResult {
  typename M::Point base;
  /// Descending eigenvalues of the weighted covariance of the log-lifted data.
  Eigen::VectorXd eigenvalues;
  /// Principal directions at `base`, orthonormal in the metric inner product,
  /// ordered to match `eigenvalues`.
  std::vector<typename M::Tangent> components;
};

/// Tangent principal component analysis at an explicit base point: the sample is
/// lifted through log_base, centered about its weighted mean, and the weighted
/// covariance is eigendecomposed in coordinates of an orthonormal tangent basis.
/// Eigenvector signs are pinned (largest-magnitude coefficient positive) so
/// results are deterministic.
template <ManifoldLike M>
TangentPcaResult<M> tangent_pca(const M& m, const WeightedSample<M>& sample,
                                const typename M::Point& base) {
  const double total = validate_sample(m, sample);
  if (!m.belongs(base)) {
    throw NotOnManifoldError("tangent pca: base point is off the manifold");
  }
  const std::vector<typename M::Tangent> basis = orthonormal_tangent_basis(m, base);
  const int d = m.dim();
  const int count = static_cast<int>(sample.points.size());

  Eigen::MatrixXd coords(d, count);
  for (int j = 0; j < count; ++j) {
    const typename M::Tangent lift = m.log(base, sample.points[static_cast<std::size_t>(j)]);
    for (int i = 0; i < d; ++i) {
      coords(i, j) = m.inner(basis[static_cast<std::size_t>(i)], lift);
    }
  }

  Eigen::VectorXd w(count);
  for (int j = 0; j < count; ++j) {
    w(j) = sample.weights[static_cast<std::size_t>(j)] / total;
  }
  const Eigen::VectorXd mu = coords * w;
  Eigen::MatrixXd centered = coords.colwise() - mu;
  Eigen::MatrixXd cov = centered * w.asDiagonal() * centered.transpose();
  cov = 0.5 * (cov + cov.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw Error("tangent pca: covariance eigendecomposition failed");
  }

  TangentPcaResult<M> out{base, Eigen::VectorXd(d), {}};
  out.components.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const int src = d - 1 - k;  // solver orders ascending; report descending
    out.eigenvalues(k) = eig.eigenvalues()(src);
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    int pivot = 0;
    for (int i = 1; i < d; ++i) {
      if (std::abs(v(i)) > std::abs(v(pivot))) {
        pivot = i;
      }
    }
    if (v(pivot) < 0.0) {
      v = -v;
    }
    typename M::Tangent comp = m.zero_tangent(base);
    for (int i = 0; i < d; ++i) {
      comp = comp + basis[static_cast<std::size_t>(i)] * v(i);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

/// Tangent PCA about the Fréchet mean of the sample (computed with the given
/// stopping parameters; a non-converged mean is still used, matching its role
/// as the best available center).
template <ManifoldLike M>
TangentPcaResult<M> tangent_pca(const M& m, const WeightedSample<M>& sample,
                                double epsilon = 1e-10, int max_iter = 64) {
  const FrechetResult<M> fr = frechet_mean(m, sample, epsilon, max_iter);
  return tangent_pca(m, sample, fr.mean);
}

}  // namespace riem
