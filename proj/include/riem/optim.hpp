#pragma once

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

#include "riem/error.hpp"
#include "riem/manifold.hpp"
#include "riem/numerics.hpp"
#include "riem/sphere.hpp"

namespace riem {

/// Manifolds that can turn an ambient (Euclidean) gradient into a Riemannian one.
template <class M>
concept MetricGradientManifold =
    ManifoldLike<M> && requires(const M& m, const typename M::Point& p,
                                const typename M::Ambient& g) {
      { m.metric_gradient(p, g) } -> std::convertible_to<typename M::Tangent>;
    };

/// Scalar objective on a manifold, described by its value and its gradient in
/// the ambient (embedding) coordinates.
template <MetricGradientManifold M>
struct ScalarField {
  std::function<double(const typename M::Point&)> value;
  std::function<typename M::Ambient(const typename M::Point&)> euclidean_gradient;
};

/// Riemannian gradient of the field at p: the metric projection of the ambient
/// gradient into the tangent space at p.
template <MetricGradientManifold M>
typename M::Tangent riemannian_gradient(const M& m, const ScalarField<M>& field,
                                        const typename M::Point& p) {
  return m.metric_gradient(p, field.euclidean_gradient(p));
}

/// x -> x^T A x for a symmetric positive-definite A; the benchmark objective
/// whose minimizer over the unit sphere is the smallest-eigenvalue eigenvector.
class QuadraticForm {
 public:
  explicit QuadraticForm(Eigen::MatrixXd a, TolerancePolicy tol = {}) : a_(std::move(a)) {
    tol.validate();
    if (a_.rows() != a_.cols() || a_.rows() < 1 || !a_.allFinite()) {
      throw InvalidInputError("quadratic form: matrix must be finite and square");
    }
    if (!is_symmetric(a_, tol.atol)) {
      throw InvalidInputError("quadratic form: matrix must be symmetric");
    }
    a_ = symmetrize(a_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a_, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > tol.atol)) {
      throw NotPositiveDefiniteError("quadratic form: matrix must be positive definite");
    }
  }

  const Eigen::MatrixXd& matrix() const { return a_; }
  int n() const { return static_cast<int>(a_.rows()); }

  double value(const Eigen::VectorXd& x) const { return x.dot(a_ * x); }
  Eigen::VectorXd euclidean_gradient(const Eigen::VectorXd& x) const { return 2.0 * (a_ * x); }

  /// The form restricted to the unit sphere S^{n-1}, as a descent objective.
  ScalarField<Sphere> sphere_field() const {
    const Eigen::MatrixXd a = a_;
    return {[a](const Sphere::Point& p) { return p.x.dot(a * p.x); },
            [a](const Sphere::Point& p) { return Eigen::VectorXd(2.0 * (a * p.x)); }};
  }

 private:
  Eigen::MatrixXd a_;
};

/// Full record of a gradient-descent run: the visited points with their values
/// and Riemannian gradient norms (one entry per visited point, the start
/// included), plus whether the gradient-norm tolerance was reached.
template <ManifoldLike M>
struct DescentTrace {
  std::vector<typename M::Point> iterates;
  std::vector<double> values;
  std::vector<double> grad_norms;
  bool converged = false;
};

/// Riemannian gradient descent with the exact exponential map as retraction:
///   x <- exp_x(-lr * grad f(x)),
/// stopping when the gradient norm falls below grad_tol (converged) or after
/// max_iter steps.  The trace holds at most max_iter + 1 entries.
template <MetricGradientManifold M>
DescentTrace<M> riemannian_gd(const M& m, const ScalarField<M>& field,
                              const typename M::Point& x0, double lr, int max_iter,
                              double grad_tol) {
  if (!(lr > 0.0)) {
    throw InvalidInputError("gradient descent: learning rate must be positive");
  }
  if (max_iter < 0 || !(grad_tol >= 0.0)) {
    throw InvalidInputError(
        "gradient descent: max_iter must be nonnegative and grad_tol finite");
  }
  if (!m.belongs(x0)) {
    throw NotOnManifoldError("gradient descent: start point is off the manifold");
  }
  DescentTrace<M> trace;
  trace.iterates.reserve(static_cast<std::size_t>(max_iter) + 1);
  typename M::Point x = x0;
  for (int it = 0;; ++it) {
    typename M::Tangent g = riemannian_gradient(m, field, x);
    const double gnorm = m.norm(g);
    trace.iterates.push_back(x);
    trace.values.push_back(field.value(x));
    trace.grad_norms.push_back(gnorm);
    if (gnorm < grad_tol) {
      trace.converged = true;
      break;
    }
    if (it == max_iter) {
      break;
    }
    x = m.exp(g * (-lr));
  }
  return trace;
}

/// Squared geodesic distance between a prediction and the ground truth.
template <ManifoldLike M>
double squared_geodesic_loss(const M& m, const typename M::Point& y_pred,
                             const typename M::Point& y_true) {
  const double d = m.dist(y_pred, y_true);
  return d * d;
}

/// Riemannian gradient of the squared-distance loss with respect to y_pred.
/// Each manifold supplies its closed form: -2 log for the true Riemannian
/// metrics, with the algebra-Jacobian correction on invariant Lie-group metrics
/// whose exp/log are side-translated subgroup maps.
template <ManifoldLike M>
typename M::Tangent loss_gradient(const M& m, const typename M::Point& y_pred,
                                  const typename M::Point& y_true) {
  return m.dist_sq_gradient(y_pred, y_true);
}

}  // namespace riem
