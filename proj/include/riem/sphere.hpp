#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "riem/numerics.hpp"

namespace riem {

/// Unit hypersphere S^n embedded in R^{n+1}, carrying the induced round metric.
class Sphere {
 public:
  /// Extrinsic coordinates with |x| = 1 within atol.
  struct Point {
    Eigen::VectorXd x;
  };

  /// Ambient vector orthogonal to its base point.
  struct Tangent {
    Eigen::VectorXd v;
    Point base;

    Tangent operator*(double a) const { return {v * a, base}; }
    Tangent operator-() const { return {-v, base}; }
    Tangent operator+(const Tangent& o) const {
      require_matching_base(base.x, o.base.x, "sphere tangent addition");
      return {v + o.v, base};
    }
  };

  using Ambient = Eigen::VectorXd;

  /// S^dim lives in R^{dim+1}; dim must be at least 1.
  explicit Sphere(int dim, TolerancePolicy tol = {});

  int dim() const { return dim_; }
  int ambient_dim() const { return dim_ + 1; }
  const TolerancePolicy& tol() const { return tol_; }

  bool belongs(const Point& p) const { return belongs(p, tol_.atol); }
  bool belongs(const Point& p, double atol) const;

  /// Radial projection y -> y / |y|.  Vectors with |y| <= atol cannot be projected.
  Point project(const Eigen::VectorXd& y) const;

  /// Orthogonal projection of an ambient vector into the tangent space at p.
  Tangent to_tangent(const Point& p, const Eigen::VectorXd& w) const;

  /// Riemannian gradient from a Euclidean one; for the induced metric this is the
  /// tangent projection.
  Tangent metric_gradient(const Point& p, const Eigen::VectorXd& euclidean_grad) const;

  /// Chart around the pole (0, ..., 0, 1): u -> (u, sqrt(1 - |u|^2)), domain |u| < 1.
  Point from_intrinsic(const Eigen::VectorXd& u) const;

  /// Inverse chart; the point must lie on the open upper hemisphere (last coordinate > 0).
  Eigen::VectorXd to_intrinsic(const Point& p) const;

  Point exp(const Tangent& t) const;

  /// Log map; q antipodal to p (|p + q| <= atol) has no unique geodesic and raises
  /// CutLocusError.  |log_p(q)| = dist(p, q) <= pi.
  Tangent log(const Point& p, const Point& q) const;

  /// Geodesic distance arccos(<p, q>) with the inner product clamped to [-1, 1],
  /// evaluated in a form that stays accurate near 0 and near pi.
  double dist(const Point& p, const Point& q) const;

  double inner(const Tangent& u, const Tangent& v) const;
  double norm(const Tangent& t) const;
  Tangent zero_tangent(const Point& p) const;

  /// Ambient coordinate directions projected at p; spans the tangent space.
  std::vector<Tangent> tangent_basis_candidates(const Point& p) const;

  /// Uniform point from a normalized Gaussian draw; deterministic for a given engine state.
  Point random_point(std::mt19937_64& rng) const;

  /// Gradient of p -> dist(p, q)^2, i.e. -2 log_p(q).
  Tangent dist_sq_gradient(const Point& p, const Point& q) const;

 private:
  void require_member(const Point& p, const char* what) const;

  int dim_;
  TolerancePolicy tol_;
};

}  // namespace riem
