#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "riem/numerics.hpp"

namespace riem {

/// Minkowski bilinear form <a, b> = -a_0 b_0 + sum_{i>=1} a_i b_i; component 0 is the
/// time coordinate.
double minkowski_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Hyperbolic space H^n as the upper sheet of the hyperboloid <x, x> = -1, x_0 > 0,
/// embedded in Minkowski space R^{1,n}.
class Hyperboloid {
 public:
  struct Point {
    Eigen::VectorXd x;  ///< extrinsic coordinates, time component first
  };

  /// Ambient vector that is Minkowski-orthogonal to its base point.
  struct Tangent {
    Eigen::VectorXd v;
    Point base;

    Tangent operator*(double a) const { return {v * a, base}; }
    Tangent operator-() const { return {-v, base}; }
    Tangent operator+(const Tangent& o) const {
      require_matching_base(base.x, o.base.x, "hyperbolic tangent addition");
      return {v + o.v, base};
    }
  };

  using Ambient = Eigen::VectorXd;

  /// H^dim lives in R^{dim+1}; dim must be at least 1.
  explicit Hyperboloid(int dim, TolerancePolicy tol = {});

  int dim() const { return dim_; }
  int ambient_dim() const { return dim_ + 1; }
  const TolerancePolicy& tol() const { return tol_; }

  bool belongs(const Point& p) const { return belongs(p, tol_.atol); }
  bool belongs(const Point& p, double atol) const;

  /// Base point (1, 0, ..., 0) of the sheet.
  Point origin() const;

  /// Minkowski-orthogonal projection of an ambient vector into the tangent space at p.
  Tangent to_tangent(const Point& p, const Eigen::VectorXd& w) const;

  /// Riemannian gradient from a Euclidean one: raise the index with the Minkowski
  /// metric (flip the time component), then project to the tangent space.
  Tangent metric_gradient(const Point& p, const Eigen::VectorXd& euclidean_grad) const;

  /// Intrinsic coordinates are the spatial components; u -> (sqrt(1 + |u|^2), u).
  Point from_intrinsic(const Eigen::VectorXd& u) const;
  Eigen::VectorXd to_intrinsic(const Point& p) const;

  Point exp(const Tangent& t) const;

  /// Log map; globally defined on the sheet (no cut locus).
  Tangent log(const Point& p, const Point& q) const;

  /// Geodesic distance arccosh(max(-<p, q>, 1)), evaluated in a form that stays
  /// accurate for nearby points.
  double dist(const Point& p, const Point& q) const;

  double inner(const Tangent& u, const Tangent& v) const;
  double norm(const Tangent& t) const;
  Tangent zero_tangent(const Point& p) const;

  std::vector<Tangent> tangent_basis_candidates(const Point& p) const;

  /// Point at geodesic distance uniform in [0, radius] from the origin, in a uniform
  /// random direction.
  Point random_point(std::mt19937_64& rng, double radius = 2.0) const;

  /// Poincare-disk coordinates u_i = x_i / (1 + x_0); always |u| < 1.
  Eigen::VectorXd to_poincare_disk(const Point& p) const;
  Point from_poincare_disk(const Eigen::VectorXd& u) const;

  /// Gradient of p -> dist(p, q)^2, i.e. -2 log_p(q).
  Tangent dist_sq_gradient(const Point& p, const Point& q) const;

 private:
  void require_member(const Point& p, const char* what) const;

  int dim_;
  TolerancePolicy tol_;
};

}  // namespace riem
