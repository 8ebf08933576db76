#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "riem/numerics.hpp"

namespace riem {

/// Symmetric positive definite n x n matrices with the affine-invariant metric
/// <U, V>_S = trace(S^{-1} U S^{-1} V).  Matrices whose smallest eigenvalue is not
/// above atol are rejected rather than regularized.
class SpdManifold {
 public:
  struct Point {
    Eigen::MatrixXd s;
  };

  /// Symmetric matrix anchored at a base point.
  struct Tangent {
    Eigen::MatrixXd m;
    Point base;

    Tangent operator*(double a) const { return {m * a, base}; }
    Tangent operator-() const { return {-m, base}; }
    Tangent operator+(const Tangent& o) const {
      require_matching_base(base.s, o.base.s, "spd tangent addition");
      return {m + o.m, base};
    }
  };

  using Ambient = Eigen::MatrixXd;

  explicit SpdManifold(int n, TolerancePolicy tol = {});

  int n() const { return n_; }
  int dim() const { return n_ * (n_ + 1) / 2; }
  const TolerancePolicy& tol() const { return tol_; }

  /// Symmetric within atol and smallest eigenvalue above atol.
  bool belongs(const Eigen::MatrixXd& s) const;
  bool belongs(const Point& p) const { return belongs(p.s); }

  /// sym_expm of a symmetric matrix with independent uniform entries in
  /// [-bound, bound]; always SPD, deterministic for a given engine state.
  Point random_uniform(std::mt19937_64& rng, double bound = 1.0) const;

  /// exp_S(V) = S^{1/2} expm(S^{-1/2} V S^{-1/2}) S^{1/2}.
  Point exp(const Tangent& t) const;

  /// log_S(T) = S^{1/2} logm(S^{-1/2} T S^{-1/2}) S^{1/2}; globally defined.
  Tangent log(const Point& p, const Point& q) const;

  /// Affine-invariant distance |logm(S1^{-1/2} S2 S1^{-1/2})|_F.
  double dist(const Point& p, const Point& q) const { return dist_riemannian(p, q); }
  double dist_riemannian(const Point& p, const Point& q) const;

  /// |logm(S2) - logm(S1)|_F.
  double dist_log_euclidean(const Point& p, const Point& q) const;

  /// |S2 - S1|_F.
  double dist_frobenius(const Point& p, const Point& q) const;

  double inner(const Tangent& u, const Tangent& v) const;
  double norm(const Tangent& t) const;
  Tangent zero_tangent(const Point& p) const;

  /// Symmetrization of an ambient matrix, anchored at p.
  Tangent to_tangent(const Point& p, const Eigen::MatrixXd& w) const;

  /// Riemannian gradient from a Euclidean one: S sym(G) S.
  Tangent metric_gradient(const Point& p, const Eigen::MatrixXd& euclidean_grad) const;

  /// Symmetrized coordinate matrices; spans the tangent space.
  std::vector<Tangent> tangent_basis_candidates(const Point& p) const;

  /// Gradient of p -> dist(p, q)^2, i.e. -2 log_p(q).
  Tangent dist_sq_gradient(const Point& p, const Point& q) const;

 private:
  void require_member(const Point& p, const char* what) const;

  int n_;
  TolerancePolicy tol_;
};

}  // namespace riem
