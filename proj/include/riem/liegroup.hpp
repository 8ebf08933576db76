#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "riem/error.hpp"
#include "riem/numerics.hpp"

namespace riem {

// ---------------------------------------------------------------------------
// Rotation-vector chart for SO(3)
// ---------------------------------------------------------------------------

/// Canonical-branch rotation vector: angle in [0, pi].  `near_pi` flags angles
/// within atol of pi, where the axis sign is a deterministic tie-break (first
/// component of the axis with magnitude above 1e-12 made positive) rather than
/// a continuous function of the rotation.
struct So3LogResult {
  Eigen::Vector3d w;
  bool near_pi = false;
};

/// Rodrigues exponential of the rotation vector w (axis times angle).
Eigen::Matrix3d so3_exp(const Eigen::Vector3d& w, const TolerancePolicy& tol = {});

/// Inverse of so3_exp on the canonical branch; never fails on a valid rotation.
So3LogResult so3_log(const Eigen::Matrix3d& r, const TolerancePolicy& tol = {});

/// V(w) = I + (1-cos t)/t^2 [w]_x + (t-sin t)/t^3 [w]_x^2 with t = |w|.
/// This is the left Jacobian of the SO(3) exponential; it also maps algebra
/// translations to group translations in the SE(3) exponential.
Eigen::Matrix3d so3_left_jacobian(const Eigen::Vector3d& w, const TolerancePolicy& tol = {});

/// Unit quaternion (w, x, y, z) with nonnegative scalar part; when the scalar
/// part vanishes (half turns) the sign makes the first nonzero vector component
/// positive, so the double cover is resolved deterministically.
Eigen::Vector4d quaternion_from_rotation(const Eigen::Matrix3d& r,
                                         const TolerancePolicy& tol = {});

/// Rotation matrix of a (near-)unit quaternion (w, x, y, z); the input is
/// normalized, and a zero quaternion is an error.
Eigen::Matrix3d rotation_from_quaternion(const Eigen::Vector4d& q);

/// phi(M) = sum_{k>=0} M^k / (k+1)!, so that M phi(M) = expm(M) - I.  Applied to
/// ad matrices this is the left Jacobian of the group exponential in algebra
/// coordinates.  Evaluated by its everywhere-convergent series with adaptive
/// truncation; intended for the modest spectral radii of pose-sized problems.
Eigen::MatrixXd algebra_jacobian(const Eigen::MatrixXd& m);

// ---------------------------------------------------------------------------
// SO(n): rotation group
// ---------------------------------------------------------------------------

/// Rotation group SO(n).  Group structure (compose, inverse, membership) works
/// for every n; the exponential chart is closed-form for n in {2, 3} and the
/// algebra uses rotation-vector coordinates (n = 2: (theta); n = 3: axis*angle).
class SpecialOrthogonal {
 public:
  struct Element {
    Eigen::MatrixXd r;
  };

  explicit SpecialOrthogonal(int n, TolerancePolicy tol = {});

  int n() const { return n_; }
  /// Dimension of the rotation algebra, n(n-1)/2.
  int dim() const { return n_ * (n_ - 1) / 2; }
  const TolerancePolicy& tolerance() const { return tol_; }

  Element identity() const;

  /// R^T R = I and det R = 1 within atol, all entries finite.
  bool belongs(const Eigen::MatrixXd& m) const { return belongs(m, tol_.atol); }
  bool belongs(const Eigen::MatrixXd& m, double atol) const;
  bool belongs(const Element& e) const { return belongs(e.r); }
  bool belongs(const Element& e, double atol) const { return belongs(e.r, atol); }
  void require_member(const Element& e, const char* what) const;

  Element compose(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;

  /// Closed-form exponential of algebra coordinates; n in {2, 3} only.
  Element group_exp(const Eigen::VectorXd& w) const;

  /// Canonical-branch logarithm (angle in [0, pi]); never fails on a valid
  /// rotation, even at half turns.  n in {2, 3} only.
  Eigen::VectorXd group_log(const Element& e) const;

  /// Matrix of ad_w = [w, .] acting on algebra coordinates; n in {2, 3} only.
  Eigen::MatrixXd ad_matrix(const Eigen::VectorXd& w) const;

  /// Matrix of Ad_e: v -> e v e^{-1} on algebra coordinates; n in {2, 3} only.
  Eigen::MatrixXd adjoint_matrix(const Element& e) const;

  /// Random rotation: QR of a Gaussian matrix with deterministic sign fixes.
  Element random_element(std::mt19937_64& rng) const;

  /// Largest entrywise difference between two elements (infinity on shape
  /// mismatch); used to check that tangent vectors share a base point.
  static double element_gap(const Element& a, const Element& b);

 private:
  int n_;
  TolerancePolicy tol_;
};

// ---------------------------------------------------------------------------
// SE(n): rigid motions
// ---------------------------------------------------------------------------

/// Special Euclidean group of rotations plus translations.  Elements are stored
/// as the (R, t) pair; the (n+1)x(n+1) homogeneous matrix [R t; 0 1] is the
/// import/export format.  Algebra coordinates are (rotation, translation) with
/// the rotation block first.  Closed-form exp/log for n in {2, 3}.
class SpecialEuclidean {
 public:
  struct Element {
    Eigen::MatrixXd r;
    Eigen::VectorXd t;
  };

  explicit SpecialEuclidean(int n, TolerancePolicy tol = {});

  int n() const { return rot_.n(); }
  int rotation_dim() const { return rot_.dim(); }
  /// Algebra dimension: n(n-1)/2 rotation coordinates plus n translations.
  int dim() const { return rot_.dim() + rot_.n(); }
  const TolerancePolicy& tolerance() const { return rot_.tolerance(); }
  const SpecialOrthogonal& rotation_group() const { return rot_; }

  Element identity() const;

  bool belongs(const Element& e) const { return belongs(e, tolerance().atol); }
  bool belongs(const Element& e, double atol) const;
  void require_member(const Element& e, const char* what) const;

  Element compose(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;

  /// [R t; 0 1] block matrix.
  Eigen::MatrixXd homogeneous(const Element& e) const;

  /// Parses the homogeneous block layout; the bottom row must be (0,...,0,1)
  /// within atol and the rotation block must pass membership.
  Element from_homogeneous(const Eigen::MatrixXd& m) const;

  /// Exponential of xi = (w, u): rotation so(n)-exp of w paired with V(w) u.
  Element group_exp(const Eigen::VectorXd& xi) const;

  /// Inverse of group_exp.  Throws CutLocusError when the rotation angle is
  /// within atol of pi, where the canonical branch is about to jump.
  Eigen::VectorXd group_log(const Element& e) const;

  /// Matrix of ad_xi on algebra coordinates; n in {2, 3} only.
  Eigen::MatrixXd ad_matrix(const Eigen::VectorXd& xi) const;

  /// Matrix of Ad_e on algebra coordinates; n in {2, 3} only.
  Eigen::MatrixXd adjoint_matrix(const Element& e) const;

  /// Random rigid motion: random rotation plus standard Gaussian translation.
  Element random_element(std::mt19937_64& rng) const;

  static double element_gap(const Element& a, const Element& b);

 private:
  SpecialOrthogonal rot_;
};

// ---------------------------------------------------------------------------
// Invariant metrics
// ---------------------------------------------------------------------------

enum class MetricSide { left, right };

/// A left- or right-invariant metric on a Lie group, defined by a symmetric
/// positive-definite inner-product matrix on the algebra at the identity.
///
/// Tangent vectors at p are stored as their algebra coordinates xi at the
/// identity, translated by the metric's side:
///   left:  exp_p(xi) = p . Exp(xi),  log_p(q) = Log(p^{-1} q)
///   right: exp_p(xi) = Exp(xi) . p,  log_p(q) = Log(q p^{-1})
/// dist(p, q) = |log_p(q)| in the identity inner product, which makes the
/// distance exactly invariant under the chosen side's translations.
///
/// These maps are the side-translated group exponentials.  For a bi-invariant
/// inner product (the canonical one on SO(n)) they are the true Riemannian
/// exp/log; for general invariant metrics (SE(n) in particular) geodesics of
/// the metric need not be translated one-parameter subgroups, and this class
/// deliberately provides the translated-subgroup curves instead — the standard
/// interpolation contract for poses.  `dist_sq_gradient` is exact for the maps
/// as defined here (see its note).
template <class G>
class InvariantMetric {
 public:
  using Group = G;
  using Point = typename G::Element;

  struct Tangent {
    Eigen::VectorXd xi;  ///< algebra coordinates at the identity, per metric side
    Point base;

    Tangent operator*(double c) const { return {xi * c, base}; }

    Tangent operator+(const Tangent& o) const {
      if (G::element_gap(base, o.base) > 1e-8) {
        throw BaseMismatchError("lie tangent sum: tangent base points differ");
      }
      return {xi + o.xi, base};
    }

    Tangent operator-(const Tangent& o) const { return *this + o * -1.0; }
  };

  InvariantMetric(G group, Eigen::MatrixXd inner_at_identity, MetricSide side)
      : group_(std::move(group)), a_(std::move(inner_at_identity)), side_(side) {
    const TolerancePolicy& tol = group_.tolerance();
    if (a_.rows() != group_.dim() || a_.cols() != group_.dim() || !a_.allFinite()) {
      throw InvalidInputError("invariant metric: inner-product matrix must be d x d over "
                              "the algebra dimension");
    }
    if (!is_symmetric(a_, tol.atol)) {
      throw InvalidInputError("invariant metric: inner-product matrix must be symmetric");
    }
    a_ = symmetrize(a_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a_, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > tol.atol)) {
      throw NotPositiveDefiniteError(
          "invariant metric: inner-product matrix must be positive definite");
    }
    a_llt_.compute(a_);
  }

  /// Identity inner product at the identity: the canonical metric (bi-invariant
  /// on SO(n)).
  static InvariantMetric canonical(G group, MetricSide side = MetricSide::left) {
    const int d = group.dim();
    return InvariantMetric(std::move(group), Eigen::MatrixXd::Identity(d, d), side);
  }

  int dim() const { return group_.dim(); }
  const G& group() const { return group_; }
  MetricSide side() const { return side_; }
  const Eigen::MatrixXd& inner_at_identity() const { return a_; }

  bool belongs(const Point& p) const { return group_.belongs(p); }
  bool belongs(const Point& p, double atol) const { return group_.belongs(p, atol); }

  Point exp(const Tangent& v) const {
    group_.require_member(v.base, "invariant exp");
    const Point step = group_.group_exp(v.xi);
    return side_ == MetricSide::left ? group_.compose(v.base, step)
                                     : group_.compose(step, v.base);
  }

  Tangent log(const Point& p, const Point& q) const {
    group_.require_member(p, "invariant log");
    group_.require_member(q, "invariant log");
    const Point rel = side_ == MetricSide::left ? group_.compose(group_.inverse(p), q)
                                                : group_.compose(q, group_.inverse(p));
    return {group_.group_log(rel), p};
  }

  double inner(const Tangent& u, const Tangent& v) const {
    if (G::element_gap(u.base, v.base) > group_.tolerance().atol) {
      throw BaseMismatchError("invariant inner: tangent base points differ");
    }
    return u.xi.dot(a_ * v.xi);
  }

  double norm(const Tangent& v) const {
    return std::sqrt(std::max(v.xi.dot(a_ * v.xi), 0.0));
  }

  double dist(const Point& p, const Point& q) const { return norm(log(p, q)); }

  Tangent zero_tangent(const Point& p) const {
    group_.require_member(p, "zero tangent");
    return {Eigen::VectorXd::Zero(group_.dim()), p};
  }

  std::vector<Tangent> tangent_basis_candidates(const Point& p) const {
    group_.require_member(p, "tangent basis");
    std::vector<Tangent> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
      e(i) = 1.0;
      out.push_back({std::move(e), p});
    }
    return out;
  }

  /// Gradient with respect to p of q -> dist(p, q)^2, for the exp/log maps as
  /// defined by this class.  Because log is the side-translated group log, the
  /// chain rule brings in the inverse transpose of the algebra Jacobian
  /// J = phi(ad) evaluated at xi = log_p(q):
  ///   grad = -2 A^{-1} J^{-T} A xi
  /// For an ad-invariant inner product (canonical SO(n)) J^{-T} A xi = A xi, and
  /// this reduces to the familiar -2 log_p(q).
  Tangent dist_sq_gradient(const Point& p, const Point& q) const {
    const Tangent lg = log(p, q);
    const Eigen::MatrixXd ad = group_.ad_matrix(lg.xi);
    const Eigen::MatrixXd j =
        algebra_jacobian(side_ == MetricSide::left ? ad : Eigen::MatrixXd(-ad));
    const Eigen::VectorXd rhs = a_ * lg.xi;
    const Eigen::VectorXd y = j.transpose().partialPivLu().solve(rhs);
    Eigen::VectorXd g = a_llt_.solve(y);
    g *= -2.0;
    return {std::move(g), p};
  }

 private:
  G group_;
  Eigen::MatrixXd a_;
  MetricSide side_;
  Eigen::LLT<Eigen::MatrixXd> a_llt_;
};

using RotationMetric = InvariantMetric<SpecialOrthogonal>;
using RigidMetric = InvariantMetric<SpecialEuclidean>;

}  // namespace riem
