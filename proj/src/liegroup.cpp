#include "riem/liegroup.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace riem {

namespace {

void require_finite_vector(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidInputError(std::string(what) + ": input has non-finite entries");
  }
}

void require_rotation_3(const Eigen::Matrix3d& r, const TolerancePolicy& tol,
                        const char* what) {
  if (!r.allFinite() ||
      (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol.atol ||
      std::abs(r.determinant() - 1.0) > tol.atol) {
    throw NotOnManifoldError(std::string(what) + ": matrix is not a rotation within atol");
  }
}

/// Unit quaternion for r with nonnegative scalar part; ties at a vanishing
/// scalar part are broken by making the first vector component of magnitude
/// above 1e-12 positive.
Eigen::Quaterniond canonical_quaternion(const Eigen::Matrix3d& r) {
  Eigen::Quaterniond q(r);
  q.normalize();
  double sign = 0.0;
  if (q.w() > 0.0) {
    sign = 1.0;
  } else if (q.w() < 0.0) {
    sign = -1.0;
  } else {
    for (int i = 0; i < 3 && sign == 0.0; ++i) {
      if (std::abs(q.vec()(i)) > 1e-12) {
        sign = q.vec()(i) > 0.0 ? 1.0 : -1.0;
      }
    }
    if (sign == 0.0) {
      sign = 1.0;
    }
  }
  q.coeffs() *= sign;
  return q;
}

Eigen::Matrix2d rotation_2(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

/// V(theta) for the planar rigid-motion exponential: V u is the translation of
/// Exp(theta, u).
Eigen::Matrix2d planar_translation_jacobian(double theta, const TolerancePolicy& tol) {
  const double a = sin_over_x(theta, tol.taylor_threshold);
  const double b = theta * one_minus_cos_over_x2(theta, tol.taylor_threshold);
  Eigen::Matrix2d v;
  v << a, -b, b, a;
  return v;
}

}  // namespace

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& w, const TolerancePolicy& tol) {
  tol.validate();
  if (!w.allFinite()) {
    throw InvalidInputError("rotation-vector exp: input has non-finite entries");
  }
  return skew_expm_3(w, tol);
}

So3LogResult so3_log(const Eigen::Matrix3d& r, const TolerancePolicy& tol) {
  tol.validate();
  require_rotation_3(r, tol, "rotation log");
  const Eigen::Quaterniond q = canonical_quaternion(r);
  const double s = q.vec().norm();
  const double theta = 2.0 * std::atan2(s, q.w());
  double factor;
  if (s < tol.taylor_threshold) {
    // 2 asin(s)/s = 2 (1 + s^2/6 + 3 s^4/40 + ...)
    factor = 2.0 + s * s / 3.0 + s * s * s * s * (3.0 / 20.0);
  } else {
    factor = theta / s;
  }
  So3LogResult out;
  out.w = factor * q.vec();
  out.near_pi = (std::numbers::pi - theta) <= tol.atol;
  return out;
}

Eigen::Matrix3d so3_left_jacobian(const Eigen::Vector3d& w, const TolerancePolicy& tol) {
  tol.validate();
  if (!w.allFinite()) {
    throw InvalidInputError("rotation left Jacobian: input has non-finite entries");
  }
  const double t = w.norm();
  const Eigen::Matrix3d k = skew3(w);
  return Eigen::Matrix3d::Identity() + one_minus_cos_over_x2(t, tol.taylor_threshold) * k +
         x_minus_sin_over_x3(t, tol.taylor_threshold) * (k * k);
}

Eigen::Vector4d quaternion_from_rotation(const Eigen::Matrix3d& r,
                                         const TolerancePolicy& tol) {
  tol.validate();
  require_rotation_3(r, tol, "quaternion from rotation");
  const Eigen::Quaterniond q = canonical_quaternion(r);
  return {q.w(), q.x(), q.y(), q.z()};
}

Eigen::Matrix3d rotation_from_quaternion(const Eigen::Vector4d& q) {
  if (!q.allFinite() || q.norm() < 1e-12) {
    throw InvalidInputError("rotation from quaternion: quaternion must be nonzero and finite");
  }
  Eigen::Quaterniond quat(q(0), q(1), q(2), q(3));
  quat.normalize();
  return quat.toRotationMatrix();
}

Eigen::MatrixXd algebra_jacobian(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || !m.allFinite()) {
    throw InvalidInputError("algebra jacobian: input must be a finite square matrix");
  }
  const auto d = m.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
  for (int k = 1; k <= 120; ++k) {
    term = (term * m) / static_cast<double>(k + 1);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * std::max(1.0, sum.cwiseAbs().maxCoeff())) {
      return sum;
    }
  }
  throw Error("algebra jacobian: series did not converge in 120 terms");
}

// ---------------------------------------------------------------------------
// SpecialOrthogonal
// ---------------------------------------------------------------------------

SpecialOrthogonal::SpecialOrthogonal(int n, TolerancePolicy tol) : n_(n), tol_(tol) {
  tol_.validate();
  if (n_ < 1) {
    throw InvalidInputError("rotation group: order must be at least 1");
  }
}

SpecialOrthogonal::Element SpecialOrthogonal::identity() const {
  return {Eigen::MatrixXd::Identity(n_, n_)};
}

bool SpecialOrthogonal::belongs(const Eigen::MatrixXd& m, double atol) const {
  if (m.rows() != n_ || m.cols() != n_ || !m.allFinite()) {
    return false;
  }
  const Eigen::MatrixXd gram = m.transpose() * m;
  return (gram - Eigen::MatrixXd::Identity(n_, n_)).cwiseAbs().maxCoeff() <= atol &&
         std::abs(m.determinant() - 1.0) <= atol;
}

void SpecialOrthogonal::require_member(const Element& e, const char* what) const {
  if (!belongs(e)) {
    throw NotOnManifoldError(std::string(what) + ": matrix is not a rotation within atol");
  }
}

SpecialOrthogonal::Element SpecialOrthogonal::compose(const Element& a,
                                                      const Element& b) const {
  require_member(a, "rotation compose");
  require_member(b, "rotation compose");
  return {a.r * b.r};
}

SpecialOrthogonal::Element SpecialOrthogonal::inverse(const Element& a) const {
  require_member(a, "rotation inverse");
  return {a.r.transpose()};
}

SpecialOrthogonal::Element SpecialOrthogonal::group_exp(const Eigen::VectorXd& w) const {
  require_finite_vector(w, "rotation exp");
  if (w.size() != dim()) {
    throw InvalidInputError("rotation exp: coordinate vector has the wrong dimension");
  }
  if (n_ == 2) {
    return {rotation_2(w(0))};
  }
  if (n_ == 3) {
    return {skew_expm_3(w.head<3>(), tol_)};
  }
  throw InvalidInputError("rotation exp: closed form implemented for orders 2 and 3 only");
}

Eigen::VectorXd SpecialOrthogonal::group_log(const Element& e) const {
  require_member(e, "rotation log");
  if (n_ == 2) {
    Eigen::VectorXd w(1);
    w(0) = std::atan2(e.r(1, 0), e.r(0, 0));
    return w;
  }
  if (n_ == 3) {
    return so3_log(Eigen::Matrix3d(e.r), tol_).w;
  }
  throw InvalidInputError("rotation log: closed form implemented for orders 2 and 3 only");
}

Eigen::MatrixXd SpecialOrthogonal::ad_matrix(const Eigen::VectorXd& w) const {
  require_finite_vector(w, "rotation ad");
  if (w.size() != dim()) {
    throw InvalidInputError("rotation ad: coordinate vector has the wrong dimension");
  }
  if (n_ == 2) {
    return Eigen::MatrixXd::Zero(1, 1);
  }
  if (n_ == 3) {
    return skew3(w.head<3>());
  }
  throw InvalidInputError("rotation ad: implemented for orders 2 and 3 only");
}

Eigen::MatrixXd SpecialOrthogonal::adjoint_matrix(const Element& e) const {
  require_member(e, "rotation adjoint");
  if (n_ == 2) {
    return Eigen::MatrixXd::Identity(1, 1);
  }
  if (n_ == 3) {
    return e.r;
  }
  throw InvalidInputError("rotation adjoint: implemented for orders 2 and 3 only");
}

SpecialOrthogonal::Element SpecialOrthogonal::random_element(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      g(i, j) = gauss(rng);
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd rfac = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n_; ++j) {
    if (rfac(j, j) < 0.0) {
      q.col(j) *= -1.0;
    }
  }
  if (q.determinant() < 0.0) {
    q.col(n_ - 1) *= -1.0;
  }
  return {q};
}

double SpecialOrthogonal::element_gap(const Element& a, const Element& b) {
  if (a.r.rows() != b.r.rows() || a.r.cols() != b.r.cols() || a.r.size() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return (a.r - b.r).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// SpecialEuclidean
// ---------------------------------------------------------------------------

SpecialEuclidean::SpecialEuclidean(int n, TolerancePolicy tol) : rot_(n, tol) {}

SpecialEuclidean::Element SpecialEuclidean::identity() const {
  return {Eigen::MatrixXd::Identity(n(), n()), Eigen::VectorXd::Zero(n())};
}

bool SpecialEuclidean::belongs(const Element& e, double atol) const {
  return e.t.size() == n() && e.t.allFinite() && rot_.belongs(e.r, atol);
}

void SpecialEuclidean::require_member(const Element& e, const char* what) const {
  if (!belongs(e)) {
    throw NotOnManifoldError(std::string(what) +
                             ": element is not a rigid motion within atol");
  }
}

SpecialEuclidean::Element SpecialEuclidean::compose(const Element& a,
                                                    const Element& b) const {
  require_member(a, "rigid compose");
  require_member(b, "rigid compose");
  return {a.r * b.r, a.r * b.t + a.t};
}

SpecialEuclidean::Element SpecialEuclidean::inverse(const Element& a) const {
  require_member(a, "rigid inverse");
  Eigen::MatrixXd rt = a.r.transpose();
  Eigen::VectorXd t = -(rt * a.t);
  return {std::move(rt), std::move(t)};
}

Eigen::MatrixXd SpecialEuclidean::homogeneous(const Element& e) const {
  require_member(e, "rigid homogeneous export");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n() + 1, n() + 1);
  m.topLeftCorner(n(), n()) = e.r;
  m.topRightCorner(n(), 1) = e.t;
  m(n(), n()) = 1.0;
  return m;
}

SpecialEuclidean::Element SpecialEuclidean::from_homogeneous(const Eigen::MatrixXd& m) const {
  const double atol = tolerance().atol;
  if (m.rows() != n() + 1 || m.cols() != n() + 1 || !m.allFinite()) {
    throw InvalidInputError("rigid import: expected an (n+1) x (n+1) finite matrix");
  }
  if (m.row(n()).head(n()).cwiseAbs().maxCoeff() > atol ||
      std::abs(m(n(), n()) - 1.0) > atol) {
    throw InvalidInputError("rigid import: bottom row must be (0, ..., 0, 1)");
  }
  Element e{m.topLeftCorner(n(), n()), m.topRightCorner(n(), 1)};
  require_member(e, "rigid import");
  return e;
}

SpecialEuclidean::Element SpecialEuclidean::group_exp(const Eigen::VectorXd& xi) const {
  require_finite_vector(xi, "rigid exp");
  if (xi.size() != dim()) {
    throw InvalidInputError("rigid exp: coordinate vector has the wrong dimension");
  }
  const TolerancePolicy& tol = tolerance();
  if (n() == 2) {
    const double theta = xi(0);
    return {rotation_2(theta), planar_translation_jacobian(theta, tol) * xi.tail(2)};
  }
  if (n() == 3) {
    const Eigen::Vector3d w = xi.head(3);
    return {skew_expm_3(w, tol), so3_left_jacobian(w, tol) * xi.tail(3)};
  }
  throw InvalidInputError("rigid exp: closed form implemented for orders 2 and 3 only");
}

Eigen::VectorXd SpecialEuclidean::group_log(const Element& e) const {
  require_member(e, "rigid log");
  const TolerancePolicy& tol = tolerance();
  if (n() == 2) {
    const double theta = std::atan2(e.r(1, 0), e.r(0, 0));
    if (std::numbers::pi - std::abs(theta) <= tol.atol) {
      throw CutLocusError("rigid log: rotation angle within atol of pi");
    }
    const Eigen::Matrix2d v = planar_translation_jacobian(theta, tol);
    Eigen::VectorXd xi(3);
    xi(0) = theta;
    xi.tail(2) = v.inverse() * e.t;
    return xi;
  }
  if (n() == 3) {
    const So3LogResult lr = so3_log(Eigen::Matrix3d(e.r), tol);
    if (lr.near_pi) {
      throw CutLocusError("rigid log: rotation angle within atol of pi");
    }
    Eigen::VectorXd xi(6);
    xi.head(3) = lr.w;
    xi.tail(3) = so3_left_jacobian(lr.w, tol).partialPivLu().solve(e.t);
    return xi;
  }
  throw InvalidInputError("rigid log: closed form implemented for orders 2 and 3 only");
}

Eigen::MatrixXd SpecialEuclidean::ad_matrix(const Eigen::VectorXd& xi) const {
  require_finite_vector(xi, "rigid ad");
  if (xi.size() != dim()) {
    throw InvalidInputError("rigid ad: coordinate vector has the wrong dimension");
  }
  if (n() == 2) {
    const double theta = xi(0);
    const Eigen::Vector2d u = xi.tail(2);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    // Bracket: [(theta1, u1), (theta2, u2)] = (0, theta1 K u2 - theta2 K u1)
    // with K the quarter-turn generator [[0, -1], [1, 0]].
    Eigen::Matrix2d k;
    k << 0.0, -1.0, 1.0, 0.0;
    m.block(1, 0, 2, 1) = -(k * u);
    m.block(1, 1, 2, 2) = theta * k;
    return m;
  }
  if (n() == 3) {
    const Eigen::Matrix3d what = skew3(xi.head<3>());
    const Eigen::Matrix3d uhat = skew3(xi.tail<3>());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    m.block(0, 0, 3, 3) = what;
    m.block(3, 0, 3, 3) = uhat;
    m.block(3, 3, 3, 3) = what;
    return m;
  }
  throw InvalidInputError("rigid ad: implemented for orders 2 and 3 only");
}

Eigen::MatrixXd SpecialEuclidean::adjoint_matrix(const Element& e) const {
  require_member(e, "rigid adjoint");
  if (n() == 2) {
    Eigen::Matrix2d k;
    k << 0.0, -1.0, 1.0, 0.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 1.0;
    m.block(1, 0, 2, 1) = -(k * e.t);
    m.block(1, 1, 2, 2) = e.r;
    return m;
  }
  if (n() == 3) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    m.block(0, 0, 3, 3) = e.r;
    m.block(3, 0, 3, 3) = skew3(e.t.head<3>()) * e.r;
    m.block(3, 3, 3, 3) = e.r;
    return m;
  }
  throw InvalidInputError("rigid adjoint: implemented for orders 2 and 3 only");
}

SpecialEuclidean::Element SpecialEuclidean::random_element(std::mt19937_64& rng) const {
  Element e{rot_.random_element(rng).r, Eigen::VectorXd(n())};
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n(); ++i) {
    e.t(i) = gauss(rng);
  }
  return e;
}

double SpecialEuclidean::element_gap(const Element& a, const Element& b) {
  const double rot_gap = SpecialOrthogonal::element_gap({a.r}, {b.r});
  if (a.t.size() != b.t.size() || a.t.size() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(rot_gap, (a.t - b.t).cwiseAbs().maxCoeff());
}

}  // namespace riem
