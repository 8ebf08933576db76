#include "riem/sphere.hpp"

#include <cmath>
#include <string>

namespace riem {

namespace {

void require_finite_vec(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidInputError(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

Sphere::Sphere(int dim, TolerancePolicy tol) : dim_(dim), tol_(tol) {
  tol_.validate();
  if (dim_ < 1) {
    throw InvalidInputError("sphere: dimension must be at least 1");
  }
}

bool Sphere::belongs(const Point& p, double atol) const {
  return p.x.size() == ambient_dim() && p.x.allFinite() && std::abs(p.x.norm() - 1.0) <= atol;
}

void Sphere::require_member(const Point& p, const char* what) const {
  if (!belongs(p)) {
    throw NotOnManifoldError(std::string(what) + ": point is not on the sphere within atol");
  }
}

Sphere::Point Sphere::project(const Eigen::VectorXd& y) const {
  if (y.size() != ambient_dim()) {
    throw InvalidInputError("sphere project: wrong ambient dimension");
  }
  require_finite_vec(y, "sphere project");
  const double n = y.norm();
  if (n <= tol_.atol) {
    throw InvalidInputError("sphere project: vector too close to the origin");
  }
  return {y / n};
}

Sphere::Tangent Sphere::to_tangent(const Point& p, const Eigen::VectorXd& w) const {
  require_member(p, "sphere to_tangent");
  if (w.size() != ambient_dim()) {
    throw InvalidInputError("sphere to_tangent: wrong ambient dimension");
  }
  require_finite_vec(w, "sphere to_tangent");
  return {w - w.dot(p.x) * p.x, p};
}

Sphere::Tangent Sphere::metric_gradient(const Point& p, const Eigen::VectorXd& g) const {
  return to_tangent(p, g);
}

Sphere::Point Sphere::from_intrinsic(const Eigen::VectorXd& u) const {
  if (u.size() != dim_) {
    throw InvalidInputError("sphere chart: wrong intrinsic dimension");
  }
  require_finite_vec(u, "sphere chart");
  const double s = u.squaredNorm();
  if (s >= 1.0) {
    throw OutOfChartError("sphere chart: |u| must be below 1");
  }
  Eigen::VectorXd x(ambient_dim());
  x.head(dim_) = u;
  x(dim_) = std::sqrt(1.0 - s);
  return {x};
}

Eigen::VectorXd Sphere::to_intrinsic(const Point& p) const {
  require_member(p, "sphere chart");
  if (!(p.x(dim_) > 0.0)) {
    throw OutOfChartError("sphere chart: point is outside the upper-hemisphere chart");
  }
  return p.x.head(dim_);
}

Sphere::Point Sphere::exp(const Tangent& t) const {
  require_member(t.base, "sphere exp");
  if (t.v.size() != ambient_dim()) {
    throw InvalidInputError("sphere exp: wrong ambient dimension");
  }
  require_finite_vec(t.v, "sphere exp");
  const double theta = t.v.norm();
  if (std::abs(t.v.dot(t.base.x)) > tol_.atol * std::max(1.0, theta)) {
    throw InvalidInputError("sphere exp: vector is not tangent at its base point");
  }
  Eigen::VectorXd y =
      std::cos(theta) * t.base.x + sin_over_x(theta, tol_.taylor_threshold) * t.v;
  // The combination is unit length up to roundoff; renormalizing pins every exp
  // output to the sphere exactly.  Without this, iterated maps (gradient descent,
  // mean fixed-point steps) can amplify radial roundoff geometrically, because the
  // tangent projection at a slightly off-norm point acquires a radial component.
  y /= y.norm();
  return {std::move(y)};
}

Sphere::Tangent Sphere::log(const Point& p, const Point& q) const {
  require_member(p, "sphere log");
  require_member(q, "sphere log");
  if ((p.x + q.x).norm() <= tol_.atol) {
    throw CutLocusError("sphere log: antipodal points have no unique geodesic");
  }
  const double c = std::clamp(p.x.dot(q.x), -1.0, 1.0);
  const Eigen::VectorXd u = q.x - c * p.x;
  const double s = u.norm();
  // atan2 keeps the angle accurate where arccos loses digits (c near +-1).
  const double d = std::atan2(s, c);
  if (s == 0.0) {
    return zero_tangent(p);
  }
  return {(d / s) * u, p};
}

double Sphere::dist(const Point& p, const Point& q) const {
  require_member(p, "sphere dist");
  require_member(q, "sphere dist");
  const double c = std::clamp(p.x.dot(q.x), -1.0, 1.0);
  const double s = (q.x - c * p.x).norm();
  return std::atan2(s, c);
}

double Sphere::inner(const Tangent& u, const Tangent& v) const {
  require_matching_base(u.base.x, v.base.x, "sphere inner", tol_.atol);
  return u.v.dot(v.v);
}

double Sphere::norm(const Tangent& t) const { return t.v.norm(); }

Sphere::Tangent Sphere::zero_tangent(const Point& p) const {
  return {Eigen::VectorXd::Zero(ambient_dim()), p};
}

std::vector<Sphere::Tangent> Sphere::tangent_basis_candidates(const Point& p) const {
  require_member(p, "sphere tangent basis");
  std::vector<Tangent> out;
  out.reserve(ambient_dim());
  for (int i = 0; i < ambient_dim(); ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ambient_dim());
    e(i) = 1.0;
    out.push_back({e - e.dot(p.x) * p.x, p});
  }
  return out;
}

Sphere::Point Sphere::random_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd y(ambient_dim());
  double n = 0.0;
  do {
    for (int i = 0; i < y.size(); ++i) y(i) = gauss(rng);
    n = y.norm();
  } while (n <= tol_.atol);
  return {y / n};
}

Sphere::Tangent Sphere::dist_sq_gradient(const Point& p, const Point& q) const {
  return log(p, q) * -2.0;
}

}  // namespace riem
