#include "riem/hyperbolic.hpp"

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

double minkowski_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw InvalidInputError("minkowski inner: mismatched dimensions");
  }
  return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

Hyperboloid::Hyperboloid(int dim, TolerancePolicy tol) : dim_(dim), tol_(tol) {
  tol_.validate();
  if (dim_ < 1) {
    throw InvalidInputError("hyperboloid: dimension must be at least 1");
  }
}

bool Hyperboloid::belongs(const Point& p, double atol) const {
  if (p.x.size() != ambient_dim() || !p.x.allFinite() || !(p.x(0) > 0.0)) {
    return false;
  }
  // Relative slack: the quadratic form is evaluated from terms of size ~x_0^2.
  const double scale = std::max(1.0, p.x.squaredNorm());
  return std::abs(minkowski_inner(p.x, p.x) + 1.0) <= atol * scale;
}

void Hyperboloid::require_member(const Point& p, const char* what) const {
  if (!belongs(p)) {
    throw NotOnManifoldError(std::string(what) +
                             ": point is not on the hyperboloid sheet within atol");
  }
}

Hyperboloid::Point Hyperboloid::origin() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ambient_dim());
  x(0) = 1.0;
  return {x};
}

Hyperboloid::Tangent Hyperboloid::to_tangent(const Point& p, const Eigen::VectorXd& w) const {
  require_member(p, "hyperbolic to_tangent");
  if (w.size() != ambient_dim()) {
    throw InvalidInputError("hyperbolic to_tangent: wrong ambient dimension");
  }
  require_finite_vec(w, "hyperbolic to_tangent");
  // <p, p> = -1, so adding <w, p> p removes the component along p.
  return {w + minkowski_inner(w, p.x) * p.x, p};
}

Hyperboloid::Tangent Hyperboloid::metric_gradient(const Point& p,
                                                  const Eigen::VectorXd& g) const {
  if (g.size() != ambient_dim()) {
    throw InvalidInputError("hyperbolic metric_gradient: wrong ambient dimension");
  }
  Eigen::VectorXd raised = g;
  raised(0) = -raised(0);
  return to_tangent(p, raised);
}

Hyperboloid::Point Hyperboloid::from_intrinsic(const Eigen::VectorXd& u) const {
  if (u.size() != dim_) {
    throw InvalidInputError("hyperbolic chart: wrong intrinsic dimension");
  }
  require_finite_vec(u, "hyperbolic chart");
  Eigen::VectorXd x(ambient_dim());
  x(0) = std::sqrt(1.0 + u.squaredNorm());
  x.tail(dim_) = u;
  return {x};
}

Eigen::VectorXd Hyperboloid::to_intrinsic(const Point& p) const {
  require_member(p, "hyperbolic chart");
  return p.x.tail(dim_);
}

Hyperboloid::Point Hyperboloid::exp(const Tangent& t) const {
  require_member(t.base, "hyperbolic exp");
  if (t.v.size() != ambient_dim()) {
    throw InvalidInputError("hyperbolic exp: wrong ambient dimension");
  }
  require_finite_vec(t.v, "hyperbolic exp");
  const double r2 = minkowski_inner(t.v, t.v);
  if (std::abs(minkowski_inner(t.v, t.base.x)) >
      tol_.atol * std::max(1.0, std::sqrt(std::max(r2, 0.0)))) {
    throw InvalidInputError("hyperbolic exp: vector is not tangent at its base point");
  }
  const double r = std::sqrt(std::max(r2, 0.0));
  return {std::cosh(r) * t.base.x + sinh_over_x(r, tol_.taylor_threshold) * t.v};
}

Hyperboloid::Tangent Hyperboloid::log(const Point& p, const Point& q) const {
  require_member(p, "hyperbolic log");
  require_member(q, "hyperbolic log");
  const double b = -minkowski_inner(p.x, q.x);
  // Roundoff in the Minkowski product grows with the size of its terms.
  if (b < 1.0 - tol_.atol * std::max(1.0, p.x(0) * q.x(0))) {
    throw NotOnManifoldError("hyperbolic log: points do not lie on a common sheet");
  }
  const double c = std::max(b, 1.0);
  const Eigen::VectorXd u = q.x - c * p.x;
  const double s = std::sqrt(std::max(minkowski_inner(u, u), 0.0));
  if (s == 0.0) {
    return zero_tangent(p);
  }
  // |u| = sinh(d); asinh recovers d with full precision for nearby points.
  const double d = std::asinh(s);
  return {(d / s) * u, p};
}

double Hyperboloid::dist(const Point& p, const Point& q) const {
  require_member(p, "hyperbolic dist");
  require_member(q, "hyperbolic dist");
  const double b = -minkowski_inner(p.x, q.x);
  if (b < 1.0 - tol_.atol * std::max(1.0, p.x(0) * q.x(0))) {
    throw NotOnManifoldError("hyperbolic dist: points do not lie on a common sheet");
  }
  const double c = std::max(b, 1.0);
  const Eigen::VectorXd u = q.x - c * p.x;
  return std::asinh(std::sqrt(std::max(minkowski_inner(u, u), 0.0)));
}

double Hyperboloid::inner(const Tangent& u, const Tangent& v) const {
  require_matching_base(u.base.x, v.base.x, "hyperbolic inner", tol_.atol);
  return minkowski_inner(u.v, v.v);
}

double Hyperboloid::norm(const Tangent& t) const {
  return std::sqrt(std::max(minkowski_inner(t.v, t.v), 0.0));
}

Hyperboloid::Tangent Hyperboloid::zero_tangent(const Point& p) const {
  return {Eigen::VectorXd::Zero(ambient_dim()), p};
}

std::vector<Hyperboloid::Tangent> Hyperboloid::tangent_basis_candidates(const Point& p) const {
  require_member(p, "hyperbolic tangent basis");
  std::vector<Tangent> out;
  out.reserve(ambient_dim());
  for (int i = 0; i < ambient_dim(); ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ambient_dim());
    e(i) = 1.0;
    out.push_back({e + minkowski_inner(e, p.x) * p.x, p});
  }
  return out;
}

Hyperboloid::Point Hyperboloid::random_point(std::mt19937_64& rng, double radius) const {
  if (!(radius >= 0.0)) {
    throw InvalidInputError("hyperbolic random_point: radius must be nonnegative");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, radius);
  Eigen::VectorXd dir(dim_);
  double n = 0.0;
  do {
    for (int i = 0; i < dim_; ++i) dir(i) = gauss(rng);
    n = dir.norm();
  } while (n <= tol_.atol);
  const double r = unif(rng);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ambient_dim());
  v.tail(dim_) = (r / n) * dir;
  return exp({v, origin()});
}

Eigen::VectorXd Hyperboloid::to_poincare_disk(const Point& p) const {
  require_member(p, "poincare disk");
  return p.x.tail(dim_) / (1.0 + p.x(0));
}

Hyperboloid::Point Hyperboloid::from_poincare_disk(const Eigen::VectorXd& u) const {
  if (u.size() != dim_) {
    throw InvalidInputError("poincare disk: wrong intrinsic dimension");
  }
  require_finite_vec(u, "poincare disk");
  const double s = u.squaredNorm();
  if (s >= 1.0) {
    throw OutOfChartError("poincare disk: |u| must be below 1");
  }
  Eigen::VectorXd x(ambient_dim());
  x(0) = (1.0 + s) / (1.0 - s);
  x.tail(dim_) = (2.0 / (1.0 - s)) * u;
  return {x};
}

Hyperboloid::Tangent Hyperboloid::dist_sq_gradient(const Point& p, const Point& q) const {
  return log(p, q) * -2.0;
}

}  // namespace riem
