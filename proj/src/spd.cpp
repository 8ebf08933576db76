#include "riem/spd.hpp"

#include <cmath>
#include <string>

namespace riem {

SpdManifold::SpdManifold(int n, TolerancePolicy tol) : n_(n), tol_(tol) {
  tol_.validate();
  if (n_ < 1) {
    throw InvalidInputError("spd: matrix order must be at least 1");
  }
}

bool SpdManifold::belongs(const Eigen::MatrixXd& s) const {
  if (s.rows() != n_ || s.cols() != n_ || !s.allFinite() || !is_symmetric(s, tol_.atol)) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrize(s),
                                                     Eigen::EigenvaluesOnly);
  return eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > tol_.atol;
}

void SpdManifold::require_member(const Point& p, const char* what) const {
  if (!belongs(p)) {
    throw NotOnManifoldError(std::string(what) +
                             ": matrix is not symmetric positive definite within atol");
  }
}

SpdManifold::Point SpdManifold::random_uniform(std::mt19937_64& rng, double bound) const {
  if (!(bound > 0.0)) {
    throw InvalidInputError("spd random_uniform: bound must be positive");
  }
  std::uniform_real_distribution<double> unif(-bound, bound);
  Eigen::MatrixXd w(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const double value = unif(rng);
      w(i, j) = value;
      w(j, i) = value;
    }
  }
  return {sym_expm(w, tol_)};
}

SpdManifold::Point SpdManifold::exp(const Tangent& t) const {
  require_member(t.base, "spd exp");
  if (t.m.rows() != n_ || t.m.cols() != n_ || !t.m.allFinite() ||
      !is_symmetric(t.m, tol_.atol)) {
    throw InvalidInputError("spd exp: tangent must be a symmetric n x n matrix");
  }
  const SqrtPair r = spd_sqrt_inv_sqrt(t.base.s, tol_);
  const Eigen::MatrixXd inner = symmetrize(r.inv_sqrt * symmetrize(t.m) * r.inv_sqrt);
  return {symmetrize(r.sqrt * sym_expm(inner, tol_) * r.sqrt)};
}

SpdManifold::Tangent SpdManifold::log(const Point& p, const Point& q) const {
  require_member(p, "spd log");
  require_member(q, "spd log");
  const SqrtPair r = spd_sqrt_inv_sqrt(p.s, tol_);
  const Eigen::MatrixXd inner = symmetrize(r.inv_sqrt * q.s * r.inv_sqrt);
  return {symmetrize(r.sqrt * sym_logm(inner, tol_) * r.sqrt), p};
}

double SpdManifold::dist_riemannian(const Point& p, const Point& q) const {
  require_member(p, "spd dist");
  require_member(q, "spd dist");
  const SqrtPair r = spd_sqrt_inv_sqrt(p.s, tol_);
  const Eigen::MatrixXd inner = symmetrize(r.inv_sqrt * q.s * r.inv_sqrt);
  return sym_logm(inner, tol_).norm();
}

double SpdManifold::dist_log_euclidean(const Point& p, const Point& q) const {
  require_member(p, "spd dist");
  require_member(q, "spd dist");
  return (sym_logm(q.s, tol_) - sym_logm(p.s, tol_)).norm();
}

double SpdManifold::dist_frobenius(const Point& p, const Point& q) const {
  require_member(p, "spd dist");
  require_member(q, "spd dist");
  return (q.s - p.s).norm();
}

double SpdManifold::inner(const Tangent& u, const Tangent& v) const {
  require_matching_base(u.base.s, v.base.s, "spd inner", tol_.atol);
  const Eigen::LLT<Eigen::MatrixXd> llt(symmetrize(u.base.s));
  if (llt.info() != Eigen::Success) {
    throw NotOnManifoldError("spd inner: base point is not positive definite");
  }
  const Eigen::MatrixXd a = llt.solve(u.m);
  const Eigen::MatrixXd b = llt.solve(v.m);
  return (a * b).trace();
}

double SpdManifold::norm(const Tangent& t) const {
  return std::sqrt(std::max(inner(t, t), 0.0));
}

SpdManifold::Tangent SpdManifold::zero_tangent(const Point& p) const {
  return {Eigen::MatrixXd::Zero(n_, n_), p};
}

SpdManifold::Tangent SpdManifold::to_tangent(const Point& p, const Eigen::MatrixXd& w) const {
  require_member(p, "spd to_tangent");
  if (w.rows() != n_ || w.cols() != n_ || !w.allFinite()) {
    throw InvalidInputError("spd to_tangent: wrong ambient dimensions");
  }
  return {symmetrize(w), p};
}

SpdManifold::Tangent SpdManifold::metric_gradient(const Point& p,
                                                  const Eigen::MatrixXd& g) const {
  require_member(p, "spd metric_gradient");
  if (g.rows() != n_ || g.cols() != n_ || !g.allFinite()) {
    throw InvalidInputError("spd metric_gradient: wrong ambient dimensions");
  }
  return {symmetrize(p.s * symmetrize(g) * p.s), p};
}

std::vector<SpdManifold::Tangent> SpdManifold::tangent_basis_candidates(const Point& p) const {
  require_member(p, "spd tangent basis");
  std::vector<Tangent> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n_, n_);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      out.push_back({e, p});
    }
  }
  return out;
}

SpdManifold::Tangent SpdManifold::dist_sq_gradient(const Point& p, const Point& q) const {
  return log(p, q) * -2.0;
}

}  // namespace riem
