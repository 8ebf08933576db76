#include "riem/numerics.hpp"

#include <cmath>
#include <string>

namespace riem {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInputError(std::string(what) + ": non-finite entries");
  }
}

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidInputError(std::string(what) + ": expected a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Checked symmetrization shared by the symmetric kernels.
Eigen::MatrixXd checked_symmetric_input(const Eigen::MatrixXd& m, const TolerancePolicy& tol,
                                        const char* what) {
  tol.validate();
  require_square(m, what);
  require_finite(m, what);
  if (!is_symmetric(m, tol.atol)) {
    throw InvalidInputError(std::string(what) + ": asymmetry " + std::to_string(asymmetry(m)) +
                            " exceeds atol");
  }
  return symmetrize(m);
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_sym_eig(const Eigen::MatrixXd& s,
                                                             const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  if (eig.info() != Eigen::Success) {
    throw Error(std::string(what) + ": eigendecomposition failed");
  }
  return eig;
}

}  // namespace

void TolerancePolicy::validate() const {
  if (!(atol > 0.0) || !(rtol > 0.0) || !(taylor_threshold > 0.0)) {
    throw InvalidInputError("tolerance policy: atol, rtol and taylor_threshold must be positive");
  }
}

double asymmetry(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

bool is_symmetric(const Eigen::MatrixXd& m, double atol) {
  return m.rows() == m.cols() && asymmetry(m) <= atol;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

double sin_over_x(double x, double threshold) {
  const double x2 = x * x;
  if (std::abs(x) < threshold) {
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double one_minus_cos_over_x2(double x, double threshold) {
  const double x2 = x * x;
  if (std::abs(x) < threshold) {
    return 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
  }
  return (1.0 - std::cos(x)) / x2;
}

double x_minus_sin_over_x3(double x, double threshold) {
  const double x2 = x * x;
  if (std::abs(x) < threshold) {
    return 1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0;
  }
  return (x - std::sin(x)) / (x2 * x);
}

double sinh_over_x(double x, double threshold) {
  const double x2 = x * x;
  if (std::abs(x) < threshold) {
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

Eigen::MatrixXd sym_expm(const Eigen::MatrixXd& m, const TolerancePolicy& tol) {
  const Eigen::MatrixXd sym = checked_symmetric_input(m, tol, "sym_expm");
  const auto eig = solve_sym_eig(sym, "sym_expm");
  const Eigen::VectorXd lam = eig.eigenvalues().array().exp();
  return symmetrize(eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose());
}

Eigen::MatrixXd sym_logm(const Eigen::MatrixXd& s, const TolerancePolicy& tol) {
  const Eigen::MatrixXd sym = checked_symmetric_input(s, tol, "sym_logm");
  const auto eig = solve_sym_eig(sym, "sym_logm");
  if (eig.eigenvalues().minCoeff() <= tol.atol) {
    throw NotPositiveDefiniteError("sym_logm: smallest eigenvalue " +
                                   std::to_string(eig.eigenvalues().minCoeff()) +
                                   " is not above atol");
  }
  const Eigen::VectorXd lam = eig.eigenvalues().array().log();
  return symmetrize(eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose());
}

SqrtPair spd_sqrt_inv_sqrt(const Eigen::MatrixXd& s, const TolerancePolicy& tol) {
  const Eigen::MatrixXd sym = checked_symmetric_input(s, tol, "spd_sqrt_inv_sqrt");
  const auto eig = solve_sym_eig(sym, "spd_sqrt_inv_sqrt");
  if (eig.eigenvalues().minCoeff() <= tol.atol) {
    throw NotPositiveDefiniteError("spd_sqrt_inv_sqrt: smallest eigenvalue " +
                                   std::to_string(eig.eigenvalues().minCoeff()) +
                                   " is not above atol");
  }
  const Eigen::VectorXd root = eig.eigenvalues().array().sqrt();
  const Eigen::VectorXd inv_root = root.array().inverse();
  SqrtPair out;
  out.sqrt = symmetrize(eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose());
  out.inv_sqrt =
      symmetrize(eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().transpose());
  return out;
}

Eigen::Matrix3d skew3(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(),  //
      w.z(), 0.0, -w.x(),   //
      -w.y(), w.x(), 0.0;
  return m;
}

Eigen::Vector3d unskew3(const Eigen::Matrix3d& m, const TolerancePolicy& tol) {
  tol.validate();
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol.atol) {
    throw InvalidInputError("unskew3: input is not skew-symmetric within atol");
  }
  return {0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))};
}

Eigen::Matrix3d skew_expm_3(const Eigen::Vector3d& w, const TolerancePolicy& tol) {
  tol.validate();
  if (!w.allFinite()) {
    throw InvalidInputError("skew_expm_3: non-finite entries");
  }
  const double theta = w.norm();
  const Eigen::Matrix3d k = skew3(w);
  return Eigen::Matrix3d::Identity() + sin_over_x(theta, tol.taylor_threshold) * k +
         one_minus_cos_over_x2(theta, tol.taylor_threshold) * (k * k);
}

}  // namespace riem
