#pragma once

#include <Eigen/Dense>

#include "riem/error.hpp"

namespace riem {

/// Numerical tolerances threaded through every manifold and kernel.
struct TolerancePolicy {
  double atol = 1e-8;              ///< absolute tolerance for membership and symmetry checks
  double rtol = 1e-5;              ///< relative tolerance for convergence-style comparisons
  double taylor_threshold = 1e-6;  ///< below this argument size, series replace closed forms

  /// Throws InvalidInputError unless all three tolerances are positive.
  void validate() const;
};

/// max |m_ij - m_ji| over all entries; 0 for the empty matrix.
double asymmetry(const Eigen::MatrixXd& m);

bool is_symmetric(const Eigen::MatrixXd& m, double atol);

/// (m + m^T) / 2
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m);

// Scalar kernels with 4th-order series used below `threshold` so the closed form
// never divides by a vanishing argument.  Series truncation keeps relative error
// below 1e-12 at the switch point.
double sin_over_x(double x, double threshold);            // sin(x)/x
double one_minus_cos_over_x2(double x, double threshold); // (1-cos x)/x^2
double x_minus_sin_over_x3(double x, double threshold);   // (x-sin x)/x^3
double sinh_over_x(double x, double threshold);           // sinh(x)/x

/// Matrix exponential of a symmetric matrix via eigendecomposition.
/// Input asymmetry up to tol.atol is repaired by symmetrization; beyond that it is an error.
Eigen::MatrixXd sym_expm(const Eigen::MatrixXd& m, const TolerancePolicy& tol = {});

/// Matrix logarithm of a symmetric positive definite matrix via eigendecomposition.
/// Eigenvalues at or below tol.atol raise NotPositiveDefiniteError.
Eigen::MatrixXd sym_logm(const Eigen::MatrixXd& s, const TolerancePolicy& tol = {});

struct SqrtPair {
  Eigen::MatrixXd sqrt;      ///< S^{1/2}
  Eigen::MatrixXd inv_sqrt;  ///< S^{-1/2}
};

/// Principal square root and inverse square root of an SPD matrix from one eigendecomposition.
SqrtPair spd_sqrt_inv_sqrt(const Eigen::MatrixXd& s, const TolerancePolicy& tol = {});

/// Cross-product matrix [w]_x with [w]_x v = w x v.
Eigen::Matrix3d skew3(const Eigen::Vector3d& w);

/// Inverse of skew3; the argument must be skew-symmetric within tol.atol.
Eigen::Vector3d unskew3(const Eigen::Matrix3d& m, const TolerancePolicy& tol = {});

/// Rotation matrix exp([w]_x) by the Rodrigues formula,
///   R = I + sin(t)/t [w]_x + (1-cos t)/t^2 [w]_x^2,  t = |w|,
/// with the series branch below tol.taylor_threshold.
Eigen::Matrix3d skew_expm_3(const Eigen::Vector3d& w, const TolerancePolicy& tol = {});

/// Guard for operations that combine tangent vectors: their base points must agree
/// entrywise within atol.
template <class A, class B>
void require_matching_base(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                           const char* what, double atol = 1e-8) {
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      (a - b).cwiseAbs().maxCoeff() > atol) {
    throw BaseMismatchError(std::string(what) + ": tangent base points differ");
  }
}

}  // namespace riem
