#pragma once

// Shared helpers for the test suite: a flat (Euclidean) manifold stub whose
// geometry is known in closed form, plus finite-difference utilities used to
// cross-check gradients and geodesic speeds.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "riem/manifold.hpp"
#include "riem/numerics.hpp"

namespace riem::testing {

/// Scratch directory under the system temp root, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& prefix) {
    static std::atomic<unsigned> counter{0};
    path = std::filesystem::temp_directory_path() /
           (prefix + "_" + std::to_string(counter.fetch_add(1)));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

/// R^n with the identity metric, wrapped in the manifold interface.  Geodesics
/// are straight lines, the Fréchet mean is the weighted arithmetic mean, and
/// tangent PCA is ordinary PCA — closed-form baselines for the statistics code.
class FlatManifold {
 public:
  struct Point {
    Eigen::VectorXd x;
  };

  struct Tangent {
    Eigen::VectorXd v;
    Point base;

    Tangent operator*(double a) const { return {v * a, base}; }
    Tangent operator-() const { return {-v, base}; }
    Tangent operator+(const Tangent& o) const { return {v + o.v, base}; }
  };

  using Ambient = Eigen::VectorXd;

  explicit FlatManifold(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  bool belongs(const Point& p) const {
    return p.x.size() == dim_ && p.x.allFinite();
  }

  Point exp(const Tangent& t) const { return {t.base.x + t.v}; }
  Tangent log(const Point& p, const Point& q) const { return {q.x - p.x, p}; }
  double dist(const Point& p, const Point& q) const { return (q.x - p.x).norm(); }
  double inner(const Tangent& u, const Tangent& v) const { return u.v.dot(v.v); }
  double norm(const Tangent& t) const { return t.v.norm(); }
  Tangent zero_tangent(const Point& p) const {
    return {Eigen::VectorXd::Zero(dim_), p};
  }
  Tangent to_tangent(const Point& p, const Eigen::VectorXd& w) const { return {w, p}; }
  Tangent metric_gradient(const Point& p, const Eigen::VectorXd& g) const { return {g, p}; }

  std::vector<Tangent> tangent_basis_candidates(const Point& p) const {
    std::vector<Tangent> out;
    for (int i = 0; i < dim_; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim_);
      e(i) = 1.0;
      out.push_back({std::move(e), p});
    }
    return out;
  }

  Tangent dist_sq_gradient(const Point& p, const Point& q) const {
    return {2.0 * (p.x - q.x), p};
  }

 private:
  int dim_;
};

/// Central finite difference of f along the geodesic through p with velocity u:
///   d/dh f(exp_p(h u)) at h = 0.
template <class M, class F>
double directional_derivative(const M& m, const typename M::Point& p,
                              const typename M::Tangent& u, F&& f, double h) {
  const typename M::Point plus = m.exp(u * h);
  const typename M::Point minus = m.exp(u * (-h));
  return (f(plus) - f(minus)) / (2.0 * h);
}

inline std::mt19937_64 seeded_rng(unsigned long long seed) { return std::mt19937_64(seed); }

}  // namespace riem::testing
