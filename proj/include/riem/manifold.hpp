#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

#include "riem/error.hpp"

namespace riem {

/// Shared surface of every manifold-with-metric in the library.  Tangent types carry
/// their base point and support scaling and same-base addition.
template <class M>
concept ManifoldLike =
    requires(const M& m, const typename M::Point& p, const typename M::Tangent& t) {
      { m.dim() } -> std::convertible_to<int>;
      { m.belongs(p) } -> std::convertible_to<bool>;
      { m.exp(t) } -> std::convertible_to<typename M::Point>;
      { m.log(p, p) } -> std::convertible_to<typename M::Tangent>;
      { m.dist(p, p) } -> std::convertible_to<double>;
      { m.inner(t, t) } -> std::convertible_to<double>;
      { m.norm(t) } -> std::convertible_to<double>;
      { m.zero_tangent(p) } -> std::convertible_to<typename M::Tangent>;
      { t * 1.0 } -> std::convertible_to<typename M::Tangent>;
      { t + t } -> std::convertible_to<typename M::Tangent>;
    };

/// Constant-speed geodesic t -> exp_p(t v), defined by a start point and a velocity.
template <ManifoldLike M>
class Geodesic {
 public:
  Geodesic(M manifold, typename M::Tangent velocity)
      : manifold_(std::move(manifold)), velocity_(std::move(velocity)) {}

  /// Geodesic with curve(0) = p and curve(1) = q.
  static Geodesic between(const M& m, const typename M::Point& p, const typename M::Point& q) {
    return Geodesic(m, m.log(p, q));
  }

  typename M::Point operator()(double t) const { return manifold_.exp(velocity_ * t); }

  const typename M::Point& start() const { return velocity_.base; }
  const typename M::Tangent& velocity() const { return velocity_; }
  double speed() const { return manifold_.norm(velocity_); }

 private:
  M manifold_;
  typename M::Tangent velocity_;
};

/// Orthonormal basis of the tangent space at p, built by pivoted Gram-Schmidt over the
/// manifold's spanning candidates in the metric inner product.  Deterministic: pivots
/// prefer the largest remaining norm, first index on ties.
template <ManifoldLike M>
std::vector<typename M::Tangent> orthonormal_tangent_basis(const M& m,
                                                           const typename M::Point& p) {
  auto cand = m.tangent_basis_candidates(p);
  std::vector<double> sq(cand.size());
  double max_sq = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    sq[i] = m.inner(cand[i], cand[i]);
    max_sq = std::max(max_sq, sq[i]);
  }
  const int want = m.dim();
  std::vector<typename M::Tangent> basis;
  basis.reserve(static_cast<std::size_t>(want));
  std::vector<bool> used(cand.size(), false);
  for (int k = 0; k < want; ++k) {
    std::size_t pick = cand.size();
    double best = -1.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!used[i] && sq[i] > best) {
        best = sq[i];
        pick = i;
      }
    }
    if (pick == cand.size() || !(best > 1e-20 * max_sq)) {
      throw Error("tangent basis: candidates are rank deficient");
    }
    used[pick] = true;
    auto b = cand[pick];
    // A second orthogonalization pass keeps the Gram matrix at identity to ~1e-14.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& prev : basis) b = b + prev * (-m.inner(prev, b));
    }
    const double nb = m.norm(b);
    if (!(nb > 1e-10 * std::sqrt(max_sq))) {
      throw Error("tangent basis: candidates are rank deficient");
    }
    b = b * (1.0 / nb);
    basis.push_back(std::move(b));
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (used[i]) continue;
      cand[i] = cand[i] + basis.back() * (-m.inner(basis.back(), cand[i]));
      sq[i] = m.inner(cand[i], cand[i]);
    }
  }
  return basis;
}

}  // namespace riem
