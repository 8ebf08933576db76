#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace riem {

/// Flags shared by every subcommand.
struct CommonOptions {
  std::uint64_t seed = 0;
  double atol = 1e-8;
  /// Base output path; commands append .csv / .json / .svg to it.
  std::filesystem::path out;
  /// Data-file format: "csv", "json", or "" for the command's default.
  std::string format;
};

/// Minimize x^T A x over the unit sphere by Riemannian gradient descent.
/// Writes the descent trace (data file) and an orthographic-projection figure
/// (.svg).  Exit 0 on convergence, 2 when max_iter is reached first.
struct OptimizeSphereOptions {
  /// CSV file holding the symmetric positive-definite A; empty means a seeded
  /// random matrix of order `dim`.
  std::filesystem::path matrix_file;
  int dim = 3;
  /// Start point (ambient coordinates, normalized onto the sphere); empty means
  /// the normalized all-ones vector.
  std::vector<double> start;
  double lr = 0.1;
  int max_iter = 1000;
  double grad_tol = 1e-6;
};
int run_optimize_sphere(const CommonOptions& common, const OptimizeSphereOptions& opt);

/// Sample hyperbolic geodesics and draw them in the Poincaré disk.
/// "grid": two families of geodesics crossing near the origin.  "square": four
/// geodesic edges between corner points, sampled at regularly spaced points.
struct PoincareOptions {
  std::string figure = "grid";
  /// Grid: curves per family (odd values include the diameters).  Square:
  /// sample points per edge.
  int resolution = 7;
  /// Grid: sample points per curve.
  int samples = 65;
  /// Geodesic parameter half-range (grid) or corner distance (square).
  double extent = 2.0;
};
int run_poincare(const CommonOptions& common, const PoincareOptions& opt);

/// Classify graph Laplacians: load adjacency CSVs and labels, build regularized
/// Laplacians, compute pairwise distances under the chosen metric, and run the
/// leave-one-out kernel classifier.  Writes the report (.json default).
struct ConnectomeOptions {
  std::filesystem::path data_dir;
  double gamma = 1.0;
  std::string metric = "riemannian";
};
int run_connectome(const CommonOptions& common, const ConnectomeOptions& opt);

/// Interpolate between two rotations (so3) or rigid motions (se3) along the
/// canonical left-invariant geodesic; writes a trajectory table of steps+1
/// rows.  Near-half-turn relative rotations have no unique geodesic: exit 2.
struct GeodesicOptions {
  std::string group = "so3";
  /// so3: rotation vector (3 numbers).  se3: rotation vector then translation
  /// (6 numbers).  Empty means the identity.
  std::vector<double> from;
  std::vector<double> to;
  int steps = 50;
};
int run_geodesic(const CommonOptions& common, const GeodesicOptions& opt);

/// Weighted Fréchet mean of points read from a JSON file, on the named
/// manifold (sphere | hyperboloid | spd).  Writes mean + diagnostics; exit 2
/// when the iteration hits max_iter without converging.
struct FrechetOptions {
  std::filesystem::path points_file;
  std::string manifold = "sphere";
  /// Optional single-column CSV of nonnegative weights (default: all ones).
  std::filesystem::path weights_file;
  double epsilon = 1e-10;
  int max_iter = 64;
};
int run_frechet(const CommonOptions& common, const FrechetOptions& opt);

/// Tangent PCA about the Fréchet mean: the frechet output plus descending
/// eigenvalues and orthonormal principal directions.
struct TpcaOptions {
  std::filesystem::path points_file;
  std::string manifold = "sphere";
  std::filesystem::path weights_file;
  double epsilon = 1e-10;
  int max_iter = 64;
};
int run_tpca(const CommonOptions& common, const TpcaOptions& opt);

}  // namespace riem
