#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "riem/numerics.hpp"

namespace riem {

/// One graph: its adjacency matrix plus a class label and a display name.
struct ConnectomeRecord {
  std::string name;
  std::string label;
  Eigen::MatrixXd adjacency;
};

struct LaplacianConfig {
  /// Ridge added to the graph Laplacian so the result is positive definite.
  double gamma = 1.0;
};

/// Validates the adjacency (square, symmetric within atol, zero diagonal,
/// nonnegative entries) and returns (D - A) + gamma I, where D is the degree
/// matrix.  gamma must exceed atol so the result is safely positive definite.
Eigen::MatrixXd regularized_laplacian(const Eigen::MatrixXd& adjacency,
                                      const LaplacianConfig& config,
                                      const TolerancePolicy& tol = {});

/// Distance used between regularized Laplacians.
enum class GraphMetric { riemannian, log_euclidean, frobenius };

/// Parses "riemannian" | "log_euclidean" | "frobenius".
GraphMetric graph_metric_from_name(const std::string& name);
std::string graph_metric_name(GraphMetric metric);

/// Loads `dir`/labels.csv (rows "filename,label", no header) and each listed
/// adjacency CSV.  Record order follows the labels file.
std::vector<ConnectomeRecord> load_connectome_dir(const std::filesystem::path& dir,
                                                  const TolerancePolicy& tol = {});

struct ClassificationReport {
  std::vector<std::string> names;
  std::vector<std::string> true_labels;
  std::vector<std::string> predicted_labels;
  /// Sorted unique class labels; prediction ties resolve to the earliest.
  std::vector<std::string> classes;
  /// Pairwise distances between regularized Laplacians under `metric`.
  Eigen::MatrixXd distances;
  /// Median off-diagonal distance (the kernel bandwidth heuristic).
  double sigma = 0.0;
  /// Bandwidth actually used: sigma, or 1 when sigma degenerates to ~0.
  double kernel_sigma = 1.0;
  bool degenerate_kernel = false;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::string metric;
  double gamma = 0.0;
};

/// Builds the regularized Laplacians, their pairwise distance matrix, the
/// Gaussian kernel k(i,j) = exp(-d^2 / (2 sigma^2)) with the median-distance
/// bandwidth, and leave-one-out kernel nearest-class-mean predictions.
ClassificationReport classify_connectomes(const std::vector<ConnectomeRecord>& records,
                                          const LaplacianConfig& config, GraphMetric metric,
                                          const TolerancePolicy& tol = {});

nlohmann::json report_to_json(const ClassificationReport& report);

}  // namespace riem
