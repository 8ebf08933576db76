#include "riem/connectome.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "riem/io.hpp"

namespace riem {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) {
    return values[n / 2];
  }
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Eigen::MatrixXd regularized_laplacian(const Eigen::MatrixXd& adjacency,
                                      const LaplacianConfig& config,
                                      const TolerancePolicy& tol) {
  tol.validate();
  if (!(config.gamma > tol.atol)) {
    throw InvalidInputError("laplacian: gamma must be positive");
  }
  const Eigen::Index n = adjacency.rows();
  if (n < 1 || adjacency.cols() != n || !adjacency.allFinite()) {
    throw InvalidInputError("laplacian: adjacency must be a finite square matrix");
  }
  if (!is_symmetric(adjacency, tol.atol)) {
    throw InvalidInputError("laplacian: adjacency must be symmetric within atol");
  }
  if (adjacency.diagonal().cwiseAbs().maxCoeff() > tol.atol) {
    throw InvalidInputError("laplacian: adjacency diagonal must be zero");
  }
  if (adjacency.minCoeff() < -tol.atol) {
    throw InvalidInputError("laplacian: adjacency entries must be nonnegative");
  }
  const Eigen::MatrixXd a = symmetrize(adjacency);
  Eigen::MatrixXd lap = -a;
  lap.diagonal() = a.rowwise().sum() - a.diagonal() +
                   Eigen::VectorXd::Constant(n, config.gamma);
  return lap;
}

GraphMetric graph_metric_from_name(const std::string& name) {
  if (name == "riemannian") {
    return GraphMetric::riemannian;
  }
  if (name == "log_euclidean") {
    return GraphMetric::log_euclidean;
  }
  if (name == "frobenius") {
    return GraphMetric::frobenius;
  }
  throw InvalidInputError("unknown metric '" + name +
                          "' (expected riemannian, log_euclidean, or frobenius)");
}

std::string graph_metric_name(GraphMetric metric) {
  switch (metric) {
    case GraphMetric::riemannian:
      return "riemannian";
    case GraphMetric::log_euclidean:
      return "log_euclidean";
    case GraphMetric::frobenius:
      return "frobenius";
  }
  throw InvalidInputError("unknown metric value");
}

std::vector<ConnectomeRecord> load_connectome_dir(const std::filesystem::path& dir,
                                                  const TolerancePolicy& tol) {
  tol.validate();
  const std::filesystem::path labels_path = dir / "labels.csv";
  const std::string labels_text = read_text_file(labels_path);

  std::vector<ConnectomeRecord> records;
  std::set<std::string> seen;
  std::istringstream stream(labels_text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (trimmed(line).empty()) {
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidInputError(labels_path.string() + ":" + std::to_string(line_no) +
                              ": expected 'filename,label'");
    }
    ConnectomeRecord rec;
    rec.name = trimmed(line.substr(0, comma));
    rec.label = trimmed(line.substr(comma + 1));
    if (rec.name.empty() || rec.label.empty()) {
      throw InvalidInputError(labels_path.string() + ":" + std::to_string(line_no) +
                              ": filename and label must both be nonempty");
    }
    if (!seen.insert(rec.name).second) {
      throw InvalidInputError(labels_path.string() + ": duplicate entry for '" + rec.name +
                              "'");
    }
    rec.adjacency = read_matrix_csv(dir / rec.name);
    records.push_back(std::move(rec));
  }
  if (records.empty()) {
    throw InvalidInputError(labels_path.string() + ": no records listed");
  }
  return records;
}

ClassificationReport classify_connectomes(const std::vector<ConnectomeRecord>& records,
                                          const LaplacianConfig& config, GraphMetric metric,
                                          const TolerancePolicy& tol) {
  tol.validate();
  const int count = static_cast<int>(records.size());
  if (count < 2) {
    throw InvalidInputError("classification needs at least two records");
  }
  const Eigen::Index n = records.front().adjacency.rows();

  std::vector<Eigen::MatrixXd> laplacians;
  laplacians.reserve(records.size());
  for (const ConnectomeRecord& rec : records) {
    if (rec.adjacency.rows() != n || rec.adjacency.cols() != n) {
      throw InvalidInputError("record '" + rec.name +
                              "': adjacency size differs from the first record");
    }
    try {
      laplacians.push_back(regularized_laplacian(rec.adjacency, config, tol));
    } catch (const InvalidInputError& e) {
      throw InvalidInputError("record '" + rec.name + "': " + e.what());
    }
  }

  // Per-record factors so each pairwise distance costs one small eigensolve at most.
  std::vector<SqrtPair> roots;
  std::vector<Eigen::MatrixXd> logs;
  if (metric == GraphMetric::riemannian) {
    roots.reserve(laplacians.size());
    for (const Eigen::MatrixXd& lap : laplacians) {
      roots.push_back(spd_sqrt_inv_sqrt(lap, tol));
    }
  } else if (metric == GraphMetric::log_euclidean) {
    logs.reserve(laplacians.size());
    for (const Eigen::MatrixXd& lap : laplacians) {
      logs.push_back(sym_logm(lap, tol));
    }
  }

  ClassificationReport report;
  report.metric = graph_metric_name(metric);
  report.gamma = config.gamma;
  report.distances = Eigen::MatrixXd::Zero(count, count);
  std::vector<double> offdiag;
  offdiag.reserve(static_cast<std::size_t>(count) * (count - 1) / 2);
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      double d = 0.0;
      switch (metric) {
        case GraphMetric::riemannian: {
          const Eigen::MatrixXd inner = symmetrize(
              roots[static_cast<std::size_t>(i)].inv_sqrt * laplacians[static_cast<std::size_t>(j)] *
              roots[static_cast<std::size_t>(i)].inv_sqrt);
          d = sym_logm(inner, tol).norm();
          break;
        }
        case GraphMetric::log_euclidean:
          d = (logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(i)]).norm();
          break;
        case GraphMetric::frobenius:
          d = (laplacians[static_cast<std::size_t>(j)] - laplacians[static_cast<std::size_t>(i)])
                  .norm();
          break;
      }
      report.distances(i, j) = d;
      report.distances(j, i) = d;
      offdiag.push_back(d);
    }
  }

  report.sigma = median(std::move(offdiag));
  report.degenerate_kernel = !(report.sigma > tol.atol);
  report.kernel_sigma = report.degenerate_kernel ? 1.0 : report.sigma;

  Eigen::MatrixXd kernel(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      const double d = report.distances(i, j);
      kernel(i, j) = std::exp(-d * d / (2.0 * report.kernel_sigma * report.kernel_sigma));
    }
  }

  std::set<std::string> class_set;
  for (const ConnectomeRecord& rec : records) {
    report.names.push_back(rec.name);
    report.true_labels.push_back(rec.label);
    class_set.insert(rec.label);
  }
  report.classes.assign(class_set.begin(), class_set.end());

  // Leave-one-out: record i is assigned the class whose remaining members have
  // the highest mean kernel similarity to it; ties keep the earliest class.
  int correct = 0;
  for (int i = 0; i < count; ++i) {
    std::string best_class;
    double best_score = -1.0;
    for (const std::string& cls : report.classes) {
      double sum = 0.0;
      int members = 0;
      for (int j = 0; j < count; ++j) {
        if (j == i || records[static_cast<std::size_t>(j)].label != cls) {
          continue;
        }
        sum += kernel(i, j);
        ++members;
      }
      if (members == 0) {
        continue;
      }
      const double score = sum / members;
      if (score > best_score) {
        best_score = score;
        best_class = cls;
      }
    }
    if (best_class.empty()) {
      throw InvalidInputError("classification: every class is a singleton; leave-one-out "
                              "has no reference members");
    }
    report.predicted_labels.push_back(best_class);
    if (best_class == report.true_labels[static_cast<std::size_t>(i)]) {
      ++correct;
    }
  }
  report.accuracy = static_cast<double>(correct) / count;

  double f1_sum = 0.0;
  for (const std::string& cls : report.classes) {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    for (int i = 0; i < count; ++i) {
      const bool is_true = report.true_labels[static_cast<std::size_t>(i)] == cls;
      const bool is_pred = report.predicted_labels[static_cast<std::size_t>(i)] == cls;
      tp += (is_true && is_pred) ? 1 : 0;
      fp += (!is_true && is_pred) ? 1 : 0;
      fn += (is_true && !is_pred) ? 1 : 0;
    }
    const double precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    const double recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    const double f1 =
        (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    f1_sum += f1;
  }
  report.macro_f1 = f1_sum / static_cast<double>(report.classes.size());
  return report;
}

nlohmann::json report_to_json(const ClassificationReport& report) {
  nlohmann::json j;
  j["accuracy"] = report.accuracy;
  j["classes"] = report.classes;
  j["classifier"] = "leave-one-out kernel nearest-class-mean";
  j["degenerate_kernel"] = report.degenerate_kernel;
  j["distance_matrix"] = json_from_matrix(report.distances);
  j["gamma"] = report.gamma;
  j["kernel"] = "gaussian";
  j["kernel_bandwidth_rule"] = "median pairwise distance";
  j["kernel_sigma"] = report.kernel_sigma;
  j["macro_f1"] = report.macro_f1;
  j["metric"] = report.metric;
  nlohmann::json recs = nlohmann::json::array();
  for (std::size_t i = 0; i < report.names.size(); ++i) {
    nlohmann::json rec;
    rec["name"] = report.names[i];
    rec["predicted_label"] = report.predicted_labels[i];
    rec["true_label"] = report.true_labels[i];
    recs.push_back(std::move(rec));
  }
  j["records"] = std::move(recs);
  j["sigma"] = report.sigma;
  return j;
}

}  // namespace riem
