#include "riem/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "riem/connectome.hpp"
#include "riem/hyperbolic.hpp"
#include "riem/io.hpp"
#include "riem/liegroup.hpp"
#include "riem/manifold.hpp"
#include "riem/optim.hpp"
#include "riem/spd.hpp"
#include "riem/sphere.hpp"
#include "riem/stats.hpp"
#include "riem/svg.hpp"

namespace riem {

namespace {

constexpr int kCanvasSize = 512;
constexpr double kCanvasCenter = 256.0;
constexpr double kSphereRadiusPx = 230.0;
constexpr double kDiskRadiusPx = 240.0;

// Fixed palette so emitted figures diff cleanly between runs and versions.
constexpr const char* kOutlineColor = "#888888";
constexpr const char* kPathColor = "#d62728";
constexpr const char* kStartColor = "#2ca02c";
constexpr const char* kEndColor = "#1f77b4";
constexpr const char* kGridColor = "#1f77b4";
constexpr const char* kSquareColor = "#ff7f0e";

TolerancePolicy make_tolerance(const CommonOptions& common) {
  TolerancePolicy tol;
  tol.atol = common.atol;
  tol.validate();
  return tol;
}

std::string resolved_format(const CommonOptions& common, const char* fallback) {
  if (common.format.empty()) {
    return fallback;
  }
  if (common.format != "csv" && common.format != "json") {
    throw InvalidInputError("unknown format '" + common.format + "' (expected csv or json)");
  }
  return common.format;
}

std::filesystem::path with_ext(const CommonOptions& common, const char* ext) {
  if (common.out.empty()) {
    throw InvalidInputError("--out is required");
  }
  std::filesystem::path p = common.out;
  p += ext;
  return p;
}

/// Translates library exceptions into the CLI exit-code contract:
/// 1 for bad input, 2 for numerical failure.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CutLocusError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const MeanUndefinedError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const NotOnManifoldError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const NotPositiveDefiniteError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const OutOfChartError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  }
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.front() = a;
  out.back() = b;
  return out;
}

std::vector<std::string> vector_row(const Eigen::VectorXd& v) {
  std::vector<std::string> row;
  row.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    row.push_back(format_double(v(i)));
  }
  return row;
}

void append_matrix_cells(std::vector<std::string>& row, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(format_double(m(i, j)));
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// optimize-sphere
// ---------------------------------------------------------------------------

int run_optimize_sphere(const CommonOptions& common, const OptimizeSphereOptions& opt) {
  return guarded([&]() -> int {
    const TolerancePolicy tol = make_tolerance(common);
    const std::string fmt = resolved_format(common, "csv");

    Eigen::MatrixXd a;
    if (!opt.matrix_file.empty()) {
      a = read_matrix_csv(opt.matrix_file);
    } else {
      if (opt.dim < 2) {
        throw InvalidInputError("optimize-sphere: --dim must be at least 2");
      }
      std::mt19937_64 rng(common.seed);
      a = SpdManifold(opt.dim, tol).random_uniform(rng, 1.0).s;
    }
    const QuadraticForm form(a, tol);
    const int n = form.n();
    if (n < 2) {
      throw InvalidInputError("optimize-sphere: the matrix order must be at least 2");
    }
    const Sphere sphere(n - 1, tol);

    Eigen::VectorXd raw_start;
    if (opt.start.empty()) {
      raw_start = Eigen::VectorXd::Ones(n);
    } else {
      if (static_cast<int>(opt.start.size()) != n) {
        throw InvalidInputError("optimize-sphere: --start must have " + std::to_string(n) +
                                " coordinates");
      }
      raw_start = Eigen::Map<const Eigen::VectorXd>(opt.start.data(), n);
    }
    const Sphere::Point x0 = sphere.project(raw_start);

    const DescentTrace<Sphere> trace =
        riemannian_gd(sphere, form.sphere_field(), x0, opt.lr, opt.max_iter, opt.grad_tol);

    if (fmt == "csv") {
      std::vector<std::string> header{"iteration", "value", "grad_norm"};
      for (int j = 0; j < n; ++j) {
        header.push_back("x" + std::to_string(j));
      }
      std::string csv = csv_line(header) + "\n";
      for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), format_double(trace.values[i]),
                                     format_double(trace.grad_norms[i])};
        for (Eigen::Index j = 0; j < n; ++j) {
          row.push_back(format_double(trace.iterates[i].x(j)));
        }
        csv += csv_line(row) + "\n";
      }
      write_text_file(with_ext(common, ".csv"), csv);
    } else {
      nlohmann::json j;
      j["converged"] = trace.converged;
      j["values"] = trace.values;
      j["grad_norms"] = trace.grad_norms;
      nlohmann::json pts = nlohmann::json::array();
      for (const Sphere::Point& p : trace.iterates) {
        pts.push_back(json_from_vector(p.x));
      }
      j["iterates"] = std::move(pts);
      j["lr"] = opt.lr;
      j["matrix"] = json_from_matrix(form.matrix());
      write_json_file(with_ext(common, ".json"), j);
    }

    // Orthographic view from +z: drop every coordinate beyond the first two.
    SvgCanvas canvas(kCanvasSize, kCanvasSize);
    canvas.circle(kCanvasCenter, kCanvasCenter, kSphereRadiusPx, kOutlineColor, "none", 1.5);
    std::vector<std::array<double, 2>> px;
    px.reserve(trace.iterates.size());
    for (const Sphere::Point& p : trace.iterates) {
      px.push_back({kCanvasCenter + kSphereRadiusPx * p.x(0),
                    kCanvasCenter - kSphereRadiusPx * p.x(1)});
    }
    if (px.size() >= 2) {
      canvas.polyline(px, kPathColor, 2.0);
    }
    canvas.circle(px.front()[0], px.front()[1], 5.0, "none", kStartColor, 0.0);
    canvas.circle(px.back()[0], px.back()[1], 5.0, "none", kEndColor, 0.0);
    write_text_file(with_ext(common, ".svg"), canvas.str());

    return trace.converged ? 0 : 2;
  });
}

// ---------------------------------------------------------------------------
// poincare
// ---------------------------------------------------------------------------

namespace {

struct DiskCurve {
  int family = 0;  ///< grid: 0/1 for the two families; square: edge index
  int index = 0;   ///< position within the family
  std::vector<double> params;
  std::vector<Eigen::VectorXd> disk;  ///< 2d Poincaré coordinates per sample
};

std::vector<DiskCurve> poincare_grid_curves(const Hyperboloid& h, const PoincareOptions& opt) {
  const Hyperboloid::Point origin = h.origin();
  const std::vector<double> offsets = linspace(-opt.extent, opt.extent, opt.resolution);
  const std::vector<double> params = linspace(-opt.extent, opt.extent, opt.samples);
  std::vector<DiskCurve> curves;
  curves.reserve(static_cast<std::size_t>(2 * opt.resolution));
  for (int family = 0; family < 2; ++family) {
    Eigen::VectorXd base_dir = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd curve_dir = Eigen::VectorXd::Zero(3);
    base_dir(family == 0 ? 1 : 2) = 1.0;
    curve_dir(family == 0 ? 2 : 1) = 1.0;
    for (int ci = 0; ci < opt.resolution; ++ci) {
      const Hyperboloid::Point base =
          h.exp(h.to_tangent(origin, base_dir * offsets[static_cast<std::size_t>(ci)]));
      DiskCurve c{family, ci, params, {}};
      c.disk.reserve(params.size());
      for (const double t : params) {
        c.disk.push_back(h.to_poincare_disk(h.exp(h.to_tangent(base, curve_dir * t))));
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

std::vector<DiskCurve> poincare_square_curves(const Hyperboloid& h,
                                              const PoincareOptions& opt) {
  const Hyperboloid::Point origin = h.origin();
  std::vector<Hyperboloid::Point> corners;
  corners.reserve(4);
  for (int k = 0; k < 4; ++k) {
    const double angle = std::numbers::pi / 4.0 + k * std::numbers::pi / 2.0;
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(3);
    dir(1) = std::cos(angle);
    dir(2) = std::sin(angle);
    corners.push_back(h.exp(h.to_tangent(origin, dir * opt.extent)));
  }
  const std::vector<double> params = linspace(0.0, 1.0, opt.resolution);
  std::vector<DiskCurve> curves;
  curves.reserve(4);
  for (int k = 0; k < 4; ++k) {
    const Geodesic<Hyperboloid> edge =
        Geodesic<Hyperboloid>::between(h, corners[static_cast<std::size_t>(k)],
                                       corners[static_cast<std::size_t>((k + 1) % 4)]);
    DiskCurve c{k, 0, params, {}};
    c.disk.reserve(params.size());
    for (const double t : params) {
      c.disk.push_back(h.to_poincare_disk(edge(t)));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace

int run_poincare(const CommonOptions& common, const PoincareOptions& opt) {
  return guarded([&]() -> int {
    const TolerancePolicy tol = make_tolerance(common);
    const std::string fmt = resolved_format(common, "csv");
    if (opt.figure != "grid" && opt.figure != "square") {
      throw InvalidInputError("poincare: --figure must be grid or square");
    }
    if (opt.resolution < 2) {
      throw InvalidInputError("poincare: --resolution must be at least 2");
    }
    if (opt.samples < 2) {
      throw InvalidInputError("poincare: --samples must be at least 2");
    }
    if (!(opt.extent > 0.0)) {
      throw InvalidInputError("poincare: --extent must be positive");
    }

    const Hyperboloid h(2, tol);
    const bool grid = opt.figure == "grid";
    const std::vector<DiskCurve> curves =
        grid ? poincare_grid_curves(h, opt) : poincare_square_curves(h, opt);

    if (fmt == "csv") {
      std::string csv = grid ? "family,curve,t,disk_x,disk_y\n" : "edge,t,disk_x,disk_y\n";
      for (const DiskCurve& c : curves) {
        for (std::size_t s = 0; s < c.params.size(); ++s) {
          std::vector<std::string> row;
          row.push_back(std::to_string(c.family));
          if (grid) {
            row.push_back(std::to_string(c.index));
          }
          row.push_back(format_double(c.params[s]));
          row.push_back(format_double(c.disk[s](0)));
          row.push_back(format_double(c.disk[s](1)));
          csv += csv_line(row) + "\n";
        }
      }
      write_text_file(with_ext(common, ".csv"), csv);
    } else {
      nlohmann::json j;
      j["figure"] = opt.figure;
      nlohmann::json arr = nlohmann::json::array();
      for (const DiskCurve& c : curves) {
        nlohmann::json jc;
        jc[grid ? "family" : "edge"] = c.family;
        if (grid) {
          jc["index"] = c.index;
        }
        jc["params"] = c.params;
        nlohmann::json pts = nlohmann::json::array();
        for (const Eigen::VectorXd& p : c.disk) {
          pts.push_back(json_from_vector(p));
        }
        jc["points"] = std::move(pts);
        arr.push_back(std::move(jc));
      }
      j["curves"] = std::move(arr);
      write_json_file(with_ext(common, ".json"), j);
    }

    SvgCanvas canvas(kCanvasSize, kCanvasSize);
    canvas.circle(kCanvasCenter, kCanvasCenter, kDiskRadiusPx, "#000000", "none", 1.5);
    const char* color = grid ? kGridColor : kSquareColor;
    for (const DiskCurve& c : curves) {
      std::vector<std::array<double, 2>> px;
      px.reserve(c.disk.size());
      for (const Eigen::VectorXd& p : c.disk) {
        px.push_back({kCanvasCenter + kDiskRadiusPx * p(0),
                      kCanvasCenter - kDiskRadiusPx * p(1)});
      }
      canvas.polyline(px, color, 1.5);
      if (!grid) {
        for (const std::array<double, 2>& dot : px) {
          canvas.circle(dot[0], dot[1], 3.0, "none", color, 0.0);
        }
      }
    }
    write_text_file(with_ext(common, ".svg"), canvas.str());
    return 0;
  });
}

// ---------------------------------------------------------------------------
// connectome
// ---------------------------------------------------------------------------

int run_connectome(const CommonOptions& common, const ConnectomeOptions& opt) {
  return guarded([&]() -> int {
    const TolerancePolicy tol = make_tolerance(common);
    const std::string fmt = resolved_format(common, "json");
    if (opt.data_dir.empty()) {
      throw InvalidInputError("connectome: --data is required");
    }
    const GraphMetric metric = graph_metric_from_name(opt.metric);
    const std::vector<ConnectomeRecord> records = load_connectome_dir(opt.data_dir, tol);
    const ClassificationReport report =
        classify_connectomes(records, LaplacianConfig{opt.gamma}, metric, tol);
    if (report.degenerate_kernel) {
      std::cerr << "warning: degenerate kernel bandwidth (median distance ~ 0); "
                   "falling back to sigma = 1\n";
    }
    if (fmt == "json") {
      write_json_file(with_ext(common, ".json"), report_to_json(report));
    } else {
      write_matrix_csv(with_ext(common, ".csv"), report.distances);
    }
    return 0;
  });
}

// ---------------------------------------------------------------------------
// geodesic
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd parse_fixed_vector(const std::vector<double>& v, int expect,
                                   const char* what) {
  if (v.empty()) {
    return Eigen::VectorXd::Zero(expect);
  }
  if (static_cast<int>(v.size()) != expect) {
    throw InvalidInputError(std::string(what) + ": expected " + std::to_string(expect) +
                            " comma-separated numbers");
  }
  Eigen::VectorXd out = Eigen::Map<const Eigen::VectorXd>(v.data(), expect);
  if (!out.allFinite()) {
    throw InvalidInputError(std::string(what) + ": entries must be finite");
  }
  return out;
}

int run_geodesic_so3(const CommonOptions& common, const GeodesicOptions& opt,
                     const TolerancePolicy& tol, const std::string& fmt) {
  SpecialOrthogonal so3(3, tol);
  const SpecialOrthogonal::Element from = so3.group_exp(parse_fixed_vector(opt.from, 3, "--from"));
  const SpecialOrthogonal::Element to = so3.group_exp(parse_fixed_vector(opt.to, 3, "--to"));

  // The rotation log itself always picks a branch; for interpolation a relative
  // half turn means the shortest path is ambiguous, which is a failure here.
  const SpecialOrthogonal::Element rel = so3.compose(so3.inverse(from), to);
  if (so3_log(Eigen::Matrix3d(rel.r), tol).near_pi) {
    throw CutLocusError("geodesic: endpoint rotations are a half turn apart; "
                        "the shortest path is not unique");
  }

  const RotationMetric metric = RotationMetric::canonical(std::move(so3));
  const Geodesic<RotationMetric> curve = Geodesic<RotationMetric>::between(metric, from, to);
  const std::vector<double> params = linspace(0.0, 1.0, opt.steps + 1);

  if (fmt == "csv") {
    std::string csv = "t,m00,m01,m02,m10,m11,m12,m20,m21,m22,rv0,rv1,rv2\n";
    for (const double t : params) {
      const SpecialOrthogonal::Element sample = curve(t);
      const Eigen::VectorXd rv = metric.group().group_log(sample);
      std::vector<std::string> row{format_double(t)};
      append_matrix_cells(row, sample.r);
      for (Eigen::Index i = 0; i < 3; ++i) {
        row.push_back(format_double(rv(i)));
      }
      csv += csv_line(row) + "\n";
    }
    write_text_file(with_ext(common, ".csv"), csv);
  } else {
    nlohmann::json j;
    j["group"] = "so3";
    j["steps"] = opt.steps;
    nlohmann::json samples = nlohmann::json::array();
    for (const double t : params) {
      const SpecialOrthogonal::Element sample = curve(t);
      nlohmann::json s;
      s["t"] = t;
      s["rotation"] = json_from_matrix(sample.r);
      s["rotation_vector"] = json_from_vector(metric.group().group_log(sample));
      samples.push_back(std::move(s));
    }
    j["samples"] = std::move(samples);
    write_json_file(with_ext(common, ".json"), j);
  }
  return 0;
}

int run_geodesic_se3(const CommonOptions& common, const GeodesicOptions& opt,
                     const TolerancePolicy& tol, const std::string& fmt) {
  SpecialEuclidean se3(3, tol);
  const auto parse_element = [&](const std::vector<double>& v, const char* what) {
    const Eigen::VectorXd raw = parse_fixed_vector(v, 6, what);
    // Element encoding: rotation vector followed by the translation itself.
    return SpecialEuclidean::Element{so3_exp(raw.head<3>(), tol), raw.tail(3)};
  };
  const SpecialEuclidean::Element from = parse_element(opt.from, "--from");
  const SpecialEuclidean::Element to = parse_element(opt.to, "--to");

  const RigidMetric metric = RigidMetric::canonical(std::move(se3));
  // Throws CutLocusError for a relative half turn.
  const Geodesic<RigidMetric> curve = Geodesic<RigidMetric>::between(metric, from, to);
  const std::vector<double> params = linspace(0.0, 1.0, opt.steps + 1);

  if (fmt == "csv") {
    std::string csv =
        "t,m00,m01,m02,m03,m10,m11,m12,m13,m20,m21,m22,m23,m30,m31,m32,m33,"
        "rv0,rv1,rv2,tr0,tr1,tr2\n";
    for (const double t : params) {
      const SpecialEuclidean::Element sample = curve(t);
      const Eigen::Vector3d rv = so3_log(Eigen::Matrix3d(sample.r), tol).w;
      std::vector<std::string> row{format_double(t)};
      append_matrix_cells(row, metric.group().homogeneous(sample));
      for (int i = 0; i < 3; ++i) {
        row.push_back(format_double(rv(i)));
      }
      for (int i = 0; i < 3; ++i) {
        row.push_back(format_double(sample.t(i)));
      }
      csv += csv_line(row) + "\n";
    }
    write_text_file(with_ext(common, ".csv"), csv);
  } else {
    nlohmann::json j;
    j["group"] = "se3";
    j["steps"] = opt.steps;
    nlohmann::json samples = nlohmann::json::array();
    for (const double t : params) {
      const SpecialEuclidean::Element sample = curve(t);
      nlohmann::json s;
      s["t"] = t;
      s["homogeneous"] = json_from_matrix(metric.group().homogeneous(sample));
      s["rotation_vector"] = json_from_vector(so3_log(Eigen::Matrix3d(sample.r), tol).w);
      s["translation"] = json_from_vector(sample.t);
      samples.push_back(std::move(s));
    }
    j["samples"] = std::move(samples);
    write_json_file(with_ext(common, ".json"), j);
  }
  return 0;
}

}  // namespace

int run_geodesic(const CommonOptions& common, const GeodesicOptions& opt) {
  return guarded([&]() -> int {
    const TolerancePolicy tol = make_tolerance(common);
    const std::string fmt = resolved_format(common, "csv");
    if (opt.steps < 1) {
      throw InvalidInputError("geodesic: --steps must be at least 1");
    }
    if (opt.to.empty()) {
      throw InvalidInputError("geodesic: --to is required");
    }
    if (opt.group == "so3") {
      return run_geodesic_so3(common, opt, tol, fmt);
    }
    if (opt.group == "se3") {
      return run_geodesic_se3(common, opt, tol, fmt);
    }
    throw InvalidInputError("geodesic: --group must be so3 or se3");
  });
}

// ---------------------------------------------------------------------------
// frechet / tpca
// ---------------------------------------------------------------------------

namespace {

/// Per-manifold glue for the statistics commands: construction from the first
/// parsed point, point parsing, and serialization of points and tangents.
struct SphereOps {
  using Manifold = Sphere;
  static Sphere make(const TolerancePolicy& tol, const nlohmann::json& first) {
    if (!first.is_array() || first.size() < 2) {
      throw InvalidInputError("sphere points must be arrays of at least 2 coordinates");
    }
    return Sphere(static_cast<int>(first.size()) - 1, tol);
  }
  static Sphere::Point parse(const Sphere& m, const nlohmann::json& j, std::size_t idx) {
    const Eigen::VectorXd v = vector_from_json(j);
    if (v.size() != m.ambient_dim()) {
      throw InvalidInputError("point " + std::to_string(idx) + ": expected " +
                              std::to_string(m.ambient_dim()) + " coordinates");
    }
    return {v};
  }
  static nlohmann::json point_json(const Sphere::Point& p) { return json_from_vector(p.x); }
  static nlohmann::json tangent_json(const Sphere::Tangent& t) {
    return json_from_vector(t.v);
  }
  static std::vector<std::vector<std::string>> point_rows(const Sphere::Point& p) {
    return {vector_row(p.x)};
  }
  static std::vector<std::string> tangent_row(const Sphere::Tangent& t) {
    return vector_row(t.v);
  }
};

struct HyperboloidOps {
  using Manifold = Hyperboloid;
  static Hyperboloid make(const TolerancePolicy& tol, const nlohmann::json& first) {
    if (!first.is_array() || first.size() < 2) {
      throw InvalidInputError("hyperboloid points must be arrays of at least 2 coordinates");
    }
    return Hyperboloid(static_cast<int>(first.size()) - 1, tol);
  }
  static Hyperboloid::Point parse(const Hyperboloid& m, const nlohmann::json& j,
                                  std::size_t idx) {
    const Eigen::VectorXd v = vector_from_json(j);
    if (v.size() != m.ambient_dim()) {
      throw InvalidInputError("point " + std::to_string(idx) + ": expected " +
                              std::to_string(m.ambient_dim()) + " coordinates");
    }
    return {v};
  }
  static nlohmann::json point_json(const Hyperboloid::Point& p) {
    return json_from_vector(p.x);
  }
  static nlohmann::json tangent_json(const Hyperboloid::Tangent& t) {
    return json_from_vector(t.v);
  }
  static std::vector<std::vector<std::string>> point_rows(const Hyperboloid::Point& p) {
    return {vector_row(p.x)};
  }
  static std::vector<std::string> tangent_row(const Hyperboloid::Tangent& t) {
    return vector_row(t.v);
  }
};

struct SpdOps {
  using Manifold = SpdManifold;
  static SpdManifold make(const TolerancePolicy& tol, const nlohmann::json& first) {
    if (!first.is_array() || first.empty() || !first[0].is_array()) {
      throw InvalidInputError("spd points must be square matrices (arrays of rows)");
    }
    return SpdManifold(static_cast<int>(first.size()), tol);
  }
  static SpdManifold::Point parse(const SpdManifold& m, const nlohmann::json& j,
                                  std::size_t idx) {
    const Eigen::MatrixXd s = matrix_from_json(j);
    if (s.rows() != m.n() || s.cols() != m.n()) {
      throw InvalidInputError("point " + std::to_string(idx) + ": expected a " +
                              std::to_string(m.n()) + " x " + std::to_string(m.n()) +
                              " matrix");
    }
    return {s};
  }
  static nlohmann::json point_json(const SpdManifold::Point& p) {
    return json_from_matrix(p.s);
  }
  static nlohmann::json tangent_json(const SpdManifold::Tangent& t) {
    return json_from_matrix(t.m);
  }
  static std::vector<std::vector<std::string>> point_rows(const SpdManifold::Point& p) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < p.s.rows(); ++i) {
      rows.push_back(vector_row(p.s.row(i).transpose()));
    }
    return rows;
  }
  static std::vector<std::string> tangent_row(const SpdManifold::Tangent& t) {
    std::vector<std::string> row;
    append_matrix_cells(row, t.m);
    return row;
  }
};

template <class Ops>
int run_statistics(const CommonOptions& common, const FrechetOptions& opt, bool with_pca) {
  using M = typename Ops::Manifold;
  const TolerancePolicy tol = make_tolerance(common);
  const std::string fmt = resolved_format(common, "json");
  if (opt.points_file.empty()) {
    throw InvalidInputError("--points is required");
  }

  const nlohmann::json points_json = read_json_file(opt.points_file);
  if (!points_json.is_array() || points_json.empty()) {
    throw InvalidInputError(opt.points_file.string() +
                            ": expected a nonempty JSON array of points");
  }
  const M m = Ops::make(tol, points_json[0]);

  WeightedSample<M> sample;
  sample.points.reserve(points_json.size());
  for (std::size_t i = 0; i < points_json.size(); ++i) {
    sample.points.push_back(Ops::parse(m, points_json[i], i));
  }
  if (opt.weights_file.empty()) {
    sample.weights.assign(sample.points.size(), 1.0);
  } else {
    const Eigen::MatrixXd w = read_matrix_csv(opt.weights_file);
    if (w.cols() != 1 || w.rows() != static_cast<Eigen::Index>(sample.points.size())) {
      throw InvalidInputError("weights file: expected one column with " +
                              std::to_string(sample.points.size()) + " rows");
    }
    sample.weights.assign(w.data(), w.data() + w.rows());
  }

  std::string bad;
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    if (!m.belongs(sample.points[i])) {
      bad += (bad.empty() ? "" : ", ") + std::to_string(i);
    }
  }
  if (!bad.empty()) {
    throw InvalidInputError("points at indices " + bad + " fail " + opt.manifold +
                            " membership within atol");
  }

  const FrechetResult<M> result = frechet_mean(m, sample, opt.epsilon, opt.max_iter);

  if (fmt == "json") {
    nlohmann::json j;
    j["manifold"] = opt.manifold;
    j["mean"] = Ops::point_json(result.mean);
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["update_sq_norms"] = result.update_sq_norms;
    j["variance"] = result.variance;
    j["epsilon"] = opt.epsilon;
    j["max_iter"] = opt.max_iter;
    if (with_pca) {
      const TangentPcaResult<M> pca = tangent_pca(m, sample, result.mean);
      j["eigenvalues"] = json_from_vector(pca.eigenvalues);
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& c : pca.components) {
        comps.push_back(Ops::tangent_json(c));
      }
      j["components"] = std::move(comps);
    }
    write_json_file(with_ext(common, ".json"), j);
  } else {
    std::string csv;
    if (with_pca) {
      const TangentPcaResult<M> pca = tangent_pca(m, sample, result.mean);
      csv += csv_line(vector_row(pca.eigenvalues)) + "\n";
      for (const auto& c : pca.components) {
        csv += csv_line(Ops::tangent_row(c)) + "\n";
      }
    } else {
      for (const std::vector<std::string>& row : Ops::point_rows(result.mean)) {
        csv += csv_line(row) + "\n";
      }
    }
    write_text_file(with_ext(common, ".csv"), csv);
  }

  if (!result.converged) {
    std::cerr << "warning: mean iteration hit max_iter without converging\n";
    return 2;
  }
  return 0;
}

template <class Ops, class Options>
int dispatch_statistics(const CommonOptions& common, const Options& opt, bool with_pca) {
  FrechetOptions base;
  base.points_file = opt.points_file;
  base.manifold = opt.manifold;
  base.weights_file = opt.weights_file;
  base.epsilon = opt.epsilon;
  base.max_iter = opt.max_iter;
  return run_statistics<Ops>(common, base, with_pca);
}

template <class Options>
int run_statistics_command(const CommonOptions& common, const Options& opt, bool with_pca) {
  return guarded([&]() -> int {
    if (opt.manifold == "sphere") {
      return dispatch_statistics<SphereOps>(common, opt, with_pca);
    }
    if (opt.manifold == "hyperboloid") {
      return dispatch_statistics<HyperboloidOps>(common, opt, with_pca);
    }
    if (opt.manifold == "spd") {
      return dispatch_statistics<SpdOps>(common, opt, with_pca);
    }
    throw InvalidInputError("unknown manifold '" + opt.manifold +
                            "' (expected sphere, hyperboloid, or spd)");
  });
}

}  // namespace

int run_frechet(const CommonOptions& common, const FrechetOptions& opt) {
  return run_statistics_command(common, opt, false);
}

int run_tpca(const CommonOptions& common, const TpcaOptions& opt) {
  return run_statistics_command(common, opt, true);
}

}  // namespace riem
