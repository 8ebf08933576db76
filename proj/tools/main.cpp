// Command-line driver: every subcommand writes its result files next to the
// --out base path and reports problems through exit codes (0 success, 1 bad
// input, 2 numerical failure).

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riem/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Riemannian geometry toolkit: geodesics, means, tangent PCA, and "
               "manifold optimization at desk scale"};
  app.require_subcommand(1);

  riem::CommonOptions common;
  app.add_option("--seed", common.seed, "Seed for any randomized inputs")
      ->capture_default_str();
  app.add_option("--atol", common.atol, "Absolute tolerance for membership checks")
      ->capture_default_str();
  app.add_option("--out", common.out,
                 "Output base path; the data file and any figure get extensions "
                 "appended (.csv/.json, .svg)")
      ->required();
  app.add_option("--format", common.format, "Data file format")
      ->check(CLI::IsMember({"csv", "json"}));

  int exit_code = 0;

  // --- optimize-sphere ---
  riem::OptimizeSphereOptions opt_sphere;
  CLI::App* sphere = app.add_subcommand(
      "optimize-sphere",
      "Minimize x^T A x over the unit sphere by Riemannian gradient descent");
  sphere->fallthrough();
  sphere->add_option("--matrix", opt_sphere.matrix_file,
                     "CSV file with the symmetric positive-definite matrix A "
                     "(omitted: a seeded random one)");
  sphere->add_option("--dim", opt_sphere.dim,
                     "Order of the random matrix when --matrix is omitted")
      ->capture_default_str();
  sphere->add_option("--start", opt_sphere.start,
                     "Comma-separated start vector, projected onto the sphere "
                     "(omitted: all ones)")
      ->delimiter(',');
  sphere->add_option("--lr", opt_sphere.lr, "Learning rate")->capture_default_str();
  sphere->add_option("--max-iter", opt_sphere.max_iter, "Iteration cap")
      ->capture_default_str();
  sphere->add_option("--grad-tol", opt_sphere.grad_tol,
                     "Stop when the Riemannian gradient norm drops below this")
      ->capture_default_str();
  sphere->callback([&]() { exit_code = riem::run_optimize_sphere(common, opt_sphere); });

  // --- poincare ---
  riem::PoincareOptions opt_poincare;
  CLI::App* poincare = app.add_subcommand(
      "poincare", "Render hyperbolic geodesic figures in the Poincare disk");
  poincare->fallthrough();
  poincare->add_option("--figure", opt_poincare.figure, "grid or square")
      ->check(CLI::IsMember({"grid", "square"}))
      ->capture_default_str();
  poincare->add_option("--resolution", opt_poincare.resolution,
                       "Curves per grid family, or samples per square edge")
      ->capture_default_str();
  poincare->add_option("--samples", opt_poincare.samples, "Samples per grid curve")
      ->capture_default_str();
  poincare->add_option("--extent", opt_poincare.extent,
                       "Geodesic parameter range (hyperbolic length)")
      ->capture_default_str();
  poincare->callback([&]() { exit_code = riem::run_poincare(common, opt_poincare); });

  // --- connectome ---
  riem::ConnectomeOptions opt_connectome;
  CLI::App* connectome = app.add_subcommand(
      "connectome",
      "Classify graph Laplacians by leave-one-out kernel nearest-class-mean");
  connectome->fallthrough();
  connectome->add_option("--data", opt_connectome.data_dir,
                         "Directory with labels.csv and adjacency CSV files")
      ->required();
  connectome->add_option("--gamma", opt_connectome.gamma,
                         "Ridge added to each graph Laplacian")
      ->capture_default_str();
  connectome->add_option("--metric", opt_connectome.metric, "Distance between Laplacians")
      ->check(CLI::IsMember({"riemannian", "log_euclidean", "frobenius"}))
      ->capture_default_str();
  connectome->callback([&]() { exit_code = riem::run_connectome(common, opt_connectome); });

  // --- geodesic ---
  riem::GeodesicOptions opt_geodesic;
  CLI::App* geodesic = app.add_subcommand(
      "geodesic", "Sample the geodesic between two rotations or rigid motions");
  geodesic->fallthrough();
  geodesic->add_option("--group", opt_geodesic.group, "so3 or se3")
      ->check(CLI::IsMember({"so3", "se3"}))
      ->capture_default_str();
  geodesic->add_option("--from", opt_geodesic.from,
                       "Start element: rotation vector (so3: 3 numbers; se3: rotation "
                       "vector then translation, 6 numbers); omitted: identity")
      ->delimiter(',');
  geodesic->add_option("--to", opt_geodesic.to, "End element, same encoding as --from")
      ->delimiter(',');
  geodesic->add_option("--steps", opt_geodesic.steps,
                       "Number of segments; steps+1 samples are written")
      ->capture_default_str();
  geodesic->callback([&]() { exit_code = riem::run_geodesic(common, opt_geodesic); });

  // --- frechet ---
  riem::FrechetOptions opt_frechet;
  CLI::App* frechet = app.add_subcommand(
      "frechet", "Weighted Fréchet mean of points on a manifold");
  frechet->fallthrough();
  frechet->add_option("--points", opt_frechet.points_file,
                      "JSON array of points (vectors, or matrices for spd)")
      ->required();
  frechet->add_option("--manifold", opt_frechet.manifold, "sphere, hyperboloid, or spd")
      ->check(CLI::IsMember({"sphere", "hyperboloid", "spd"}))
      ->capture_default_str();
  frechet->add_option("--weights", opt_frechet.weights_file,
                      "Single-column CSV of nonnegative weights (omitted: uniform)");
  frechet->add_option("--epsilon", opt_frechet.epsilon,
                      "Stop when the squared update norm drops below this")
      ->capture_default_str();
  frechet->add_option("--max-iter", opt_frechet.max_iter, "Iteration cap")
      ->capture_default_str();
  frechet->callback([&]() { exit_code = riem::run_frechet(common, opt_frechet); });

  // --- tpca ---
  riem::TpcaOptions opt_tpca;
  CLI::App* tpca = app.add_subcommand(
      "tpca", "Tangent PCA about the Fréchet mean of points on a manifold");
  tpca->fallthrough();
  tpca->add_option("--points", opt_tpca.points_file,
                   "JSON array of points (vectors, or matrices for spd)")
      ->required();
  tpca->add_option("--manifold", opt_tpca.manifold, "sphere, hyperboloid, or spd")
      ->check(CLI::IsMember({"sphere", "hyperboloid", "spd"}))
      ->capture_default_str();
  tpca->add_option("--weights", opt_tpca.weights_file,
                   "Single-column CSV of nonnegative weights (omitted: uniform)");
  tpca->add_option("--epsilon", opt_tpca.epsilon,
                   "Mean iteration stopping threshold (squared update norm)")
      ->capture_default_str();
  tpca->add_option("--max-iter", opt_tpca.max_iter, "Mean iteration cap")
      ->capture_default_str();
  tpca->callback([&]() { exit_code = riem::run_tpca(common, opt_tpca); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return exit_code;
}
