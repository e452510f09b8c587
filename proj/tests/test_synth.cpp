#include <doctest.h>

#include <Eigen/Core>
#include <cmath>

#include "cvc/errors.hpp"
#include "cvc/synth.hpp"

using namespace cvc;

TEST_CASE("two-gaussian generator shapes and labels") {
  const auto ds = synth::generate_two_gaussians(3.0, 2.0, 50, 1);
  CHECK(ds.data.rows() == 3);
  CHECK(ds.data.cols() == 100);
  CHECK(ds.n_classes == 2);
  for (int i = 0; i < 50; ++i) CHECK(ds.labels[static_cast<std::size_t>(i)] == 1);
  for (int i = 50; i < 100; ++i) CHECK(ds.labels[static_cast<std::size_t>(i)] == 2);
}

TEST_CASE("zero separation makes both clusters identically distributed") {
  const auto ds = synth::generate_two_gaussians(0.0, 1.5, 200, 2);
  const Eigen::VectorXd m1 = ds.data.leftCols(200).rowwise().mean();
  const Eigen::VectorXd m2 = ds.data.rightCols(200).rowwise().mean();
  // Means agree within sampling noise, 4 sigma / sqrt(n) per coordinate.
  const double tol = 4.0 * 1.5 / std::sqrt(200.0) * 2.0;
  CHECK((m1 - m2).cwiseAbs().maxCoeff() <= tol);
}

TEST_CASE("cluster means sit at the configured separation") {
  const double d = 5.0, sigma = 2.0;
  const int n = 400;
  const auto ds = synth::generate_two_gaussians(d, sigma, n, 3);
  const Eigen::VectorXd diff = ds.data.rightCols(n).rowwise().mean() -
                               ds.data.leftCols(n).rowwise().mean();
  const double tol = 4.0 * sigma / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(diff(0) - d) <= tol);
  CHECK(std::abs(diff(1)) <= tol);
  CHECK(std::abs(diff(2)) <= tol);
}

TEST_CASE("generator is deterministic per seed") {
  const auto a = synth::generate_two_gaussians(2.0, 2.0, 30, 42);
  const auto b = synth::generate_two_gaussians(2.0, 2.0, 30, 42);
  const auto c = synth::generate_two_gaussians(2.0, 2.0, 30, 43);
  CHECK((a.data - b.data).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.data - c.data).cwiseAbs().maxCoeff() != 0.0);
}

TEST_CASE("generator validates parameters") {
  CHECK_THROWS_AS(synth::generate_two_gaussians(1.0, 2.0, 0, 1), ParameterError);
  CHECK_THROWS_AS(synth::generate_two_gaussians(1.0, 0.0, 5, 1), ParameterError);
}

TEST_CASE("experiment report covers the grid exactly once and is deterministic") {
  synth::GaussianExperimentConfig config;
  config.separations = {2.0, 7.0};
  config.sizes = {40, 60};
  config.seeds_per_cell = 3;
  config.master_seed = 5;

  const auto report = synth::run_gaussian_experiment(config);
  REQUIRE(report.cells.size() == 4);
  int seen = 0;
  for (const auto& cell : report.cells) {
    CHECK((cell.separation == 2.0 || cell.separation == 7.0));
    CHECK((cell.size == 40 || cell.size == 60));
    CHECK(cell.runs + cell.degenerate_runs == 3);
    ++seen;
  }
  CHECK(seen == 4);

  const auto again = synth::run_gaussian_experiment(config);
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    REQUIRE(report.cells[i].mean_fiedler_value ==
            again.cells[i].mean_fiedler_value);
    REQUIRE(report.cells[i].mean_partition_error ==
            again.cells[i].mean_partition_error);
    REQUIRE(report.cells[i].mean_total_switches ==
            again.cells[i].mean_total_switches);
  }
}

TEST_CASE("experiment trends at desk scale") {
  // Small version of the separation sweep; the acceptance suite runs the
  // full-size one.
  synth::GaussianExperimentConfig config;
  config.separations = {2.0, 7.0};
  config.sizes = {80};
  config.seeds_per_cell = 10;
  config.master_seed = 11;

  const auto report = synth::run_gaussian_experiment(config);
  CHECK(report.summary.mean_fiedler_at_max_separation <
        report.summary.mean_fiedler_at_min_separation);
  CHECK(report.summary.mean_error_at_max_separation <
        report.summary.mean_error_at_min_separation);
}

TEST_CASE("experiment validates its configuration") {
  synth::GaussianExperimentConfig config;
  config.separations = {};
  CHECK_THROWS_AS(synth::run_gaussian_experiment(config), ParameterError);
  config.separations = {-1.0};
  CHECK_THROWS_AS(synth::run_gaussian_experiment(config), ParameterError);
  config.separations = {2.0};
  config.sizes = {1};
  CHECK_THROWS_AS(synth::run_gaussian_experiment(config), ParameterError);
}
