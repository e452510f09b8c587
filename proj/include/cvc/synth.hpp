#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "cvc/dataset.hpp"
#include "cvc/dfvc.hpp"

namespace cvc::synth {

/// Two isotropic 3-D Gaussian clusters with means (0,0,0) and (d,0,0),
/// covariance sigma^2 I, labels 1 and 2. Deterministic per seed.
LabeledDataset generate_two_gaussians(double separation, double sigma,
                                      int n_per_cluster, std::uint64_t seed);

struct GaussianExperimentConfig {
  std::vector<double> separations = {2, 3, 4, 5, 6, 7};
  std::vector<int> sizes = {100, 125, 150, 175, 200, 225, 250, 275, 300,
                            325, 350, 375, 400, 425, 450, 475, 500};
  double sigma = 2.0;
  int seeds_per_cell = 20;
  std::uint64_t master_seed = 7;
  /// Kernel bandwidth; non-positive selects the median-distance heuristic.
  double kernel_sigma = 0.0;
  dfvc::DfvcParams dfvc;
};

/// Per (separation, size) aggregates over the seeds of one grid cell.
struct ExperimentCell {
  double separation = 0.0;
  int size = 0;  // points per cluster
  double mean_fiedler_value = 0.0;
  double mean_partition_error = 0.0;
  double mean_total_switches = 0.0;
  // Misclassification rates bucketed by per-point switch count: 0, 1, >= 2.
  double bucket_error[3] = {0, 0, 0};
  long bucket_points[3] = {0, 0, 0};
  long bucket_errors[3] = {0, 0, 0};
  int degenerate_runs = 0;  // disconnected graph or one-sided cut
  int runs = 0;
};

struct ExperimentSummary {
  double mean_fiedler_at_min_separation = 0.0;
  double mean_fiedler_at_max_separation = 0.0;
  double mean_error_at_min_separation = 0.0;
  double mean_error_at_max_separation = 0.0;
  // Pooled over every cell and seed.
  double error_rate_zero_switches = 0.0;
  double error_rate_two_plus_switches = 0.0;
  long points_zero_switches = 0;
  long points_two_plus_switches = 0;
};

struct ExperimentReport {
  GaussianExperimentConfig config;
  std::vector<ExperimentCell> cells;
  ExperimentSummary summary;
};

/// Sweeps the (separation, size) grid: Gaussian-kernel adjacency, Fiedler
/// partition, error against the generating labels (best of both label
/// permutations), and sign-switch telemetry.
ExperimentReport run_gaussian_experiment(const GaussianExperimentConfig& config);

}  // namespace cvc::synth
