#include "cvc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cvc/errors.hpp"
#include "cvc/graph.hpp"
#include "cvc/rng.hpp"

namespace cvc::synth {

namespace {

long count_mismatch(const std::vector<bool>& right,
                    const std::vector<int>& truth, bool right_is_class2) {
  long wrong = 0;
  for (std::size_t i = 0; i < right.size(); ++i) {
    const int predicted = (right[i] == right_is_class2) ? 2 : 1;
    if (predicted != truth[i]) ++wrong;
  }
  return wrong;
}

}  // namespace

LabeledDataset generate_two_gaussians(double separation, double sigma,
                                      int n_per_cluster, std::uint64_t seed) {
  if (n_per_cluster < 1)
    throw ParameterError("generate_two_gaussians: need n_per_cluster >= 1");
  if (!(sigma > 0.0))
    throw ParameterError("generate_two_gaussians: sigma must be positive");

  std::mt19937_64 gen(seed);
  LabeledDataset ds;
  ds.n_classes = 2;
  ds.data = rng::standard_normal(3, 2 * n_per_cluster, gen) * sigma;
  ds.data.row(0).tail(n_per_cluster).array() += separation;
  ds.labels.assign(static_cast<std::size_t>(n_per_cluster), 1);
  ds.labels.insert(ds.labels.end(), static_cast<std::size_t>(n_per_cluster), 2);
  return ds;
}

ExperimentReport run_gaussian_experiment(const GaussianExperimentConfig& config) {
  if (config.separations.empty() || config.sizes.empty())
    throw ParameterError("run_gaussian_experiment: empty grid");
  for (double d : config.separations)
    if (!(d > 0.0))
      throw ParameterError("run_gaussian_experiment: separations must be > 0");
  for (int s : config.sizes)
    if (s < 2)
      throw ParameterError("run_gaussian_experiment: sizes must be >= 2");
  if (config.seeds_per_cell < 1)
    throw ParameterError("run_gaussian_experiment: need at least one seed");

  ExperimentReport report;
  report.config = config;

  long pooled_bucket_points[3] = {0, 0, 0};
  long pooled_bucket_errors[3] = {0, 0, 0};

  for (std::size_t di = 0; di < config.separations.size(); ++di) {
    for (std::size_t si = 0; si < config.sizes.size(); ++si) {
      ExperimentCell cell;
      cell.separation = config.separations[di];
      cell.size = config.sizes[si];

      double sum_fiedler = 0.0, sum_error = 0.0, sum_switches = 0.0;
      int valid = 0;

      for (int s = 0; s < config.seeds_per_cell; ++s) {
        const std::uint64_t seed = rng::mix(
            rng::mix(rng::mix(config.master_seed, di), si),
            static_cast<std::uint64_t>(s));
        const LabeledDataset ds = generate_two_gaussians(
            cell.separation, config.sigma, cell.size, seed);

        double kernel = config.kernel_sigma;
        if (!(kernel > 0.0)) {
          kernel = graph::median_pairwise_distance(ds.data);
          if (!(kernel > 0.0)) kernel = 1.0;
        }
        const Eigen::MatrixXd A = graph::gaussian_adjacency(ds.data, kernel);
        if (!graph::is_connected(A).connected) {
          ++cell.degenerate_runs;
          continue;
        }
        const graph::GraphSpectra spectra = graph::build_spectra(A);
        const dfvc::FiedlerResult fr = dfvc::compute_fiedler(spectra, config.dfvc);
        const dfvc::SignCut cut = dfvc::sign_partition(fr.fiedler_vector);
        if (cut.degenerate) {
          ++cell.degenerate_runs;
          continue;
        }

        // Cluster ids are arbitrary: score the better label permutation.
        const long n_total = 2L * cell.size;
        const long wrong_a = count_mismatch(cut.right, ds.labels, true);
        const long wrong_b = n_total - wrong_a;
        const bool right_is_class2 = wrong_a <= wrong_b;
        const long wrong = std::min(wrong_a, wrong_b);

        sum_fiedler += fr.fiedler_value;
        sum_error += static_cast<double>(wrong) / static_cast<double>(n_total);
        long switches = 0;
        for (int c : fr.sign_switch_history) switches += c;
        sum_switches += static_cast<double>(switches);

        for (std::size_t i = 0; i < cut.right.size(); ++i) {
          const int predicted = (cut.right[i] == right_is_class2) ? 2 : 1;
          const bool err = predicted != ds.labels[i];
          const int count = fr.per_point_switch_counts[i];
          const int bucket = count >= 2 ? 2 : count;
          ++cell.bucket_points[bucket];
          if (err) ++cell.bucket_errors[bucket];
        }
        ++valid;
      }

      cell.runs = valid;
      if (valid > 0) {
        cell.mean_fiedler_value = sum_fiedler / valid;
        cell.mean_partition_error = sum_error / valid;
        cell.mean_total_switches = sum_switches / valid;
      }
      for (int b = 0; b < 3; ++b) {
        cell.bucket_error[b] =
            cell.bucket_points[b] > 0
                ? static_cast<double>(cell.bucket_errors[b]) /
                      static_cast<double>(cell.bucket_points[b])
                : 0.0;
        pooled_bucket_points[b] += cell.bucket_points[b];
        pooled_bucket_errors[b] += cell.bucket_errors[b];
      }
      report.cells.push_back(cell);
    }
  }

  // Summary trends compare the extreme separations, averaged over sizes.
  const double d_min =
      *std::min_element(config.separations.begin(), config.separations.end());
  const double d_max =
      *std::max_element(config.separations.begin(), config.separations.end());
  double min_f = 0, max_f = 0, min_e = 0, max_e = 0;
  int n_min = 0, n_max = 0;
  for (const auto& cell : report.cells) {
    if (cell.runs == 0) continue;
    if (cell.separation == d_min) {
      min_f += cell.mean_fiedler_value;
      min_e += cell.mean_partition_error;
      ++n_min;
    }
    if (cell.separation == d_max) {
      max_f += cell.mean_fiedler_value;
      max_e += cell.mean_partition_error;
      ++n_max;
    }
  }
  if (n_min > 0) {
    report.summary.mean_fiedler_at_min_separation = min_f / n_min;
    report.summary.mean_error_at_min_separation = min_e / n_min;
  }
  if (n_max > 0) {
    report.summary.mean_fiedler_at_max_separation = max_f / n_max;
    report.summary.mean_error_at_max_separation = max_e / n_max;
  }
  report.summary.points_zero_switches = pooled_bucket_points[0];
  report.summary.points_two_plus_switches = pooled_bucket_points[2];
  report.summary.error_rate_zero_switches =
      pooled_bucket_points[0] > 0
          ? static_cast<double>(pooled_bucket_errors[0]) /
                static_cast<double>(pooled_bucket_points[0])
          : 0.0;
  report.summary.error_rate_two_plus_switches =
      pooled_bucket_points[2] > 0
          ? static_cast<double>(pooled_bucket_errors[2]) /
                static_cast<double>(pooled_bucket_points[2])
          : 0.0;
  return report;
}

}  // namespace cvc::synth
