#include <CLI11.hpp>
#include <Eigen/QR>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvc/classify.hpp"
#include "cvc/dfvc.hpp"
#include "cvc/errors.hpp"
#include "cvc/graph.hpp"
#include "cvc/grassmann.hpp"
#include "cvc/io.hpp"
#include "cvc/proximity.hpp"
#include "cvc/rng.hpp"
#include "cvc/shc.hpp"
#include "cvc/synth.hpp"

namespace {

constexpr const char* kArtifactVersion = "cvc 0.1.0";

using Clock = std::chrono::steady_clock;

struct CommonOptions {
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 7;
};

struct ProximityOptions {
  std::string method = "lasso";
  double w = 0.01;
  double kernel_sigma = 0.0;
  double cutoff = 1e-10;

  cvc::proximity::ProximityConfig config() const {
    cvc::proximity::ProximityConfig c;
    c.method = cvc::proximity::parse_method(method);
    c.w = w;
    c.kernel_sigma = kernel_sigma;
    c.singular_value_cutoff = cutoff;
    return c;
  }
  void echo(cvc::io::ReportBuilder& report) const {
    report.add("proximity", method);
    report.add("w", w);
    report.add("kernel_sigma", kernel_sigma);
    report.add("singular_value_cutoff", cutoff);
  }
};

struct DfvcOptions {
  double eta = 0.0;
  int epsilon_s = -1;
  int max_iterations = 1000;

  cvc::dfvc::DfvcParams params() const {
    cvc::dfvc::DfvcParams p;
    p.eta = eta;
    p.epsilon_s = epsilon_s;
    p.max_iterations = max_iterations;
    return p;
  }
  void echo(cvc::io::ReportBuilder& report) const {
    report.add("eta", eta);
    report.add("epsilon_s", static_cast<long>(epsilon_s));
    report.add("max_iterations", static_cast<long>(max_iterations));
  }
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--format", common.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", common.out_path, "Write the report to this path");
  cmd->add_option("--seed", common.seed, "Master random seed")
      ->capture_default_str();
}

void add_proximity(CLI::App* cmd, ProximityOptions& prox) {
  cmd->add_option("--proximity", prox.method, "Proximity matrix method")
      ->check(CLI::IsMember({"gaussian", "lasso", "ls", "omp"}))
      ->capture_default_str();
  cmd->add_option("--w", prox.w,
                  "Sparsity weight (lasso) or integer atom budget (omp)")
      ->capture_default_str();
  cmd->add_option("--kernel-sigma", prox.kernel_sigma,
                  "Gaussian kernel bandwidth; 0 = median pairwise distance")
      ->capture_default_str();
  cmd->add_option("--cutoff", prox.cutoff,
                  "Relative eigenvalue cutoff of the pseudo-inverse")
      ->capture_default_str();
}

void add_dfvc(CLI::App* cmd, DfvcOptions& dfvc) {
  cmd->add_option("--eta", dfvc.eta, "Eigen-shift; 0 = volume-bound estimate")
      ->capture_default_str();
  cmd->add_option("--epsilon-s", dfvc.epsilon_s,
                  "Sign-change threshold; -1 = max(1, 1% of n)")
      ->capture_default_str();
  cmd->add_option("--max-iterations", dfvc.max_iterations,
                  "Inverse-iteration cap")
      ->capture_default_str();
}

void emit(const cvc::io::ReportBuilder& report, const CommonOptions& common) {
  if (!common.out_path.empty()) {
    std::ofstream out(common.out_path);
    if (!out)
      throw cvc::ParseError(common.out_path + ": cannot open for writing");
    report.write(out, common.format);
  } else {
    report.write(std::cout, common.format);
  }
}

void start_report(cvc::io::ReportBuilder& report, const std::string& command,
                  const CommonOptions& common) {
  report.add("artifact", std::string(kArtifactVersion));
  report.add("command", command);
  report.add("format", common.format);
  report.add("seed", static_cast<long>(common.seed));
}

long elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
  CommonOptions common;
  double separation = 5.0;
  double sigma = 2.0;
  int n_per_cluster = 100;
  std::string data_out = "synth_data.csv";
  std::string labels_out = "synth_labels.csv";
};

void run_synth(const SynthOptions& opt) {
  const auto start = Clock::now();
  const cvc::LabeledDataset ds = cvc::synth::generate_two_gaussians(
      opt.separation, opt.sigma, opt.n_per_cluster, opt.common.seed);
  cvc::io::save_matrix_csv(opt.data_out, ds.data.transpose());
  cvc::io::save_labels(opt.labels_out, ds.labels);

  cvc::io::ReportBuilder report;
  start_report(report, "synth", opt.common);
  report.add("separation", opt.separation);
  report.add("sigma", opt.sigma);
  report.add("n_per_cluster", static_cast<long>(opt.n_per_cluster));
  report.add("points", static_cast<long>(ds.data.cols()));
  report.add("data_out", opt.data_out);
  report.add("labels_out", opt.labels_out);
  report.add("elapsed_ms", elapsed_ms(start));
  emit(report, opt.common);
}

// ---------------------------------------------------------------------------
// fiedler

struct FiedlerOptions {
  CommonOptions common;
  DfvcOptions dfvc;
  std::string affinity_path;
  bool header = false;
};

void run_fiedler(const FiedlerOptions& opt) {
  const auto start = Clock::now();
  const Eigen::MatrixXd A =
      cvc::io::load_matrix_csv(opt.affinity_path, opt.header);
  const auto components = cvc::graph::is_connected(A);
  if (!components.connected)
    throw cvc::DegenerateGraphError(
        "fiedler: affinity graph has " + std::to_string(components.count) +
        " components; the Fiedler pair needs a connected graph");
  const auto spectra = cvc::graph::build_spectra(A);
  const auto result = cvc::dfvc::compute_fiedler(spectra, opt.dfvc.params());

  cvc::io::ReportBuilder report;
  start_report(report, "fiedler", opt.common);
  report.add("affinity", opt.affinity_path);
  opt.dfvc.echo(report);
  report.add("n", static_cast<long>(A.rows()));
  report.add("volume", spectra.volume);
  report.add("fiedler_value", result.fiedler_value);
  report.add("iterations", static_cast<long>(result.iterations));
  report.add("converged", result.converged);
  report.add("eta_used", result.eta_used);
  report.add("restarts", static_cast<long>(result.restarts));

  report.begin_table("fiedler_vector", {"index", "coefficient", "side"});
  const auto cut = cvc::dfvc::sign_partition(result.fiedler_vector);
  for (Eigen::Index i = 0; i < result.fiedler_vector.size(); ++i)
    report.add_row({std::to_string(i),
                    cvc::io::format_number(result.fiedler_vector(i)),
                    cut.right[static_cast<std::size_t>(i)] ? "right" : "left"});

  report.begin_table("sign_switches", {"iteration", "delta_s"});
  for (std::size_t k = 0; k < result.sign_switch_history.size(); ++k)
    report.add_row({std::to_string(k + 1),
                    std::to_string(result.sign_switch_history[k])});
  report.add("elapsed_ms", elapsed_ms(start));
  emit(report, opt.common);
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterOptions {
  CommonOptions common;
  ProximityOptions prox;
  DfvcOptions dfvc;
  std::string data_path;
  std::string labels_path;
  int probe_label = 0;  // 0 = the largest label in the file
  bool header = false;
};

void run_cluster(const ClusterOptions& opt) {
  const auto start = Clock::now();
  const Eigen::MatrixXd samples =
      cvc::io::load_matrix_csv(opt.data_path, opt.header);
  const std::vector<int> labels = cvc::io::load_labels(opt.labels_path);
  if (static_cast<Eigen::Index>(labels.size()) != samples.rows())
    throw cvc::ParseError(opt.labels_path + ": " +
                          std::to_string(labels.size()) + " labels for " +
                          std::to_string(samples.rows()) + " data rows");
  const int n_labels = cvc::io::validate_contiguous_labels(labels);
  const int probe =
      opt.probe_label > 0 ? opt.probe_label : n_labels;

  const Eigen::MatrixXd data = samples.transpose();
  const Eigen::MatrixXd proximity =
      cvc::proximity::build_proximity(data, opt.prox.config());
  const auto assignment =
      cvc::shc::cluster(proximity, labels, probe, opt.dfvc.params());

  cvc::io::ReportBuilder report;
  start_report(report, "cluster", opt.common);
  report.add("data", opt.data_path);
  report.add("labels", opt.labels_path);
  opt.prox.echo(report);
  opt.dfvc.echo(report);
  report.add("probe_label", static_cast<long>(probe));
  report.add("points", static_cast<long>(data.cols()));
  report.add("n_clusters", static_cast<long>(assignment.n_clusters));
  report.add("unsplittable_leaves",
             static_cast<long>(assignment.unsplittable_leaves.size()));

  report.begin_table("cluster_labels", {"point", "cluster"});
  for (std::size_t i = 0; i < assignment.cluster_labels.size(); ++i)
    report.add_row(
        {std::to_string(i), std::to_string(assignment.cluster_labels[i])});

  report.begin_table("tree_trace",
                     {"parent", "children", "fiedler_value", "delta_s", "level"});
  for (const auto& split : assignment.tree_trace) {
    std::string children;
    for (std::size_t c = 0; c < split.children.size(); ++c) {
      if (c) children += ' ';
      children += std::to_string(split.children[c]);
    }
    report.add_row({std::to_string(split.parent), children,
                    cvc::io::format_number(split.fiedler_value),
                    std::to_string(split.delta_s),
                    std::to_string(split.level)});
  }
  report.add("elapsed_ms", elapsed_ms(start));
  emit(report, opt.common);
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyOptions {
  CommonOptions common;
  ProximityOptions prox;
  DfvcOptions dfvc;
  std::string gallery_path;
  std::string gallery_labels_path;
  std::string probe_path;
  std::string distance = "bhattacharyya";
  std::string fusion = "none";
  int nu = 8;
  double w_basis = 0.01;
  int max_alternations = 50;
  std::string cache_dir;
  bool header = false;
};

cvc::Distance parse_distance(const std::string& name) {
  if (name == "bhattacharyya") return cvc::Distance::bhattacharyya;
  if (name == "hellinger") return cvc::Distance::hellinger;
  throw cvc::ParameterError("unknown distance: " + name);
}

// Basis cache: one CSV per (set data, dimension, seed, w_basis) content key.
std::optional<std::filesystem::path> cache_file(const std::string& cache_dir,
                                                const Eigen::MatrixXd& set,
                                                int d, std::uint64_t seed,
                                                double w_basis) {
  if (cache_dir.empty()) return std::nullopt;
  std::uint64_t key = cvc::io::content_hash(set);
  key = cvc::io::content_hash(&d, sizeof(d), key);
  key = cvc::io::content_hash(&seed, sizeof(seed), key);
  key = cvc::io::content_hash(&w_basis, sizeof(w_basis), key);
  std::ostringstream name;
  name << "basis_" << std::hex << key << ".csv";
  return std::filesystem::path(cache_dir) / name.str();
}

cvc::grassmann::ManifoldEnsemble build_cached_ensemble(
    const std::vector<Eigen::MatrixXd>& sets, int nu, std::uint64_t master,
    const cvc::grassmann::LearnConfig& learn, const std::string& cache_dir) {
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);
  cvc::grassmann::ManifoldEnsemble ensemble;
  ensemble.nu = nu;
  ensemble.bases.resize(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (int d = 1; d <= nu; ++d) {
      const std::uint64_t seed =
          cvc::rng::mix(cvc::rng::mix(master, static_cast<std::uint64_t>(s)),
                        static_cast<std::uint64_t>(d));
      const auto path = cache_file(cache_dir, sets[s], d, seed, learn.w);
      if (path && std::filesystem::exists(*path)) {
        cvc::grassmann::ManifoldBasis basis;
        basis.basis = cvc::io::load_matrix_csv(path->string());
        basis.dimension = d;
        basis.source_set_id = static_cast<int>(s);
        basis.seed = seed;
        const Eigen::MatrixXd coeffs =
            basis.basis.colPivHouseholderQr().solve(sets[s]);
        basis.final_residual = (sets[s] - basis.basis * coeffs).norm();
        ensemble.bases[s].push_back(std::move(basis));
        continue;
      }
      cvc::grassmann::ManifoldBasis basis =
          cvc::grassmann::learn_basis(sets[s], d, seed, learn);
      basis.source_set_id = static_cast<int>(s);
      if (path) cvc::io::save_matrix_csv(path->string(), basis.basis);
      ensemble.bases[s].push_back(std::move(basis));
    }
  }
  return ensemble;
}

void run_classify(const ClassifyOptions& opt) {
  const auto start = Clock::now();
  const cvc::LabeledDataset gallery = cvc::io::load_dataset(
      opt.gallery_path, opt.gallery_labels_path, opt.header);
  gallery.validate();
  const Eigen::MatrixXd probe =
      cvc::io::load_matrix_csv(opt.probe_path, opt.header).transpose();

  cvc::io::ReportBuilder report;
  start_report(report, "classify", opt.common);
  report.add("gallery", opt.gallery_path);
  report.add("gallery_labels", opt.gallery_labels_path);
  report.add("probe", opt.probe_path);
  opt.prox.echo(report);
  opt.dfvc.echo(report);
  report.add("distance", opt.distance);
  report.add("fusion", opt.fusion);
  report.add("n_classes", static_cast<long>(gallery.n_classes));
  report.add("gallery_points", static_cast<long>(gallery.size()));
  report.add("probe_points", static_cast<long>(probe.cols()));

  const auto distance = parse_distance(opt.distance);

  if (opt.fusion == "none") {
    const auto out = cvc::classify(gallery, probe, opt.prox.config(),
                                   opt.dfvc.params(), distance);
    report.add("predicted_label", static_cast<long>(out.result.predicted_label));
    report.add("snr", out.result.snr);
    report.add("n_clusters", static_cast<long>(out.assignment.n_clusters));
    report.begin_table("distances", {"class", "distance"});
    for (Eigen::Index c = 0; c < out.result.distances.size(); ++c)
      report.add_row({std::to_string(c + 1),
                      cvc::io::format_number(out.result.distances(c))});
    report.begin_table("cluster_sizes", {"cluster", "size"});
    std::vector<int> sizes(static_cast<std::size_t>(out.assignment.n_clusters), 0);
    for (int c : out.assignment.cluster_labels) ++sizes[static_cast<std::size_t>(c - 1)];
    for (std::size_t k = 0; k < sizes.size(); ++k)
      report.add_row({std::to_string(k + 1), std::to_string(sizes[k])});
  } else {
    // Gallery points grouped by class; each class is one image set, the
    // probe is its own set at the end.
    std::vector<Eigen::MatrixXd> sets;
    std::vector<int> set_labels;
    for (int c = 1; c <= gallery.n_classes; ++c) {
      std::vector<Eigen::Index> members;
      for (std::size_t i = 0; i < gallery.labels.size(); ++i)
        if (gallery.labels[i] == c)
          members.push_back(static_cast<Eigen::Index>(i));
      Eigen::MatrixXd set(gallery.data.rows(),
                          static_cast<Eigen::Index>(members.size()));
      for (std::size_t i = 0; i < members.size(); ++i)
        set.col(static_cast<Eigen::Index>(i)) = gallery.data.col(members[i]);
      sets.push_back(std::move(set));
      set_labels.push_back(c);
    }
    sets.push_back(probe);
    set_labels.push_back(0);  // probe carries no gallery label

    std::string cache_dir = opt.cache_dir;
    if (cache_dir.empty())
      if (const char* env = std::getenv("CVC_CACHE_DIR")) cache_dir = env;

    cvc::grassmann::LearnConfig learn;
    learn.w = opt.w_basis;
    learn.max_alternations = opt.max_alternations;
    const auto ensemble = build_cached_ensemble(sets, opt.nu, opt.common.seed,
                                                learn, cache_dir);
    const auto fusion = opt.fusion == "sum" ? cvc::grassmann::Fusion::sum
                                            : cvc::grassmann::Fusion::mode;
    const auto outcome = cvc::grassmann::classify_ensemble(
        ensemble, set_labels, static_cast<int>(sets.size()) - 1, fusion,
        opt.prox.config(), opt.dfvc.params(), distance);

    report.add("nu", static_cast<long>(opt.nu));
    report.add("w_basis", opt.w_basis);
    report.add("cache_dir", cache_dir.empty() ? std::string("(none)") : cache_dir);
    report.add("predicted_label",
               static_cast<long>(outcome.result.predicted_label));
    report.add("snr", outcome.result.snr);
    report.begin_table("summed_distances", {"class", "distance"});
    for (Eigen::Index c = 0; c < outcome.result.distances.size(); ++c)
      report.add_row({std::to_string(c + 1),
                      cvc::io::format_number(outcome.result.distances(c))});
    report.begin_table("per_dimension", {"dimension", "label"});
    for (std::size_t j = 0; j < outcome.per_dimension_labels.size(); ++j)
      report.add_row({std::to_string(j + 1),
                      std::to_string(outcome.per_dimension_labels[j])});
  }
  report.add("elapsed_ms", elapsed_ms(start));
  emit(report, opt.common);
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
  CommonOptions common;
  DfvcOptions dfvc;
  std::vector<double> separations = {2, 3, 4, 5, 6, 7};
  std::vector<int> sizes = {100, 125, 150, 175, 200, 225, 250, 275, 300,
                            325, 350, 375, 400, 425, 450, 475, 500};
  double sigma = 2.0;
  int seeds_per_cell = 20;
  double kernel_sigma = 0.0;
};

void run_experiment(const ExperimentOptions& opt) {
  const auto start = Clock::now();
  cvc::synth::GaussianExperimentConfig config;
  config.separations = opt.separations;
  config.sizes = opt.sizes;
  config.sigma = opt.sigma;
  config.seeds_per_cell = opt.seeds_per_cell;
  config.master_seed = opt.common.seed;
  config.kernel_sigma = opt.kernel_sigma;
  config.dfvc = opt.dfvc.params();

  const auto result = cvc::synth::run_gaussian_experiment(config);

  cvc::io::ReportBuilder report;
  start_report(report, "experiment", opt.common);
  report.add("sigma", opt.sigma);
  report.add("seeds_per_cell", static_cast<long>(opt.seeds_per_cell));
  report.add("kernel_sigma", opt.kernel_sigma);
  opt.dfvc.echo(report);
  {
    std::string ds, ss;
    for (std::size_t i = 0; i < opt.separations.size(); ++i)
      ds += (i ? " " : "") + cvc::io::format_number(opt.separations[i]);
    for (std::size_t i = 0; i < opt.sizes.size(); ++i)
      ss += (i ? " " : "") + std::to_string(opt.sizes[i]);
    report.add("separations", ds);
    report.add("sizes", ss);
  }

  report.begin_table(
      "cells", {"separation", "size", "runs", "degenerate", "mean_fiedler_value",
                "mean_partition_error", "mean_total_switches", "err_0_switches",
                "err_1_switch", "err_2plus_switches"});
  for (const auto& cell : result.cells)
    report.add_row({cvc::io::format_number(cell.separation),
                    std::to_string(cell.size), std::to_string(cell.runs),
                    std::to_string(cell.degenerate_runs),
                    cvc::io::format_number(cell.mean_fiedler_value),
                    cvc::io::format_number(cell.mean_partition_error),
                    cvc::io::format_number(cell.mean_total_switches),
                    cvc::io::format_number(cell.bucket_error[0]),
                    cvc::io::format_number(cell.bucket_error[1]),
                    cvc::io::format_number(cell.bucket_error[2])});

  const auto& summary = result.summary;
  report.add("mean_fiedler_at_min_separation",
             summary.mean_fiedler_at_min_separation);
  report.add("mean_fiedler_at_max_separation",
             summary.mean_fiedler_at_max_separation);
  report.add("mean_error_at_min_separation",
             summary.mean_error_at_min_separation);
  report.add("mean_error_at_max_separation",
             summary.mean_error_at_max_separation);
  report.add("error_rate_zero_switches", summary.error_rate_zero_switches);
  report.add("error_rate_two_plus_switches",
             summary.error_rate_two_plus_switches);
  report.add("trend_fiedler_decreases",
             summary.mean_fiedler_at_max_separation <
                 summary.mean_fiedler_at_min_separation);
  report.add("trend_error_decreases",
             summary.mean_error_at_max_separation <
                 summary.mean_error_at_min_separation);
  report.add("trend_switchy_points_err_higher",
             summary.error_rate_two_plus_switches >=
                 summary.error_rate_zero_switches);
  report.add("elapsed_ms", elapsed_ms(start));
  emit(report, opt.common);
}

void print_error(const std::string& kind, const std::exception& e) {
  std::cerr << "error = " << e.what() << "\n"
            << "error_kind = " << kind << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised hierarchical spectral clustering and "
               "classification via clustering"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI configuration file; flags override it");

  SynthOptions synth_opt;
  auto* synth = app.add_subcommand(
      "synth", "Generate the two-gaussian synthetic dataset");
  add_common(synth, synth_opt.common);
  synth->add_option("--d", synth_opt.separation, "Center separation")
      ->capture_default_str();
  synth->add_option("--sigma", synth_opt.sigma, "Cluster standard deviation")
      ->capture_default_str();
  synth->add_option("--n", synth_opt.n_per_cluster, "Points per cluster")
      ->capture_default_str();
  synth->add_option("--data-out", synth_opt.data_out, "Data CSV path")
      ->capture_default_str();
  synth->add_option("--labels-out", synth_opt.labels_out, "Labels path")
      ->capture_default_str();
  synth->callback([&]() { run_synth(synth_opt); });

  FiedlerOptions fiedler_opt;
  auto* fiedler = app.add_subcommand(
      "fiedler", "Fiedler vector and value of an affinity matrix");
  add_common(fiedler, fiedler_opt.common);
  add_dfvc(fiedler, fiedler_opt.dfvc);
  fiedler->add_option("--affinity", fiedler_opt.affinity_path,
                      "Square adjacency CSV")
      ->required();
  fiedler->add_flag("--header", fiedler_opt.header, "Skip one header line");
  fiedler->callback([&]() { run_fiedler(fiedler_opt); });

  ClusterOptions cluster_opt;
  auto* cluster = app.add_subcommand(
      "cluster", "Semi-supervised hierarchical clustering of labeled data");
  add_common(cluster, cluster_opt.common);
  add_proximity(cluster, cluster_opt.prox);
  add_dfvc(cluster, cluster_opt.dfvc);
  cluster->add_option("--data", cluster_opt.data_path, "Samples CSV, one per row")
      ->required();
  cluster->add_option("--labels", cluster_opt.labels_path, "Labels file")
      ->required();
  cluster->add_option("--probe-label", cluster_opt.probe_label,
                      "Dummy probe label; 0 = largest label present")
      ->capture_default_str();
  cluster->add_flag("--header", cluster_opt.header, "Skip one header line");
  cluster->callback([&]() { run_cluster(cluster_opt); });

  ClassifyOptions classify_opt;
  auto* classify = app.add_subcommand(
      "classify", "Classify a probe set against a labeled gallery");
  add_common(classify, classify_opt.common);
  add_proximity(classify, classify_opt.prox);
  add_dfvc(classify, classify_opt.dfvc);
  classify->add_option("--gallery", classify_opt.gallery_path, "Gallery CSV")
      ->required();
  classify
      ->add_option("--gallery-labels", classify_opt.gallery_labels_path,
                   "Gallery labels file")
      ->required();
  classify->add_option("--probe", classify_opt.probe_path, "Probe CSV")
      ->required();
  classify->add_option("--distance", classify_opt.distance, "Distribution distance")
      ->check(CLI::IsMember({"bhattacharyya", "hellinger"}))
      ->capture_default_str();
  classify->add_option("--fusion", classify_opt.fusion, "Ensemble fusion rule")
      ->check(CLI::IsMember({"none", "sum", "mode"}))
      ->capture_default_str();
  classify->add_option("--nu", classify_opt.nu, "Ensemble size (manifold dims 1..nu)")
      ->capture_default_str();
  classify->add_option("--w-basis", classify_opt.w_basis,
                       "Sparsity weight of basis learning")
      ->capture_default_str();
  classify->add_option("--max-alternations", classify_opt.max_alternations,
                       "Basis learning alternation cap")
      ->capture_default_str();
  classify->add_option("--cache-dir", classify_opt.cache_dir,
                       "Basis cache directory (or CVC_CACHE_DIR)");
  classify->add_flag("--header", classify_opt.header, "Skip one header line");
  classify->callback([&]() { run_classify(classify_opt); });

  ExperimentOptions experiment_opt;
  auto* experiment = app.add_subcommand(
      "experiment", "Two-gaussian separation sweep with trend summary");
  add_common(experiment, experiment_opt.common);
  add_dfvc(experiment, experiment_opt.dfvc);
  experiment->add_option("--d-values", experiment_opt.separations,
                         "Center separations")
      ->delimiter(',');
  experiment->add_option("--sizes", experiment_opt.sizes, "Cluster sizes")
      ->delimiter(',');
  experiment->add_option("--sigma", experiment_opt.sigma, "Cluster std dev")
      ->capture_default_str();
  experiment->add_option("--seeds", experiment_opt.seeds_per_cell,
                         "Seeds per grid cell")
      ->capture_default_str();
  experiment->add_option("--kernel-sigma", experiment_opt.kernel_sigma,
                         "Kernel bandwidth; 0 = median heuristic")
      ->capture_default_str();
  experiment->callback([&]() { run_experiment(experiment_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const cvc::ParseError& e) {
    print_error("input", e);
    return 2;
  } catch (const cvc::ParameterError& e) {
    print_error("config", e);
    return 2;
  } catch (const cvc::DimensionError& e) {
    print_error("config", e);
    return 2;
  } catch (const cvc::SymmetryError& e) {
    print_error("config", e);
    return 2;
  } catch (const std::exception& e) {
    print_error("pipeline", e);
    return 1;
  }
  return 0;
}
