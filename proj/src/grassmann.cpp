#include "cvc/grassmann.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "cvc/errors.hpp"
#include "cvc/linalg.hpp"
#include "cvc/rng.hpp"

namespace cvc::grassmann {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double subspace_residual(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd coeffs = basis.colPivHouseholderQr().solve(X);
  return (X - basis * coeffs).norm();
}

Eigen::MatrixXd pseudo_inverse_spd(const Eigen::MatrixXd& G) {
  const linalg::EigResult eig = linalg::symmetric_eig(G);
  const double floor = 1e-10 * eig.eigenvalues.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > floor) inv(i) = 1.0 / eig.eigenvalues(i);
  return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.transpose();
}

}  // namespace

ManifoldBasis learn_basis(const Eigen::Ref<const Eigen::MatrixXd>& X, int d,
                          std::uint64_t seed, const LearnConfig& config) {
  const Eigen::Index l = X.rows();
  const Eigen::Index n = X.cols();
  if (n < 1) throw ParameterError("learn_basis: empty set");
  if (d < 1 || d > std::min(l, n))
    throw ParameterError("learn_basis: dimension " + std::to_string(d) +
                         " out of range 1..min(" + std::to_string(l) + "," +
                         std::to_string(n) + ")");

  std::mt19937_64 gen(seed);
  Eigen::MatrixXd basis = rng::standard_normal(l, d, gen);
  for (Eigen::Index j = 0; j < d; ++j) basis.col(j).normalize();

  ManifoldBasis out;
  out.dimension = d;
  out.seed = seed;

  double residual = subspace_residual(X, basis);
  out.residual_history.push_back(residual);

  for (int pass = 0; pass < config.max_alternations; ++pass) {
    Eigen::MatrixXd codes(d, n);
    for (Eigen::Index i = 0; i < n; ++i)
      codes.col(i) = proximity::lasso_code(X.col(i), basis, config.w);

    // Closed-form least-squares update, then column renormalization. Atoms
    // no coding uses are kept from the previous pass.
    Eigen::MatrixXd updated =
        X * codes.transpose() * pseudo_inverse_spd(codes * codes.transpose());
    for (Eigen::Index j = 0; j < d; ++j) {
      const double norm = updated.col(j).norm();
      if (norm > 1e-12)
        updated.col(j) /= norm;
      else
        updated.col(j) = basis.col(j);
    }

    const double next = subspace_residual(X, updated);
    if (next > residual) break;  // no improvement; keep the previous basis
    basis = updated;
    out.residual_history.push_back(next);
    const double drop = residual - next;
    residual = next;
    if (drop < config.rel_tol * std::max(residual, 1e-15)) break;
  }

  out.basis = basis;
  out.final_residual = residual;
  return out;
}

ManifoldEnsemble build_ensemble(const std::vector<Eigen::MatrixXd>& sets,
                                int nu, std::uint64_t master_seed,
                                const LearnConfig& config) {
  if (nu < 1) throw ParameterError("build_ensemble: nu must be >= 1");
  if (sets.empty()) throw ParameterError("build_ensemble: no sets");

  ManifoldEnsemble ensemble;
  ensemble.nu = nu;
  ensemble.bases.resize(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    ensemble.bases[s].reserve(static_cast<std::size_t>(nu));
    for (int d = 1; d <= nu; ++d) {
      const std::uint64_t seed =
          rng::mix(rng::mix(master_seed, static_cast<std::uint64_t>(s)),
                   static_cast<std::uint64_t>(d));
      try {
        ManifoldBasis basis = learn_basis(sets[s], d, seed, config);
        basis.source_set_id = static_cast<int>(s);
        ensemble.bases[s].push_back(std::move(basis));
      } catch (const std::exception& e) {
        throw ParameterError("build_ensemble: set " + std::to_string(s) +
                             ", dimension " + std::to_string(d) + ": " +
                             e.what());
      }
    }
  }
  return ensemble;
}

namespace {

// An infinite entry means that classifier saw no cluster overlap for the
// class; it outranks any finite distance. Classes compare by how many
// classifiers gave up on them, then by the sum of the finite distances.
struct FusedDistance {
  int infinite = 0;
  double finite_sum = 0.0;

  bool operator<(const FusedDistance& other) const {
    if (infinite != other.infinite) return infinite < other.infinite;
    return finite_sum < other.finite_sum;
  }
};

std::vector<FusedDistance> accumulate(
    const std::vector<Eigen::VectorXd>& per_dimension_distances) {
  const auto n = static_cast<std::size_t>(per_dimension_distances.front().size());
  std::vector<FusedDistance> acc(n);
  for (const auto& d : per_dimension_distances) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = d(static_cast<Eigen::Index>(c));
      if (std::isinf(v))
        ++acc[c].infinite;
      else
        acc[c].finite_sum += v;
    }
  }
  return acc;
}

}  // namespace

int fuse_sum(const std::vector<Eigen::VectorXd>& per_dimension_distances,
             Eigen::VectorXd* totals_out) {
  if (per_dimension_distances.empty())
    throw ParameterError("fuse_sum: no classifiers");
  const auto acc = accumulate(per_dimension_distances);
  std::size_t best = 0;
  for (std::size_t c = 1; c < acc.size(); ++c)
    if (acc[c] < acc[best]) best = c;
  if (totals_out) {
    Eigen::VectorXd totals =
        Eigen::VectorXd::Zero(per_dimension_distances.front().size());
    for (const auto& d : per_dimension_distances) totals += d;
    *totals_out = totals;
  }
  return static_cast<int>(best) + 1;
}

int fuse_mode(const std::vector<int>& per_dimension_labels,
              const std::vector<Eigen::VectorXd>& per_dimension_distances) {
  if (per_dimension_labels.empty())
    throw ParameterError("fuse_mode: no classifiers");
  std::map<int, int> votes;
  for (int label : per_dimension_labels) ++votes[label];
  int best_count = 0;
  for (const auto& [label, count] : votes)
    best_count = std::max(best_count, count);

  const auto acc = accumulate(per_dimension_distances);
  int winner = 0;
  for (const auto& [label, count] : votes) {
    if (count != best_count) continue;
    if (winner == 0 ||
        acc[static_cast<std::size_t>(label - 1)] <
            acc[static_cast<std::size_t>(winner - 1)])
      winner = label;
  }
  return winner;
}

EnsembleOutcome classify_ensemble(
    const ManifoldEnsemble& ensemble, const std::vector<int>& set_class_labels,
    int probe_set_index, Fusion fusion,
    const proximity::ProximityConfig& proximity_config,
    const dfvc::DfvcParams& dfvc_params, Distance distance) {
  const int n_sets = ensemble.set_count();
  if (static_cast<int>(set_class_labels.size()) != n_sets)
    throw ParameterError("classify_ensemble: set label count mismatch");
  if (probe_set_index < 0 || probe_set_index >= n_sets)
    throw ParameterError("classify_ensemble: probe set index out of range");

  int n_classes = 0;
  for (int s = 0; s < n_sets; ++s)
    if (s != probe_set_index)
      n_classes = std::max(n_classes, set_class_labels[static_cast<std::size_t>(s)]);

  EnsembleOutcome outcome;
  for (int dim = 1; dim <= ensemble.nu; ++dim) {
    // Assemble the per-dimension data matrix from basis columns.
    Eigen::Index total_cols = 0;
    for (int s = 0; s < n_sets; ++s)
      total_cols += ensemble.bases[static_cast<std::size_t>(s)][static_cast<std::size_t>(dim - 1)]
                        .basis.cols();
    const Eigen::Index l =
        ensemble.bases[0][static_cast<std::size_t>(dim - 1)].basis.rows();

    LabeledDataset gallery;
    gallery.n_classes = n_classes;
    Eigen::MatrixXd gallery_data(l, total_cols);
    Eigen::Index col = 0;
    for (int s = 0; s < n_sets; ++s) {
      if (s == probe_set_index) continue;
      const auto& b =
          ensemble.bases[static_cast<std::size_t>(s)][static_cast<std::size_t>(dim - 1)].basis;
      gallery_data.middleCols(col, b.cols()) = b;
      gallery.labels.insert(gallery.labels.end(),
                            static_cast<std::size_t>(b.cols()),
                            set_class_labels[static_cast<std::size_t>(s)]);
      col += b.cols();
    }
    gallery.data = gallery_data.leftCols(col);

    const auto& probe_basis =
        ensemble.bases[static_cast<std::size_t>(probe_set_index)]
                      [static_cast<std::size_t>(dim - 1)].basis;

    try {
      const ClassifyOutput one = classify(gallery, probe_basis,
                                          proximity_config, dfvc_params,
                                          distance);
      outcome.per_dimension_labels.push_back(one.result.predicted_label);
      outcome.per_dimension_distances.push_back(one.result.distances);
    } catch (const NoOverlapError&) {
      // This dimension casts no vote and contributes nothing to the sums.
      continue;
    }
  }

  if (outcome.per_dimension_distances.empty())
    throw NoOverlapError(
        "classify_ensemble: every dimension failed to co-cluster the probe");

  Eigen::VectorXd totals = Eigen::VectorXd::Zero(n_classes);
  for (const auto& d : outcome.per_dimension_distances) totals += d;
  const int label =
      fusion == Fusion::sum
          ? fuse_sum(outcome.per_dimension_distances)
          : fuse_mode(outcome.per_dimension_labels,
                      outcome.per_dimension_distances);

  outcome.result.predicted_label = label;
  outcome.result.distances = totals;
  const double rank1 = totals(label - 1);
  double rank2 = kInf;
  for (Eigen::Index i = 0; i < totals.size(); ++i)
    if (i != label - 1) rank2 = std::min(rank2, totals(i));
  if (rank1 == 0.0)
    outcome.result.snr = (rank2 == 0.0) ? 1.0 : kInf;
  else if (std::isinf(rank1))
    outcome.result.snr = 1.0;  // fused distances carry no confidence signal
  else
    outcome.result.snr = rank2 / rank1;
  return outcome;
}

}  // namespace cvc::grassmann
