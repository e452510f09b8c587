#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "cvc/classify.hpp"

namespace cvc::grassmann {

/// Learned subspace basis for one image set.
struct ManifoldBasis {
  Eigen::MatrixXd basis;  // l x d, unit-norm columns
  int dimension = 0;
  int source_set_id = 0;
  std::uint64_t seed = 0;
  double final_residual = 0.0;           // ||X - B B+ X||_F after learning
  std::vector<double> residual_history;  // one entry per accepted alternation
};

struct LearnConfig {
  int max_alternations = 50;
  double w = 0.01;        // sparsity weight of the coding step
  double rel_tol = 1e-4;  // stop when the residual improves less than this
};

/// Alternating sparse coding and closed-form basis update. Columns are
/// re-normalized every pass; an alternation is only accepted when it does not
/// increase the subspace residual, so the logged sequence is nonincreasing.
/// Deterministic for a fixed seed.
ManifoldBasis learn_basis(const Eigen::Ref<const Eigen::MatrixXd>& X, int d,
                          std::uint64_t seed, const LearnConfig& config = {});

/// One basis per (set, dimension) over dimensions 1..nu.
struct ManifoldEnsemble {
  std::vector<std::vector<ManifoldBasis>> bases;  // [set][dimension - 1]
  int nu = 0;

  int set_count() const { return static_cast<int>(bases.size()); }
};

/// Learns the complete grid; each cell's seed derives deterministically from
/// (master seed, set id, dimension).
ManifoldEnsemble build_ensemble(const std::vector<Eigen::MatrixXd>& sets,
                                int nu, std::uint64_t master_seed,
                                const LearnConfig& config = {});

enum class Fusion { sum, mode };

/// Sum rule: label of the minimum summed distance. Infinite entries mean a
/// classifier saw no cluster overlap for that class; classes rank by the
/// count of infinite entries first, then by the sum of the finite ones, so
/// the rule keeps its signal when overlaps are sparse.
int fuse_sum(const std::vector<Eigen::VectorXd>& per_dimension_distances,
             Eigen::VectorXd* totals = nullptr);

/// Mode rule: most frequent per-dimension label; ties resolved by the
/// smallest summed distance, then the smallest label.
int fuse_mode(const std::vector<int>& per_dimension_labels,
              const std::vector<Eigen::VectorXd>& per_dimension_distances);

struct EnsembleOutcome {
  ClassificationResult result;  // distances hold the per-class sums
  std::vector<int> per_dimension_labels;
  std::vector<Eigen::VectorXd> per_dimension_distances;
};

/// Runs one spectral classifier per manifold dimension over the basis
/// columns (gallery bases labeled by their set's class, probe basis dummy)
/// and fuses the decisions.
EnsembleOutcome classify_ensemble(
    const ManifoldEnsemble& ensemble, const std::vector<int>& set_class_labels,
    int probe_set_index, Fusion fusion,
    const proximity::ProximityConfig& proximity_config = {},
    const dfvc::DfvcParams& dfvc_params = {},
    Distance distance = Distance::bhattacharyya);

}  // namespace cvc::grassmann
