#pragma once

#include <Eigen/Core>
#include <vector>

#include "cvc/dfvc.hpp"

namespace cvc::shc {

/// One recorded split of the recursion tree. Node ids are assigned in
/// creation order starting from the root at 1; leaf nodes are compacted into
/// the final cluster labels afterwards.
struct SplitRecord {
  int parent = 0;
  std::vector<int> children;
  double fiedler_value = 0.0;  // 0 for component and direct splits
  int delta_s = 0;             // sign switches at convergence of the cut
  int level = 0;               // recursion depth, root = 1
};

struct ClusterAssignment {
  std::vector<int> cluster_labels;  // 1 .. n_clusters, depth-first leaf order
  int n_clusters = 0;
  std::vector<SplitRecord> tree_trace;
  std::vector<int> leaf_node_ids;        // tree node id of each final cluster
  std::vector<int> unsplittable_leaves;  // cluster labels flagged divisible
                                         // but uncuttable
  bool has_unsplittable() const { return !unsplittable_leaves.empty(); }
};

/// A cluster needs no further split when it does not simultaneously hold
/// probe points and two or more gallery classes.
bool is_indivisible(const std::vector<int>& cluster_class_labels,
                    int probe_label);

/// Recursive two-way normalized cut over submatrices of the global proximity
/// matrix, stopped by the label-based indivisibility test. Disconnected
/// local graphs split by connected components; a degenerate cut (all signs
/// equal) retains the cluster and flags it. The cluster count is emergent.
ClusterAssignment cluster(const Eigen::Ref<const Eigen::MatrixXd>& proximity,
                          const std::vector<int>& class_labels,
                          int probe_label,
                          const dfvc::DfvcParams& params = {});

/// Checks that for every gallery pair (i, j) no cluster carries mass from
/// class i, class j, and the probe at once.
bool verify_conditional_orthogonality(const ClusterAssignment& assignment,
                                      const std::vector<int>& class_labels,
                                      int probe_label);

}  // namespace cvc::shc
