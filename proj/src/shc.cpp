#include "cvc/shc.hpp"

#include <algorithm>
#include <set>

#include "cvc/errors.hpp"
#include "cvc/graph.hpp"

namespace cvc::shc {

namespace {

struct Recursion {
  const Eigen::Ref<const Eigen::MatrixXd>& proximity;
  const std::vector<int>& class_labels;
  int probe_label;
  const dfvc::DfvcParams& params;

  ClusterAssignment out;
  int next_node_id = 1;

  std::vector<int> labels_of(const std::vector<int>& indices) const {
    std::vector<int> labels;
    labels.reserve(indices.size());
    for (int i : indices) labels.push_back(class_labels[static_cast<std::size_t>(i)]);
    return labels;
  }

  Eigen::MatrixXd submatrix(const std::vector<int>& indices) const {
    const auto m = static_cast<Eigen::Index>(indices.size());
    Eigen::MatrixXd local(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        local(a, b) = proximity(indices[static_cast<std::size_t>(a)],
                                indices[static_cast<std::size_t>(b)]);
    return local;
  }

  void emit_leaf(const std::vector<int>& indices, int node_id, bool unsplittable) {
    out.leaf_node_ids.push_back(node_id);
    const int label = static_cast<int>(out.leaf_node_ids.size());
    for (int i : indices)
      out.cluster_labels[static_cast<std::size_t>(i)] = label;
    if (unsplittable) out.unsplittable_leaves.push_back(label);
  }

  void recurse(const std::vector<int>& indices, int node_id, int level) {
    if (is_indivisible(labels_of(indices), probe_label)) {
      emit_leaf(indices, node_id, false);
      return;
    }

    // A divisible pair needs no eigensolve; both singletons are leaves.
    if (indices.size() == 2) {
      SplitRecord rec;
      rec.parent = node_id;
      rec.level = level;
      rec.children = {++next_node_id, ++next_node_id};
      out.tree_trace.push_back(rec);
      emit_leaf({indices[0]}, rec.children[0], false);
      emit_leaf({indices[1]}, rec.children[1], false);
      return;
    }

    const Eigen::MatrixXd local = submatrix(indices);
    const graph::Components comps = graph::is_connected(local);
    if (!comps.connected) {
      // Components are the exact zero-cost cut; recurse on each.
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(comps.count));
      for (std::size_t a = 0; a < indices.size(); ++a)
        groups[static_cast<std::size_t>(comps.labels[a] - 1)].push_back(indices[a]);
      SplitRecord rec;
      rec.parent = node_id;
      rec.level = level;
      std::vector<int> child_ids;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        rec.children.push_back(++next_node_id);
        child_ids.push_back(next_node_id);
      }
      out.tree_trace.push_back(rec);
      for (std::size_t g = 0; g < groups.size(); ++g)
        recurse(groups[g], child_ids[g], level + 1);
      return;
    }

    const graph::GraphSpectra spectra = graph::build_spectra(local);
    const dfvc::FiedlerResult fiedler = dfvc::compute_fiedler(spectra, params);
    const dfvc::SignCut cut = dfvc::sign_partition(fiedler.fiedler_vector);
    if (cut.degenerate) {
      emit_leaf(indices, node_id, true);
      return;
    }

    std::vector<int> right, left;
    for (std::size_t a = 0; a < indices.size(); ++a)
      (cut.right[a] ? right : left).push_back(indices[a]);

    SplitRecord rec;
    rec.parent = node_id;
    rec.fiedler_value = fiedler.fiedler_value;
    rec.delta_s = fiedler.sign_switch_history.empty()
                      ? 0
                      : fiedler.sign_switch_history.back();
    rec.level = level;
    const int right_id = ++next_node_id;
    const int left_id = ++next_node_id;
    rec.children = {right_id, left_id};
    out.tree_trace.push_back(std::move(rec));

    recurse(right, right_id, level + 1);
    recurse(left, left_id, level + 1);
  }
};

}  // namespace

bool is_indivisible(const std::vector<int>& cluster_class_labels,
                    int probe_label) {
  if (cluster_class_labels.empty())
    throw ParameterError("is_indivisible: empty cluster");
  bool has_probe = false;
  std::set<int> gallery;
  for (int label : cluster_class_labels) {
    if (label == probe_label)
      has_probe = true;
    else
      gallery.insert(label);
  }
  return !(has_probe && gallery.size() >= 2);
}

ClusterAssignment cluster(const Eigen::Ref<const Eigen::MatrixXd>& proximity,
                          const std::vector<int>& class_labels,
                          int probe_label,
                          const dfvc::DfvcParams& params) {
  const Eigen::Index n = proximity.rows();
  if (proximity.cols() != n)
    throw DimensionError("cluster: proximity must be square");
  if (static_cast<Eigen::Index>(class_labels.size()) != n)
    throw DimensionError("cluster: label count mismatch");
  if (n == 0) throw ParameterError("cluster: empty input");

  Recursion rec{proximity, class_labels, probe_label, params, {}, 1};
  rec.out.cluster_labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = static_cast<int>(i);
  rec.recurse(all, 1, 1);
  rec.out.n_clusters = static_cast<int>(rec.out.leaf_node_ids.size());
  return rec.out;
}

bool verify_conditional_orthogonality(const ClusterAssignment& assignment,
                                      const std::vector<int>& class_labels,
                                      int probe_label) {
  const int n_clusters = assignment.n_clusters;
  const int n_rows = probe_label;  // gallery classes plus the probe row
  std::vector<std::vector<int>> counts(
      static_cast<std::size_t>(n_rows),
      std::vector<int>(static_cast<std::size_t>(n_clusters), 0));
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    const int row = class_labels[i] - 1;
    const int col = assignment.cluster_labels[i] - 1;
    ++counts[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }
  const auto& probe_row = counts[static_cast<std::size_t>(probe_label - 1)];
  for (int i = 0; i < n_rows - 1; ++i) {
    for (int j = i + 1; j < n_rows - 1; ++j) {
      for (int k = 0; k < n_clusters; ++k) {
        if (counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] > 0 &&
            counts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] > 0 &&
            probe_row[static_cast<std::size_t>(k)] > 0)
          return false;
      }
    }
  }
  return true;
}

}  // namespace cvc::shc
