#pragma once

#include <Eigen/Core>
#include <vector>

namespace cvc {

/// Feature matrix with class labels: gallery columns first, probe columns
/// last. Probe points carry the dummy label n_classes + 1.
struct LabeledDataset {
  Eigen::MatrixXd data;     // l x n, points are columns
  std::vector<int> labels;  // values in 1 .. n_classes + 1
  int n_classes = 0;

  int probe_label() const { return n_classes + 1; }
  Eigen::Index size() const { return data.cols(); }

  Eigen::Index probe_count() const {
    Eigen::Index c = 0;
    for (int v : labels)
      if (v == probe_label()) ++c;
    return c;
  }
  Eigen::Index gallery_count() const { return size() - probe_count(); }

  /// Throws ParameterError when the invariants do not hold: label/point
  /// count match, labels in range, every gallery class populated, gallery
  /// columns before probe columns.
  void validate() const;
};

}  // namespace cvc
