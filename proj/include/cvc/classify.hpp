#pragma once

#include <Eigen/Core>
#include <vector>

#include "cvc/dataset.hpp"
#include "cvc/dfvc.hpp"
#include "cvc/proximity.hpp"
#include "cvc/shc.hpp"

namespace cvc {

/// Class-by-cluster occupancy counts and the row-normalized distributions.
/// Rows 1..n_classes are the gallery classes, the last row is the probe.
struct ClassClusterHistogram {
  Eigen::MatrixXi counts;         // (n_classes + 1) x n_clusters
  Eigen::MatrixXd distributions;  // rows sum to 1; empty rows stay zero
  std::vector<bool> empty_rows;
};

ClassClusterHistogram build_histogram(const std::vector<int>& class_labels,
                                      const std::vector<int>& cluster_labels,
                                      int n_classes, int n_clusters);

/// Bhattacharyya distance -ln sum sqrt(p q); +inf on disjoint supports.
double bhattacharyya(const Eigen::Ref<const Eigen::VectorXd>& p,
                     const Eigen::Ref<const Eigen::VectorXd>& q);

/// Hellinger distance, the scaled l2 norm between square-rooted
/// distributions; ranges over [0, 1].
double hellinger(const Eigen::Ref<const Eigen::VectorXd>& p,
                 const Eigen::Ref<const Eigen::VectorXd>& q);

enum class Distance { bhattacharyya, hellinger };

struct ClassificationResult {
  int predicted_label = 0;    // 1 .. n_classes
  Eigen::VectorXd distances;  // per gallery class; +inf where undefined
  double snr = 0.0;           // rank-2 distance over rank-1 distance
};

/// Argmin with smallest-index tie break, plus the rank2/rank1 confidence
/// ratio. Throws NoOverlapError when every distance is infinite.
ClassificationResult decide_label(const Eigen::Ref<const Eigen::VectorXd>& distances);

struct ClassifyOutput {
  ClassificationResult result;
  shc::ClusterAssignment assignment;
  ClassClusterHistogram histogram;
};

/// End-to-end pipeline: append the probe with the dummy label, build the
/// proximity matrix over gallery and probe together, cluster, and match the
/// probe's cluster distribution against each class distribution.
ClassifyOutput classify(const LabeledDataset& gallery,
                        const Eigen::Ref<const Eigen::MatrixXd>& probe,
                        const proximity::ProximityConfig& proximity_config = {},
                        const dfvc::DfvcParams& dfvc_params = {},
                        Distance distance = Distance::bhattacharyya);

}  // namespace cvc
