#include "cvc/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cvc/errors.hpp"

namespace cvc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ClassClusterHistogram build_histogram(const std::vector<int>& class_labels,
                                      const std::vector<int>& cluster_labels,
                                      int n_classes, int n_clusters) {
  if (class_labels.size() != cluster_labels.size())
    throw DimensionError("build_histogram: label vectors differ in length");
  if (n_classes < 1 || n_clusters < 1)
    throw ParameterError("build_histogram: counts must be positive");

  ClassClusterHistogram h;
  h.counts = Eigen::MatrixXi::Zero(n_classes + 1, n_clusters);
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    const int row = class_labels[i];
    const int col = cluster_labels[i];
    if (row < 1 || row > n_classes + 1)
      throw ParameterError("build_histogram: class label out of range");
    if (col < 1 || col > n_clusters)
      throw ParameterError("build_histogram: cluster label out of range");
    ++h.counts(row - 1, col - 1);
  }

  h.distributions = Eigen::MatrixXd::Zero(n_classes + 1, n_clusters);
  h.empty_rows.assign(static_cast<std::size_t>(n_classes) + 1, false);
  for (int r = 0; r <= n_classes; ++r) {
    const double total = static_cast<double>(h.counts.row(r).sum());
    if (total == 0.0) {
      h.empty_rows[static_cast<std::size_t>(r)] = true;
      continue;
    }
    h.distributions.row(r) = h.counts.row(r).cast<double>() / total;
  }
  return h;
}

double bhattacharyya(const Eigen::Ref<const Eigen::VectorXd>& p,
                     const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (p.size() != q.size())
    throw DimensionError("bhattacharyya: length mismatch");
  const double coefficient = (p.cwiseProduct(q)).cwiseSqrt().sum();
  if (coefficient <= 0.0) return kInf;
  return -std::log(coefficient);
}

double hellinger(const Eigen::Ref<const Eigen::VectorXd>& p,
                 const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (p.size() != q.size()) throw DimensionError("hellinger: length mismatch");
  const double sq =
      (p.cwiseSqrt() - q.cwiseSqrt()).squaredNorm();
  return std::sqrt(0.5 * sq);
}

ClassificationResult decide_label(
    const Eigen::Ref<const Eigen::VectorXd>& distances) {
  if (distances.size() < 1)
    throw ParameterError("decide_label: no distances");
  ClassificationResult r;
  r.distances = distances;

  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < distances.size(); ++i) {
    if (std::isnan(distances(i)))
      throw ParameterError("decide_label: NaN distance");
    if (best < 0 || distances(i) < distances(best)) best = i;
  }
  if (std::isinf(distances(best)))
    throw NoOverlapError(
        "decide_label: probe shares no cluster with any gallery class");

  double rank2 = kInf;
  for (Eigen::Index i = 0; i < distances.size(); ++i)
    if (i != best) rank2 = std::min(rank2, distances(i));

  r.predicted_label = static_cast<int>(best) + 1;
  const double rank1 = distances(best);
  if (rank1 == 0.0)
    r.snr = (rank2 == 0.0) ? 1.0 : kInf;
  else
    r.snr = rank2 / rank1;
  return r;
}

ClassifyOutput classify(const LabeledDataset& gallery,
                        const Eigen::Ref<const Eigen::MatrixXd>& probe,
                        const proximity::ProximityConfig& proximity_config,
                        const dfvc::DfvcParams& dfvc_params,
                        Distance distance) {
  gallery.validate();
  if (gallery.probe_count() != 0)
    throw ParameterError("classify: gallery must not contain probe points");
  if (gallery.n_classes < 2)
    throw ParameterError("classify: need at least 2 gallery classes");
  if (probe.cols() < 1) throw ParameterError("classify: empty probe");
  if (probe.rows() != gallery.data.rows())
    throw DimensionError("classify: probe dimension mismatch");

  const int n_classes = gallery.n_classes;
  const int dummy = n_classes + 1;

  Eigen::MatrixXd all(gallery.data.rows(), gallery.size() + probe.cols());
  all << gallery.data, probe;
  std::vector<int> labels = gallery.labels;
  labels.insert(labels.end(), static_cast<std::size_t>(probe.cols()), dummy);

  const Eigen::MatrixXd proximity_matrix =
      proximity::build_proximity(all, proximity_config);

  ClassifyOutput out;
  out.assignment = shc::cluster(proximity_matrix, labels, dummy, dfvc_params);
  out.histogram = build_histogram(labels, out.assignment.cluster_labels,
                                  n_classes, out.assignment.n_clusters);

  const Eigen::VectorXd probe_dist =
      out.histogram.distributions.row(n_classes);
  Eigen::VectorXd class_distances(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    if (out.histogram.empty_rows[static_cast<std::size_t>(c)]) {
      class_distances(c) = kInf;
      continue;
    }
    const Eigen::VectorXd class_dist = out.histogram.distributions.row(c);
    class_distances(c) = distance == Distance::bhattacharyya
                             ? bhattacharyya(class_dist, probe_dist)
                             : hellinger(class_dist, probe_dist);
  }
  out.result = decide_label(class_distances);
  return out;
}

}  // namespace cvc
