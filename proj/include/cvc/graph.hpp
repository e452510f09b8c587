#pragma once

#include <Eigen/Core>
#include <vector>

namespace cvc::graph {

/// Weighted-graph quantities derived from an adjacency matrix.
struct GraphSpectra {
  Eigen::MatrixXd adjacency;
  Eigen::VectorXd degree;       // diagonal of the degree matrix
  Eigen::MatrixXd laplacian;    // symmetric normalized: D^-1/2 (D - A) D^-1/2
  double volume = 0.0;          // sum of degrees
  Eigen::VectorXd null_vector;  // sqrt of the degrees; null direction of L
};

/// Median of pairwise Euclidean distances; the default kernel bandwidth.
double median_pairwise_distance(const Eigen::Ref<const Eigen::MatrixXd>& X);

/// Gaussian-kernel adjacency with full covariance: points are columns of X,
/// A(i,j) = exp(-1/2 (xi-xj)' Sigma^-1 (xi-xj)), zero diagonal.
Eigen::MatrixXd gaussian_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                   const Eigen::Ref<const Eigen::MatrixXd>& sigma);

/// Isotropic case: Sigma = sigma^2 I.
Eigen::MatrixXd gaussian_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                   double sigma);

/// Degree vector, normalized Laplacian, volume, and null vector for a
/// symmetric nonnegative zero-diagonal adjacency. Rejects isolated vertices.
GraphSpectra build_spectra(const Eigen::Ref<const Eigen::MatrixXd>& A);

struct Components {
  bool connected = false;
  int count = 0;
  std::vector<int> labels;  // 1-based, by discovery order
};

/// Connected components of the graph whose edges have weight above
/// edge_epsilon. The Gaussian kernel never yields exact zeros, so tiny
/// weights are treated as absent.
Components is_connected(const Eigen::Ref<const Eigen::MatrixXd>& A,
                        double edge_epsilon = 1e-12);

/// Discrete normalized-cut objective of a bipartition:
/// cut(r,l) * (1/vol_r + 1/vol_l). Both sides must be nonempty.
double ncut_objective(const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const std::vector<bool>& right_side);

}  // namespace cvc::graph
