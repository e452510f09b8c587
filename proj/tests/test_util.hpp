#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

#include "cvc/dataset.hpp"
#include "cvc/graph.hpp"
#include "cvc/rng.hpp"

namespace testutil {

inline std::mt19937_64 gen(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::uint64_t seed) {
  auto g = gen(seed);
  return cvc::rng::standard_normal(rows, cols, g);
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::uint64_t seed) {
  auto g = gen(seed);
  return cvc::rng::standard_normal(n, 1, g);
}

/// Gaussian-kernel adjacency over random points; always connected (the
/// kernel never yields zero weights).
inline Eigen::MatrixXd random_gaussian_graph(Eigen::Index n,
                                             std::uint64_t seed) {
  auto g = gen(seed);
  std::uniform_real_distribution<double> spread(0.5, 3.0);
  Eigen::MatrixXd points = cvc::rng::standard_normal(3, n, g) * spread(g);
  const double sigma = cvc::graph::median_pairwise_distance(points);
  return cvc::graph::gaussian_adjacency(points, sigma > 0 ? sigma : 1.0);
}

/// Random point on the probability simplex.
inline Eigen::VectorXd random_simplex(Eigen::Index k, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  Eigen::VectorXd p(k);
  for (Eigen::Index i = 0; i < k; ++i) p(i) = u(g);
  return p / p.sum();
}

/// Well-separated isotropic Gaussian classes in dim dimensions plus a probe
/// drawn from probe_class. Class centers sit on scaled coordinate axes.
inline cvc::LabeledDataset gaussian_gallery_with_probe(
    int n_classes, int per_class, int probe_count, int probe_class,
    double separation, double sigma, int dim, std::uint64_t seed) {
  auto g = gen(seed);
  cvc::LabeledDataset ds;
  ds.n_classes = n_classes;
  const int total = n_classes * per_class + probe_count;
  ds.data.resize(dim, total);
  std::vector<Eigen::VectorXd> centers;
  for (int c = 0; c < n_classes; ++c) {
    Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
    center(c % dim) = separation * (1.0 + c / dim);
    centers.push_back(center);
  }
  Eigen::Index col = 0;
  for (int c = 0; c < n_classes; ++c) {
    for (int i = 0; i < per_class; ++i, ++col) {
      ds.data.col(col) =
          centers[static_cast<std::size_t>(c)] +
          sigma * cvc::rng::standard_normal(dim, 1, g).col(0);
      ds.labels.push_back(c + 1);
    }
  }
  for (int i = 0; i < probe_count; ++i, ++col) {
    ds.data.col(col) =
        centers[static_cast<std::size_t>(probe_class - 1)] +
        sigma * cvc::rng::standard_normal(dim, 1, g).col(0);
    ds.labels.push_back(n_classes + 1);
  }
  return ds;
}

}  // namespace testutil
