#pragma once

#include <Eigen/Core>
#include <string>

namespace cvc::proximity {

enum class Method { gaussian, least_squares, lasso, fixed_sparsity };

/// Parses one of {gaussian, ls, lasso, omp}.
Method parse_method(const std::string& name);

struct ProximityConfig {
  Method method = Method::lasso;
  /// Sparsity weight for lasso, or the integer atom budget for
  /// fixed_sparsity.
  double w = 0.01;
  /// Relative eigenvalue cutoff of the truncated pseudo-inverse.
  double singular_value_cutoff = 1e-10;
  /// Bandwidth for the gaussian method; non-positive selects the median
  /// pairwise distance heuristic.
  double kernel_sigma = 0.0;
};

/// Least-squares coding of x against the dictionary through the truncated
/// eigendecomposition of the Gram matrix: alpha = U S^-1 U' D' x over
/// eigenpairs above cutoff * max eigenvalue.
Eigen::VectorXd least_squares_code(
    const Eigen::Ref<const Eigen::VectorXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
    double cutoff = 1e-10);

/// l1-regularized coding: minimizes 1/2 ||x - D a||^2 + w ||a||_1 by cyclic
/// coordinate descent. w = 0 falls back to least_squares_code. Deterministic.
Eigen::VectorXd lasso_code(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
                           double w);

/// Greedy orthogonal matching pursuit with at most `budget` atoms; the
/// selected coefficients are refit by least squares after every pick.
Eigen::VectorXd fixed_sparsity_code(
    const Eigen::Ref<const Eigen::VectorXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary, int budget);

/// Proximity matrix over data columns. Coding methods represent every point
/// against the remaining points (own coefficient pinned to zero) and
/// symmetrize A = |S| + |S'|; the gaussian method returns the kernel
/// adjacency directly.
Eigen::MatrixXd build_proximity(const Eigen::Ref<const Eigen::MatrixXd>& data,
                                const ProximityConfig& config);

}  // namespace cvc::proximity
