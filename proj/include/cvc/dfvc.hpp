#pragma once

#include <Eigen/Core>
#include <vector>

#include "cvc/graph.hpp"

namespace cvc::dfvc {

struct DfvcParams {
  /// Eigen-shift. Non-positive means estimate from the graph volume bound.
  double eta = 0.0;
  /// Sign-change threshold; iteration stops when fewer than epsilon_s
  /// coefficients switch sign. Negative means max(1, ceil(0.01 n)).
  int epsilon_s = -1;
  int max_iterations = 1000;
  /// Unit-normalize the null vector before over-deflation (off: use sqrt of
  /// the degrees as-is).
  bool normalize_null = false;
  /// Re-orthogonalize each iterate against the null direction. The raw
  /// over-deflated operator keeps a residual null component of magnitude
  /// |1'v| / (lambda + sum sqrt(d_i)) in its Fiedler eigenvector; projection
  /// removes it so the returned vector and Rayleigh value are clean.
  bool project_null = true;
};

struct FiedlerResult {
  Eigen::VectorXd fiedler_vector;  // unit norm
  double fiedler_value = 0.0;      // Rayleigh quotient v' L v
  int iterations = 0;
  bool converged = false;
  std::vector<int> sign_switch_history;    // per-iteration switch totals
  std::vector<int> per_point_switch_counts;
  double eta_used = 0.0;
  int restarts = 0;
};

/// Shift estimate from the connectivity bound lambda >= 1 / volume^2,
/// clamped below at 1e-8.
double estimate_eta(const graph::GraphSpectra& spectra);

/// Shifted inverse iteration for the second-smallest eigenpair of the
/// normalized Laplacian. The null direction is over-deflated by subtracting
/// its outer product with the all-ones row, the shifted matrix is QR-factored
/// once, and every iteration is a single orthogonal apply plus a
/// back-substitution. Convergence is counted in coefficient sign changes, not
/// eigenvalue residuals. A singular solve means the shift collided with an
/// eigenvalue; eta is doubled and the factorization retried, up to 5 times.
///
/// The caller is responsible for passing a connected graph.
FiedlerResult compute_fiedler(const graph::GraphSpectra& spectra,
                              const DfvcParams& params = {});

struct SignCut {
  std::vector<bool> right;  // true where the coefficient is >= 0
  bool degenerate = false;  // all coefficients on one side
};

/// Splits indices by the sign of the vector; zero goes right.
SignCut sign_partition(const Eigen::Ref<const Eigen::VectorXd>& u);

}  // namespace cvc::dfvc
