#include "cvc/dfvc.hpp"

#include <cmath>

#include "cvc/errors.hpp"
#include "cvc/linalg.hpp"

namespace cvc::dfvc {

namespace {

constexpr double kEtaFloor = 1e-8;
constexpr int kMaxRestarts = 5;

int default_epsilon_s(Eigen::Index n) {
  const int one_percent = static_cast<int>(std::ceil(0.01 * static_cast<double>(n)));
  return std::max(1, one_percent);
}

}  // namespace

double estimate_eta(const graph::GraphSpectra& spectra) {
  if (!(spectra.volume > 0.0))
    throw ParameterError("estimate_eta: graph volume must be positive");
  return std::max(1.0 / (spectra.volume * spectra.volume), kEtaFloor);
}

FiedlerResult compute_fiedler(const graph::GraphSpectra& spectra,
                              const DfvcParams& params) {
  const Eigen::Index n = spectra.laplacian.rows();
  if (n < 2) throw ParameterError("compute_fiedler: need at least 2 vertices");

  Eigen::VectorXd null_dir = spectra.null_vector;
  if (params.normalize_null) null_dir /= null_dir.norm();
  const double null_sq = null_dir.squaredNorm();

  const int epsilon_s =
      params.epsilon_s >= 0 ? params.epsilon_s : default_epsilon_s(n);
  double eta = params.eta > 0.0 ? params.eta : estimate_eta(spectra);

  for (int restart = 0; restart <= kMaxRestarts; ++restart, eta *= 2.0) {
    // Over-deflation pushes the null eigenvalue to -sum(null_dir); the shift
    // then leaves the Fiedler eigenvalue nearest zero in the inverse.
    Eigen::MatrixXd shifted = spectra.laplacian;
    shifted.noalias() -= null_dir * Eigen::RowVectorXd::Ones(n);
    shifted.diagonal().array() -= eta;
    const linalg::QrResult qr = linalg::qr_decompose(shifted);

    Eigen::VectorXd v = qr.Q.leftCols(n - 1).rowwise().sum() - null_dir;
    const double v0_norm = v.norm();
    if (v0_norm > 0.0)
      v /= v0_norm;
    else
      v = Eigen::VectorXd::Unit(n, 0);  // degenerate start, pick any direction

    FiedlerResult result;
    result.eta_used = eta;
    result.restarts = restart;
    result.per_point_switch_counts.assign(static_cast<std::size_t>(n), 0);

    bool collided = false;
    for (int k = 1; k <= params.max_iterations; ++k) {
      Eigen::VectorXd w;
      try {
        w = linalg::back_substitute(qr.R, qr.Q.transpose() * v);
      } catch (const SingularSystemError&) {
        collided = true;
        break;
      }
      if (params.project_null) w -= (w.dot(null_dir) / null_sq) * null_dir;
      const double w_norm = w.norm();
      if (!(w_norm > 0.0) || !std::isfinite(w_norm)) {
        collided = true;
        break;
      }
      w /= w_norm;

      int delta_s = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if ((w(i) >= 0.0) != (v(i) >= 0.0)) {
          ++delta_s;
          ++result.per_point_switch_counts[static_cast<std::size_t>(i)];
        }
      }
      result.sign_switch_history.push_back(delta_s);
      result.iterations = k;
      v = w;
      if (delta_s < epsilon_s) {
        result.converged = true;
        break;
      }
    }
    if (collided) continue;  // eta doubled, refactor and retry

    result.fiedler_vector = v;
    result.fiedler_value = v.dot(spectra.laplacian * v);
    return result;
  }
  throw ShiftCollisionError(
      "compute_fiedler: shifted system stayed singular after " +
      std::to_string(kMaxRestarts) + " eta restarts");
}

SignCut sign_partition(const Eigen::Ref<const Eigen::VectorXd>& u) {
  SignCut cut;
  cut.right.resize(static_cast<std::size_t>(u.size()));
  std::size_t n_right = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const bool right = u(i) >= 0.0;
    cut.right[static_cast<std::size_t>(i)] = right;
    if (right) ++n_right;
  }
  cut.degenerate = (n_right == 0 || n_right == cut.right.size());
  return cut;
}

}  // namespace cvc::dfvc
