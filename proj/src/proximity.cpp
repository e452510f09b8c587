#include "cvc/proximity.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <vector>

#include "cvc/errors.hpp"
#include "cvc/graph.hpp"
#include "cvc/linalg.hpp"

namespace cvc::proximity {

namespace {

constexpr double kLassoTol = 1e-6;
constexpr int kLassoMaxSweeps = 1000;

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "gaussian") return Method::gaussian;
  if (name == "ls" || name == "least_squares") return Method::least_squares;
  if (name == "lasso") return Method::lasso;
  if (name == "omp" || name == "fixed_sparsity") return Method::fixed_sparsity;
  throw ParameterError("unknown proximity method: " + name);
}

Eigen::VectorXd least_squares_code(
    const Eigen::Ref<const Eigen::VectorXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary, double cutoff) {
  if (dictionary.cols() < 1)
    throw ParameterError("least_squares_code: empty dictionary");
  if (dictionary.rows() != x.size())
    throw DimensionError("least_squares_code: dimension mismatch");

  const Eigen::MatrixXd gram = dictionary.transpose() * dictionary;
  const linalg::EigResult eig = linalg::symmetric_eig(gram);
  const double max_eig = eig.eigenvalues.maxCoeff();
  const double floor = cutoff * max_eig;

  Eigen::VectorXd inv = Eigen::VectorXd::Zero(eig.eigenvalues.size());
  int retained = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > floor && eig.eigenvalues(i) > 0.0) {
      inv(i) = 1.0 / eig.eigenvalues(i);
      ++retained;
    }
  }
  if (retained == 0)
    throw DegenerateDictionaryError(
        "least_squares_code: all eigenvalues below cutoff");

  return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.transpose() *
         (dictionary.transpose() * x);
}

Eigen::VectorXd lasso_code(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
                           double w) {
  if (w < 0.0) throw ParameterError("lasso_code: w must be nonnegative");
  if (dictionary.rows() != x.size())
    throw DimensionError("lasso_code: dimension mismatch");
  if (w == 0.0) return least_squares_code(x, dictionary);

  const Eigen::Index m = dictionary.cols();
  const Eigen::VectorXd col_sq = dictionary.colwise().squaredNorm();
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd residual = x;

  for (int sweep = 0; sweep < kLassoMaxSweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (col_sq(j) == 0.0) continue;
      const double rho = dictionary.col(j).dot(residual) + col_sq(j) * alpha(j);
      const double next = soft_threshold(rho, w) / col_sq(j);
      const double change = next - alpha(j);
      if (change != 0.0) {
        residual -= change * dictionary.col(j);
        alpha(j) = next;
        max_change = std::max(max_change, std::abs(change));
      }
    }
    if (max_change < kLassoTol) break;
  }
  return alpha;
}

Eigen::VectorXd fixed_sparsity_code(
    const Eigen::Ref<const Eigen::VectorXd>& x,
    const Eigen::Ref<const Eigen::MatrixXd>& dictionary, int budget) {
  const Eigen::Index m = dictionary.cols();
  if (budget < 1 || budget > m)
    throw ParameterError("fixed_sparsity_code: budget " +
                         std::to_string(budget) + " out of range 1.." +
                         std::to_string(m));
  if (dictionary.rows() != x.size())
    throw DimensionError("fixed_sparsity_code: dimension mismatch");

  const Eigen::VectorXd col_norm = dictionary.colwise().norm();
  std::vector<Eigen::Index> support;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  Eigen::VectorXd residual = x;
  Eigen::VectorXd coeffs;

  for (int pick = 0; pick < budget; ++pick) {
    Eigen::Index best = -1;
    double best_score = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (used[static_cast<std::size_t>(j)] || col_norm(j) == 0.0) continue;
      const double score = std::abs(dictionary.col(j).dot(residual)) / col_norm(j);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best < 0) break;  // residual orthogonal to every remaining atom

    used[static_cast<std::size_t>(best)] = true;
    support.push_back(best);
    Eigen::MatrixXd sub(dictionary.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k)
      sub.col(static_cast<Eigen::Index>(k)) = dictionary.col(support[k]);
    coeffs = sub.colPivHouseholderQr().solve(x);
    residual = x - sub * coeffs;
  }

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  for (std::size_t k = 0; k < support.size(); ++k)
    alpha(support[k]) = coeffs(static_cast<Eigen::Index>(k));
  return alpha;
}

Eigen::MatrixXd build_proximity(const Eigen::Ref<const Eigen::MatrixXd>& data,
                                const ProximityConfig& config) {
  const Eigen::Index n = data.cols();
  if (n < 3) throw ParameterError("build_proximity: need at least 3 points");
  if (!data.allFinite())
    throw ParameterError("build_proximity: non-finite data");

  if (config.method == Method::gaussian) {
    double sigma = config.kernel_sigma;
    if (!(sigma > 0.0)) {
      sigma = graph::median_pairwise_distance(data);
      if (!(sigma > 0.0)) sigma = 1.0;  // all points coincide
    }
    return graph::gaussian_adjacency(data, sigma);
  }

  if (config.method == Method::fixed_sparsity) {
    const double b = config.w;
    if (!(b >= 1.0) || b != std::floor(b) ||
        b >= static_cast<double>(n - 1))
      throw ParameterError(
          "build_proximity: fixed_sparsity budget must be a positive integer "
          "below n-1");
  }

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd rest(data.rows(), n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Dictionary of the remaining points; own coefficient is pinned to zero.
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) rest.col(c++) = data.col(j);

    Eigen::VectorXd code;
    try {
      switch (config.method) {
        case Method::least_squares:
          code = least_squares_code(data.col(i), rest,
                                    config.singular_value_cutoff);
          break;
        case Method::lasso:
          code = lasso_code(data.col(i), rest, config.w);
          break;
        case Method::fixed_sparsity:
          code = fixed_sparsity_code(data.col(i), rest,
                                     static_cast<int>(config.w));
          break;
        case Method::gaussian:
          break;  // handled above
      }
    } catch (const std::exception& e) {
      throw CodingError(static_cast<int>(i), e.what());
    }

    c = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) S(j, i) = code(c++);
  }

  return S.cwiseAbs() + S.transpose().cwiseAbs();
}

}  // namespace cvc::proximity
