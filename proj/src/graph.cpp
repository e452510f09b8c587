#include "cvc/graph.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <queue>

#include "cvc/errors.hpp"

namespace cvc::graph {

namespace {

void check_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& A,
                     const char* who) {
  if (A.rows() != A.cols())
    throw DimensionError(std::string(who) + ": adjacency must be square");
  if (!A.allFinite())
    throw ParameterError(std::string(who) + ": non-finite entries");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw ParameterError(std::string(who) + ": adjacency not symmetric");
  if (A.minCoeff() < 0.0)
    throw ParameterError(std::string(who) + ": negative edge weight");
}

}  // namespace

double median_pairwise_distance(const Eigen::Ref<const Eigen::MatrixXd>& X) {
  const Eigen::Index n = X.cols();
  if (n < 2)
    throw ParameterError("median_pairwise_distance: need at least 2 points");
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      dist.push_back((X.col(i) - X.col(j)).norm());
  auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  return *mid;
}

Eigen::MatrixXd gaussian_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                   const Eigen::Ref<const Eigen::MatrixXd>& sigma) {
  const Eigen::Index l = X.rows();
  const Eigen::Index n = X.cols();
  if (n < 2) throw ParameterError("gaussian_adjacency: need at least 2 points");
  if (sigma.rows() != l || sigma.cols() != l)
    throw DimensionError("gaussian_adjacency: sigma must be " +
                         std::to_string(l) + "x" + std::to_string(l));
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw ParameterError("gaussian_adjacency: sigma is not SPD");

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd d = X.col(i) - X.col(j);
      const double q = d.dot(llt.solve(d));
      const double w = std::exp(-0.5 * q);
      A(i, j) = w;
      A(j, i) = w;
    }
  }
  return A;
}

Eigen::MatrixXd gaussian_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                   double sigma) {
  const Eigen::Index n = X.cols();
  if (n < 2) throw ParameterError("gaussian_adjacency: need at least 2 points");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ParameterError("gaussian_adjacency: sigma must be positive");

  const double inv = 1.0 / (sigma * sigma);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double q = (X.col(i) - X.col(j)).squaredNorm() * inv;
      const double w = std::exp(-0.5 * q);
      A(i, j) = w;
      A(j, i) = w;
    }
  }
  return A;
}

GraphSpectra build_spectra(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  check_adjacency(A, "build_spectra");
  const Eigen::Index n = A.rows();
  if (A.diagonal().cwiseAbs().maxCoeff() != 0.0)
    throw ParameterError("build_spectra: adjacency diagonal must be zero");

  GraphSpectra s;
  s.adjacency = A;
  s.degree = A.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(s.degree(i) > 0.0))
      throw DegenerateGraphError("build_spectra: isolated vertex " +
                                 std::to_string(i));
  s.volume = s.degree.sum();
  s.null_vector = s.degree.cwiseSqrt();

  // Assemble the upper triangle and mirror so L is symmetric bit for bit.
  const Eigen::VectorXd inv_sqrt = s.degree.cwiseSqrt().cwiseInverse();
  s.laplacian.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.laplacian(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = -A(i, j) * (inv_sqrt(i) * inv_sqrt(j));
      s.laplacian(i, j) = v;
      s.laplacian(j, i) = v;
    }
  }
  return s;
}

Components is_connected(const Eigen::Ref<const Eigen::MatrixXd>& A,
                        double edge_epsilon) {
  check_adjacency(A, "is_connected");
  const Eigen::Index n = A.rows();
  Components out;
  out.labels.assign(static_cast<std::size_t>(n), 0);
  for (Eigen::Index start = 0; start < n; ++start) {
    if (out.labels[static_cast<std::size_t>(start)] != 0) continue;
    ++out.count;
    std::queue<Eigen::Index> frontier;
    frontier.push(start);
    out.labels[static_cast<std::size_t>(start)] = out.count;
    while (!frontier.empty()) {
      const Eigen::Index i = frontier.front();
      frontier.pop();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (out.labels[static_cast<std::size_t>(j)] == 0 &&
            A(i, j) > edge_epsilon) {
          out.labels[static_cast<std::size_t>(j)] = out.count;
          frontier.push(j);
        }
      }
    }
  }
  out.connected = (out.count == 1);
  return out;
}

double ncut_objective(const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const std::vector<bool>& right_side) {
  check_adjacency(A, "ncut_objective");
  const Eigen::Index n = A.rows();
  if (static_cast<Eigen::Index>(right_side.size()) != n)
    throw DimensionError("ncut_objective: partition length mismatch");

  const Eigen::VectorXd degree = A.rowwise().sum();
  double vol_r = 0.0, vol_l = 0.0, cut = 0.0;
  Eigen::Index n_r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (right_side[static_cast<std::size_t>(i)]) {
      vol_r += degree(i);
      ++n_r;
    } else {
      vol_l += degree(i);
    }
  }
  if (n_r == 0 || n_r == n)
    throw ParameterError("ncut_objective: partition side is empty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!right_side[static_cast<std::size_t>(i)]) continue;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!right_side[static_cast<std::size_t>(j)]) cut += A(i, j);
  }
  return cut * (1.0 / vol_r + 1.0 / vol_l);
}

}  // namespace cvc::graph
