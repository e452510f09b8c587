#pragma once

#include <Eigen/Core>

namespace cvc::linalg {

struct QrResult {
  Eigen::MatrixXd Q;  // orthonormal
  Eigen::MatrixXd R;  // upper triangular
};

/// Householder QR of a square matrix.
QrResult qr_decompose(const Eigen::Ref<const Eigen::MatrixXd>& M);

/// Solves R x = b for upper-triangular R. Throws SingularSystemError when a
/// pivot falls below 1e-12 * max|R(i,i)|.
Eigen::VectorXd back_substitute(const Eigen::Ref<const Eigen::MatrixXd>& R,
                                const Eigen::Ref<const Eigen::VectorXd>& b);

struct EigResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal
};

/// Full eigendecomposition of a symmetric matrix. Serves as the direct-route
/// oracle for the iterative Fiedler solver and as the truncated pseudo-inverse
/// backend for the regression codings.
EigResult symmetric_eig(const Eigen::Ref<const Eigen::MatrixXd>& M);

}  // namespace cvc::linalg
