#include "cvc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "cvc/errors.hpp"

namespace cvc::linalg {

namespace {

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& M,
                    const char* who) {
  if (!M.allFinite())
    throw ParameterError(std::string(who) + ": non-finite entries");
}

}  // namespace

QrResult qr_decompose(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  if (M.rows() != M.cols())
    throw DimensionError("qr_decompose: matrix must be square, got " +
                         std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()));
  require_finite(M, "qr_decompose");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  QrResult out;
  out.Q = qr.householderQ() * Eigen::MatrixXd::Identity(M.rows(), M.rows());
  out.R = qr.matrixQR().triangularView<Eigen::Upper>();
  return out;
}

Eigen::VectorXd back_substitute(const Eigen::Ref<const Eigen::MatrixXd>& R,
                                const Eigen::Ref<const Eigen::VectorXd>& b) {
  const Eigen::Index n = R.rows();
  if (R.cols() != n || b.size() != n)
    throw DimensionError("back_substitute: shape mismatch");
  require_finite(R, "back_substitute");

  const double pivot_floor = 1e-12 * R.diagonal().cwiseAbs().maxCoeff();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double pivot = R(i, i);
    if (pivot == 0.0 || std::abs(pivot) < pivot_floor)
      throw SingularSystemError("back_substitute: pivot " +
                                std::to_string(pivot) + " below floor at row " +
                                std::to_string(i));
    const Eigen::Index tail = n - 1 - i;
    double s = b(i);
    if (tail > 0) s -= R.row(i).tail(tail).dot(x.tail(tail));
    x(i) = s / pivot;
  }
  return x;
}

EigResult symmetric_eig(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  if (M.rows() != M.cols())
    throw DimensionError("symmetric_eig: matrix must be square");
  require_finite(M, "symmetric_eig");
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    throw SymmetryError("symmetric_eig: asymmetry " + std::to_string(asym) +
                        " exceeds 1e-9");

  // Symmetrize once so roundoff asymmetry cannot leak into the result.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (M + M.transpose()));
  if (solver.info() != Eigen::Success)
    throw SingularSystemError("symmetric_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace cvc::linalg
