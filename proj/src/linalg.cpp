#include "coherence/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coherence/errors.hpp"

namespace coherence {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tolerance) {
  return a.size() > 0 && hermiticity_defect(a) <= tolerance;
}

HermitianEigenSystem eig_hermitian(const ComplexMatrix& a) {
  if (a.size() == 0 || a.rows() != a.cols()) {
    throw NotHermitian("eig_hermitian: matrix is not square");
  }
  const double defect = hermiticity_defect(a);
  if (!(defect <= tol::kHermiticity)) {
    throw NotHermitian("eig_hermitian: ||A - A^dag||_max = " + std::to_string(defect));
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void validate_density_matrix(const ComplexMatrix& rho) {
  if (rho.size() == 0 || rho.rows() != rho.cols()) {
    throw InvalidState("density matrix must be square and non-empty");
  }
  if (!rho.allFinite()) throw InvalidState("density matrix has non-finite entries");
  const double defect = hermiticity_defect(rho);
  if (defect > tol::kHermiticity) {
    throw InvalidState("density matrix not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > tol::kTrace) {
    throw InvalidState("density matrix trace " + std::to_string(trace) + " != 1");
  }
  const double min_eig = eig_hermitian(rho).eigenvalues.minCoeff();
  if (min_eig < -tol::kPsd) {
    throw InvalidState("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

double shannon_entropy(const RealVector& probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    const double q = std::clamp(p, 0.0, 1.0);
    if (q > 0.0) s -= q * std::log2(q);
  }
  return s;
}

double vn_entropy(const ComplexMatrix& rho) {
  validate_density_matrix(rho);
  return shannon_entropy(eig_hermitian(rho).eigenvalues);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace coherence
