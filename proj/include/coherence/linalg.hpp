#pragma once

// Dense complex linear algebra for the small Hilbert spaces used here
// (single qubit/qutrit up to two-qutrit, i.e. dimension <= 9).

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace coherence {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPsd = 1e-10;
// Probability magnitudes below this are treated as rounding dust.
inline constexpr double kProbabilityDust = 1e-12;
}  // namespace tol

struct HermitianEigenSystem {
  RealVector eigenvalues;  // ascending
  ComplexMatrix eigenvectors;  // columns orthonormal
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |A_ij - conj(A_ji)|; infinite for non-square input.
double hermiticity_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tolerance = tol::kHermiticity);

// Throws NotHermitian when `a` is not square or not Hermitian within
// tol::kHermiticity.
HermitianEigenSystem eig_hermitian(const ComplexMatrix& a);

// Throws InvalidState unless `rho` is Hermitian, has unit trace and no
// eigenvalue below -tol::kPsd.
void validate_density_matrix(const ComplexMatrix& rho);

// Shannon entropy in bits of a probability vector; 0 log 0 := 0.
double shannon_entropy(const RealVector& probabilities);

// von Neumann entropy in bits. Eigenvalues are clipped to [0, 1] after
// validation so rounding dust cannot produce NaN.
double vn_entropy(const ComplexMatrix& rho);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace coherence
