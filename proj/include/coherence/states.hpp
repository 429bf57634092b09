#pragma once

// Quantum states, the two parameterized test families and the coherence
// quantifiers (l1-norm, relative entropy, coherence of formation). Coherence
// is always taken with respect to the computational basis.

#include <cstdint>
#include <string_view>

#include "coherence/linalg.hpp"
#include "coherence/random.hpp"

namespace coherence {

// Validated density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  // Throws InvalidState if `matrix` violates the density-matrix invariants.
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix from_pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(int i, int j) const { return matrix_(i, j); }

 private:
  ComplexMatrix matrix_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double length() const;
};

enum class StateFamily { QubitTheta, QutritAlpha };

std::string_view to_string(StateFamily family);
StateFamily parse_state_family(std::string_view name);

// sin(theta)|0> + cos(theta)|1>, theta in [0, pi/2].
DensityMatrix qubit_family(double theta);

// (sin(alpha)|0> + cos(alpha)|1> + |2>)/sqrt(2), alpha in [0, pi/2].
DensityMatrix qutrit_family(double alpha);

DensityMatrix family_state(StateFamily family, double parameter);

// Throws WrongDimension unless rho is a qubit state.
BlochVector bloch_of(const DensityMatrix& rho);

// Throws InvalidState for |r| > 1 + 1e-9.
DensityMatrix from_bloch(const BlochVector& b);

double binary_entropy(double x);

double c_l1(const DensityMatrix& rho);
double c_rel_ent(const DensityMatrix& rho);
double c_formation_qubit(const DensityMatrix& rho);

// Qubit closed forms in Bloch coordinates.
double c_l1_qubit_bloch(const BlochVector& b);
double c_rel_ent_qubit_bloch(const BlochVector& b);

// Formation value from |rho_01| (clamped to [0, 1/2]).
double c_formation_from_offdiag(double abs_rho01);

// Normalized Wishart-style random state: A A^dag / Tr(A A^dag) with A a
// dim x dim complex Gaussian matrix.
DensityMatrix random_mixed_state(int dim, RandomStream& rng);

// Haar-distributed pure state (normalized complex Gaussian vector).
DensityMatrix random_pure_state(int dim, RandomStream& rng);

}  // namespace coherence
