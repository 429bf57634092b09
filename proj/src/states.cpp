#include "coherence/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "coherence/errors.hpp"

namespace coherence {

namespace {

constexpr double kBlochSlack = 1e-9;

void check_family_parameter(double value, const char* name) {
  if (!(value >= 0.0 && value <= std::numbers::pi / 2)) {
    throw OutOfRange(std::string(name) + " = " + std::to_string(value) +
                     " outside [0, pi/2]");
  }
}

ComplexMatrix pauli(int axis) {
  ComplexMatrix s(2, 2);
  switch (axis) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  validate_density_matrix(matrix_);
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidState("zero state vector");
  const ComplexVector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw WrongDimension("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double BlochVector::length() const { return std::sqrt(x * x + y * y + z * z); }

std::string_view to_string(StateFamily family) {
  return family == StateFamily::QubitTheta ? "qubit" : "qutrit";
}

StateFamily parse_state_family(std::string_view name) {
  if (name == "qubit") return StateFamily::QubitTheta;
  if (name == "qutrit") return StateFamily::QutritAlpha;
  throw OutOfRange("unknown state family '" + std::string(name) + "'");
}

DensityMatrix qubit_family(double theta) {
  check_family_parameter(theta, "theta");
  ComplexVector psi(2);
  psi << std::sin(theta), std::cos(theta);
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix qutrit_family(double alpha) {
  check_family_parameter(alpha, "alpha");
  ComplexVector psi(3);
  psi << std::sin(alpha), std::cos(alpha), 1.0;
  psi /= std::numbers::sqrt2;
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix family_state(StateFamily family, double parameter) {
  return family == StateFamily::QubitTheta ? qubit_family(parameter) : qutrit_family(parameter);
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw WrongDimension("Bloch vector requires a qubit state");
  const auto& m = rho.matrix();
  return {(m * pauli(0)).trace().real(), (m * pauli(1)).trace().real(),
          (m * pauli(2)).trace().real()};
}

DensityMatrix from_bloch(const BlochVector& b) {
  if (b.length() > 1.0 + kBlochSlack) {
    throw InvalidState("Bloch vector longer than 1");
  }
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m += b.x * pauli(0) + b.y * pauli(1) + b.z * pauli(2);
  return DensityMatrix(0.5 * m);
}

double binary_entropy(double x) {
  const double p = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double c_l1(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  double sum = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    for (int j = 0; j < rho.dim(); ++j) {
      if (i != j) sum += std::abs(m(i, j));
    }
  }
  return sum;
}

double c_rel_ent(const DensityMatrix& rho) {
  const RealVector diag = rho.matrix().diagonal().real();
  const double value = shannon_entropy(diag) - vn_entropy(rho.matrix());
  return std::clamp(value, 0.0, std::log2(static_cast<double>(rho.dim())));
}

double c_formation_from_offdiag(double abs_rho01) {
  const double c = std::clamp(abs_rho01, 0.0, 0.5);
  return binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * c * c))) / 2.0);
}

double c_formation_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw WrongDimension("coherence of formation requires a qubit state");
  return c_formation_from_offdiag(std::abs(rho(0, 1)));
}

double c_l1_qubit_bloch(const BlochVector& b) { return std::hypot(b.x, b.y); }

double c_rel_ent_qubit_bloch(const BlochVector& b) {
  const double r = std::min(1.0, b.length());
  const double rz = std::min(std::abs(b.z), r);
  return std::clamp(binary_entropy((1.0 + rz) / 2.0) - binary_entropy((1.0 + r) / 2.0), 0.0,
                    1.0);
}

DensityMatrix random_mixed_state(int dim, RandomStream& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix m = a * a.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m));
}

DensityMatrix random_pure_state(int dim, RandomStream& rng) {
  std::normal_distribution<double> normal;
  ComplexVector psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
  return DensityMatrix::from_pure(psi);
}

}  // namespace coherence
