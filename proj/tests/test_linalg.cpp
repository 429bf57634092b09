#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "coherence/errors.hpp"
#include "coherence/linalg.hpp"
#include "coherence/states.hpp"
#include "test_support.hpp"

using namespace coherence;
using coherence::testing::random_hermitian;
using coherence::testing::random_unitary;

namespace {

ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                        static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) { m(i, i) = v; ++i; }
  return m;
}

}  // namespace

TEST_CASE("kron of identities and basis projectors") {
  CHECK(max_abs_diff(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
                     ComplexMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs_diff(kron(diag({1, 0}), diag({0, 1})), diag({0, 1, 0, 0})) == 0.0);

  const ComplexMatrix rho = qubit_family(std::numbers::pi / 4).matrix();
  const ComplexMatrix two = kron(rho, rho);
  CHECK(two.rows() == 4);
  CHECK(two.trace().real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kron dims multiply for rectangular input") {
  const ComplexMatrix a = ComplexMatrix::Ones(2, 3);
  const ComplexMatrix b = ComplexMatrix::Ones(3, 1);
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 3);
}

TEST_CASE("trace of kron is multiplicative") {
  RandomStream rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int da = 1 + trial % 3;
    const int db = 1 + (trial / 3) % 3;
    const ComplexMatrix a = random_hermitian(da, rng);
    const ComplexMatrix b = random_hermitian(db, rng);
    const Complex lhs = kron(a, b).trace();
    const Complex rhs = a.trace() * b.trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("eig_hermitian spectra") {
  auto e = eig_hermitian(diag({0.3, 0.7}));
  CHECK(e.eigenvalues(0) == doctest::Approx(0.3));
  CHECK(e.eigenvalues(1) == doctest::Approx(0.7));

  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  e = eig_hermitian(sx);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));

  e = eig_hermitian(qubit_family(std::numbers::pi / 6).matrix());
  CHECK(std::abs(e.eigenvalues(0)) <= 1e-12);
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian reconstruction, orthonormality and trace") {
  RandomStream rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 8;
    const ComplexMatrix a = random_hermitian(d, rng);
    const auto e = eig_hermitian(a);
    const ComplexMatrix& v = e.eigenvectors;
    const ComplexMatrix recon = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK(max_abs_diff(recon, a) <= 1e-10);
    CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::Identity(d, d)) <= 1e-10);
    CHECK(std::abs(e.eigenvalues.sum() - a.trace().real()) <= 1e-10);
    for (int i = 1; i < d; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eig_hermitian(m), NotHermitian);
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix::Ones(2, 3)), NotHermitian);
  m << 0, 1, 1.0 + 1e-8, 0;
  CHECK_THROWS_AS(eig_hermitian(m), NotHermitian);
}

TEST_CASE("von Neumann entropy values") {
  CHECK(vn_entropy(diag({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(vn_entropy(qubit_family(0.3).matrix()) == doctest::Approx(0.0).epsilon(1e-12));
  // h(1/4) = 2 - (3/4) log2 3
  const double h_quarter = 2.0 - 0.75 * std::log2(3.0);
  CHECK(vn_entropy(diag({0.25, 0.75})) == doctest::Approx(h_quarter).epsilon(1e-14));
  CHECK(h_quarter == doctest::Approx(0.811278124459));
}

TEST_CASE("von Neumann entropy is unitarily invariant and bounded") {
  RandomStream rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2;
    const DensityMatrix rho = random_mixed_state(d, rng);
    const ComplexMatrix u = random_unitary(d, rng);
    const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    const double s = vn_entropy(rho.matrix());
    CHECK(std::abs(s - vn_entropy(0.5 * (rotated + rotated.adjoint()))) <= 1e-9);
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(d) + 1e-12);
  }
}

TEST_CASE("vn_entropy rejects invalid states") {
  CHECK_THROWS_AS(vn_entropy(diag({0.6, 0.6})), InvalidState);
  CHECK_THROWS_AS(vn_entropy(diag({1.1, -0.1})), InvalidState);
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.4, 0.5;
  CHECK_THROWS_AS(vn_entropy(m), InvalidState);
  // rounding dust below the PSD tolerance is accepted
  CHECK(vn_entropy(diag({1.0 + 1e-11, -1e-11})) == doctest::Approx(0.0));
}
