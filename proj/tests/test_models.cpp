#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinfold/errors.hpp"
#include "spinfold/models.hpp"

using namespace spinfold;

namespace {

ComplexMatrix sz(Spin s) {
  ComplexMatrix m = ComplexMatrix::Zero(s.local_dim(), s.local_dim());
  for (int k = 0; k < s.local_dim(); ++k) m(k, k) = s.value() - k;
  return m;
}

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2, 2);
  if (which == 'x') m << 0, 1, 1, 0;
  if (which == 'y') m << 0, Complex(0, -1), Complex(0, 1), 0;
  if (which == 'z') m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST_CASE("XXZ Hamiltonian equals the Pauli construction") {
  const double J = 0.7, nu = 1.3, b = -0.4;
  const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix expected = J * (kron(pauli('x'), pauli('x')) + kron(pauli('y'), pauli('y')) +
                                      nu * kron(pauli('z'), pauli('z'))) +
                                 b * (kron(pauli('z'), I2) + kron(I2, pauli('z')));
  CHECK((hamiltonian_matrix(ModelSpec::xxz(J, nu, b)) - expected).norm() < 1e-14);
}

TEST_CASE("XXZ spectral data diagonalizes the Hamiltonian") {
  const XxzSystem sys = build_xxz(1.1, -0.6, 0.3);
  const ComplexMatrix& V = sys.spectrum.eigenvectors;
  CHECK((V.adjoint() * V - ComplexMatrix::Identity(4, 4)).norm() < 1e-14);
  CHECK((sys.hamiltonian * V - V * sys.spectrum.energies.cast<Complex>().asDiagonal()).norm() < 1e-13);
}

TEST_CASE("printed XXZ levels: triplet and singlet agree, the aligned levels do not") {
  const double J = 1.0, nu = 0.5, b = 0.2;
  const Eigen::VectorXd E = build_xxz(J, nu, b).spectrum.energies;
  CHECK(E(1) == doctest::Approx(printed_xxz_energy(2, J, nu, b)));
  CHECK(E(2) == doctest::Approx(printed_xxz_energy(3, J, nu, b)));
  CHECK(E(0) != doctest::Approx(printed_xxz_energy(1, J, nu, b)));
  CHECK(E(0) == doctest::Approx(nu * J + 2.0 * b));
  CHECK_THROWS_AS(printed_xxz_energy(5, J, nu, b), DomainError);
}

TEST_CASE("collective and pairwise Ising energies") {
  const ModelSpec collective = ModelSpec::collective_ising(3, 2.0);
  const std::vector<double> ms{0.5, 0.5, -0.5};
  CHECK(diagonal_energy(ms, collective) == doctest::Approx(2.0 * 0.25));
  const ModelSpec pairwise = ModelSpec::pairwise_ising(3, Spin(2), 1.5);
  const std::vector<double> ms1{1.0, 0.0, -1.0};
  CHECK(diagonal_energy(ms1, pairwise) == doctest::Approx(2.0 * 1.5 * (0.0 - 1.0 + 0.0)));

  const Spin s(3);
  const ComplexMatrix expected = 2.0 * 0.8 * kron(sz(s), sz(s));
  CHECK((hamiltonian_matrix(ModelSpec::pairwise_ising(2, s, 0.8)) - expected).norm() < 1e-13);
  CHECK_THROWS_AS(ModelSpec::pairwise_ising(1, s, 1.0), DomainError);
  CHECK_THROWS_AS(ModelSpec::collective_ising(2, 0.0), DomainError);
  CHECK_THROWS_AS(diagonal_energies(ModelSpec::xxz(1, 1, 0)), DomainError);
}

TEST_CASE("coherent state is the rotated highest-weight state") {
  for (int twice : {1, 2, 3, 4}) {
    const Spin s(twice);
    const double polar = 0.9, azimuthal = 0.4;
    const StateVector v = single_site_coherent(s, polar, azimuthal);
    CHECK(v.norm() == doctest::Approx(1.0));
    const double mz = std::real(v.dot(sz(s) * v));
    CHECK(mz == doctest::Approx(s.value() * std::cos(polar)));
    CHECK(std::abs(single_site_coherent(s, 0.0, azimuthal)(0)) == doctest::Approx(1.0));
    CHECK(std::abs(single_site_coherent(s, std::numbers::pi, azimuthal)(twice)) == doctest::Approx(1.0));
  }
}

TEST_CASE("printed coherent amplitudes are the mirrored orientation") {
  const Spin half(1);
  const StateVector printed = printed_coherent_amplitudes(half, 0.7, 0.2);
  const StateVector rotated = single_site_coherent(half, 0.7, 0.2);
  CHECK(std::abs(printed(0)) == doctest::Approx(std::abs(rotated(1))));
  CHECK(std::abs(printed(1)) == doctest::Approx(std::abs(rotated(0))));
  CHECK(printed_coherent_amplitudes(Spin(2), 0.7, 0.2).norm() != doctest::Approx(1.0));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(4, 0) == 1.0);
  CHECK(binomial(3, 4) == 0.0);
  CHECK(binomial(20, 10) == 184756.0);
}
