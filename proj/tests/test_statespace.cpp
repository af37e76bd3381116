#include <cmath>
#include <random>

#include "doctest.h"
#include "spinfold/errors.hpp"
#include "spinfold/models.hpp"
#include "spinfold/statespace.hpp"

using namespace spinfold;

TEST_CASE("spin values and local dimensions") {
  CHECK(Spin(1).value() == 0.5);
  CHECK(Spin::from_value(1.5).twice() == 3);
  CHECK(Spin::from_value(2.0).local_dim() == 5);
  CHECK(Spin(3).is_half_integer());
  CHECK_FALSE(Spin(2).is_half_integer());
  CHECK_THROWS_AS(Spin(0), DomainError);
  CHECK_THROWS_AS(Spin::from_value(0.3), DomainError);
}

TEST_CASE("basis dimension and resource cap") {
  CHECK(BasisDescriptor::qubits(3).dimension() == 8);
  CHECK(BasisDescriptor(2, Spin(3)).dimension() == 16);
  CHECK(BasisDescriptor::qubits(12).dimension() == 4096);
  CHECK_THROWS_AS(BasisDescriptor::qubits(13), ResourceError);
  CHECK_THROWS_AS(BasisDescriptor(0, Spin(1)), DomainError);
}

TEST_CASE("flat index round trip with site 1 most significant") {
  const BasisDescriptor basis(3, Spin(2));
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const auto ms = site_magnetizations(i, basis);
    CHECK(flat_index(ms, basis) == i);
  }
  const std::vector<double> first_down{0.0, 1.0, 1.0};
  CHECK(flat_index(first_down, basis) == 9);
  CHECK(site_digits(9, basis) == std::vector<int>{1, 0, 0});
  const std::vector<double> bad{2.0, 0.0, 0.0};
  CHECK_THROWS_AS(flat_index(bad, basis), DomainError);
  CHECK_THROWS_AS(site_magnetizations(basis.dimension(), basis), DomainError);
}

TEST_CASE("pure state normalization policy") {
  const BasisDescriptor basis = BasisDescriptor::qubits(1);
  StateVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState(basis, v), DomainError);
  const PureState psi = PureState::normalized(basis, v);
  CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  StateVector almost(2);
  almost << 1.0 + 1e-10, 0.0;
  CHECK(PureState(basis, almost).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(PureState::normalized(basis, StateVector::Zero(2)), DomainError);
  CHECK_THROWS_AS(PureState(BasisDescriptor::qubits(2), v), DomainError);
}

TEST_CASE("overlap is conjugate-linear in the first argument") {
  const BasisDescriptor basis = BasisDescriptor::qubits(1);
  const PureState up = PureState::basis_state(basis, 0);
  StateVector v(2);
  v << Complex(0.0, 1.0), 0.0;
  const PureState iup(basis, v);
  CHECK(std::abs(overlap(up, iup) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(overlap(iup, up) - Complex(0.0, -1.0)) < 1e-15);
  CHECK_THROWS_AS(overlap(up, PureState::basis_state(BasisDescriptor::qubits(2), 0)), DomainError);
}

TEST_CASE("tensor product and partial trace of a product state") {
  StateVector a(2), b(2);
  a << std::cos(0.3), std::sin(0.3);
  b << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const std::vector<StateVector> sites{a, b};
  const PureState psi = tensor_product(sites, Spin(1));
  CHECK(std::abs(psi[1] - a(0) * b(1)) < 1e-15);
  CHECK(std::abs(psi[2] - a(1) * b(0)) < 1e-15);
  const DensityMatrix rho0 = partial_trace(psi, 0), rho1 = partial_trace(psi, 1);
  CHECK((rho0.entries() - a * a.adjoint()).norm() < 1e-14);
  CHECK((rho1.entries() - b * b.adjoint()).norm() < 1e-14);
  CHECK(purity(rho0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(partial_trace(psi, 2), DomainError);
}

TEST_CASE("reduced purity of a Bell state is one half and both sides agree for random states") {
  StateVector bell = StateVector::Zero(4);
  bell(1) = bell(2) = 1.0 / std::sqrt(2.0);
  const PureState psi(BasisDescriptor::qubits(2), bell);
  CHECK(purity(partial_trace(psi, 0)) == doctest::Approx(0.5));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const BasisDescriptor basis(2, Spin(3));
  for (int k = 0; k < 20; ++k) {
    StateVector v(static_cast<Eigen::Index>(basis.dimension()));
    for (auto& x : v) x = Complex(g(rng), g(rng));
    const PureState r = PureState::normalized(basis, v);
    CHECK(purity(partial_trace(r, 0)) == doctest::Approx(purity(partial_trace(r, 1))).epsilon(1e-12));
  }
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix{m});
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{m}, DomainError);
  m(0, 1) = 0.0;
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, DomainError);
}
