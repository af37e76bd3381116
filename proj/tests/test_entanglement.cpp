#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "spinfold/entanglement.hpp"
#include "spinfold/errors.hpp"
#include "spinfold/evolution.hpp"

using namespace spinfold;

namespace {

constexpr double kPi = std::numbers::pi;

// Wootters concurrence of a two-qubit density matrix via the spin-flipped state.
double wootters_mixed(const ComplexMatrix& rho) {
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const ComplexMatrix flipped = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(rho * flipped);
  std::vector<double> l;
  for (const Complex& e : es.eigenvalues()) l.push_back(std::sqrt(std::max(0.0, e.real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

PureState random_state(const BasisDescriptor& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector v(static_cast<Eigen::Index>(basis.dimension()));
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return PureState::normalized(basis, v);
}

}  // namespace

TEST_CASE("pure-state concurrence agrees with the mixed-state Wootters construction") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const PureState psi = random_state(BasisDescriptor::qubits(2), rng);
    const ComplexMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    CHECK(std::abs(concurrence_pure_2qubit(psi).value - wootters_mixed(rho)) < 1e-7);
  }
}

TEST_CASE("mixed-state oracle reproduces the Werner-state concurrence") {
  StateVector bell = StateVector::Zero(4);
  bell(1) = 1.0 / std::sqrt(2.0);
  bell(2) = -1.0 / std::sqrt(2.0);
  for (double p : {0.1, 0.4, 0.7, 1.0}) {
    const ComplexMatrix rho = p * bell * bell.adjoint() + (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4);
    CHECK(std::abs(wootters_mixed(rho) - std::max(0.0, (3.0 * p - 1.0) / 2.0)) < 1e-7);
  }
}

TEST_CASE("I-concurrence of two qubits equals the Wootters concurrence") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const PureState psi = random_state(BasisDescriptor::qubits(2), rng);
    CHECK(i_concurrence(psi).value == doctest::Approx(concurrence_pure_2qubit(psi).value).epsilon(1e-10));
  }
}

TEST_CASE("I-concurrence bounds for qudits") {
  const BasisDescriptor basis(2, Spin(2));
  const PureState product = coherent_state(basis, 0.8, 0.1);
  CHECK(i_concurrence(product).value < 1e-7);
  StateVector maximal = StateVector::Zero(9);
  for (int k = 0; k < 3; ++k) maximal(k * 3 + k) = 1.0 / std::sqrt(3.0);
  const PureState m(basis, maximal);
  CHECK(i_concurrence(m).value == doctest::Approx(std::sqrt(2.0 * (1.0 - 1.0 / 3.0))));
  CHECK(i_concurrence(m, 1).value == doctest::Approx(i_concurrence(m, 0).value));
  CHECK(i_concurrence(m, 1).kind == ConcurrenceKind::IConcurrence);
}

TEST_CASE("concurrence of the evolved two-qubit Ising state") {
  for (double eta : {0.3, 1.0, 2.0})
    for (double kappa : {0.5, 1.5, 4.0}) {
      const PureState psi = ising_pair_closed(eta, 0.2, kappa);
      CHECK(concurrence_pure_2qubit(psi).value ==
            doctest::Approx(concurrence_closed("3.71", {{"eta", eta}, {"kappa", kappa}})).epsilon(1e-12));
    }
}

TEST_CASE("short-time I-concurrence of the spin-s pair") {
  for (double s : {0.5, 1.0, 1.5}) {
    const PureState psi = ising_spin_s_closed(2, Spin::from_value(s), 1.0, 0.0, 1e-4);
    const double ratio = i_concurrence(psi).value / concurrence_closed("3.103", {{"s", s}, {"eta", 1e-4}, {"kappa", 1.0}});
    CHECK(std::abs(ratio - 1.0) < 2e-4);
  }
}

TEST_CASE("coherent magnetization moments") {
  for (int twice : {1, 2, 3, 4}) {
    const Spin s(twice);
    const double kappa = 0.7;
    const StateVector v = single_site_coherent(s, kappa, 0.0);
    double mean = 0.0, second = 0.0;
    for (int k = 0; k < s.local_dim(); ++k) {
      const double m = s.value() - k, p = std::norm(v(k));
      mean += m * p;
      second += m * m * p;
    }
    const MagnetizationMoments mm = coherent_moments(s, kappa);
    CHECK(mm.mean == doctest::Approx(mean));
    CHECK(mm.second == doctest::Approx(second));
  }
  CHECK_THROWS_AS(printed_moment_identity(3, Spin(1), 0.5), DomainError);
}

TEST_CASE("concurrence input validation") {
  CHECK_THROWS_AS(concurrence_pure_2qubit(coherent_state(BasisDescriptor::qubits(3), 0.5, 0.0)), DomainError);
  CHECK_THROWS_AS(concurrence_closed("0.0", {}), DomainError);
  CHECK(i_concurrence_short_time(1.0, 0.01, kPi / 2) == doctest::Approx(0.02));
}
