#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spinfold/errors.hpp"
#include "spinfold/phases.hpp"

using namespace spinfold;

namespace {

constexpr double kPi = std::numbers::pi;

double mod_2pi_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
  CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("total phase of a global phase change and of orthogonal states") {
  const BasisDescriptor basis = BasisDescriptor::qubits(1);
  const PureState a = PureState::basis_state(basis, 0);
  StateVector v(2);
  v << std::exp(Complex(0.0, 0.9)), 0.0;
  CHECK(total_phase(a, PureState(basis, v)) == doctest::Approx(0.9));
  CHECK_THROWS_AS(total_phase(a, PureState::basis_state(basis, 1)), UndefinedPhaseError);
}

TEST_CASE("AA phase of the two-qubit Ising cycle") {
  const EvolvedFamily f = collective_ising_family(2, 1.0, 0.0);
  for (double eta : {kPi / 6, kPi / 4, kPi / 2, 2.0}) {
    const CyclePhase c = aa_phase(f, {eta, 0.0}, 2.0 * kPi);
    CHECK(mod_2pi_distance(c.aa_phase, -kPi * std::pow(std::sin(eta), 2)) < 1e-9);
    CHECK(mod_2pi_distance(c.aa_phase_wrapped, c.aa_phase) < 1e-12);
    CHECK(mod_2pi_distance(c.closure_phase, c.aa_phase + c.dynamic) < 1e-12);
  }
  CHECK_THROWS_AS(aa_phase(f, {1.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("closed AA phase and topological phases") {
  for (int N = 2; N <= 4; ++N) {
    const EvolvedFamily f = collective_ising_family(N, 1.0, 0.0);
    const double eta = 0.9;
    CHECK(mod_2pi_distance(phase_closed("4.45", {{"N", double(N)}, {"eta", eta}}), aa_phase(f, {eta, 0.0}, 2.0 * kPi).aa_phase) <
          1e-9);
  }
  CHECK(topological_phase("4.47", {{"N", 2.0}}) == -2.0 * kPi);
  CHECK(topological_phase("4.59", {{"N", 2.0}}) == -2.0 * kPi);
}

TEST_CASE("geometric phase of a latitude loop on the Bloch sphere is minus s times the solid angle") {
  for (int twice : {1, 2, 3}) {
    const Spin s(twice);
    const EvolvedFamily f = bloch_family(s);
    const double theta = 0.7;
    const ChartPath loop{{theta, 0.0}, {0.0, 1.0}, 2.0 * kPi};
    const PhaseDecomposition d = geometric_phase(f, loop);
    const double solid_angle = 2.0 * kPi * (1.0 - std::cos(theta));
    CHECK(mod_2pi_distance(d.geometric, -s.value() * solid_angle) < 1e-7);
  }
}

TEST_CASE("geometric plus dynamic equals the unwrapped total on random paths") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const EvolvedFamily f = collective_ising_family(2 + i % 3, 0.5 + u(rng), 0.0);
    const ChartPoint start{0.3 + 2.5 * u(rng), 6.0 * u(rng)};
    const ChartPath path = time_path(f, start, 0.2 + 2.0 * u(rng));
    const PhaseDecomposition d = geometric_phase(f, path);
    CHECK(std::abs(d.geometric + d.dynamic - d.unwrapped_total) < 1e-12);
    CHECK(d.dynamic == doctest::Approx(dynamic_phase(f, start, path.duration)));
    CHECK(d.dynamic == doctest::Approx(dynamic_phase_numeric(f, path)).epsilon(1e-7));
    CHECK(mod_2pi_distance(d.unwrapped_total, d.total) < 1e-12);
  }
}

TEST_CASE("phase input validation") {
  const EvolvedFamily bloch = bloch_family(Spin(1));
  CHECK_THROWS_AS(dynamic_phase(bloch, {0.5, 0.0}, 1.0), DomainError);
  const ChartPath path{{0.5, 0.0}, {0.0, 1.0}, 1.0};
  CHECK_THROWS_AS(unwrapped_total_phase(bloch, path, 16), DomainError);
  CHECK_THROWS(phase_closed("0.0", {}));
  CHECK(geometric_phase(bloch, ChartPath{{0.5, 0.0}, {0.0, 1.0}, 0.0}).geometric == 0.0);
}
