#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinfold/dynamics.hpp"
#include "spinfold/errors.hpp"

using namespace spinfold;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("energy moments of basis and coherent states") {
  const ModelSpec spec = ModelSpec::collective_ising(2, 1.5);
  const PureState up = PureState::basis_state(spec.basis, 0);
  CHECK(energy_expectation(up, spec) == doctest::Approx(1.5));
  CHECK(energy_uncertainty(up, spec) == doctest::Approx(0.0));
  const PureState psi = coherent_state(spec.basis, kPi / 2, 0.0);
  CHECK(energy_expectation(psi, spec) == doctest::Approx(0.75));
  CHECK(energy_uncertainty(psi, spec) == doctest::Approx(0.75));
}

TEST_CASE("canonical speed equals the energy uncertainty") {
  const EvolvedFamily f = pairwise_ising_family(3, Spin(2), 0.7, 0.4);
  for (double kappa : {0.4, 1.0, 2.2}) {
    const ChartPoint x{kappa, 0.3};
    const SpeedSample v = speed(f, x);
    CHECK(v.convention == SpeedConvention::Canonical);
    CHECK(v.v == doctest::Approx(energy_uncertainty(f.at(x), *f.spec())).epsilon(1e-7));
  }
}

TEST_CASE("geodesic distance of a stationary-speed evolution") {
  const EvolvedFamily f = collective_ising_family(3, 1.0, 0.0);
  const ChartPoint x{1.0, 0.0};
  const double v = energy_uncertainty(f.at(x), *f.spec());
  CHECK(geodesic_distance(f, x, 0.0, 2.5) == doctest::Approx(2.5 * v).epsilon(1e-7));
}

TEST_CASE("golden-section maximization") {
  const ScalarOptimum best = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(best.x == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(best.value == doctest::Approx(0.0));
}

TEST_CASE("entangled sinusoidal speed, distance and time at zero concurrence") {
  CHECK(std::abs(speed_closed("3.52", {{"C", 0.0}}) - std::sqrt(3.0) / 2.0) < 1e-12);
  CHECK(distance_closed("3.53", {{"C", 0.0}}) == doctest::Approx(3.42).epsilon(0.003));
  CHECK(optimal_time_closed("tau-tilde", {}) == doctest::Approx(3.95).epsilon(0.003));
}

TEST_CASE("brachistochrone of the sinusoidal speed") {
  const BrachistochroneReport r = brachistochrone("xxz-sinusoidal", {{"J", 2.0}});
  CHECK(r.T_opt == doctest::Approx(3.0 * kPi / 16.0).epsilon(1e-10));
  CHECK(r.printed_agrees);
}

TEST_CASE("brachistochrone of the Ising families") {
  const BrachistochroneReport two = brachistochrone("ising-qubit", {{"N", 2.0}, {"J", 1.0}});
  CHECK(two.T_opt == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(two.printed_agrees);
  const BrachistochroneReport three = brachistochrone("ising-qubit", {{"N", 3.0}, {"J", 1.0}});
  CHECK_FALSE(three.printed_agrees);
  const BrachistochroneReport spin = brachistochrone("ising-spin-s", {{"N", 2.0}, {"s", 0.5}, {"J", 1.0}, {"t", 0.7}});
  CHECK(spin.T_opt == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(spin.printed_T == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_THROWS_AS(brachistochrone("heisenberg", {}), DomainError);
}

TEST_CASE("closed-form perturbations scale the registered value") {
  const double base = optimal_time_closed("3.67", {{"N", 2.0}, {"J", 1.0}});
  set_formula_perturbation("3.67", 1.25);
  CHECK(optimal_time_closed("3.67", {{"N", 2.0}, {"J", 1.0}}) == doctest::Approx(1.25 * base));
  clear_formula_perturbations();
  CHECK(optimal_time_closed("3.67", {{"N", 2.0}, {"J", 1.0}}) == base);
}

TEST_CASE("registries list their ids and reject unknown ones") {
  CHECK_FALSE(speed_formula_ids().empty());
  CHECK_FALSE(distance_formula_ids().empty());
  CHECK_FALSE(optimal_time_formula_ids().empty());
  CHECK_THROWS(speed_closed("0.0", {}));
  CHECK_THROWS(optimal_time_closed("0.0", {}));
}
