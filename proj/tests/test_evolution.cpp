#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spinfold/errors.hpp"
#include "spinfold/evolution.hpp"

using namespace spinfold;

namespace {

constexpr double kPi = std::numbers::pi;

double ray_distance(const StateVector& a, const StateVector& b) { return align_global_phase(a, b).residual; }

}  // namespace

TEST_CASE("exact evolution is unitary and composes") {
  const ModelSpec spec = ModelSpec::xxz(0.8, 1.7, 0.3);
  const PureState psi0 = xxz_plus_minus_closed(1.0, 0.4, 0.0, 0.0, 1.7);
  const PureState a = evolve_exact(evolve_exact(psi0, spec, 0.4), spec, 0.9);
  const PureState b = evolve_exact(psi0, spec, 1.3);
  CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-13);
  CHECK(b.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((evolve_exact(psi0, spec, 0.0).amplitudes() - psi0.amplitudes()).norm() < 1e-15);
}

TEST_CASE("XXZ closed form matches exact evolution with field") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double J = 0.2 + u(rng), nu = 4 * u(rng) - 2, b = u(rng) - 0.5, t = 3 * u(rng);
    const double chi = kPi * u(rng), gamma = 2 * kPi * u(rng);
    const ModelSpec spec = ModelSpec::xxz(J, nu, b);
    const PureState psi0 = xxz_plus_minus_closed(chi, gamma, 0.0, 0.0, nu);
    const PureState closed = xxz_plus_minus_closed(chi, gamma, 2 * J * t, 2 * b * t, nu);
    CHECK(ray_distance(evolve_exact(psi0, spec, t).amplitudes(), closed.amplitudes()) < 1e-12);
    CHECK(xxz_time_from_chart(spec, 2 * J * t, 2 * b * t) == doctest::Approx(t));
  }
  CHECK_THROWS_AS(xxz_time_from_chart(ModelSpec::xxz(1, 1, 0), 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(xxz_time_from_chart(ModelSpec::xxz(1, 1, 0.5), 1.0, 0.2), DomainError);
}

TEST_CASE("XXZ closed form rejects unnormalized coefficients") {
  XxzCoefficients c{Complex(1.0), Complex(1.0), Complex(0.0), Complex(0.0)};
  CHECK_THROWS_AS(xxz_closed(c, 0.1, 0.0, 1.0), DomainError);
}

TEST_CASE("Ising closed forms match exact evolution") {
  for (int N = 2; N <= 4; ++N) {
    const ModelSpec spec = ModelSpec::collective_ising(N, 1.3);
    const PureState psi0 = coherent_state(spec.basis, 0.7, 0.2);
    CHECK(ray_distance(evolve_exact(psi0, spec, 0.9).amplitudes(),
                       ising_qubit_closed(N, 0.7, 0.2, 1.3 * 0.9).amplitudes()) < 1e-12);
  }
  const ModelSpec pair = ModelSpec::collective_ising(2, 1.0);
  CHECK(ray_distance(evolve_exact(coherent_state(pair.basis, 1.1, 0.5), pair, 0.8).amplitudes(),
                     ising_pair_closed(1.1, 0.5, 0.8).amplitudes()) < 1e-12);
  for (int twice : {1, 2, 3}) {
    const Spin s(twice);
    const ModelSpec spec = ModelSpec::pairwise_ising(3, s, 0.6);
    const PureState psi0 = coherent_state(spec.basis, 1.2, 0.3);
    CHECK(ray_distance(evolve_exact(psi0, spec, 1.7).amplitudes(),
                       ising_spin_s_closed(3, s, 1.2, 0.3, 0.6 * 1.7).amplitudes()) < 1e-12);
  }
}

TEST_CASE("families advance along physical time") {
  const EvolvedFamily f = collective_ising_family(3, 0.5, 0.1);
  const ChartPoint x{0.8, 0.3};
  const PureState evolved = evolve_exact(f.at(x), *f.spec(), 2.0);
  CHECK(ray_distance(evolved.amplitudes(), f.amplitudes(f.advance(x, 2.0))) < 1e-12);

  const ModelSpec spec = ModelSpec::xxz(1.0, 0.5, 0.25);
  const EvolvedFamily g = xxz_family(spec, plus_minus_coefficients(0.9, 0.0));
  CHECK(g.time_velocity().u == 2.0);
  CHECK(g.time_velocity().v == 0.5);
  CHECK(ray_distance(evolve_exact(g.at({0.0, 0.0}), spec, 1.5).amplitudes(), g.amplitudes(g.advance({0.0, 0.0}, 1.5))) <
        1e-12);
}

TEST_CASE("ray periods of the Ising families") {
  const EvolvedFamily f = collective_ising_family(2, 1.0, 0.0);
  const PeriodicityResult p = check_periodicity(f, {0.9, 0.2}, {0.0, 2.0 * kPi});
  CHECK(p.periodic);
  CHECK_FALSE(check_periodicity(f, {0.9, 0.2}, {0.0, kPi}).periodic);

  const EvolvedFamily half = pairwise_ising_family(2, Spin(1), 1.0, 0.0);
  CHECK(check_periodicity(half, {0.9, 0.2}, {0.0, 2.0 * kPi}).periodic);
  const EvolvedFamily one = pairwise_ising_family(2, Spin(2), 1.0, 0.0);
  CHECK(check_periodicity(one, {0.9, 0.2}, {0.0, kPi}).periodic);
}

TEST_CASE("global phase alignment") {
  StateVector a(2);
  a << 0.6, 0.8;
  const StateVector b = std::exp(Complex(0.0, 0.7)) * a;
  const PhaseAlignment p = align_global_phase(a, b);
  CHECK(p.phase == doctest::Approx(0.7));
  CHECK(p.residual < 1e-15);
  StateVector c(2);
  c << 0.8, -0.6;
  CHECK_THROWS_AS(align_global_phase(a, c), UndefinedPhaseError);
}
