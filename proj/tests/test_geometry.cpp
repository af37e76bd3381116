#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinfold/errors.hpp"
#include "spinfold/geometry.hpp"

using namespace spinfold;

namespace {

constexpr double kPi = std::numbers::pi;

MetricField round_sphere(double radius) {
  return [radius](ChartPoint x) { return Metric2{radius * radius, 0.0, radius * radius * std::pow(std::sin(x.u), 2)}; };
}

}  // namespace

TEST_CASE("Bloch sphere metric of a spin-s coherent state") {
  for (int twice : {1, 2, 3}) {
    const Spin s(twice);
    const EvolvedFamily f = bloch_family(s);
    const QgtSample q = qgt_numeric(f, {0.8, 0.3});
    CHECK(q.metric.g_uu == doctest::Approx(s.value() / 2.0).epsilon(1e-8));
    CHECK(q.metric.g_vv == doctest::Approx(s.value() / 2.0 * std::pow(std::sin(0.8), 2)).epsilon(1e-8));
    CHECK(std::abs(q.metric.g_uv) < 1e-9);
  }
}

TEST_CASE("metric_along agrees with the tensor contraction") {
  const EvolvedFamily f = collective_ising_family(3, 1.0, 0.0);
  const ChartPoint x{1.1, 0.4}, d{0.3, -0.7};
  const Metric2 g = qgt_numeric(f, x).metric.components();
  const double contracted = g.uu * d.u * d.u + 2.0 * g.uv * d.u * d.v + g.vv * d.v * d.v;
  CHECK(metric_along(f, x, d) == doctest::Approx(contracted).epsilon(1e-7));
}

TEST_CASE("closed metric of the qubit Ising family matches the numeric metric") {
  for (int N = 2; N <= 4; ++N) {
    const EvolvedFamily f = collective_ising_family(N, 1.0, 0.0);
    const ChartPoint x{0.9, 1.3};
    const MetricPatch closed = metric_closed("4.27", {{"N", double(N)}}, x);
    const MetricPatch numeric = qgt_numeric(f, x).metric;
    CHECK(closed.source == MetricSource::ClosedForm);
    CHECK(closed.g_uu == doctest::Approx(numeric.g_uu).epsilon(1e-7));
    CHECK(closed.g_vv == doctest::Approx(numeric.g_vv).epsilon(1e-7));
  }
}

TEST_CASE("Fubini-Study metric in affine coordinates") {
  const std::vector<Complex> z{Complex(0.3, -0.4)};
  const ComplexMatrix g = fs_metric_affine(z);
  CHECK(g(0, 0).real() == doctest::Approx(1.0 / std::pow(1.0 + 0.25, 2)));
}

TEST_CASE("Gaussian curvature of round spheres") {
  for (double r : {0.5, 1.0, 2.0}) {
    const CurvatureSample k = gauss_curvature(round_sphere(r), {1.0, 0.2}, 1e-3);
    CHECK(k.valid);
    CHECK(k.K == doctest::Approx(1.0 / (r * r)).epsilon(1e-6));
  }
  const MetricField skew = [](ChartPoint x) { return Metric2{1.0, 0.3 * std::sin(x.u), 1.0 + x.u * x.u}; };
  CHECK(gauss_curvature(skew, {0.4, 0.1}, 1e-3).valid);
}

TEST_CASE("closed curvature of the qubit Ising family") {
  CHECK(curvature_closed("4.30", {{"N", 2.0}, {"allow_singular", 1.0}}, {0.0, 0.0}).K == 5.0);
  CHECK_FALSE(curvature_closed("4.30", {{"N", 2.0}}, {0.0, 0.0}).valid);
  const MetricField g = metric_field("4.27", {{"N", 3.0}});
  const double closed = curvature_closed("4.30", {{"N", 3.0}}, {1.2, 0.0}).K;
  CHECK(gauss_curvature(g, {1.2, 0.5}, 1e-3).K == doctest::Approx(closed).epsilon(1e-5));
  CHECK(curvature_closed("4.83", {{"s", 0.5}}, {}).K == 5.0);
}

TEST_CASE("Euler characteristic") {
  ClosedChart sphere{round_sphere(1.3)};
  const EulerResult r = euler_characteristic(sphere, 128);
  CHECK(r.chi_rounded == 2);
  CHECK(std::abs(r.chi - 2.0) < 0.05);
  const EulerResult q = euler_characteristic("ising-qubit", {{"N", 3.0}}, 128);
  CHECK(q.chi_rounded == 2);
  const EulerResult s = euler_characteristic("ising-spin-s", {{"N", 2.0}, {"s", 1.0}}, 128);
  CHECK(s.chi_rounded == 2);
  CHECK(spin_s_eta_period(Spin(1)) == doctest::Approx(2.0 * kPi));
  CHECK(spin_s_eta_period(Spin(2)) == doctest::Approx(kPi));
}

TEST_CASE("unknown formula ids are rejected") {
  CHECK_THROWS(metric_closed("9.99", {}, {0.0, 0.0}));
  CHECK_THROWS(curvature_closed("9.99", {}, {0.0, 0.0}));
  CHECK_THROWS(euler_characteristic("torus", {}, 16));
}
