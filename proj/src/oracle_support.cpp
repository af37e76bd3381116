#include "oracle_support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinfold/dynamics.hpp"

namespace spinfold::oracle {

std::shared_ptr<EvolvedFamily> collective(int n, double J) {
  return std::make_shared<EvolvedFamily>(collective_ising_family(n, J, 0.0));
}

std::shared_ptr<EvolvedFamily> pairwise(int n, double s, double J) {
  return std::make_shared<EvolvedFamily>(pairwise_ising_family(n, Spin::from_value(s), J, 0.0));
}

double eta_from_pair_concurrence(double C, double kappa) {
  return std::asin(std::sqrt(std::clamp(C / std::abs(std::sin(kappa)), 0.0, 1.0)));
}

double kappa_from_fraction(double x) { return std::asin(std::sqrt(std::clamp(x, 0.0, 1.0))); }

MetricField numeric_field(std::shared_ptr<EvolvedFamily> family) {
  return [family](ChartPoint x) { return qgt_numeric(*family, x).metric.components(); };
}

double numeric_curvature(std::shared_ptr<EvolvedFamily> family, ChartPoint x) {
  const CurvatureSample k = gauss_curvature(numeric_field(std::move(family)), x, 1e-3);
  return k.valid ? k.K : std::nan("");
}

double max_speed_sin2(const EvolvedFamily& family) {
  auto v2 = [&](double y) {
    const double v = speed(family, {std::asin(std::sqrt(std::clamp(y, 0.0, 1.0))), 0.0}).v;
    return v * v;
  };
  return std::sqrt(golden_section_maximize(v2, 0.0, 1.0).value);
}

double weight_w(double nu, double chi) {
  const double s = std::sin(chi);
  return 2.0 + (nu - 1.0) * s * s;
}

EvolvedFamily concurrence_line_family(double chi, double nu, double k) {
  const XxzCoefficients c = plus_minus_coefficients(chi, 0.0);
  const double w = weight_w(nu, chi);
  return EvolvedFamily("xxz-concurrence-line", {"C", "-"}, BasisDescriptor::qubits(2),
                       [c, w, nu, k](ChartPoint x) { return xxz_propagate(c, x.u / w, k * x.u / w, nu); }, {0.0, 0.0});
}

double concurrence_line_speed(double chi, double nu, double k, double C) {
  return std::sqrt(metric_along(concurrence_line_family(chi, nu, k), {C, 0.0}, {1.0, 0.0}));
}

double sinusoidal_line_speed(double C) {
  const double eta = std::sqrt(1.0 + 2.0 * C) - 1.0;
  return concurrence_line_speed(std::numbers::pi / 2.0, eta / 2.0, 1.0, C);
}

}  // namespace spinfold::oracle
