#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinfold/evolution.hpp"
#include "spinfold/params.hpp"

namespace spinfold {

struct Metric2 {
  double uu = 0.0;
  double uv = 0.0;
  double vv = 0.0;
  double det() const { return uu * vv - uv * uv; }
};

enum class MetricSource { Numeric, ClosedForm };

struct MetricPatch {
  Chart chart;
  ChartPoint point;
  double g_uu = 0.0;
  double g_uv = 0.0;
  double g_vv = 0.0;
  MetricSource source = MetricSource::Numeric;
  std::string formula_id;
  double scale_note = 1.0;

  Metric2 components() const { return {g_uu, g_uv, g_vv}; }
};

struct ConnectionSample {
  ChartPoint point;
  double beta_u = 0.0;
  double beta_v = 0.0;
};

struct QgtSample {
  MetricPatch metric;
  ConnectionSample connection;
};

// Fourth-order central-difference tangent of the family along a chart direction.
StateVector chart_derivative(const EvolvedFamily& family, ChartPoint x, ChartPoint direction, double h);

QgtSample qgt_numeric(const EvolvedFamily& family, ChartPoint x, double h = 1e-4);
// g(direction, direction) from the canonical metric.
double metric_along(const EvolvedFamily& family, ChartPoint x, ChartPoint direction, double h = 1e-4);

// Hermitian metric d^2 ln(1 + |z|^2) / dz_mu dz*_nu.
ComplexMatrix fs_metric_affine(std::span<const Complex> z);

using MetricField = std::function<Metric2(ChartPoint)>;

std::vector<std::string> metric_formula_ids();
Chart metric_formula_chart(std::string_view formula_id);
MetricPatch metric_closed(std::string_view formula_id, const Params& params, ChartPoint point);
MetricField metric_field(std::string_view formula_id, const Params& params);

// Invariants A, D, F, B of two-spin initial coefficients.
Params xxz_invariants(const XxzCoefficients& c);

struct CurvatureSample {
  ChartPoint point;
  double K = 0.0;
  bool valid = false;
};

// Orthogonal-metric formula when g_uv vanishes on the stencil, Brioschi otherwise.
CurvatureSample gauss_curvature(const MetricField& metric, ChartPoint x, double h = 1e-4);

std::vector<std::string> curvature_formula_ids();
CurvatureSample curvature_closed(std::string_view formula_id, const Params& params, ChartPoint point);

// Surface with a polar coordinate u in (0, pi) degenerating at both ends and a periodic coordinate v.
struct ClosedChart {
  MetricField metric;
  double azimuth_period = 2.0 * 3.14159265358979323846;
};

struct EulerResult {
  double bulk_integral = 0.0;
  double defect_sum = 0.0;
  double chi = 0.0;
  int chi_rounded = 0;
  double cone_angle_low = 0.0;
  double cone_angle_high = 0.0;
  double richardson_delta = 0.0;
};

EulerResult euler_characteristic(const ClosedChart& chart, int grid, double eps = 1e-3);
// family_id in {"ising-qubit" (param N), "ising-spin-s" (params N, s), "sphere" (param N)}.
EulerResult euler_characteristic(std::string_view family_id, const Params& params, int grid);
// Ray period of the spin-s family along eta.
double spin_s_eta_period(Spin s);

std::vector<std::string> euler_formula_ids();
double euler_closed(std::string_view formula_id, const Params& params);

}  // namespace spinfold
