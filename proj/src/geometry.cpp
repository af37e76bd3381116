#include "spinfold/geometry.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "spinfold/errors.hpp"

namespace spinfold {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

struct MetricFormula {
  Chart chart;
  std::function<Metric2(const Params&, ChartPoint)> eval;
};

Metric2 xxz_metric(const Params& p, ChartPoint) {
  const double A = p.get("A"), D = p.get("D"), F = p.get("F"), nu = p.get("nu");
  return {(nu * nu - 1.0) * A + 1.0 - sq(nu * A + F), D * (nu - (nu * A - F)), A - D * D};
}

double ising_kk(double N, double eta, double coeff) {
  const double s2 = sq(std::sin(eta));
  return 0.25 * N * (N - 1.0) * s2 * (N - 1.0 - coeff * s2);
}

double spin_s_ee(double N, double s, double kappa) {
  return 0.5 * N * (N - 1.0) * s * s * sq(std::sin(kappa)) * (1.0 + (4.0 * s * (N - 1.0) - 1.0) * sq(std::cos(kappa)));
}

Metric2 entanglement_chart_4_49(const Params&, ChartPoint x) {
  const double C = x.u, k = x.v, a = std::abs(std::sin(k));
  return {1.0 / (8.0 * C * (a - C)), -1.0 / (8.0 * std::tan(k) * (a - C)),
          0.25 * C * (1.0 / (2.0 * sq(std::tan(k)) * (a - C)) + (2.0 * a - C) / sq(std::sin(k)))};
}

Metric2 spin_s_entanglement_4_80(const Params& p, ChartPoint x) {
  const double s = p.get("s"), ep = p.get("eta_prime_max");
  const double C = x.u, eta = x.v;
  const double pre = s / (2.0 * eta * eta * C * (2.0 * s * eta - C));
  const double brace =
      0.5 * C * C + ep * C * (2.0 * s * eta - C) * (1.0 + (4.0 * s - 1.0) * (1.0 - ep * C / (2.0 * s * eta * eta)));
  return {pre * 0.5 * eta * eta, -0.5 * pre * eta * C, pre * brace};
}

const std::map<std::string, MetricFormula, std::less<>>& metric_table() {
  static const std::map<std::string, MetricFormula, std::less<>> table = {
      {"2.11", {{"x", "y"}, [](const Params&, ChartPoint x) {
         double g = 1.0 / sq(1.0 + x.u * x.u + x.v * x.v);
         return Metric2{g, 0.0, g};
       }}},
      {"3.28", {{"eta", "kappa"}, xxz_metric}},
      {"4.7", {{"eta", "kappa"}, xxz_metric}},
      {"4.9", {{"eta", "kappa"}, [](const Params& p, ChartPoint) {
         double B = p.get("B");
         return Metric2{B * (2.0 - B), 0.0, 0.0};
       }}},
      {"4.22", {{"eta", "kappa"}, [](const Params& p, ChartPoint) {
         double s2 = sq(std::sin(p.get("chi"))), nu = p.get("nu");
         return Metric2{0.25 * (2.0 * (nu * nu - 1.0) * s2 - sq(nu - 1.0) * s2 * s2 + 4.0), 0.0, 0.5 * s2};
       }}},
      {"4.23", {{"C", "kappa"}, [](const Params& p, ChartPoint) {
         double s2 = sq(std::sin(p.get("chi"))), nu = p.get("nu");
         double g = ((nu - 1.0) * (nu + 3.0) * s2 + 2.0) / (2.0 * sq(2.0 + (nu - 1.0) * s2)) - 1.0;
         return Metric2{g, 0.0, 0.5 * s2};
       }}},
      {"3.48", {{"C", "-"}, [](const Params& p, ChartPoint) {
         double s2 = sq(std::sin(p.get("chi"))), nu = p.get("nu"), k = p.get("k");
         double num = 2.0 * (nu * nu + k * k - 1.0) * s2 - sq(nu - 1.0) * s2 * s2 + 4.0;
         return Metric2{0.25 * num / sq(2.0 + (nu - 1.0) * s2), 0.0, 0.0};
       }}},
      {"3.51", {{"C", "-"}, [](const Params&, ChartPoint x) {
         return Metric2{0.25 * (1.0 + 8.0 / sq(1.0 + std::sqrt(1.0 + 2.0 * x.u))), 0.0, 0.0};
       }}},
      {"3.60", {{"eta", "kappa"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N");
         return Metric2{0.0, 0.0, ising_kk(N, x.u, 2.0 * N - 3.0)};
       }}},
      {"3.69", {{"eta", "kappa"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N");
         return Metric2{0.0, 0.0, ising_kk(N, x.u, 2.0 * N - 3.0)};
       }}},
      {"4.26", {{"eta", "phi"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N");
         return Metric2{0.25 * N, 0.0, 0.25 * N * sq(std::sin(x.u))};
       }}},
      {"4.27", {{"eta", "kappa"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N");
         return Metric2{0.25 * N, 0.0, ising_kk(N, x.u, N - 1.5)};
       }}},
      {"4.34", {{"eta", "kappa"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N");
         return Metric2{0.25 * N, 0.0, 0.25 * N * sq(N - 1.0) * x.u * x.u};
       }}},
      {"4.48", {{"eta", "kappa"}, [](const Params&, ChartPoint x) {
         double s2 = sq(std::sin(x.u));
         return Metric2{0.5, 0.0, 0.25 * s2 * (2.0 - s2)};
       }}},
      {"4.49", {{"C", "kappa"}, entanglement_chart_4_49}},
      {"4.50", {{"Cr", "kappa"}, [](const Params&, ChartPoint x) {
         double c = x.u;
         return Metric2{1.0 / (8.0 * c * (1.0 - c)), 0.0, 0.25 * c * (2.0 - c)};
       }}},
      {"4.51", {{"C", "kappa"}, [](const Params& p, ChartPoint x) {
         return Metric2{0.0, 0.0, entanglement_chart_4_49(p, x).vv};
       }}},
      {"4.52", {{"Cr", "kappa"}, [](const Params&, ChartPoint x) {
         return Metric2{0.0, 0.0, 0.25 * x.u * (2.0 - x.u)};
       }}},
      {"3.76", {{"C", "kappa"}, [](const Params&, ChartPoint x) {
         double a = std::abs(std::sin(x.v));
         return Metric2{0.0, 0.0, x.u / (4.0 * a * a) * (2.0 * a - x.u)};
       }}},
      {"3.84", {{"kappa", "eta"}, [](const Params& p, ChartPoint x) {
         return Metric2{0.0, 0.0, spin_s_ee(p.get("N"), p.get("s"), x.u)};
       }}},
      {"4.61", {{"kappa", "eta"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N"), s = p.get("s");
         return Metric2{0.5 * N * s, 0.0, spin_s_ee(N, s, x.u)};
       }}},
      {"4.67", {{"kappa", "eta"}, [](const Params& p, ChartPoint x) {
         double N = p.get("N"), s = p.get("s");
         return Metric2{0.5 * N * s, 0.0, 2.0 * N * sq(N - 1.0) * s * s * s * x.u * x.u};
       }}},
      {"4.80", {{"C", "eta"}, spin_s_entanglement_4_80}},
      {"4.81", {{"C", "eta"}, [](const Params& p, ChartPoint x) {
         return Metric2{0.0, 0.0, spin_s_entanglement_4_80(p, x).vv};
       }}},
  };
  return table;
}

const MetricFormula& find_metric(std::string_view id) {
  const auto& table = metric_table();
  auto it = table.find(id);
  if (it == table.end()) throw DomainError("unknown metric formula id '" + std::string(id) + "'");
  return it->second;
}

}  // namespace

StateVector chart_derivative(const EvolvedFamily& family, ChartPoint x, ChartPoint d, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw DomainError("finite-difference step must lie in [1e-7, 1e-3]");
  auto at = [&](double k) { return family.amplitudes(x + (k * h) * d); };
  return (-at(2.0) + 8.0 * at(1.0) - 8.0 * at(-1.0) + at(-2.0)) / (12.0 * h);
}

QgtSample qgt_numeric(const EvolvedFamily& family, ChartPoint x, double h) {
  StateVector psi = family.amplitudes(x);
  StateVector du = chart_derivative(family, x, {1.0, 0.0}, h);
  StateVector dv = chart_derivative(family, x, {0.0, 1.0}, h);
  const Complex I(0.0, 1.0);
  double bu = std::real(I * psi.dot(du));
  double bv = std::real(I * psi.dot(dv));
  QgtSample out;
  out.metric.chart = family.chart();
  out.metric.point = x;
  out.metric.g_uu = std::real(du.dot(du)) - bu * bu;
  out.metric.g_uv = std::real(du.dot(dv)) - bu * bv;
  out.metric.g_vv = std::real(dv.dot(dv)) - bv * bv;
  out.metric.source = MetricSource::Numeric;
  out.connection = {x, bu, bv};
  return out;
}

double metric_along(const EvolvedFamily& family, ChartPoint x, ChartPoint direction, double h) {
  StateVector psi = family.amplitudes(x);
  StateVector d = chart_derivative(family, x, direction, h);
  double beta = std::real(Complex(0.0, 1.0) * psi.dot(d));
  return std::real(d.dot(d)) - beta * beta;
}

ComplexMatrix fs_metric_affine(std::span<const Complex> z) {
  const auto n = static_cast<Eigen::Index>(z.size());
  if (n < 1 || n > 8) throw DomainError("affine dimension must lie in 1..8");
  double K = 1.0;
  for (const auto& zi : z) K += std::norm(zi);
  ComplexMatrix g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      g(a, b) = (a == b ? 1.0 / K : 0.0) - std::conj(z[static_cast<std::size_t>(a)]) * z[static_cast<std::size_t>(b)] / (K * K);
  return g;
}

std::vector<std::string> metric_formula_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : metric_table()) ids.push_back(id);
  return ids;
}

Chart metric_formula_chart(std::string_view id) { return find_metric(id).chart; }

MetricPatch metric_closed(std::string_view id, const Params& params, ChartPoint point) {
  const auto& f = find_metric(id);
  Metric2 g = f.eval(params, point);
  g = {perturbed(id, g.uu), perturbed(id, g.uv), perturbed(id, g.vv)};
  MetricPatch patch;
  patch.chart = f.chart;
  patch.point = point;
  patch.g_uu = g.uu;
  patch.g_uv = g.uv;
  patch.g_vv = g.vv;
  patch.source = MetricSource::ClosedForm;
  patch.formula_id = std::string(id);
  return patch;
}

MetricField metric_field(std::string_view id, const Params& params) {
  const auto& f = find_metric(id);
  auto eval = f.eval;
  const double factor = perturbed(id, 1.0);
  return [eval, params, factor](ChartPoint x) {
    Metric2 g = eval(params, x);
    return Metric2{factor * g.uu, factor * g.uv, factor * g.vv};
  };
}

Params xxz_invariants(const XxzCoefficients& c) {
  Params p;
  p.set("A", std::norm(c[0]) + std::norm(c[3]));
  p.set("D", std::norm(c[0]) - std::norm(c[3]));
  p.set("F", 2.0 * std::real(c[1] * std::conj(c[2])));
  p.set("B", std::norm(c[1] - c[2]));
  return p;
}

CurvatureSample gauss_curvature(const MetricField& metric, ChartPoint x, double h) {
  CurvatureSample out{x, 0.0, false};
  Metric2 g[3][3];
  bool orthogonal = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g[i][j] = metric({x.u + (i - 1) * h, x.v + (j - 1) * h});
      if (!(g[i][j].det() >= 1e-8) || !std::isfinite(g[i][j].det())) return out;
      if (std::abs(g[i][j].uv) > 1e-14 * (std::abs(g[i][j].uu) + std::abs(g[i][j].vv))) orthogonal = false;
    }
  auto d_u = [&](double Metric2::*c) { return (g[2][1].*c - g[0][1].*c) / (2.0 * h); };
  auto d_v = [&](double Metric2::*c) { return (g[1][2].*c - g[1][0].*c) / (2.0 * h); };
  auto d_uu = [&](double Metric2::*c) { return (g[2][1].*c - 2.0 * g[1][1].*c + g[0][1].*c) / (h * h); };
  auto d_vv = [&](double Metric2::*c) { return (g[1][2].*c - 2.0 * g[1][1].*c + g[1][0].*c) / (h * h); };
  auto d_uv = [&](double Metric2::*c) { return (g[2][2].*c - g[2][0].*c - g[0][2].*c + g[0][0].*c) / (4.0 * h * h); };

  const double E = g[1][1].uu, F = g[1][1].uv, G = g[1][1].vv;
  const double Eu = d_u(&Metric2::uu), Ev = d_v(&Metric2::uu), Gu = d_u(&Metric2::vv), Gv = d_v(&Metric2::vv);
  const double Evv = d_vv(&Metric2::uu), Guu = d_uu(&Metric2::vv);

  if (orthogonal) {
    const double W = std::sqrt(E * G);
    const double Wu = (Eu * G + E * Gu) / (2.0 * W), Wv = (Ev * G + E * Gv) / (2.0 * W);
    const double term_u = Guu / W - Gu * Wu / (W * W);
    const double term_v = Evv / W - Ev * Wv / (W * W);
    out.K = -(term_u + term_v) / (2.0 * W);
  } else {
    const double Fu = d_u(&Metric2::uv), Fv = d_v(&Metric2::uv), Fuv = d_uv(&Metric2::uv);
    Eigen::Matrix3d M1, M2;
    M1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
        Fv - 0.5 * Gu, E, F,
        0.5 * Gv, F, G;
    M2 << 0.0, 0.5 * Ev, 0.5 * Gu,
        0.5 * Ev, E, F,
        0.5 * Gu, F, G;
    out.K = (M1.determinant() - M2.determinant()) / sq(E * G - F * F);
  }
  out.valid = std::isfinite(out.K);
  return out;
}

namespace {

using CurvatureFn = std::function<double(const Params&, ChartPoint)>;

double curvature_4_82_shape(double s, double eta_c) {
  const double a = (4.0 * s - 1.0) * (1.0 - eta_c);
  return 2.0 / s * (2.0 - (a + 2.0 * s + 1.0) / sq(a + 1.0));
}

const std::map<std::string, CurvatureFn, std::less<>>& curvature_table() {
  static const std::map<std::string, CurvatureFn, std::less<>> table = {
      {"4.30", [](const Params& p, ChartPoint x) {
         double N = p.get("N"), c2 = sq(std::cos(x.u)), a = (2.0 * N - 3.0) * c2;
         return 8.0 / N * (2.0 - (a + N) / sq(a + 1.0));
       }},
      {"4.54", [](const Params&, ChartPoint x) {
         double C = x.u, a = std::abs(std::sin(x.v));
         return 4.0 * (2.0 + a * (C - 3.0 * a) / sq(C - 2.0 * a));
       }},
      {"4.56", [](const Params&, ChartPoint x) {
         double a = std::abs(std::sin(x.v));
         return 4.0 * (2.0 - a * (3.0 * a - 1.0) / sq(2.0 * a - 1.0));
       }},
      {"4.64", [](const Params& p, ChartPoint x) {
         double N = p.get("N"), s = p.get("s"), a = (4.0 * s * (N - 1.0) - 1.0) * sq(std::cos(x.u));
         return 4.0 / (N * s) * (2.0 - (a + 2.0 * s * (N - 1.0) + 1.0) / sq(a + 1.0));
       }},
      {"4.82", [](const Params& p, ChartPoint) {
         return curvature_4_82_shape(p.get("s"), p.get("eta_tilde") * p.get("C") / p.get("C_max"));
       }},
      {"4.83", [](const Params& p, ChartPoint) {
         double s = p.get("s");
         return 2.0 / s * (2.0 - 3.0 / (8.0 * s));
       }},
      {"4.84", [](const Params& p, ChartPoint) { return curvature_4_82_shape(p.get("s"), p.get("eta_bar")); }},
  };
  return table;
}

}  // namespace

std::vector<std::string> curvature_formula_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : curvature_table()) ids.push_back(id);
  return ids;
}

CurvatureSample curvature_closed(std::string_view id, const Params& params, ChartPoint point) {
  const auto& table = curvature_table();
  auto it = table.find(id);
  if (it == table.end()) throw DomainError("unknown curvature formula id '" + std::string(id) + "'");
  if ((id == "4.30" || id == "4.64") && (std::abs(point.u) < 1e-3 || std::abs(point.u - kPi) < 1e-3) &&
      !params.has("allow_singular"))
    return {point, 0.0, false};
  double K = perturbed(id, it->second(params, point));
  return {point, K, std::isfinite(K)};
}

namespace {

struct CapMeasure {
  double angle;
};

// Circumference over geodesic radius of the coordinate circle at polar distance eps from the pole.
double cone_angle(const ClosedChart& chart, double pole, double eps, int n) {
  const double dir = pole == 0.0 ? 1.0 : -1.0;
  const double u0 = pole + dir * eps;
  double circumference = 0.0;
  const double dv = chart.azimuth_period / n;
  for (int j = 0; j < n; ++j) circumference += std::sqrt(std::max(0.0, chart.metric({u0, (j + 0.5) * dv}).vv)) * dv;
  double radius = 0.0;
  const int m = 64;
  const double du = eps / m;
  for (int i = 0; i < m; ++i) radius += std::sqrt(std::max(0.0, chart.metric({pole + dir * (i + 0.5) * du, 0.0}).uu)) * du;
  return circumference / radius;
}

double bulk_integral(const ClosedChart& chart, int n, double eps) {
  const double du = (kPi - 2.0 * eps) / n, dv = chart.azimuth_period / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = eps + (i + 0.5) * du;
    for (int j = 0; j < n; ++j) {
      ChartPoint x{u, (j + 0.5) * dv};
      CurvatureSample k = gauss_curvature(chart.metric, x);
      if (!k.valid) throw NumericalConsistencyError("curvature undefined inside the integration domain");
      total += k.K * std::sqrt(chart.metric(x).det()) * du * dv;
    }
  }
  return total;
}

}  // namespace

EulerResult euler_characteristic(const ClosedChart& chart, int grid, double eps) {
  if (grid < 64) throw DomainError("Euler characteristic needs a grid of at least 64x64");
  EulerResult r;
  r.bulk_integral = bulk_integral(chart, grid, eps);
  double low = cone_angle(chart, 0.0, eps, grid), high = cone_angle(chart, kPi, eps, grid);
  double low_half = cone_angle(chart, 0.0, eps / 2, grid), high_half = cone_angle(chart, kPi, eps / 2, grid);
  if (std::abs(low - low_half) > 1e-2 || std::abs(high - high_half) > 1e-2)
    throw NumericalConsistencyError("cone angle does not converge at the excised caps");
  r.cone_angle_low = low;
  r.cone_angle_high = high;
  r.defect_sum = (2.0 * kPi - low) + (2.0 * kPi - high);
  r.chi = (r.bulk_integral + r.defect_sum) / (2.0 * kPi);
  r.chi_rounded = static_cast<int>(std::lround(r.chi));
  double coarse = (bulk_integral(chart, grid / 2, eps) + r.defect_sum) / (2.0 * kPi);
  r.richardson_delta = std::abs(r.chi - coarse);
  return r;
}

double spin_s_eta_period(Spin s) { return s.is_half_integer() ? 2.0 * kPi : kPi; }

EulerResult euler_characteristic(std::string_view family_id, const Params& params, int grid) {
  ClosedChart chart;
  if (family_id == "ising-qubit") {
    chart.metric = metric_field("4.27", params);
    chart.azimuth_period = 2.0 * kPi;
  } else if (family_id == "ising-spin-s") {
    chart.metric = metric_field("4.61", params);
    chart.azimuth_period = spin_s_eta_period(Spin::from_value(params.get("s")));
  } else if (family_id == "sphere") {
    chart.metric = metric_field("4.26", params);
    chart.azimuth_period = 2.0 * kPi;
  } else {
    throw DomainError("unknown manifold family '" + std::string(family_id) + "'");
  }
  return euler_characteristic(chart, grid);
}

std::vector<std::string> euler_formula_ids() { return {"4.33", "4.35", "4.36", "4.66", "4.69"}; }

double euler_closed(std::string_view id, const Params& p) {
  const double value = [&] {
  if (id == "4.33") return 4.0 * kPi * (p.get("N") - 1.0);
  if (id == "4.35") return 4.0 * kPi * (2.0 - p.get("N"));
  if (id == "4.36") return 2.0;
  if (id == "4.66") return 4.0 * p.get("s") * p.get("eta_max") * (p.get("N") - 1.0);
  if (id == "4.69") return 2.0 * (2.0 * kPi - 2.0 * p.get("s") * p.get("eta_max") * (p.get("N") - 1.0));
  throw DomainError("unknown Euler formula id '" + std::string(id) + "'");
  }();
  return perturbed(id, value);
}

}  // namespace spinfold
