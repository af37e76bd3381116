#include "spinfold/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "spinfold/errors.hpp"
#include "spinfold/geometry.hpp"

namespace spinfold {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

struct Moments {
  double mean;
  double second;
};

Moments energy_moments(const PureState& psi, const ModelSpec& spec) {
  if (psi.basis().dimension() != spec.basis.dimension())
    throw DomainError("state basis does not match the model basis");
  const StateVector& a = psi.amplitudes();
  if (spec.is_diagonal()) {
    Eigen::VectorXd e = diagonal_energies(spec);
    double m1 = 0.0, m2 = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      double p = std::norm(a[k]);
      m1 += p * e[k];
      m2 += p * e[k] * e[k];
    }
    return {m1, m2};
  }
  ComplexMatrix H = hamiltonian_matrix(spec);
  StateVector Ha = H * a;
  return {std::real(a.dot(Ha)), std::real(Ha.dot(Ha))};
}

using Formula = std::function<double(const Params&)>;
using Registry = std::map<std::string, Formula, std::less<>>;

double lookup(const Registry& table, std::string_view id, const Params& p, const char* kind) {
  auto it = table.find(id);
  if (it == table.end()) throw DomainError(std::string("unknown ") + kind + " formula id '" + std::string(id) + "'");
  return perturbed(id, it->second(p));
}

std::vector<std::string> keys(const Registry& table) {
  std::vector<std::string> ids;
  for (const auto& [id, f] : table) ids.push_back(id);
  return ids;
}

double abs_sin(const Params& p) { return std::abs(std::sin(p.get("kappa"))); }

double qubit_bracket(const Params& p) {
  const double N = p.get("N"), x = sq(std::sin(p.get("eta")));
  return 2.0 / (N * (N - 1.0)) * x * (N - 1.0 - (2.0 * N - 3.0) * x);
}

double spin_s_bracket(const Params& p) {
  const double N = p.get("N"), s = p.get("s"), k = p.get("kappa");
  return N * (N - 1.0) * sq(std::sin(k)) * (1.0 + (4.0 * s * (N - 1.0) - 1.0) * sq(std::cos(k))) / 2.0;
}

double entanglement_fraction(const Params& p) { return p.get("C") / p.get("C_max"); }

double xxz_reduced_speed(const Params& p) {
  const double chi2 = sq(std::sin(p.get("chi"))), nu = p.get("nu"), k = p.get("k");
  const double num = 2.0 * (nu * nu + k * k - 1.0) * chi2 - sq(nu - 1.0) * chi2 * chi2 + 4.0;
  return 0.5 * std::sqrt(num / sq(2.0 + (nu - 1.0) * chi2));
}

double entangled_speed(const Params& p) { return 0.5 * std::sqrt(1.0 + 8.0 / sq(1.0 + std::sqrt(1.0 + 2.0 * p.get("C")))); }

double entangled_distance(const Params& p) {
  const double C = p.get("C");
  const double e1 = std::sqrt(1.0 + 2.0 * C), e2 = std::sqrt(C + e1 + 5.0);
  const double bracket = e2 * (e1 - 1.0) + 4.0 * std::sqrt(2.0) * std::asinh((e1 + 1.0) / (2.0 * std::sqrt(2.0))) +
                         4.0 * std::log(2.0 * (e2 + 2.0) / (e1 + 1.0));
  return (e1 + 1.0) / (2.0 * e2) * bracket * entangled_speed(p);
}

double spin_s_entangled_distance(const Params& p) {
  const double s = p.get("s"), x = p.get("eta_tilde") * entanglement_fraction(p);
  return s * std::sqrt(p.get("eta_prime_max") * x * (4.0 * s - (4.0 * s - 1.0) * x));
}

const Registry& speed_table() {
  static const Registry table = {
      {"2.23", [](const Params& p) { return 2.0 * p.get("dE"); }},
      {"2.85", [](const Params& p) { return p.get("dE"); }},
      {"3.29", [](const Params& p) { return 2.0 * p.get("dE"); }},
      {"3.61", [](const Params& p) { return 2.0 * p.get("dE"); }},
      {"3.31-printed", [](const Params& p) {
         const double J = p.get("J"), b = p.get("b"), nu = p.get("nu");
         const double A = p.get("A"), D = p.get("D"), F = p.get("F"), k = b / J;
         const double r = b * b * (A - D * D) - J * J * ((nu * A + F) * (1.0 + nu * A + F) + (nu * nu - 1.0) * A + 1.0) +
                          2.0 * J * b * k * nu;
         return 2.0 * std::sqrt(r);
       }},
      {"3.33", [](const Params& p) {
         const double J = p.get("J"), A = p.get("A"), D = p.get("D"), F = p.get("F"), k = p.get("k");
         const double s2 = std::sin(2.0 * p.get("eta"));
         return 2.0 * J *
                std::sqrt(1.0 - (A * s2 + F) * (1.0 + A * s2 + F) + (s2 * s2 - 1.0) * A + 2.0 * A * k * s2 +
                          J * J * (A - D * D));
       }},
      {"3.34", [](const Params& p) { return p.get("J") * std::sqrt(3.0 - 2.0 * std::sin(2.0 * p.get("eta"))); }},
      {"3.50", xxz_reduced_speed},
      {"3.52", entangled_speed},
      {"3.62", [](const Params& p) { return p.get("J") * std::sqrt(qubit_bracket(p)); }},
      {"3.64", [](const Params& p) {
         const double N = p.get("N");
         return p.get("J") * (N - 1.0) / std::sqrt(N * (N - 1.0) * (2.0 * N - 3.0));
       }},
      {"3.72-printed", [](const Params& p) {
         const double a = abs_sin(p), C = p.get("C");
         return 0.5 * p.get("J") * a * (C * std::sqrt(2.0 * a - C));
       }},
      {"3.72-derived", [](const Params& p) {
         const double a = abs_sin(p), C = p.get("C");
         return p.get("J") / (2.0 * a) * std::sqrt(C * (2.0 * a - C));
       }},
      {"3.85", [](const Params& p) { return p.get("J") * p.get("s") * std::sqrt(spin_s_bracket(p)); }},
      {"3.89", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s");
         return p.get("J") * s * s * (N - 1.0) * std::sqrt(2.0 * N * (N - 1.0) / (4.0 * s * (N - 1.0) - 1.0));
       }},
      {"3.105", [](const Params& p) {
         const double s = p.get("s"), x = p.get("eta_tilde") * entanglement_fraction(p);
         return p.get("J") * s * std::sqrt(x * (4.0 * s - (4.0 * s - 1.0) * x));
       }},
      {"3.105-peak", [](const Params& p) {
         const double s = p.get("s");
         return 2.0 * p.get("J") * s * s / std::sqrt(4.0 * s - 1.0);
       }},
  };
  return table;
}

const Registry& distance_table() {
  static const Registry table = {
      {"2.69", [](const Params& p) { return std::sqrt(2.0 - 2.0 * p.get("overlap_abs")); }},
      {"3.35", [](const Params& p) {
         const double eta = p.get("eta");
         return 0.5 * eta * std::sqrt(3.0 - 2.0 * std::sin(2.0 * eta));
       }},
      {"3.53", entangled_distance},
      {"3.65", [](const Params& p) { return p.get("kappa") * std::sqrt(qubit_bracket(p)); }},
      {"3.66", [](const Params& p) {
         const double N = p.get("N");
         return p.get("kappa") * std::sqrt(N / (2.0 * (N - 1.0)));
       }},
      {"3.73", [](const Params& p) {
         const double a = abs_sin(p), C = p.get("C");
         return p.get("kappa") / (2.0 * a) * std::sqrt(C * (2.0 * a - C));
       }},
      {"3.90", [](const Params& p) { return p.get("s") * std::abs(p.get("eta")) * std::sqrt(spin_s_bracket(p)); }},
      {"3.91", [](const Params& p) {
         const double N = p.get("N");
         return p.get("s") * std::sqrt(sq(p.get("eta")) * N * (N - 1.0) / 2.0);
       }},
      {"3.106", spin_s_entangled_distance},
  };
  return table;
}

const Registry& time_table() {
  static const Registry table = {
      {"2.105", [](const Params& p) { return p.get("s_min") / p.get("v_max"); }},
      {"3.36", [](const Params& p) { return 3.0 * kPi / (8.0 * p.get("J")); }},
      {"3.45", [](const Params& p) { return kPi / (4.0 * p.get("J") * (p.get("nu") + 1.0)); }},
      {"3.67", [](const Params& p) {
         const double N = p.get("N");
         return (N - 1.0) / (p.get("J") * std::sqrt(2.0 * N - 3.0));
       }},
      {"3.74", [](const Params& p) {
         const double a = abs_sin(p), C = p.get("C");
         return p.get("kappa") / (p.get("J") * a) * std::sqrt(C * (2.0 * a - C));
       }},
      {"3.92", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s");
         return std::sqrt(sq(p.get("eta")) * (4.0 * s * (N - 1.0) - 1.0)) / (2.0 * p.get("J") * s * (N - 1.0));
       }},
      {"3.94", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s");
         return p.get("t") / (2.0 * s * (N - 1.0)) * std::sqrt(4.0 * s * (N - 1.0) - 1.0);
       }},
      {"3.95", [](const Params& p) { return p.get("t"); }},
      {"3.107", [](const Params& p) {
         const double s = p.get("s"), J = p.get("J"), x = p.get("eta_tilde") * entanglement_fraction(p);
         const double v_max = 2.0 * J * s * s / std::sqrt(4.0 * s - 1.0);
         const double root =
             std::sqrt(p.get("eta_prime_max") * x * (4.0 * s - 1.0) * (4.0 * s - (4.0 * s - 1.0) * x));
         return spin_s_entangled_distance(p) * v_max / (2.0 * J * s) * root;
       }},
      {"tau-tilde", [](const Params&) {
         Params zero{{"C", 0.0}};
         return entangled_distance(zero) / entangled_speed(zero);
       }},
  };
  return table;
}

const Registry& argmax_table() {
  static const Registry table = {
      {"3.63", [](const Params& p) {
         const double N = p.get("N");
         return (N - 1.0) / (2.0 * N - 3.0);
       }},
      {"3.88", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s");
         return 2.0 * s * (N - 1.0) / (4.0 * s * (N - 1.0) - 1.0);
       }},
  };
  return table;
}

}  // namespace

double energy_expectation(const PureState& psi, const ModelSpec& spec) { return energy_moments(psi, spec).mean; }

double energy_uncertainty(const PureState& psi, const ModelSpec& spec) {
  Moments m = energy_moments(psi, spec);
  return std::sqrt(std::max(0.0, m.second - m.mean * m.mean));
}

SpeedSample speed(const EvolvedFamily& family, ChartPoint x, SpeedConvention convention, double h) {
  const ChartPoint vel = family.time_velocity();
  if (vel.u == 0.0 && vel.v == 0.0) throw DomainError("family '" + family.name() + "' has no time direction");
  const double v = std::sqrt(std::max(0.0, metric_along(family, x, vel, h)));
  if (family.spec()) {
    const double dE = energy_uncertainty(family.at(x), *family.spec());
    if (std::abs(v - dE) > 1e-6 * std::max(1.0, dE))
      throw NumericalConsistencyError("numeric speed disagrees with the energy uncertainty");
  }
  return {x, convention == SpeedConvention::Printed ? 2.0 * v : v, convention};
}

std::vector<std::string> speed_formula_ids() { return keys(speed_table()); }
double speed_closed(std::string_view id, const Params& p) { return lookup(speed_table(), id, p, "speed"); }

double geodesic_distance(const EvolvedFamily& family, ChartPoint start, double t0, double t1, int samples) {
  if (t0 == t1) return 0.0;
  if (samples < 2) throw DomainError("distance quadrature needs at least two samples");
  const int n = samples % 2 == 0 ? samples : samples + 1;
  const double h = (t1 - t0) / n;
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    total += w * speed(family, family.advance(start, t0 + i * h)).v;
  }
  return std::abs(total * h / 3.0);
}

std::vector<std::string> distance_formula_ids() { return keys(distance_table()); }
double distance_closed(std::string_view id, const Params& p) { return lookup(distance_table(), id, p, "distance"); }

std::vector<std::string> optimal_time_formula_ids() { return keys(time_table()); }
double optimal_time_closed(std::string_view id, const Params& p) { return lookup(time_table(), id, p, "optimal-time"); }

double optimal_time_vs_entanglement(std::string_view id, const Params& params, double C) {
  if (id == "3.74") {
    const double a = abs_sin(params);
    if (C < 0.0 || C > 2.0 * a) throw DomainError("concurrence outside [0, 2|sin kappa|]");
  } else if (id == "3.107") {
    if (C < 0.0 || C > params.get("C_max")) throw DomainError("I-concurrence outside [0, C_max]");
  } else if (id == "tau-tilde") {
    if (C != 0.0) throw DomainError("the entanglement-limited optimal time is defined at C = 0");
  } else {
    throw DomainError("formula '" + std::string(id) + "' is not parametrized by entanglement");
  }
  return optimal_time_closed(id, params.with("C", C));
}

std::vector<std::string> argmax_formula_ids() { return keys(argmax_table()); }
double argmax_closed(std::string_view id, const Params& p) { return lookup(argmax_table(), id, p, "argmax"); }

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  // Golden section stalls near sqrt(eps); refine on the sign of a central-difference slope.
  const double step = 1e-6 * std::max(1.0, hi - lo);
  auto slope = [&](double x) { return f(x + step) - f(x - step); };
  double left = std::max(lo + step, a - 1e-6), right = std::min(hi - step, b + 1e-6);
  if (left < right && slope(left) > 0.0 && slope(right) < 0.0) {
    for (int i = 0; i < 200 && right - left > tol * 1e-2; ++i) {
      const double mid = 0.5 * (left + right);
      (slope(mid) > 0.0 ? left : right) = mid;
    }
    a = left;
    b = right;
  } else if (hi - b < 1e-6 && f(hi) - f(hi - 2.0 * step) > 0.0) {
    a = b = hi;
  } else if (a - lo < 1e-6 && f(lo) - f(lo + 2.0 * step) > 0.0) {
    a = b = lo;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

BrachistochroneReport brachistochrone(std::string_view family_id, const Params& params) {
  BrachistochroneReport r;
  if (family_id == "xxz-sinusoidal") {
    const double J = params.get("J");
    auto v = [&](double eta) { return speed_closed("3.34", {{"J", J}, {"eta", eta}}); };
    ScalarOptimum best = golden_section_maximize([&](double eta) { return sq(v(eta)); }, 0.0, kPi);
    r.argmax_point = {best.x, 0.0};
    r.argmax_sin2 = sq(std::sin(best.x));
    r.printed_argmax_sin2 = std::numeric_limits<double>::quiet_NaN();
    r.v_max = v(best.x);
    r.s_min = distance_closed("3.35", {{"eta", best.x}});
    r.T_opt = r.s_min / r.v_max;
    r.formula_id = "3.36";
    r.printed_T = optimal_time_closed("3.36", {{"J", J}});
    r.single_point_T = best.x / (2.0 * J);
    r.printed_agrees = std::abs(r.T_opt - r.printed_T) <= 1e-8;
    return r;
  }
  if (family_id == "ising-qubit" || family_id == "ising-spin-s") {
    const bool qubit = family_id == "ising-qubit";
    const int N = static_cast<int>(params.get("N"));
    const double J = params.get("J"), t = params.get_or("t", 1.0);
    const Spin s = qubit ? Spin(1) : Spin::from_value(params.get("s"));
    const ModelSpec spec = qubit ? ModelSpec::collective_ising(N, J) : ModelSpec::pairwise_ising(N, s, J);
    const BasisDescriptor basis(N, s);
    auto variance = [&](double sin2) {
      const double polar = std::asin(std::sqrt(std::clamp(sin2, 0.0, 1.0)));
      return sq(energy_uncertainty(coherent_state(basis, polar, 0.0), spec));
    };
    ScalarOptimum best = golden_section_maximize(variance, 0.0, 1.0);
    r.argmax_point = {std::asin(std::sqrt(best.x)), 0.0};
    r.argmax_sin2 = best.x;
    r.v_max = std::sqrt(best.value);
    r.s_min = std::sqrt(variance(1.0)) * t;
    r.T_opt = r.s_min / r.v_max;
    r.single_point_T = t;
    if (qubit) {
      r.formula_id = "3.67";
      r.printed_T = optimal_time_closed("3.67", {{"N", double(N)}, {"J", J}});
      r.printed_argmax_sin2 = argmax_closed("3.63", {{"N", double(N)}});
    } else {
      Params p{{"N", double(N)}, {"s", s.value()}, {"J", J}, {"eta", J * t}};
      r.formula_id = "3.92";
      r.printed_T = optimal_time_closed("3.92", p);
      r.printed_argmax_sin2 = argmax_closed("3.88", p);
    }
    r.printed_agrees =
        std::abs(r.T_opt - r.printed_T) <= 1e-8 && std::abs(r.argmax_sin2 - r.printed_argmax_sin2) <= 1e-8;
    return r;
  }
  throw DomainError("unknown brachistochrone family '" + std::string(family_id) + "'");
}

}  // namespace spinfold
