#include "spinfold/phases.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "spinfold/dynamics.hpp"
#include "spinfold/errors.hpp"
#include "spinfold/geometry.hpp"
#include "spinfold/models.hpp"

namespace spinfold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchFloor = 1e-6;

double sq(double x) { return x * x; }

Complex checked_overlap(const StateVector& a, const StateVector& b, double tau) {
  Complex o = a.dot(b);
  if (std::abs(o) < kBranchFloor) throw BranchError("overlap with the initial state nearly vanishes", tau);
  return o;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double total = f(a) + f(b);
  for (int i = 1; i < n; ++i) total += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return total * h / 3.0;
}

bool follows_time(const EvolvedFamily& family, const ChartPath& path) {
  const ChartPoint v = family.time_velocity();
  return family.spec() && std::abs(v.u - path.velocity.u) <= 1e-14 * (1.0 + std::abs(v.u)) &&
         std::abs(v.v - path.velocity.v) <= 1e-14 * (1.0 + std::abs(v.v));
}

double derivative_step(const ChartPath& path) {
  const double speed = std::hypot(path.velocity.u, path.velocity.v);
  return std::clamp(1e-4 / std::max(1.0, speed), 1e-7, 1e-3);
}

struct Unwrapper {
  const EvolvedFamily& family;
  const ChartPath& path;
  StateVector psi0;

  double arg_at(double tau) const { return std::arg(checked_overlap(psi0, family.amplitudes(path.at(tau)), tau)); }

  double increment(double a, double b, double arg_a, double arg_b, int depth) const {
    const double d = wrap_angle(arg_b - arg_a);
    if (std::abs(d) <= kPi / 2.0) return d;
    if (depth >= 40) throw BranchError("phase jump could not be resolved by refinement", b);
    const double m = 0.5 * (a + b), arg_m = arg_at(m);
    return increment(a, m, arg_a, arg_m, depth + 1) + increment(m, b, arg_m, arg_b, depth + 1);
  }
};

double qubit_weight(double N, int p, double eta) {
  return binomial(static_cast<int>(N), p) * std::pow(std::cos(eta / 2.0), 2.0 * (N - p)) *
         std::pow(std::sin(eta / 2.0), 2.0 * p);
}

double collective_total(const Params& prm) {
  const double N = prm.get("N"), eta = prm.get("eta"), kappa = prm.get("kappa");
  double num = 0.0, den = 0.0;
  for (int p = 0; p <= static_cast<int>(N); ++p) {
    const double w = qubit_weight(N, p, eta), arg = kappa * sq(N - 2.0 * p) / 4.0;
    num += w * std::sin(arg);
    den += w * std::cos(arg);
  }
  return -std::atan2(num, den);
}

double collective_dynamic(const Params& prm) {
  const double N = prm.get("N"), eta = prm.get("eta");
  return -prm.get("kappa") * N / 4.0 * (N * sq(std::cos(eta)) + sq(std::sin(eta)));
}

double collective_short_bracket(double N, double eta) {
  return 4.0 * (N - 1.0) * (N + 2.0) * sq(std::cos(eta)) - (N - 3.0) * (N - 2.0) * sq(std::sin(2.0 * eta)) +
         4.0 * (3.0 * N - 2.0);
}

double spin_s_total(const Params& prm) {
  const int N = static_cast<int>(prm.get("N"));
  const Spin s = Spin::from_value(prm.get("s"));
  const double eta = prm.get("eta"), t = std::tan(prm.get("kappa") / 2.0);
  const BasisDescriptor basis(N, s);
  const double sv = s.value();
  double num = 0.0, den = 0.0;
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    const auto ms = site_magnetizations(idx, basis);
    double w = 1.0, pair = 0.0, sum = 0.0;
    for (double m : ms) {
      w *= std::pow(t, 2.0 * (sv + m)) * binomial(s.twice(), static_cast<int>(std::lround(sv + m)));
      pair -= m * m;
      sum += m;
    }
    pair = 0.5 * (sum * sum + pair);
    num += std::sin(2.0 * eta * pair) * w;
    den += std::cos(2.0 * eta * pair) * w;
  }
  return -std::atan2(num, den);
}

double spin_s_dynamic(const Params& prm) {
  const double N = prm.get("N"), s = prm.get("s");
  return -prm.get("eta") * s * s * N * (N - 1.0) * sq(std::cos(prm.get("kappa")));
}

double spin_s_short_bracket(double N, double s, double kappa) {
  return s * (N - 1.0) * (2.0 * s * N * std::pow(std::cos(kappa), 4) + sq(std::sin(2.0 * kappa))) +
         std::pow(std::sin(kappa), 4);
}

double xxz_dynamic(const Params& p) {
  return p.get("D") * p.get("kappa") + (p.get("nu") * (p.get("A") - 0.5) + p.get("F")) * p.get("eta");
}

double xxz_global(const Params& p) {
  const double p11 = p.get("p11"), p00 = p.get("p00"), B = p.get("B"), nu = p.get("nu");
  const double eta = p.get("eta"), kappa = p.get("kappa");
  const double A = p11 + p00, G = 2.0 * (1.0 - A) - B, nu_p = (2.0 + nu) / 2.0, nu_m = (2.0 - nu) / 2.0;
  const double num = 2.0 * p00 * std::sin(kappa - nu * eta / 2.0) - 2.0 * p11 * std::sin(kappa + nu * eta / 2.0) -
                     G * std::sin(nu_m * eta) + B * std::sin(nu_p * eta);
  const double den = 2.0 * p11 * std::cos(kappa + nu * eta / 2.0) + 2.0 * p00 * std::cos(kappa - nu * eta / 2.0) +
                     G * std::cos(nu_m * eta) + B * std::cos(nu_p * eta);
  return std::atan2(num, den);
}

double pair_geometric(const Params& p) {
  const double C = p.get("C"), kappa = p.get("kappa"), a = std::abs(std::sin(kappa));
  return -std::atan2((2.0 * a - C) * std::sin(kappa), (2.0 * a - C) * std::cos(kappa) + C) +
         kappa * (1.0 - C / (2.0 * a));
}

using Formula = std::function<double(const Params&)>;
using Registry = std::map<std::string, Formula, std::less<>>;

const Registry& phase_table() {
  static const Registry table = {
      {"2.82", [](const Params& p) { return -p.get("E") * p.get("t"); }},
      {"4.12", [](const Params& p) {
         return ((1.0 - p.get("A")) * (p.get("nu") - 1.0) + p.get("B")) * p.get("eta") +
                (1.0 - p.get("D")) * p.get("kappa");
       }},
      {"4.13", [](const Params& p) {
         return xxz_dynamic(p) + p.get("nu") / 2.0 * p.get("eta") + (1.0 - 2.0 * p.get("D")) * p.get("kappa");
       }},
      {"4.16", [](const Params& p) {
         const double p11 = p.get("p11"), p00 = p.get("p00"), B = p.get("B"), nu = p.get("nu");
         const double eta = p.get("eta"), kappa = p.get("kappa"), A = p11 + p00;
         const double re = p11 * std::cos(kappa + nu * eta) + (1.0 - A) * std::cos(eta) + p00 * std::cos(kappa - nu * eta);
         const double im = p00 * std::sin(kappa - nu * eta) - p11 * std::sin(kappa + nu * eta) - (1.0 - A - B) * std::sin(eta);
         return std::atan2(im, re);
       }},
      {"4.17", xxz_global},
      {"4.20", xxz_dynamic},
      {"4.21", [](const Params& p) { return xxz_global(p) - xxz_dynamic(p); }},
      {"4.24", [](const Params& p) {
         const double C = p.get("C"), nu = p.get("nu"), kappa = p.get("kappa");
         const double s2 = sq(std::sin(p.get("chi"))), c2 = 1.0 - s2;
         const double nu_p = (2.0 + nu) / 2.0, nu_m = (2.0 - nu) / 2.0, w = 2.0 + (nu - 1.0) * s2;
         const double num = 4.0 * C * w * (nu * s2 - 2.0 * nu_p * c2 + 2.0 * nu_m);
         const double den = s2 * (4.0 * w * w * (kappa * kappa - 2.0) + nu * nu * C * C);
         return std::atan(num / den) + 0.5 * ((nu * c2 + s2) / w) * C;
       }},
      {"4.38", collective_total},
      {"4.39", collective_dynamic},
      {"4.40", [](const Params& p) { return collective_total(p) - collective_dynamic(p); }},
      {"4.41", [](const Params& p) {
         const double N = p.get("N"), eta = p.get("eta"), kappa = p.get("kappa");
         const double re = 1.0 + kappa * kappa * N * (N - 1.0) / 64.0 * collective_short_bracket(N, eta);
         return std::atan2(collective_dynamic(p), re);
       }},
      {"4.42", [](const Params& p) {
         const double N = p.get("N"), eta = p.get("eta"), kappa = p.get("kappa");
         const double lin = kappa * N * (N * sq(std::cos(eta)) + sq(std::sin(eta)));
         const double den = 4.0 + kappa * kappa * N * (N - 1.0) / 16.0 * collective_short_bracket(N, eta);
         return -std::atan(lin / den) + lin / 4.0;
       }},
      {"4.45", [](const Params& p) {
         const double N = p.get("N");
         return -kPi / 2.0 * N * (N - 1.0) * sq(std::sin(p.get("eta")));
       }},
      {"4.46-printed", [](const Params& p) {
         const double N = p.get("N"), K = p.get("K");
         return kPi * N * (N - 1.0) / 2.0 * ((-56.0 + 3.0 * N * (16.0 - (N - 1.0) * K)) / ((2.0 * N - 3.0) * (N * K - 16.0)));
       }},
      {"4.57", pair_geometric},
      {"4.58", [](const Params& p) { return -kPi * p.get("C") / std::abs(std::sin(p.get("kappa"))); }},
      {"4.72", spin_s_total},
      {"4.74", spin_s_dynamic},
      {"4.75", [](const Params& p) { return spin_s_total(p) - spin_s_dynamic(p); }},
      {"4.76", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s"), eta = p.get("eta"), kappa = p.get("kappa");
         const double re = 1.0 - eta * eta * s * s * N * (N - 1.0) / 4.0 * spin_s_short_bracket(N, s, kappa);
         return std::atan2(spin_s_dynamic(p), re);
       }},
      {"4.77", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s"), eta = p.get("eta"), kappa = p.get("kappa");
         const double lin = eta * s * s * N * (N - 1.0) * sq(std::cos(kappa));
         const double den = 4.0 - eta * eta * s * s * N * (N - 1.0) * spin_s_short_bracket(N, s, kappa);
         return -std::atan(4.0 * lin / den) + lin;
       }},
      {"4.79", [](const Params& p) {
         const double N = p.get("N"), s = p.get("s");
         return p.get("eta_max") * N * (N - 1.0) * s * s * sq(std::cos(p.get("kappa")));
       }},
      {"4.85", [](const Params& p) {
         const double s = p.get("s"), eta = p.get("eta"), eb = p.get("eta_bar");
         const double x = p.get("C") / p.get("C_max"), lin = 2.0 * eta * s * s * (1.0 - eb * x);
         const double den = 2.0 - eta * eta * s * s * (2.0 * s - 1.0) *
                                      ((2.0 * s - 1.0) * eb * eb * x * x - 4.0 * s * eb * x + 4.0 * s * s);
         return lin - std::atan(2.0 * lin / den);
       }},
  };
  return table;
}

const Registry& topological_table() {
  static const Registry table = {
      {"4.14", [](const Params& p) {
         return p.get("nu") / 2.0 * p.get("eta_m") + (1.0 - 2.0 * p.get("D")) * p.get("kappa_m");
       }},
      {"4.47", [](const Params& p) { return -kPi / 2.0 * sq(p.get("N")); }},
      {"4.59", [](const Params&) { return -2.0 * kPi; }},
  };
  return table;
}

double lookup(const Registry& table, std::string_view id, const Params& p, const char* kind) {
  auto it = table.find(id);
  if (it == table.end()) throw DomainError(std::string("unknown ") + kind + " formula id '" + std::string(id) + "'");
  return perturbed(id, it->second(p));
}

}  // namespace

ChartPath time_path(const EvolvedFamily& family, ChartPoint start, double t) {
  return {start, family.time_velocity(), t};
}

double total_phase(const PureState& initial, const PureState& evolved) {
  const Complex o = overlap(initial, evolved);
  if (std::abs(o) < 1e-9) throw UndefinedPhaseError("total phase is undefined for orthogonal states");
  return wrap_angle(std::arg(o));
}

double dynamic_phase(const EvolvedFamily& family, ChartPoint start, double t) {
  if (!family.spec()) throw DomainError("family '" + family.name() + "' carries no Hamiltonian");
  return -energy_expectation(family.at(start), *family.spec()) * t;
}

double dynamic_phase_numeric(const EvolvedFamily& family, const ChartPath& path, int samples) {
  if (path.duration == 0.0) return 0.0;
  const double h = derivative_step(path);
  auto integrand = [&](double tau) {
    const ChartPoint x = path.at(tau);
    return std::imag(family.amplitudes(x).dot(chart_derivative(family, x, path.velocity, h)));
  };
  return simpson(integrand, 0.0, path.duration, samples);
}

double unwrapped_total_phase(const EvolvedFamily& family, const ChartPath& path, int samples) {
  if (samples < 256) throw DomainError("phase unwrapping needs at least 256 samples");
  Unwrapper u{family, path, family.amplitudes(path.start)};
  double total = u.arg_at(0.0), prev = total;
  for (int i = 1; i <= samples; ++i) {
    const double a = path.duration * (i - 1) / samples, b = path.duration * i / samples;
    const double cur = u.arg_at(b);
    total += u.increment(a, b, prev, cur, 0);
    prev = cur;
  }
  return total;
}

PhaseDecomposition geometric_phase(const EvolvedFamily& family, ChartPoint start, double t, int samples) {
  return geometric_phase(family, time_path(family, start, t), samples);
}

PhaseDecomposition geometric_phase(const EvolvedFamily& family, const ChartPath& path, int samples) {
  PhaseDecomposition d;
  if (path.duration == 0.0) return d;
  d.unwrapped_total = unwrapped_total_phase(family, path, samples);
  d.total = wrap_angle(d.unwrapped_total);
  d.branch_windings = static_cast<int>(std::lround((d.unwrapped_total - d.total) / (2.0 * kPi)));
  d.dynamic = follows_time(family, path) ? dynamic_phase(family, path.start, path.duration)
                                         : dynamic_phase_numeric(family, path, std::max(512, 2 * samples));
  d.geometric = d.unwrapped_total - d.dynamic;
  return d;
}

CyclePhase aa_phase(const EvolvedFamily& family, ChartPoint start, double period) {
  const ChartPath path = time_path(family, start, period);
  const StateVector psi0 = family.amplitudes(start), psiT = family.amplitudes(path.at(period));
  const Complex o = psi0.dot(psiT);
  if (std::abs(std::abs(o) - 1.0) > 1e-9) throw DomainError("evolution does not return to the initial ray");
  CyclePhase c;
  c.closure_phase = std::arg(o);
  c.dynamic = family.spec() ? dynamic_phase(family, start, period) : dynamic_phase_numeric(family, path);
  c.aa_phase = c.closure_phase - c.dynamic;
  c.aa_phase_wrapped = wrap_angle(c.aa_phase);
  c.winding = static_cast<int>(std::lround((c.aa_phase - c.aa_phase_wrapped) / (2.0 * kPi)));
  c.topological_part = wrap_angle(c.aa_phase + c.dynamic);
  c.cycle = family.name() + " from (" + std::to_string(start.u) + ", " + std::to_string(start.v) + ") over " +
            std::to_string(period);
  return c;
}

double contracted_length_phase(const EvolvedFamily& family, const ChartPath& path, bool cyclic, int samples) {
  if (path.duration == 0.0) return 0.0;
  const double h = derivative_step(path);
  const StateVector psi0 = family.amplitudes(path.start);
  double closure_rate = 0.0;
  if (cyclic) {
    const Complex o = psi0.dot(family.amplitudes(path.at(path.duration)));
    if (std::abs(std::abs(o) - 1.0) > 1e-9) throw DomainError("path does not return to the initial ray");
    closure_rate = std::arg(o) / path.duration;
  }
  auto integrand = [&](double tau) {
    const ChartPoint x = path.at(tau);
    const StateVector psi = family.amplitudes(x);
    const StateVector dpsi = chart_derivative(family, x, path.velocity, h);
    const double b = std::imag(psi.dot(dpsi));
    const double section_rate =
        cyclic ? closure_rate : std::imag(psi0.dot(dpsi) / checked_overlap(psi0, psi, tau));
    const double norm2 = std::real(dpsi.dot(dpsi));
    const double dL2 = norm2 + section_rate * section_rate - 2.0 * section_rate * b;
    const double dS2 = norm2 - b * b;
    const double diff = dL2 - dS2;
    if (diff < -1e-10 * std::max(1.0, dL2)) throw NumericalConsistencyError("contracted length element is negative");
    return std::sqrt(std::max(0.0, diff));
  };
  return simpson(integrand, 0.0, path.duration, samples);
}

std::vector<std::string> phase_formula_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : phase_table()) ids.push_back(id);
  return ids;
}

double phase_closed(std::string_view id, const Params& p) { return lookup(phase_table(), id, p, "phase"); }

std::vector<std::string> topological_formula_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : topological_table()) ids.push_back(id);
  return ids;
}

double topological_phase(std::string_view id, const Params& p) {
  return lookup(topological_table(), id, p, "topological-phase");
}

double phase_vs_entanglement(std::string_view id, double C, const Params& params) {
  if (C < 0.0) throw DomainError("entanglement must be non-negative");
  if (id == "4.57" || id == "4.58") {
    if (C > std::abs(std::sin(params.get("kappa"))) + 1e-15)
      throw DomainError("concurrence exceeds |sin kappa| on this chart");
  } else if (id == "4.85") {
    if (C > params.get("C_max")) throw DomainError("I-concurrence exceeds C_max");
  } else if (id == "4.24") {
    if (C > 1.0) throw DomainError("concurrence exceeds 1");
  } else {
    throw DomainError("formula '" + std::string(id) + "' is not parametrized by entanglement");
  }
  return phase_closed(id, params.with("C", C));
}

}  // namespace spinfold
