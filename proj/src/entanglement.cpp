#include "spinfold/entanglement.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "spinfold/errors.hpp"
#include "spinfold/models.hpp"

namespace spinfold {

namespace {

double sq(double x) { return x * x; }

Complex complex_param(const Params& p, const std::string& name) {
  return {p.get(name + "_re"), p.get_or(name + "_im", 0.0)};
}

using Formula = std::function<double(const Params&)>;

const std::map<std::string, Formula, std::less<>>& concurrence_table() {
  static const std::map<std::string, Formula, std::less<>> table = {
      {"3.37", [](const Params& p) {
         const Complex c11 = complex_param(p, "c11"), c10 = complex_param(p, "c10");
         const Complex c01 = complex_param(p, "c01"), c00 = complex_param(p, "c00");
         const double eta = p.get("eta"), nu = p.get("nu");
         const Complex I(0.0, 1.0);
         return std::abs(2.0 * c11 * c00 * std::exp(-2.0 * I * eta * (nu + 1.0)) +
                         I * std::exp(-2.0 * I * eta) * (c10 + c01) * (c10 + c01) * std::sin(2.0 * eta) -
                         2.0 * c10 * c01);
       }},
      {"3.42", [](const Params& p) {
         const double eta = p.get("eta"), nu = p.get("nu"), s2 = sq(std::sin(p.get("chi")));
         const double cp = std::cos(2.0 * nu * eta) - std::cos(2.0 * eta);
         return 0.5 * std::sqrt(cp * cp * s2 * s2 + sq(2.0 * std::sin(2.0 * eta) + cp * s2));
       }},
      {"3.43", [](const Params& p) { return std::abs(std::sin(2.0 * p.get("eta"))); }},
      {"3.44", [](const Params& p) { return std::abs(std::sin((p.get("nu") + 1.0) * p.get("eta"))); }},
      {"3.46", [](const Params& p) {
         return p.get("eta") * (2.0 + (p.get("nu") - 1.0) * sq(std::sin(p.get("chi"))));
       }},
      {"3.71", [](const Params& p) { return sq(std::sin(p.get("eta"))) * std::abs(std::sin(p.get("kappa"))); }},
      {"3.103", [](const Params& p) { return i_concurrence_short_time(p.get("s"), p.get("eta"), p.get("kappa")); }},
      {"3.104", [](const Params& p) { return 2.0 * p.get("s") * p.get("eta_max"); }},
  };
  return table;
}

}  // namespace

ConcurrenceValue concurrence_pure_2qubit(const PureState& psi) {
  const BasisDescriptor& b = psi.basis();
  if (b.n_sites != 2 || b.spin.twice() != 1) throw DomainError("Wootters concurrence needs a two-qubit state");
  const StateVector& c = psi.amplitudes();
  return {2.0 * std::abs(c[0] * c[3] - c[1] * c[2]), ConcurrenceKind::WoottersQubit, 0};
}

ConcurrenceValue i_concurrence(const PureState& psi, int keep_site) {
  if (psi.basis().n_sites != 2) throw DomainError("I-concurrence is defined here for two-site states");
  const double p = purity(partial_trace(psi, keep_site));
  return {std::sqrt(std::max(0.0, 2.0 * (1.0 - p))), ConcurrenceKind::IConcurrence, keep_site};
}

double i_concurrence_short_time(double s, double eta, double kappa) { return 2.0 * eta * s * sq(std::sin(kappa)); }

std::vector<std::string> concurrence_formula_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : concurrence_table()) ids.push_back(id);
  return ids;
}

double concurrence_closed(std::string_view id, const Params& params) {
  const auto& table = concurrence_table();
  auto it = table.find(id);
  if (it == table.end()) throw DomainError("unknown concurrence formula id '" + std::string(id) + "'");
  return perturbed(id, it->second(params));
}

MagnetizationMoments coherent_moments(Spin s, double kappa) {
  const double sv = s.value();
  return {sv * std::cos(kappa), sv * sv * sq(std::cos(kappa)) + 0.5 * sv * sq(std::sin(kappa))};
}

MomentIdentity printed_moment_identity(int order, Spin s, double kappa) {
  if (order != 1 && order != 2) throw DomainError("moment order must be 1 or 2");
  const double sv = s.value(), t = std::tan(kappa / 2.0);
  const int two_s = s.twice();
  double lhs = 0.0;
  for (int j = 0; j <= two_s; ++j) {
    const double m = j - sv;
    lhs += std::pow(m, order) * std::pow(t, 2.0 * sv + m) * binomial(two_s, j);
  }
  const double norm = std::pow(1.0 + t * t, 2.0 * sv);
  const double rhs = order == 1 ? -sv * norm * std::cos(kappa)
                                : sv * sv - sv * sv * (2.0 * sv - 1.0) * sq(std::sin(kappa)) * norm;
  return {lhs, rhs};
}

}  // namespace spinfold
