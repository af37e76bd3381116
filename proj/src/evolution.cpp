#include "spinfold/evolution.hpp"

#include <cmath>
#include <numbers>

#include "spinfold/errors.hpp"

namespace spinfold {

namespace {

const Complex I(0.0, 1.0);

StateVector apply_phases(const StateVector& amps, const Eigen::VectorXd& energies, double t) {
  StateVector out(amps.size());
  for (Eigen::Index k = 0; k < amps.size(); ++k) out(k) = amps(k) * std::exp(-I * (energies(k) * t));
  return out;
}

StateVector to_vector(const XxzCoefficients& c) {
  StateVector v(4);
  v << c[0], c[1], c[2], c[3];
  return v;
}

void require_normalized(const XxzCoefficients& c) {
  double n = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]) + std::norm(c[3]);
  if (std::abs(n - 1.0) > 1e-8) throw DomainError("XXZ initial coefficients are not normalized");
}

}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

PureState evolve_exact(const PureState& psi0, const ModelSpec& spec, double t) {
  if (!(psi0.basis() == spec.basis)) throw DomainError("initial state basis differs from model basis");
  if (spec.is_diagonal()) return PureState(spec.basis, apply_phases(psi0.amplitudes(), diagonal_energies(spec), t));
  auto sys = build_xxz(spec.J, spec.nu, spec.b);
  const auto& V = sys.spectrum.eigenvectors;
  StateVector in_eigen = V.adjoint() * psi0.amplitudes();
  return PureState(spec.basis, V * apply_phases(in_eigen, sys.spectrum.energies, t));
}

StateVector xxz_propagate(const XxzCoefficients& c, double eta, double kappa, double nu) {
  auto sys = build_xxz(0.5, nu, 0.0);
  const auto& V = sys.spectrum.eigenvectors;
  StateVector v = V * apply_phases(V.adjoint() * to_vector(c), sys.spectrum.energies, eta);
  Eigen::VectorXd field(4);
  field << 1.0, 0.0, 0.0, -1.0;
  return apply_phases(v, field, kappa);
}

double xxz_time_from_chart(const ModelSpec& spec, double eta, double kappa) {
  if (spec.variant != ModelVariant::Xxz) throw DomainError("chart time recovery applies to the XXZ model only");
  double t = eta / (2.0 * spec.J);
  if (spec.b != 0.0) {
    if (std::abs(kappa - 2.0 * spec.b * t) > 1e-12 * (1.0 + std::abs(kappa)))
      throw DomainError("chart point (eta, kappa) is not on the orbit of a single time with this field");
  } else if (kappa != 0.0) {
    throw DomainError("nonzero kappa requires a nonzero field term");
  }
  return t;
}

PureState xxz_closed(const XxzCoefficients& c, double eta, double kappa, double nu) {
  require_normalized(c);
  const Complex pre = std::exp(I * (0.5 * nu * eta));
  StateVector v(4);
  v(0) = c[0] * std::exp(-I * (kappa + nu * eta));
  v(1) = c[1] * std::cos(eta) - I * c[2] * std::sin(eta);
  v(2) = -I * c[1] * std::sin(eta) + c[2] * std::cos(eta);
  v(3) = c[3] * std::exp(I * (kappa - nu * eta));
  return PureState(BasisDescriptor::qubits(2), pre * v);
}

XxzCoefficients plus_minus_coefficients(double chi, double gamma) {
  const double ch = std::cos(0.5 * chi), sh = std::sin(0.5 * chi);
  const Complex eg = std::exp(I * gamma);
  return {Complex(-0.5 * std::sin(chi)), ch * ch * eg, -sh * sh * eg, 0.5 * std::sin(chi) * eg * eg};
}

PureState xxz_plus_minus_closed(double chi, double gamma, double eta, double kappa, double nu) {
  const double c2 = std::pow(std::cos(0.5 * chi), 2), s2 = std::pow(std::sin(0.5 * chi), 2);
  const Complex eg = std::exp(I * gamma);
  StateVector v(4);
  v(0) = -0.5 * std::sin(chi) * std::exp(-I * (kappa + nu * eta));
  v(1) = eg * (c2 * std::cos(eta) + I * s2 * std::sin(eta));
  v(2) = eg * (-s2 * std::cos(eta) - I * c2 * std::sin(eta));
  v(3) = 0.5 * std::sin(chi) * std::exp(I * (kappa - nu * eta + 2.0 * gamma));
  return PureState(BasisDescriptor::qubits(2), std::exp(I * (0.5 * nu * eta)) * v);
}

PureState ising_qubit_closed(int n, double eta, double phi, double kappa) {
  BasisDescriptor basis = BasisDescriptor::qubits(n);
  StateVector v = coherent_state(basis, eta, phi).amplitudes();
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    auto digits = site_digits(i, basis);
    int p = 0;
    for (int d : digits) p += d;
    double q = n - 2.0 * p;
    v(static_cast<Eigen::Index>(i)) *= std::exp(-I * (kappa * q * q / 4.0));
  }
  return PureState(basis, std::move(v));
}

PureState ising_pair_closed(double eta, double phi, double kappa) {
  StateVector v(4);
  v(0) = std::exp(-I * kappa) * std::pow(std::cos(0.5 * eta), 2);
  v(1) = 0.5 * std::exp(I * phi) * std::sin(eta);
  v(2) = v(1);
  v(3) = std::exp(I * (2.0 * phi - kappa)) * std::pow(std::sin(0.5 * eta), 2);
  return PureState(BasisDescriptor::qubits(2), std::move(v));
}

namespace {

StateVector spin_s_amplitudes(int n, Spin s, double eta, const StateVector& site) {
  BasisDescriptor basis(n, s);
  const std::size_t D = basis.dimension();
  StateVector v(static_cast<Eigen::Index>(D));
  for (std::size_t i = 0; i < D; ++i) {
    auto digits = site_digits(i, basis);
    Complex amp = 1.0;
    double total = 0.0, squares = 0.0;
    for (int d : digits) {
      amp *= site(d);
      double m = basis.magnetization(d);
      total += m;
      squares += m * m;
    }
    double pair_sum = 0.5 * (total * total - squares);
    v(static_cast<Eigen::Index>(i)) = amp * std::exp(-I * (2.0 * eta * pair_sum));
  }
  return v;
}

}  // namespace

PureState ising_spin_s_closed(int n, Spin s, double kappa, double phi, double eta) {
  return PureState(BasisDescriptor(n, s), spin_s_amplitudes(n, s, eta, single_site_coherent(s, kappa, phi)));
}

StateVector ising_spin_s_printed(int n, Spin s, double kappa, double phi, double eta) {
  return spin_s_amplitudes(n, s, eta, printed_coherent_amplitudes(s, kappa, phi));
}

PhaseAlignment align_global_phase(const StateVector& reference, const StateVector& target) {
  Complex ov = reference.dot(target);
  if (std::abs(ov) < 1e-6) throw UndefinedPhaseError("global phase alignment undefined for near-orthogonal states");
  double alpha = std::arg(ov);
  double residual = (target - std::exp(I * alpha) * reference).norm();
  return {alpha, residual};
}

EvolvedFamily::EvolvedFamily(std::string name, Chart chart, BasisDescriptor basis, StateMap map, ChartPoint time_velocity,
                             std::optional<ModelSpec> spec)
    : name_(std::move(name)), chart_(std::move(chart)), basis_(basis), map_(std::move(map)), velocity_(time_velocity),
      spec_(std::move(spec)) {}

StateVector EvolvedFamily::amplitudes(ChartPoint x) const {
  StateVector v = map_(x);
  if (static_cast<std::size_t>(v.size()) != basis_.dimension()) throw DomainError("family produced a vector of wrong size");
  if (!v.allFinite()) throw DomainError("family undefined at requested chart point");
  return v;
}

EvolvedFamily xxz_family(const ModelSpec& spec, const XxzCoefficients& c) {
  if (spec.variant != ModelVariant::Xxz) throw DomainError("xxz_family needs an XXZ model");
  require_normalized(c);
  const double nu = spec.nu;
  return EvolvedFamily("xxz", {"eta", "kappa"}, spec.basis,
                       [c, nu](ChartPoint x) { return xxz_propagate(c, x.u, x.v, nu); },
                       {2.0 * spec.J, 2.0 * spec.b}, spec);
}

EvolvedFamily collective_ising_family(int n, double J, double phi) {
  ModelSpec spec = ModelSpec::collective_ising(n, J);
  Eigen::VectorXd energies = diagonal_energies(spec) / J;
  BasisDescriptor basis = spec.basis;
  return EvolvedFamily("ising-qubit", {"eta", "kappa"}, basis,
                       [basis, energies, phi](ChartPoint x) {
                         return apply_phases(coherent_state(basis, x.u, phi).amplitudes(), energies, x.v);
                       },
                       {0.0, J}, spec);
}

EvolvedFamily pairwise_ising_family(int n, Spin s, double J, double phi) {
  ModelSpec spec = ModelSpec::pairwise_ising(n, s, J);
  Eigen::VectorXd energies = diagonal_energies(spec) / J;
  BasisDescriptor basis = spec.basis;
  return EvolvedFamily("ising-spin-s", {"kappa", "eta"}, basis,
                       [basis, energies, phi](ChartPoint x) {
                         return apply_phases(coherent_state(basis, x.u, phi).amplitudes(), energies, x.v);
                       },
                       {0.0, J}, spec);
}

EvolvedFamily bloch_family(Spin s) {
  BasisDescriptor basis(1, s);
  return EvolvedFamily("bloch", {"theta", "phi"}, basis,
                       [s](ChartPoint x) { return single_site_coherent(s, x.u, x.v); }, {0.0, 0.0});
}

PeriodicityResult check_periodicity(const EvolvedFamily& family, ChartPoint x, ChartPoint shift,
                                    std::optional<double> claimed_phase) {
  StateVector a = family.amplitudes(x);
  StateVector b = family.amplitudes(x + shift);
  PeriodicityResult r;
  Complex ov = a.dot(b);
  if (std::abs(ov) < 1e-6) {
    r.periodic = false;
    r.residual = (b - a).norm();
    r.phase_matches = false;
    return r;
  }
  r.phase = std::arg(ov);
  r.residual = (b - std::exp(I * r.phase) * a).norm();
  r.periodic = r.residual < 1e-9;
  if (claimed_phase) {
    r.phase_matches = std::abs(wrap_angle(r.phase - *claimed_phase)) < 1e-9;
    r.periodic = r.periodic && r.phase_matches;
  }
  return r;
}

}  // namespace spinfold
