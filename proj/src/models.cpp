#include "spinfold/models.hpp"

#include <cmath>
#include <numbers>

#include "spinfold/errors.hpp"

namespace spinfold {

ModelSpec ModelSpec::xxz(double J, double nu, double b) {
  if (J == 0.0) throw DomainError("coupling J must be nonzero");
  return {ModelVariant::Xxz, J, nu, b, BasisDescriptor::qubits(2)};
}

ModelSpec ModelSpec::collective_ising(int n, double J) {
  if (J == 0.0) throw DomainError("coupling J must be nonzero");
  return {ModelVariant::CollectiveIsing, J, 0.0, 0.0, BasisDescriptor::qubits(n)};
}

ModelSpec ModelSpec::pairwise_ising(int n, Spin s, double J) {
  if (J == 0.0) throw DomainError("coupling J must be nonzero");
  if (n < 2) throw DomainError("pairwise Ising model needs at least two spins");
  return {ModelVariant::PairwiseIsingSpinS, J, 0.0, 0.0, BasisDescriptor(n, s)};
}

XxzSystem build_xxz(double J, double nu, double b) {
  ComplexMatrix H = ComplexMatrix::Zero(4, 4);
  H(0, 0) = nu * J + 2.0 * b;
  H(1, 1) = -nu * J;
  H(2, 2) = -nu * J;
  H(3, 3) = nu * J - 2.0 * b;
  H(1, 2) = 2.0 * J;
  H(2, 1) = 2.0 * J;

  const double r = 1.0 / std::numbers::sqrt2;
  ComplexMatrix V = ComplexMatrix::Zero(4, 4);
  V(0, 0) = 1.0;
  V(1, 1) = r;
  V(2, 1) = r;
  V(1, 2) = r;
  V(2, 2) = -r;
  V(3, 3) = 1.0;
  Eigen::VectorXd E(4);
  E << nu * J + 2.0 * b, 2.0 * J - nu * J, -2.0 * J - nu * J, nu * J - 2.0 * b;

  for (int k = 0; k < 4; ++k) {
    double residual = (H * V.col(k) - E(k) * V.col(k)).norm();
    if (residual > 1e-10) throw NumericalConsistencyError("XXZ eigenpair residual too large");
  }
  return {H, {E, V}};
}

double diagonal_energy(std::span<const double> ms, const ModelSpec& spec) {
  if (static_cast<int>(ms.size()) != spec.basis.n_sites) throw DomainError("magnetic-number list length differs from site count");
  double total = 0.0, squares = 0.0;
  for (double m : ms) {
    total += m;
    squares += m * m;
  }
  switch (spec.variant) {
    case ModelVariant::CollectiveIsing:
      return spec.J * total * total;
    case ModelVariant::PairwiseIsingSpinS:
      return spec.J * (total * total - squares);
    case ModelVariant::Xxz:
      break;
  }
  throw DomainError("XXZ Hamiltonian is not diagonal in the tensor basis");
}

Eigen::VectorXd diagonal_energies(const ModelSpec& spec) {
  if (!spec.is_diagonal()) throw DomainError("XXZ Hamiltonian is not diagonal in the tensor basis");
  const std::size_t D = spec.basis.dimension();
  Eigen::VectorXd E(static_cast<Eigen::Index>(D));
  for (std::size_t i = 0; i < D; ++i) {
    auto ms = site_magnetizations(i, spec.basis);
    E(static_cast<Eigen::Index>(i)) = diagonal_energy(ms, spec);
  }
  return E;
}

ComplexMatrix hamiltonian_matrix(const ModelSpec& spec) {
  if (spec.variant == ModelVariant::Xxz) return build_xxz(spec.J, spec.nu, spec.b).hamiltonian;
  return diagonal_energies(spec).cast<Complex>().asDiagonal();
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return std::round(c);
}

StateVector single_site_coherent(Spin s, double polar, double azimuthal) {
  const int n = s.twice();
  const double c = std::cos(0.5 * polar), sn = std::sin(0.5 * polar);
  StateVector amps(n + 1);
  for (int k = 0; k <= n; ++k) {
    double mag = std::sqrt(binomial(n, k)) * std::pow(c, n - k) * std::pow(sn, k);
    amps(k) = std::polar(mag, k * azimuthal);
  }
  return amps;
}

PureState coherent_state(const BasisDescriptor& basis, double polar, double azimuthal) {
  StateVector site = single_site_coherent(basis.spin, polar, azimuthal);
  std::vector<StateVector> sites(static_cast<std::size_t>(basis.n_sites), site);
  return tensor_product(sites, basis.spin);
}

double printed_xxz_energy(int level, double J, double nu, double b) {
  switch (level) {
    case 1: return 2.0 * J + 2.0 * b;
    case 2: return 2.0 * J - nu * J;
    case 3: return -2.0 * J - nu * J;
    case 4: return 2.0 * J - 2.0 * b;
    default: throw DomainError("XXZ level must be 1..4");
  }
}

StateVector printed_coherent_amplitudes(Spin s, double polar, double azimuthal) {
  const int n = s.twice();
  const Complex Z = std::tan(0.5 * polar) * std::exp(Complex(0.0, -azimuthal));
  const double pref = std::pow(1.0 + std::norm(Z), -0.5 * n);
  StateVector amps(n + 1);
  for (int k = 0; k <= n; ++k) {
    int s_plus_m = n - k;
    amps(k) = pref * std::pow(Z, s_plus_m) * binomial(n, s_plus_m);
  }
  return amps;
}

}  // namespace spinfold
