#include "spinfold/statespace.hpp"

#include <cmath>
#include <string>

#include "spinfold/errors.hpp"

namespace spinfold {

Spin::Spin(int twice) : twice_(twice) {
  if (twice < 1) throw DomainError("spin must be a positive half-integer");
}

Spin Spin::from_value(double s) {
  double t = 2.0 * s;
  long r = std::lround(t);
  if (std::abs(t - r) > 1e-12 || r < 1) throw DomainError("spin must be a positive half-integer, got " + std::to_string(s));
  return Spin(static_cast<int>(r));
}

BasisDescriptor::BasisDescriptor(int n, Spin s) : n_sites(n), spin(s) {
  if (n < 1) throw DomainError("basis needs at least one site");
  double log_dim = n * std::log(static_cast<double>(s.local_dim()));
  if (log_dim > std::log(static_cast<double>(kMaxDimension)) + 1e-9)
    throw ResourceError("Hilbert-space dimension exceeds the cap of 4096");
}

std::size_t BasisDescriptor::dimension() const {
  std::size_t d = 1;
  for (int k = 0; k < n_sites; ++k) d *= static_cast<std::size_t>(local_dim());
  return d;
}

std::size_t flat_index(std::span<const double> ms, const BasisDescriptor& basis) {
  if (static_cast<int>(ms.size()) != basis.n_sites) throw DomainError("magnetic-number list length differs from site count");
  std::size_t index = 0;
  const double s = basis.spin.value();
  for (double m : ms) {
    double digit = s - m;
    long k = std::lround(digit);
    if (std::abs(digit - k) > 1e-12 || k < 0 || k >= basis.local_dim())
      throw DomainError("magnetic number out of range: " + std::to_string(m));
    index = index * static_cast<std::size_t>(basis.local_dim()) + static_cast<std::size_t>(k);
  }
  return index;
}

std::vector<int> site_digits(std::size_t index, const BasisDescriptor& basis) {
  if (index >= basis.dimension()) throw DomainError("basis index out of range");
  std::vector<int> digits(static_cast<std::size_t>(basis.n_sites));
  const auto d = static_cast<std::size_t>(basis.local_dim());
  for (int k = basis.n_sites - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(index % d);
    index /= d;
  }
  return digits;
}

std::vector<double> site_magnetizations(std::size_t index, const BasisDescriptor& basis) {
  auto digits = site_digits(index, basis);
  std::vector<double> ms(digits.size());
  for (std::size_t k = 0; k < digits.size(); ++k) ms[k] = basis.magnetization(digits[k]);
  return ms;
}

PureState::PureState(BasisDescriptor basis, StateVector amplitudes) : basis_(basis), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != basis_.dimension()) throw DomainError("amplitude vector length differs from basis dimension");
  double norm = amps_.norm();
  double dev = std::abs(norm * norm - 1.0);
  if (dev > 1e-8) throw DomainError("state is not normalized (|norm^2 - 1| = " + std::to_string(dev) + ")");
  if (dev > 1e-15) amps_ /= norm;
}

PureState PureState::normalized(BasisDescriptor basis, StateVector amplitudes) {
  double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalize a null or non-finite vector");
  amplitudes /= norm;
  return PureState(basis, std::move(amplitudes));
}

PureState PureState::basis_state(BasisDescriptor basis, std::size_t index) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(basis.dimension()));
  if (index >= basis.dimension()) throw DomainError("basis index out of range");
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(basis, std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : rho_(std::move(entries)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw DomainError("density matrix must be square and non-empty");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > 1e-12) throw DomainError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw DomainError("density matrix has a negative eigenvalue");
}

Complex overlap(const PureState& a, const PureState& b) {
  if (!(a.basis() == b.basis())) throw DomainError("overlap of states on different bases");
  return a.amplitudes().dot(b.amplitudes());
}

PureState tensor_product(std::span<const StateVector> site_states, Spin spin) {
  BasisDescriptor basis(static_cast<int>(site_states.size()), spin);
  StateVector out = StateVector::Ones(1);
  for (const auto& site : site_states) {
    if (site.size() != spin.local_dim()) throw DomainError("site state dimension differs from 2s+1");
    StateVector next(out.size() * site.size());
    for (Eigen::Index i = 0; i < out.size(); ++i)
      next.segment(i * site.size(), site.size()) = out(i) * site;
    out = std::move(next);
  }
  return PureState(basis, std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, int keep_site) {
  const auto& basis = psi.basis();
  if (basis.n_sites < 2) throw DomainError("partial trace needs at least two sites");
  if (keep_site < 0 || keep_site >= basis.n_sites) throw DomainError("kept site index out of range");
  const Eigen::Index d = basis.local_dim();
  Eigen::Index inner = 1;
  for (int k = keep_site + 1; k < basis.n_sites; ++k) inner *= d;
  const Eigen::Index outer = static_cast<Eigen::Index>(basis.dimension()) / (inner * d);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  const auto& a = psi.amplitudes();
  for (Eigen::Index o = 0; o < outer; ++o)
    for (Eigen::Index i = 0; i < inner; ++i)
      for (Eigen::Index x = 0; x < d; ++x) {
        Complex ax = a((o * d + x) * inner + i);
        for (Eigen::Index y = 0; y < d; ++y) rho(x, y) += ax * std::conj(a((o * d + y) * inner + i));
      }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

double purity(const DensityMatrix& rho) { return (rho.entries() * rho.entries()).trace().real(); }

}  // namespace spinfold
