#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinfold {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

constexpr std::size_t kMaxDimension = 4096;

// Half-integer spin stored as 2s.
class Spin {
 public:
  explicit Spin(int twice) ;
  static Spin from_value(double s);
  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  int local_dim() const { return twice_ + 1; }
  bool is_half_integer() const { return twice_ % 2 == 1; }
  bool operator==(const Spin&) const = default;

 private:
  int twice_;
};

struct BasisDescriptor {
  int n_sites = 1;
  Spin spin{1};

  BasisDescriptor(int n, Spin s);
  static BasisDescriptor qubits(int n) { return {n, Spin(1)}; }

  int local_dim() const { return spin.local_dim(); }
  std::size_t dimension() const;
  // Magnetic number of local digit k: m = s - k.
  double magnetization(int digit) const { return spin.value() - digit; }
  bool operator==(const BasisDescriptor&) const = default;
};

std::size_t flat_index(std::span<const double> ms, const BasisDescriptor& basis);
std::vector<double> site_magnetizations(std::size_t index, const BasisDescriptor& basis);
std::vector<int> site_digits(std::size_t index, const BasisDescriptor& basis);

class PureState {
 public:
  // Renormalizes silently when the norm deviates by less than 1e-8, throws otherwise.
  PureState(BasisDescriptor basis, StateVector amplitudes);
  // Normalizes any nonzero vector.
  static PureState normalized(BasisDescriptor basis, StateVector amplitudes);
  static PureState basis_state(BasisDescriptor basis, std::size_t index);

  const BasisDescriptor& basis() const { return basis_; }
  const StateVector& amplitudes() const { return amps_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

 private:
  BasisDescriptor basis_;
  StateVector amps_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);
  int dimension() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& entries() const { return rho_; }

 private:
  ComplexMatrix rho_;
};

Complex overlap(const PureState& a, const PureState& b);
PureState tensor_product(std::span<const StateVector> site_states, Spin spin);
DensityMatrix partial_trace(const PureState& psi, int keep_site);
double purity(const DensityMatrix& rho);

}  // namespace spinfold
