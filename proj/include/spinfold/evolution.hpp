#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "spinfold/models.hpp"
#include "spinfold/params.hpp"
#include "spinfold/statespace.hpp"

namespace spinfold {

using XxzCoefficients = std::array<Complex, 4>;  // c11, c10, c01, c00

PureState evolve_exact(const PureState& psi0, const ModelSpec& spec, double t);

// Chart-level spectral propagator exp(-i(eta G + kappa D)) of the two-spin model.
StateVector xxz_propagate(const XxzCoefficients& c, double eta, double kappa, double nu);
double xxz_time_from_chart(const ModelSpec& spec, double eta, double kappa);

PureState xxz_closed(const XxzCoefficients& c, double eta, double kappa, double nu);
XxzCoefficients plus_minus_coefficients(double chi, double gamma);
PureState xxz_plus_minus_closed(double chi, double gamma, double eta, double kappa, double nu);

PureState ising_qubit_closed(int n, double eta, double phi, double kappa);
PureState ising_pair_closed(double eta, double phi, double kappa);
PureState ising_spin_s_closed(int n, Spin s, double kappa, double phi, double eta);
// Amplitudes with the bare binomial weight as printed, unnormalized.
StateVector ising_spin_s_printed(int n, Spin s, double kappa, double phi, double eta);

struct PhaseAlignment {
  double phase;     // target ~ exp(i phase) * reference
  double residual;  // || target - exp(i phase) reference ||
};
PhaseAlignment align_global_phase(const StateVector& reference, const StateVector& target);

class EvolvedFamily {
 public:
  using StateMap = std::function<StateVector(ChartPoint)>;

  EvolvedFamily(std::string name, Chart chart, BasisDescriptor basis, StateMap map, ChartPoint time_velocity,
                std::optional<ModelSpec> spec = std::nullopt);

  const std::string& name() const { return name_; }
  const Chart& chart() const { return chart_; }
  const BasisDescriptor& basis() const { return basis_; }
  const std::optional<ModelSpec>& spec() const { return spec_; }
  // Chart displacement per unit time along the physical evolution.
  ChartPoint time_velocity() const { return velocity_; }
  ChartPoint advance(ChartPoint start, double t) const { return start + t * velocity_; }

  StateVector amplitudes(ChartPoint x) const;
  PureState at(ChartPoint x) const { return PureState(basis_, amplitudes(x)); }

 private:
  std::string name_;
  Chart chart_;
  BasisDescriptor basis_;
  StateMap map_;
  ChartPoint velocity_;
  std::optional<ModelSpec> spec_;
};

// Chart (eta, kappa); time advances eta by 2J and kappa by 2b.
EvolvedFamily xxz_family(const ModelSpec& spec, const XxzCoefficients& c);
// Chart (eta, kappa) with kappa = J t; eta is the initial polar angle.
EvolvedFamily collective_ising_family(int n, double J, double phi);
// Chart (kappa, eta) with eta = J t; kappa is the initial polar angle.
EvolvedFamily pairwise_ising_family(int n, Spin s, double J, double phi);
// Chart (polar, azimuth) of single-site coherent states, no dynamics.
EvolvedFamily bloch_family(Spin s);

struct PeriodicityResult {
  bool periodic = false;
  double phase = 0.0;
  double residual = 0.0;
  bool phase_matches = true;
};

// claimed_phase empty means "any".
PeriodicityResult check_periodicity(const EvolvedFamily& family, ChartPoint x, ChartPoint shift,
                                    std::optional<double> claimed_phase = std::nullopt);

double wrap_angle(double a);  // into (-pi, pi]

}  // namespace spinfold
