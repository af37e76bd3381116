#pragma once

#include <span>
#include <string>
#include <vector>

#include "spinfold/params.hpp"
#include "spinfold/statespace.hpp"

namespace spinfold {

enum class ModelVariant { Xxz, CollectiveIsing, PairwiseIsingSpinS };

struct ModelSpec {
  ModelVariant variant;
  double J;
  double nu;
  double b;
  BasisDescriptor basis;

  static ModelSpec xxz(double J, double nu, double b);
  static ModelSpec collective_ising(int n, double J);
  static ModelSpec pairwise_ising(int n, Spin s, double J);
  bool is_diagonal() const { return variant != ModelVariant::Xxz; }
};

struct SpectralData {
  Eigen::VectorXd energies;
  ComplexMatrix eigenvectors;
};

struct XxzSystem {
  ComplexMatrix hamiltonian;
  SpectralData spectrum;
};

// Eigenbasis is hard-coded (|11>, triplet, singlet, |00>) and residual-checked.
XxzSystem build_xxz(double J, double nu, double b);

double diagonal_energy(std::span<const double> ms, const ModelSpec& spec);
Eigen::VectorXd diagonal_energies(const ModelSpec& spec);
ComplexMatrix hamiltonian_matrix(const ModelSpec& spec);

// Highest-weight rotated SU(2) coherent state of one site.
StateVector single_site_coherent(Spin s, double polar, double azimuthal);
PureState coherent_state(const BasisDescriptor& basis, double polar, double azimuthal);

double binomial(int n, int k);

// Printed eigenvalue list of the two-spin XXZ model; level in {1,2,3,4}.
double printed_xxz_energy(int level, double J, double nu, double b);

// Single-site coherent amplitudes exactly as printed with a bare binomial weight,
// ordered by descending m, without normalization.
StateVector printed_coherent_amplitudes(Spin s, double polar, double azimuthal);

}  // namespace spinfold
