#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spinfold/params.hpp"
#include "spinfold/statespace.hpp"

namespace spinfold {

enum class ConcurrenceKind { WoottersQubit, IConcurrence };

struct ConcurrenceValue {
  double value = 0.0;
  ConcurrenceKind kind = ConcurrenceKind::WoottersQubit;
  int kept_site = 0;
};

// 2|c11 c00 - c10 c01| for a pure two-qubit state.
ConcurrenceValue concurrence_pure_2qubit(const PureState& psi);
// sqrt(2(1 - Tr rho_k^2)) for a two-site pure state; keep_site is 0-based.
ConcurrenceValue i_concurrence(const PureState& psi, int keep_site = 0);

double i_concurrence_short_time(double s, double eta, double kappa);

std::vector<std::string> concurrence_formula_ids();
double concurrence_closed(std::string_view formula_id, const Params& params);

// Magnetization moments of a single-site coherent state at polar angle kappa.
struct MagnetizationMoments {
  double mean = 0.0;
  double second = 0.0;
};
MagnetizationMoments coherent_moments(Spin s, double kappa);

// Left- and right-hand sides of the printed binomial-moment identities; order is 1 or 2.
struct MomentIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};
MomentIdentity printed_moment_identity(int order, Spin s, double kappa);

}  // namespace spinfold
