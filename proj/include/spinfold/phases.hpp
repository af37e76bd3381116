#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spinfold/evolution.hpp"
#include "spinfold/params.hpp"

namespace spinfold {

// Straight chart path x(tau) = start + tau * velocity for tau in [0, duration].
struct ChartPath {
  ChartPoint start;
  ChartPoint velocity;
  double duration = 0.0;
  ChartPoint at(double tau) const { return start + tau * velocity; }
};

ChartPath time_path(const EvolvedFamily& family, ChartPoint start, double t);

struct PhaseDecomposition {
  double total = 0.0;            // principal value in (-pi, pi]
  double unwrapped_total = 0.0;  // continuous along the path
  double dynamic = 0.0;
  double geometric = 0.0;
  int branch_windings = 0;
};

struct CyclePhase {
  double aa_phase = 0.0;  // closure phase minus dynamic phase, not wrapped
  double aa_phase_wrapped = 0.0;
  double closure_phase = 0.0;
  double dynamic = 0.0;
  double topological_part = 0.0;  // aa_phase + dynamic, wrapped
  int winding = 0;                // (aa_phase - aa_phase_wrapped) / 2pi
  std::string cycle;
};

double total_phase(const PureState& initial, const PureState& evolved);

// -<H> t for the model carried by the family.
double dynamic_phase(const EvolvedFamily& family, ChartPoint start, double t);
// Im of the integral of <psi|d psi> along the path.
double dynamic_phase_numeric(const EvolvedFamily& family, const ChartPath& path, int samples = 512);

double unwrapped_total_phase(const EvolvedFamily& family, const ChartPath& path, int samples = 256);

PhaseDecomposition geometric_phase(const EvolvedFamily& family, ChartPoint start, double t, int samples = 256);
// Uses the exact dynamic phase when the path follows the physical evolution, the numeric one otherwise.
PhaseDecomposition geometric_phase(const EvolvedFamily& family, const ChartPath& path, int samples = 256);

CyclePhase aa_phase(const EvolvedFamily& family, ChartPoint start, double period);

// Integral of sqrt(dL^2 - dS^2); cycles use a linear section, open paths the Pancharatnam section.
double contracted_length_phase(const EvolvedFamily& family, const ChartPath& path, bool cyclic = false,
                               int samples = 512);

std::vector<std::string> phase_formula_ids();
double phase_closed(std::string_view formula_id, const Params& params);

std::vector<std::string> topological_formula_ids();
double topological_phase(std::string_view formula_id, const Params& params);

double phase_vs_entanglement(std::string_view formula_id, double C, const Params& params);

}  // namespace spinfold
