#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "spinfold/evolution.hpp"
#include "spinfold/models.hpp"
#include "spinfold/params.hpp"

namespace spinfold {

double energy_expectation(const PureState& psi, const ModelSpec& spec);
double energy_uncertainty(const PureState& psi, const ModelSpec& spec);

enum class SpeedConvention { Canonical, Printed };

struct SpeedSample {
  ChartPoint point;
  double v = 0.0;
  SpeedConvention convention = SpeedConvention::Canonical;
};

// Speed along the physical time direction of the family, from the numeric metric.
// Cross-checked against the energy uncertainty when the family carries a model.
SpeedSample speed(const EvolvedFamily& family, ChartPoint x, SpeedConvention convention = SpeedConvention::Canonical,
                  double h = 1e-4);

std::vector<std::string> speed_formula_ids();
double speed_closed(std::string_view formula_id, const Params& params);

// Time quadrature of the canonical speed along the physical evolution from `start`.
double geodesic_distance(const EvolvedFamily& family, ChartPoint start, double t0, double t1, int samples = 64);
std::vector<std::string> distance_formula_ids();
double distance_closed(std::string_view formula_id, const Params& params);

std::vector<std::string> optimal_time_formula_ids();
double optimal_time_closed(std::string_view formula_id, const Params& params);
double optimal_time_vs_entanglement(std::string_view formula_id, const Params& params, double C);

// Printed locations of speed maxima, returned as sin^2 of the optimal angle.
std::vector<std::string> argmax_formula_ids();
double argmax_closed(std::string_view formula_id, const Params& params);

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-10);

struct BrachistochroneReport {
  ChartPoint argmax_point;
  double v_max = 0.0;
  double s_min = 0.0;
  double T_opt = 0.0;
  std::string formula_id;
  double printed_T = 0.0;
  double printed_argmax_sin2 = 0.0;
  double argmax_sin2 = 0.0;
  bool printed_agrees = false;
  // min over chart points of s(point)/v(point) for the same elapsed time.
  double single_point_T = 0.0;
};

// family_id in {"xxz-sinusoidal", "ising-qubit", "ising-spin-s"}.
BrachistochroneReport brachistochrone(std::string_view family_id, const Params& params);

}  // namespace spinfold
