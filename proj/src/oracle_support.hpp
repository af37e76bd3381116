#pragma once

#include <memory>

#include "spinfold/evolution.hpp"
#include "spinfold/geometry.hpp"

namespace spinfold::oracle {

std::shared_ptr<EvolvedFamily> collective(int n, double J = 1.0);
std::shared_ptr<EvolvedFamily> pairwise(int n, double s, double J = 1.0);

// sin^2 eta = C / |sin kappa| on the two-qubit Ising family.
double eta_from_pair_concurrence(double C, double kappa);
// sin^2 kappa = x on the two-site spin-s family.
double kappa_from_fraction(double x);

MetricField numeric_field(std::shared_ptr<EvolvedFamily> family);
double numeric_curvature(std::shared_ptr<EvolvedFamily> family, ChartPoint x);

// Maximum canonical speed over the polar angle of the first chart coordinate, searched in sin^2.
double max_speed_sin2(const EvolvedFamily& family);

double weight_w(double nu, double chi);
// Two-spin |+-> evolution on the chart (C, -) with eta = C / w and kappa = k eta.
EvolvedFamily concurrence_line_family(double chi, double nu, double k);
double concurrence_line_speed(double chi, double nu, double k, double C);
// chi = pi/2, k = 1, anisotropy frozen at eta / 2 where C = eta (1 + eta / 2).
double sinusoidal_line_speed(double C);

}  // namespace spinfold::oracle
