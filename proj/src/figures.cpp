#include "spinfold/figures.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "oracle_support.hpp"
#include "spinfold/dynamics.hpp"
#include "spinfold/errors.hpp"
#include "spinfold/geometry.hpp"
#include "spinfold/phases.hpp"

namespace spinfold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEtaMax = 1e-3;
constexpr double kEtaTilde = 1.0;

using Curve = std::function<double(double)>;

struct Series {
  std::string label;
  double lo = 0.0;
  double hi = 1.0;
  Curve closed;
  Curve oracle;
};

struct Figure {
  FigureInfo info;
  std::function<std::vector<Series>()> series;
};

struct Labeled {
  std::string label;
  double value;
};

const std::vector<Labeled> kKappas = {{"kappa=pi/6", kPi / 6}, {"kappa=pi/4", kPi / 4}, {"kappa=pi/2", kPi / 2}};
const std::vector<Labeled> kSpins = {{"s=1/2", 0.5}, {"s=1", 1.0}, {"s=3/2", 1.5}, {"s=2", 2.0}};
const std::vector<Labeled> kQubitCounts = {{"N=2", 2}, {"N=3", 3}, {"N=4", 4}, {"N=5", 5}};
const std::vector<Labeled> kAnisotropies = {
    {"nu=-5", -5.0}, {"nu=-3", -3.0}, {"nu=-2/3", -2.0 / 3.0}, {"nu=0.5", 0.5}, {"nu=1.5", 1.5}};

double guarded(const std::function<double()>& f) {
  try {
    return f();
  } catch (const std::exception&) {
    return std::nan("");
  }
}

std::vector<std::string> labels(const std::vector<Labeled>& list) {
  std::vector<std::string> out;
  for (const auto& l : list) out.push_back(l.label);
  return out;
}

// Two-qubit Ising family against concurrence C in [0, |sin kappa|].
std::vector<Series> pair_concurrence_series(const std::function<double(double C, double kappa)>& closed,
                                            const std::function<double(double C, double kappa)>& oracle) {
  std::vector<Series> out;
  for (const auto& k : kKappas)
    out.push_back({k.label, 0.0, std::abs(std::sin(k.value)), [=](double C) { return closed(C, k.value); },
                   [=](double C) { return guarded([&] { return oracle(C, k.value); }); }});
  return out;
}

// Two-site spin-s family against I-concurrence C in [0, C_max] with C_max = 2 s eta_max.
std::vector<Series> spin_concurrence_series(const std::function<double(double C, double s)>& closed,
                                            const std::function<double(double C, double s)>& oracle) {
  std::vector<Series> out;
  for (const auto& sp : kSpins)
    out.push_back({sp.label, 0.0, 2.0 * sp.value * kEtaMax, [=](double C) { return closed(C, sp.value); },
                   [=](double C) { return guarded([&] { return oracle(C, sp.value); }); }});
  return out;
}

Params spin_params(double s, double C) {
  return {{"s", s}, {"J", 1.0}, {"C", C}, {"C_max", 2.0 * s * kEtaMax}, {"eta_tilde", kEtaTilde}};
}

double spin_kappa(double s, double C) { return oracle::kappa_from_fraction(kEtaTilde * C / (2.0 * s * kEtaMax)); }

const std::vector<Figure>& registry() {
  static const std::vector<Figure> figures = [] {
    std::vector<Figure> f;
    f.push_back({{"3.1a", "3.52", "concurrence C", "evolution speed", {"chi=pi/2,k=1"}}, [] {
                   return std::vector<Series>{{"chi=pi/2,k=1", 0.0, 1.0,
                                               [](double C) { return speed_closed("3.52", {{"C", C}}); },
                                               [](double C) { return oracle::sinusoidal_line_speed(C); }}};
                 }});
    f.push_back({{"3.1b", "3.53", "concurrence C", "geodesic distance", {"chi=pi/2,k=1"}}, [] {
                   auto oracle = [](double C) {
                     const int n = 64;
                     double total = oracle::sinusoidal_line_speed(0.0) + oracle::sinusoidal_line_speed(C);
                     for (int j = 1; j < n; ++j) total += (j % 2 ? 4.0 : 2.0) * oracle::sinusoidal_line_speed(C * j / n);
                     return distance_closed("3.53", {{"C", 0.0}}) + total * C / (3.0 * n);
                   };
                   return std::vector<Series>{{"chi=pi/2,k=1", 0.0, 1.0,
                                               [](double C) { return distance_closed("3.53", {{"C", C}}); }, oracle}};
                 }});
    f.push_back({{"3.2", "3.72-derived", "concurrence C", "evolution speed", labels(kKappas)}, [] {
                   return pair_concurrence_series(
                       [](double C, double k) { return speed_closed("3.72-derived", {{"J", 1.0}, {"kappa", k}, {"C", C}}); },
                       [](double C, double k) {
                         return speed(*oracle::collective(2), {oracle::eta_from_pair_concurrence(C, k), k}).v;
                       });
                 }});
    f.push_back({{"3.3", "3.73", "concurrence C", "Fubini-Study distance", labels(kKappas)}, [] {
                   return pair_concurrence_series(
                       [](double C, double k) { return distance_closed("3.73", {{"kappa", k}, {"C", C}}); },
                       [](double C, double k) {
                         return geodesic_distance(*oracle::collective(2), {oracle::eta_from_pair_concurrence(C, k), 0.0},
                                                  0.0, k, 32);
                       });
                 }});
    f.push_back({{"3.4", "3.74", "concurrence C", "optimal time", labels(kKappas)}, [] {
                   return pair_concurrence_series(
                       [](double C, double k) { return optimal_time_closed("3.74", {{"J", 1.0}, {"kappa", k}, {"C", C}}); },
                       [](double C, double k) {
                         auto fam = oracle::collective(2);
                         const double s =
                             geodesic_distance(*fam, {oracle::eta_from_pair_concurrence(C, k), 0.0}, 0.0, k, 32);
                         return s / oracle::max_speed_sin2(*fam);
                       });
                 }});
    f.push_back({{"3.5", "3.105", "I-concurrence C", "evolution speed", labels(kSpins)}, [] {
                   return spin_concurrence_series(
                       [](double C, double s) { return speed_closed("3.105", spin_params(s, C)); },
                       [](double C, double s) { return speed(*oracle::pairwise(2, s), {spin_kappa(s, C), 0.0}).v; });
                 }});
    f.push_back({{"3.6", "3.106", "I-concurrence C", "geodesic distance", labels(kSpins)}, [] {
                   return spin_concurrence_series(
                       [](double C, double s) {
                         return distance_closed("3.106", spin_params(s, C).with("eta_prime_max", kEtaMax));
                       },
                       [](double C, double s) {
                         return geodesic_distance(*oracle::pairwise(2, s), {spin_kappa(s, C), 0.0}, 0.0,
                                                  std::sqrt(kEtaMax), 32);
                       });
                 }});
    f.push_back({{"3.7", "3.107", "I-concurrence C", "optimal time", labels(kSpins)}, [] {
                   return spin_concurrence_series(
                       [](double C, double s) {
                         return optimal_time_closed("3.107", spin_params(s, C).with("eta_prime_max", kEtaMax));
                       },
                       [](double C, double s) {
                         auto fam = oracle::pairwise(2, s);
                         const double d = geodesic_distance(*fam, {spin_kappa(s, C), 0.0}, 0.0, std::sqrt(kEtaMax), 32);
                         return d / oracle::max_speed_sin2(*fam);
                       });
                 }});
    f.push_back({{"4.1", "4.24", "concurrence C", "geometric phase", labels(kAnisotropies)}, [] {
                   std::vector<Series> out;
                   for (const auto& nu : kAnisotropies)
                     out.push_back(
                         {nu.label, 0.0, 1.0,
                          [nu](double C) {
                            return phase_closed("4.24", {{"C", C}, {"nu", nu.value}, {"kappa", 0.0}, {"chi", kPi / 2}});
                          },
                          [nu](double C) {
                            return guarded([&] {
                              const double eta = C / oracle::weight_w(nu.value, kPi / 2);
                              const EvolvedFamily fam("xxz-plus-minus", {"eta", "kappa"}, BasisDescriptor::qubits(2),
                                                      [nu](ChartPoint x) {
                                                        return xxz_closed(plus_minus_coefficients(kPi / 2, 0.0), x.u,
                                                                          x.v, nu.value)
                                                            .amplitudes();
                                                      },
                                                      {2.0, 0.0}, ModelSpec::xxz(1.0, nu.value, 0.0));
                              return geometric_phase(fam, {0.0, 0.0}, eta / 2.0).geometric;
                            });
                          }});
                   return out;
                 }});
    f.push_back({{"4.2", "4.30", "initial polar angle eta", "Gaussian curvature", labels(kQubitCounts)}, [] {
                   std::vector<Series> out;
                   for (const auto& n : kQubitCounts)
                     out.push_back({n.label, 0.0, kPi,
                                    [n](double eta) {
                                      return curvature_closed("4.30", {{"N", n.value}, {"allow_singular", 1.0}}, {eta, 0.0}).K;
                                    },
                                    [n](double eta) {
                                      return guarded([&] {
                                        return oracle::numeric_curvature(oracle::collective(static_cast<int>(n.value)),
                                                                         {eta, 0.7});
                                      });
                                    }});
                   return out;
                 }});
    f.push_back({{"4.3", "4.46-printed", "initial polar angle eta", "AA geometric phase", labels(kQubitCounts)}, [] {
                   std::vector<Series> out;
                   for (const auto& n : kQubitCounts)
                     out.push_back({n.label, 0.0, kPi,
                                    [n](double eta) {
                                      const double K =
                                          curvature_closed("4.30", {{"N", n.value}, {"allow_singular", 1.0}}, {eta, 0.0}).K;
                                      return phase_closed("4.46-printed", {{"N", n.value}, {"K", K}});
                                    },
                                    [n](double eta) {
                                      return guarded([&] {
                                        return aa_phase(*oracle::collective(static_cast<int>(n.value)), {eta, 0.0},
                                                        2.0 * kPi)
                                            .aa_phase;
                                      });
                                    }});
                   return out;
                 }});
    f.push_back({{"4.4", "4.54", "concurrence C", "Gaussian curvature", labels(kKappas)}, [] {
                   return pair_concurrence_series(
                       [](double C, double k) { return curvature_closed("4.54", {}, {C, k}).K; },
                       [](double C, double k) {
                         return oracle::numeric_curvature(oracle::collective(2), {oracle::eta_from_pair_concurrence(C, k), k});
                       });
                 }});
    f.push_back({{"4.5", "4.57", "concurrence C", "geometric phase", labels(kKappas)}, [] {
                   return pair_concurrence_series(
                       [](double C, double k) { return phase_closed("4.57", {{"C", C}, {"kappa", k}}); },
                       [](double C, double k) {
                         return geometric_phase(*oracle::collective(2), {oracle::eta_from_pair_concurrence(C, k), 0.0}, k)
                             .geometric;
                       });
                 }});
    f.push_back({{"4.6", "4.58", "concurrence C", "AA geometric phase", labels(kKappas)}, [] {
                   return pair_concurrence_series(
                       [](double C, double k) { return phase_closed("4.58", {{"C", C}, {"kappa", k}}); },
                       [](double C, double k) {
                         return aa_phase(*oracle::collective(2), {oracle::eta_from_pair_concurrence(C, k), 0.0}, 2.0 * kPi)
                             .aa_phase;
                       });
                 }});
    f.push_back({{"4.7", "4.82", "I-concurrence C", "Gaussian curvature", labels(kSpins)}, [] {
                   return spin_concurrence_series(
                       [](double C, double s) { return curvature_closed("4.82", spin_params(s, C), {}).K; },
                       [](double C, double s) {
                         return oracle::numeric_curvature(oracle::pairwise(2, s), {spin_kappa(s, C), 0.5});
                       });
                 }});
    f.push_back({{"4.8", "4.85", "I-concurrence C", "geometric phase", labels(kSpins)}, [] {
                   return spin_concurrence_series(
                       [](double C, double s) {
                         Params p = spin_params(s, C);
                         p.set("eta", kEtaMax).set("eta_bar", kEtaTilde);
                         return phase_closed("4.85", p);
                       },
                       [](double C, double s) {
                         return geometric_phase(*oracle::pairwise(2, s), {spin_kappa(s, C), 0.0}, kEtaMax).geometric;
                       });
                 }});
    return f;
  }();
  return figures;
}

const Figure& find(std::string_view id) {
  for (const auto& f : registry())
    if (f.info.id == id) return f;
  throw UsageError("unknown figure '" + std::string(id) + "'");
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

}  // namespace

std::vector<std::string> figure_ids() {
  std::vector<std::string> out;
  for (const auto& f : registry()) out.push_back(f.info.id);
  return out;
}

FigureInfo figure_info(std::string_view figure_id) { return find(figure_id).info; }

std::string run_figure(std::string_view figure_id, const FigureOptions& options) {
  const Figure& figure = find(figure_id);
  if (options.grid < 1) throw UsageError("grid must contain at least one point");
  std::ostringstream os;
  os << (options.oracle ? "series,x,y,oracle\n" : "series,x,y\n");
  for (const Series& s : figure.series()) {
    for (int i = 0; i < options.grid; ++i) {
      const double x = options.grid == 1 ? s.lo : s.lo + (s.hi - s.lo) * i / (options.grid - 1);
      os << s.label << ',' << csv_number(x) << ',' << csv_number(guarded([&] { return s.closed(x); }));
      if (options.oracle) os << ',' << csv_number(s.oracle(x));
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace spinfold
