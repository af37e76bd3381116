#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace spinfold {

// Named real parameters for closed-form evaluators and model builders.
class Params {
 public:
  Params() = default;
  Params(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

  double get(std::string_view name) const;
  double get_or(std::string_view name, double fallback) const;
  bool has(std::string_view name) const;
  Params& set(const std::string& name, double value);
  Params with(const std::string& name, double value) const;

  const std::map<std::string, double, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, double, std::less<>> values_;
};

// Parses "k=v,k2=v2" into a Params object.
Params parse_point(std::string_view text);

// Two real coordinates on a named chart.
struct ChartPoint {
  double u = 0.0;
  double v = 0.0;
};

struct Chart {
  std::string u;
  std::string v;
};

// Process-wide multiplicative perturbations of closed-form outputs, keyed by formula id.
void set_formula_perturbation(const std::string& formula_id, double factor);
void clear_formula_perturbations();
double perturbed(std::string_view formula_id, double value);

inline ChartPoint operator+(ChartPoint a, ChartPoint b) { return {a.u + b.u, a.v + b.v}; }
inline ChartPoint operator*(double s, ChartPoint a) { return {s * a.u, s * a.v}; }

}  // namespace spinfold
