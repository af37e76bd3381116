#include "spinfold/params.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

#include "spinfold/errors.hpp"

namespace spinfold {

double Params::get(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw DomainError("missing parameter '" + std::string(name) + "'");
  return it->second;
}

double Params::get_or(std::string_view name, double fallback) const {
  auto it = values_.find(name);
  return it == values_.end() ? fallback : it->second;
}

bool Params::has(std::string_view name) const { return values_.find(name) != values_.end(); }

Params& Params::set(const std::string& name, double value) {
  values_[name] = value;
  return *this;
}

Params Params::with(const std::string& name, double value) const {
  Params copy = *this;
  copy.set(name, value);
  return copy;
}

namespace {

std::mutex perturbation_mutex;

std::map<std::string, double, std::less<>>& perturbation_table() {
  static std::map<std::string, double, std::less<>> table;
  return table;
}

}  // namespace

void set_formula_perturbation(const std::string& formula_id, double factor) {
  std::lock_guard lock(perturbation_mutex);
  perturbation_table()[formula_id] = factor;
}

void clear_formula_perturbations() {
  std::lock_guard lock(perturbation_mutex);
  perturbation_table().clear();
}

double perturbed(std::string_view formula_id, double value) {
  std::lock_guard lock(perturbation_mutex);
  const auto& table = perturbation_table();
  auto it = table.find(formula_id);
  return it == table.end() ? value : value * it->second;
}

Params parse_point(std::string_view text) {
  Params out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw UsageError("malformed point entry '" + std::string(item) + "', expected key=value");
    std::string value(item.substr(eq + 1));
    char* end = nullptr;
    double x = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
      throw UsageError("non-numeric value in point entry '" + std::string(item) + "'");
    out.set(std::string(item.substr(0, eq)), x);
  }
  return out;
}

}  // namespace spinfold
