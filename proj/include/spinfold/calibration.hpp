#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace spinfold {

enum class Verdict { Consistent, ScaleFactor, Inconsistent };

struct DeviationEntry {
  std::string formula_id;
  std::string oracle;
  double max_deviation = 0.0;
  Verdict verdict = Verdict::Consistent;
  double scale = 1.0;  // fitted constant when verdict is ScaleFactor
  int samples = 0;
  int nonfinite = 0;
  std::string note;

  std::string verdict_label() const;
};

struct CalibrationOptions {
  // formula id -> multiplicative factor applied to the closed form before comparison
  std::map<std::string, double> perturb;
};

// Every formula id that carries a closed form or a printed claim, sorted.
std::vector<std::string> registered_formula_ids();

std::vector<DeviationEntry> run_calibration(const CalibrationOptions& options = {});

// Markdown table: formula id | oracle | max deviation | verdict.
std::string render_deviations_markdown(const std::vector<DeviationEntry>& entries);

}  // namespace spinfold
