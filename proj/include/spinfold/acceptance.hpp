#pragma once

#include <map>
#include <string>
#include <vector>

namespace spinfold {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::string measured;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct AcceptanceOptions {
  // formula id -> multiplicative factor applied to the closed form while the criteria run
  std::map<std::string, double> perturb;
  // criterion numbers to run; empty runs all
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});
std::string render_acceptance_table(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace spinfold
