#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "spinfold/acceptance.hpp"
#include "spinfold/errors.hpp"

int main(int argc, char** argv) {
  spinfold::AcceptanceOptions options;
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--perturb" && i + 1 < argc) {
        const std::string spec = argv[++i];
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw spinfold::UsageError("--perturb expects id=factor");
        options.perturb[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
      } else if (arg == "--only" && i + 1 < argc) {
        options.only.push_back(std::stoi(argv[++i]));
      } else {
        throw spinfold::UsageError("unknown argument '" + arg + "'");
      }
    }
    const auto results = spinfold::run_acceptance(options);
    std::fputs(spinfold::render_acceptance_table(results).c_str(), stdout);
    return spinfold::all_passed(results) ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
}
