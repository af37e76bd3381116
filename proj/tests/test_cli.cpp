#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "spinfold/calibration.hpp"
#include "spinfold/figures.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string binary() {
  const char* bin = std::getenv("SPINFOLD_BIN");
  return bin ? bin : "spinfold";
}

RunResult run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  return out;
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  for (const std::string& line : lines(text)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("spinfold_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("every figure has series x grid rows and the CSV schema") {
  for (const std::string& id : spinfold::figure_ids()) {
    const RunResult r = run("figure " + id + " --grid 7");
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows.front() == "series,x,y");
    CHECK(rows.size() == 1 + 7 * spinfold::figure_info(id).series.size());
    CHECK(r.out.find('\r') == std::string::npos);
  }
}

TEST_CASE("figure 4.2 has 800 rows and K = 5 at N = 2, eta = 0") {
  const RunResult r = run("figure 4.2");
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 801);
  CHECK(rows[1] == "N=2,0,5");
}

TEST_CASE("figure 4.6 series have slope -pi/|sin kappa|") {
  const RunResult r = run("figure 4.6 --grid 11");
  REQUIRE(r.code == 0);
  const std::map<std::string, double> kappas{
      {"kappa=pi/6", std::numbers::pi / 6}, {"kappa=pi/4", std::numbers::pi / 4}, {"kappa=pi/2", std::numbers::pi / 2}};
  const auto rows = lines(r.out);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const auto a = fields(rows[i - 1]), b = fields(rows[i]);
    if (a[0] != b[0]) continue;
    const double slope = (std::stod(b[2]) - std::stod(a[2])) / (std::stod(b[1]) - std::stod(a[1]));
    CHECK(slope == doctest::Approx(-std::numbers::pi / std::sin(kappas.at(a[0]))).epsilon(1e-9));
  }
}

TEST_CASE("figure 3.2 speeds peak at J/2") {
  const RunResult r = run("figure 3.2 --grid 201");
  REQUIRE(r.code == 0);
  std::map<std::string, double> peak;
  const auto rows = lines(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    peak[f[0]] = std::max(peak[f[0]], std::stod(f[2]));
  }
  CHECK(peak.size() == 3);
  for (const auto& [series, v] : peak) CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("figure output is deterministic and --out writes the same bytes") {
  const RunResult a = run("figure 4.1 --grid 25 --oracle");
  const RunResult b = run("figure 4.1 --grid 25 --oracle");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).front() == "series,x,y,oracle");
  const auto path = temp_path("fig.csv");
  CHECK(run("figure 4.1 --grid 25 --oracle --out " + path.string()).code == 0);
  std::ifstream in(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("figure 9.9").code == 2);
  CHECK(run("figure 3.1a --grid 0").code == 2);
  CHECK(run("figure 3.1a --frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("metric --model heisenberg").code == 2);
  CHECK(run("metric --point foo=1").code == 2);
  CHECK(run("concurrence --model ising-qubit --N 3").code == 2);
}

TEST_CASE("calibrate writes one row per registered formula id and exits 0") {
  const auto path = temp_path("deviations.md");
  CHECK(run("calibrate --out " + path.string()).code == 0);
  std::ifstream in(path);
  std::map<std::string, int> seen;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("| ", 0) != 0 || line.rfind("| formula id", 0) == 0) continue;
    const std::string id = line.substr(2, line.find(' ', 2) - 2);
    ++seen[id];
  }
  const auto ids = spinfold::registered_formula_ids();
  CHECK(seen.size() == ids.size());
  for (const std::string& id : ids) CHECK(seen[id] == 1);
  std::filesystem::remove(path);
}

TEST_CASE("report fails the perturbed row and exits 1") {
  const RunResult r = run("report --perturb 3.67=1.01");
  CHECK(r.code == 1);
  bool row_failed = false;
  for (const std::string& line : lines(r.out))
    if (line.rfind("FAIL  2", 0) == 0) row_failed = true;
  CHECK(row_failed);
}

TEST_CASE("model commands print key=value output") {
  const auto metric = key_values(run("metric --model ising-qubit --N 3 --point eta=1,kappa=0.5").out);
  CHECK(std::stod(metric.at("speed")) == doctest::Approx(std::stod(metric.at("energy_uncertainty"))).epsilon(1e-7));
  const auto phase = key_values(run("phase --model ising-qubit --N 2 --point eta=0.7").out);
  CHECK(std::remainder(std::stod(phase.at("aa_phase")) + std::numbers::pi * std::pow(std::sin(0.7), 2),
                       2 * std::numbers::pi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  const auto brach = key_values(run("brachistochrone --model ising-qubit --N 2").out);
  CHECK(std::stod(brach.at("T_opt")) == doctest::Approx(1.0).epsilon(1e-9));
  const auto conc = key_values(run("concurrence --model ising-qubit --N 2 --point eta=1,kappa=0.5").out);
  CHECK(std::stod(conc.at("concurrence")) == doctest::Approx(std::pow(std::sin(1.0), 2) * std::sin(0.5)).epsilon(1e-10));
  const RunResult evolve = run("evolve --model xxz --nu 0.5 --b 0.2 --point chi=1,t=0.8");
  CHECK(evolve.code == 0);
  CHECK(std::stod(key_values(evolve.out).at("closed_form_residual")) < 1e-10);
  CHECK(run("curvature --model ising-spin-s --s 1 --point kappa=1").code == 0);
}

TEST_CASE("config file values are overridden by flags") {
  const auto path = temp_path("config.ini");
  {
    std::ofstream out(path);
    out << "model=ising-qubit\nN=4\nJ=2\n";
  }
  const auto from_file = key_values(run("brachistochrone --config " + path.string()).out);
  CHECK(from_file.at("N") == "4");
  CHECK(from_file.at("J") == "2");
  const auto overridden = key_values(run("brachistochrone --config " + path.string() + " --N 3").out);
  CHECK(overridden.at("N") == "3");
  {
    std::ofstream out(path);
    out << "unknown_key=1\n";
  }
  CHECK(run("metric --config " + path.string()).code == 2);
  std::filesystem::remove(path);
}
