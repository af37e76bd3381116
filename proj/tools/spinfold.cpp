#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinfold/acceptance.hpp"
#include "spinfold/calibration.hpp"
#include "spinfold/dynamics.hpp"
#include "spinfold/entanglement.hpp"
#include "spinfold/errors.hpp"
#include "spinfold/figures.hpp"
#include "spinfold/geometry.hpp"
#include "spinfold/phases.hpp"

using namespace spinfold;

namespace {

constexpr double kPi = std::numbers::pi;

struct ModelOptions {
  std::string model = "ising-qubit";
  int N = 2;
  double s = 0.5;
  double J = 1.0;
  double nu = 1.0;
  double b = 0.0;
  std::string point;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void emit(std::ostream& os, const std::string& key, double value) { os << key << '=' << num(value) << '\n'; }
void emit(std::ostream& os, const std::string& key, const std::string& value) { os << key << '=' << value << '\n'; }

std::map<std::string, double> parse_perturbations(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& item : items) {
    const Params p = parse_point(item);
    for (const auto& [id, factor] : p.values()) out[id] = factor;
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

class ModelContext {
 public:
  explicit ModelContext(const ModelOptions& o) : options_(o), point_(parse_point(o.point)) {
    if (o.model == "xxz") {
      spec_ = ModelSpec::xxz(o.J, o.nu, o.b);
      family_.emplace(xxz_family(*spec_, plus_minus_coefficients(point_.get_or("chi", kPi / 2), point_.get_or("gamma", 0.0))));
    } else if (o.model == "ising-qubit") {
      spec_ = ModelSpec::collective_ising(o.N, o.J);
      family_.emplace(collective_ising_family(o.N, o.J, point_.get_or("phi", 0.0)));
    } else if (o.model == "ising-spin-s") {
      spec_ = ModelSpec::pairwise_ising(o.N, Spin::from_value(o.s), o.J);
      family_.emplace(pairwise_ising_family(o.N, Spin::from_value(o.s), o.J, point_.get_or("phi", 0.0)));
    } else {
      throw UsageError("unknown model '" + o.model + "'");
    }
    for (const auto& [key, value] : point_.values()) {
      (void)value;
      if (key != family_->chart().u && key != family_->chart().v && key != "chi" && key != "gamma" && key != "phi" &&
          key != "t")
        throw UsageError("unknown point key '" + key + "' for model " + o.model);
    }
  }

  const EvolvedFamily& family() const { return *family_; }
  const ModelSpec& spec() const { return *spec_; }
  const ModelOptions& options() const { return options_; }
  const Params& point_params() const { return point_; }

  ChartPoint chart_point(double default_u) const {
    return {point_.get_or(family_->chart().u, default_u), point_.get_or(family_->chart().v, 0.0)};
  }
  double time(double fallback) const { return point_.get_or("t", fallback); }

 private:
  ModelOptions options_;
  Params point_;
  std::optional<ModelSpec> spec_;
  std::optional<EvolvedFamily> family_;
};

void describe(std::ostream& os, const ModelContext& ctx) {
  const ModelOptions& o = ctx.options();
  emit(os, "model", o.model);
  if (o.model == "xxz") {
    emit(os, "J", o.J);
    emit(os, "nu", o.nu);
    emit(os, "b", o.b);
  } else {
    emit(os, "N", double(o.N));
    if (o.model == "ising-spin-s") emit(os, "s", o.s);
    emit(os, "J", o.J);
  }
}

std::string cmd_evolve(const ModelContext& ctx) {
  std::ostringstream os;
  const ChartPoint x = ctx.chart_point(kPi / 3);
  const double t = ctx.time(1.0);
  const PureState psi0 = ctx.family().at(x);
  const PureState psi = evolve_exact(psi0, ctx.spec(), t);
  const StateVector family_state = ctx.family().amplitudes(ctx.family().advance(x, t));
  describe(os, ctx);
  emit(os, "t", t);
  emit(os, "energy", energy_expectation(psi0, ctx.spec()));
  emit(os, "energy_uncertainty", energy_uncertainty(psi0, ctx.spec()));
  emit(os, "closed_form_residual", align_global_phase(psi.amplitudes(), family_state).residual);
  os << "index,re,im\n";
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    os << i << ',' << num(psi.amplitudes()(i).real()) << ',' << num(psi.amplitudes()(i).imag()) << '\n';
  return os.str();
}

std::string cmd_metric(const ModelContext& ctx) {
  std::ostringstream os;
  const ChartPoint x = ctx.chart_point(kPi / 3);
  const QgtSample q = qgt_numeric(ctx.family(), x);
  describe(os, ctx);
  emit(os, "chart", ctx.family().chart().u + "," + ctx.family().chart().v);
  emit(os, "g_" + ctx.family().chart().u + ctx.family().chart().u, q.metric.g_uu);
  emit(os, "g_" + ctx.family().chart().u + ctx.family().chart().v, q.metric.g_uv);
  emit(os, "g_" + ctx.family().chart().v + ctx.family().chart().v, q.metric.g_vv);
  emit(os, "beta_" + ctx.family().chart().u, q.connection.beta_u);
  emit(os, "beta_" + ctx.family().chart().v, q.connection.beta_v);
  emit(os, "speed", speed(ctx.family(), x).v);
  emit(os, "energy_uncertainty", energy_uncertainty(ctx.family().at(x), ctx.spec()));
  return os.str();
}

std::string cmd_curvature(const ModelContext& ctx) {
  std::ostringstream os;
  const ChartPoint x = ctx.chart_point(kPi / 3);
  std::shared_ptr<const EvolvedFamily> fam = std::make_shared<EvolvedFamily>(ctx.family());
  const MetricField field = [fam](ChartPoint p) { return qgt_numeric(*fam, p).metric.components(); };
  const CurvatureSample k = gauss_curvature(field, x, 1e-3);
  describe(os, ctx);
  emit(os, "K", k.valid ? k.K : std::nan(""));
  emit(os, "valid", k.valid ? "true" : "false");
  if (ctx.options().model == "ising-qubit") {
    const CurvatureSample c = curvature_closed("4.30", {{"N", double(ctx.options().N)}}, x);
    emit(os, "K_closed", c.valid ? c.K : std::nan(""));
  }
  return os.str();
}

std::string cmd_phase(const ModelContext& ctx) {
  std::ostringstream os;
  const ChartPoint x = ctx.chart_point(kPi / 3);
  describe(os, ctx);
  if (ctx.point_params().has("t")) {
    const PhaseDecomposition d = geometric_phase(ctx.family(), x, ctx.time(0.0));
    emit(os, "t", ctx.time(0.0));
    emit(os, "total", d.total);
    emit(os, "unwrapped_total", d.unwrapped_total);
    emit(os, "dynamic", d.dynamic);
    emit(os, "geometric", d.geometric);
  } else {
    const double period = 2.0 * kPi / ctx.options().J;
    const CyclePhase c = aa_phase(ctx.family(), x, period);
    emit(os, "period", period);
    emit(os, "closure_phase", c.closure_phase);
    emit(os, "dynamic", c.dynamic);
    emit(os, "aa_phase", c.aa_phase);
    emit(os, "aa_phase_wrapped", c.aa_phase_wrapped);
    emit(os, "topological_part", c.topological_part);
  }
  return os.str();
}

std::string cmd_concurrence(const ModelContext& ctx) {
  std::ostringstream os;
  const ChartPoint x = ctx.chart_point(kPi / 3);
  const PureState psi = ctx.family().at(x);
  describe(os, ctx);
  if (psi.basis().n_sites != 2) throw UsageError("concurrence needs a two-site model (--N 2)");
  if (psi.basis().spin == Spin(1)) emit(os, "concurrence", concurrence_pure_2qubit(psi).value);
  emit(os, "i_concurrence", i_concurrence(psi).value);
  return os.str();
}

std::string cmd_brachistochrone(const ModelContext& ctx) {
  const ModelOptions& o = ctx.options();
  Params p{{"J", o.J}, {"N", double(o.N)}, {"s", o.s}, {"t", ctx.time(1.0)}};
  const std::string family = o.model == "xxz" ? "xxz-sinusoidal" : o.model;
  const BrachistochroneReport r = brachistochrone(family, p);
  std::ostringstream os;
  describe(os, ctx);
  emit(os, "formula_id", r.formula_id);
  emit(os, "argmax_sin2", r.argmax_sin2);
  emit(os, "v_max", r.v_max);
  emit(os, "s_min", r.s_min);
  emit(os, "T_opt", r.T_opt);
  emit(os, "printed_T", r.printed_T);
  emit(os, "printed_argmax_sin2", r.printed_argmax_sin2);
  emit(os, "printed_agrees", r.printed_agrees ? "true" : "false");
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry, dynamics and entanglement of small spin systems"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags override its values");
  app.allow_config_extras(CLI::config_extras_mode::error);

  ModelOptions model;
  app.add_option("--model", model.model, "xxz, ising-qubit or ising-spin-s")
      ->check(CLI::IsMember({"xxz", "ising-qubit", "ising-spin-s"}));
  app.add_option("--N", model.N, "number of sites")->check(CLI::Range(1, 12));
  app.add_option("--s", model.s, "site spin")->check(CLI::PositiveNumber);
  app.add_option("--J", model.J, "coupling");
  app.add_option("--nu", model.nu, "anisotropy");
  app.add_option("--b", model.b, "field");
  app.add_option("--point", model.point, "chart point and initial-state parameters as k=v,...");

  FigureOptions figure;
  std::string figure_id, out_path;
  std::vector<std::string> perturb;
  auto* fig = app.add_subcommand("figure", "write a figure's data as CSV");
  fig->add_option("id", figure_id, "figure id")->required();
  fig->add_option("--grid", figure.grid, "grid points per series");
  fig->add_option("--out", out_path, "output path (default stdout)");
  fig->add_flag("--oracle", figure.oracle, "add an oracle column");

  auto* cal = app.add_subcommand("calibrate", "run oracle comparisons and write the deviations ledger");
  std::string ledger_path = "KNOWN_DEVIATIONS.md";
  cal->add_option("--out", ledger_path, "ledger path");
  cal->add_option("--perturb", perturb, "scale a closed form, id=factor")->take_all();

  auto* rep = app.add_subcommand("report", "print the acceptance table");
  rep->add_option("--perturb", perturb, "scale a closed form, id=factor")->take_all();

  std::vector<CLI::App*> model_commands;
  for (const char* name : {"evolve", "metric", "curvature", "phase", "concurrence", "brachistochrone"})
    model_commands.push_back(app.add_subcommand(name)->fallthrough());
  model_commands[0]->description("evolve the model from a family point and print the state");
  model_commands[1]->description("numeric metric and Berry connection at a chart point");
  model_commands[2]->description("numeric Gaussian curvature at a chart point");
  model_commands[3]->description("phase decomposition over time t, or the AA phase of the 2pi/J cycle");
  model_commands[4]->description("concurrence of a two-site state");
  model_commands[5]->description("time-optimal evolution report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fig) {
      write_output(run_figure(figure_id, figure), out_path);
      return 0;
    }
    if (*cal) {
      CalibrationOptions options;
      options.perturb = parse_perturbations(perturb);
      const auto entries = run_calibration(options);
      write_output(render_deviations_markdown(entries), ledger_path);
      int inconsistent = 0, scaled = 0;
      for (const auto& e : entries) {
        if (e.verdict == Verdict::Inconsistent) ++inconsistent;
        if (e.verdict == Verdict::ScaleFactor) ++scaled;
      }
      std::fprintf(stderr, "%zu formula ids, %d scale-factor, %d inconsistent -> %s\n", entries.size(), scaled,
                   inconsistent, ledger_path.c_str());
      return 0;
    }
    if (*rep) {
      AcceptanceOptions options;
      options.perturb = parse_perturbations(perturb);
      const auto results = run_acceptance(options);
      std::cout << render_acceptance_table(results);
      return all_passed(results) ? 0 : 1;
    }
    const ModelContext ctx(model);
    using Command = std::string (*)(const ModelContext&);
    const Command commands[] = {cmd_evolve, cmd_metric, cmd_curvature, cmd_phase, cmd_concurrence, cmd_brachistochrone};
    for (std::size_t i = 0; i < model_commands.size(); ++i)
      if (*model_commands[i]) std::cout << commands[i](ctx);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "spinfold: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "spinfold: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spinfold: " << e.what() << '\n';
    return 1;
  }
}
