// twomode: figure data, verification and characteristic-time schedules for
// two resonantly coupled modes.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "twomode/config.hpp"
#include "twomode/errors.hpp"
#include "twomode/experiments.hpp"
#include "twomode/serialize.hpp"

namespace {

using namespace twomode;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::optional<int> grid_points;
  std::optional<double> epsilon;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON scenario configuration");
  cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  cmd->add_option("--grid-points", o.grid_points, "number of tau samples");
  cmd->add_option("--epsilon", o.epsilon, "Fock truncation tail tolerance");
}

ScenarioConfig resolve(const CommonOptions& o, nlohmann::json base) {
  if (!o.config_path.empty()) base.merge_patch(read_json_file(o.config_path));
  if (o.grid_points) base["grid"]["points"] = *o.grid_points;
  if (o.epsilon) base["epsilon_trunc"] = *o.epsilon;
  return config_from_json(base);
}

// Writes through a temporary so a failed run never leaves a truncated file.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("--out", "cannot write " + path);
    write(out);
    if (!out) throw ConfigError("--out", "write failed for " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ConfigError("--out", "cannot move output to " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode rotating-wave coupling: figure data, verification, schedules"};
  app.require_subcommand(1);

  CommonOptions fig_opts;
  std::string figure;
  auto* fig = app.add_subcommand("figure", "write a figure's curves as CSV");
  fig->add_option("id", figure, "fig1 | fig2 | fig3 | fig4")->required();
  add_common(fig, fig_opts);

  CommonOptions ver_opts;
  bool inject_fault = false;
  auto* ver = app.add_subcommand("verify", "compare every closed form with the Fock-space oracle");
  add_common(ver, ver_opts);
  ver->add_flag("--inject-fault", inject_fault, "corrupt the entropy closed form (negative control)");

  CommonOptions sch_opts;
  auto* sch = app.add_subcommand("schedule", "recurrence and exchange times as JSON");
  add_common(sch, sch_opts);

  CommonOptions st_opts;
  double tau = 0.0;
  auto* st = app.add_subcommand("state", "evolved joint state at one tau as JSON amplitudes");
  add_common(st, st_opts);
  st->add_option("--tau", tau, "slow time")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (fig->parsed()) {
      const FigureId id = parse_figure(figure);
      const ScenarioConfig cfg = resolve(fig_opts, figure_preset(id));
      const Table table = run_figure(id, cfg);
      emit(fig_opts.out_path, [&](std::ostream& out) { write_csv(out, table); });
      return kExitOk;
    }
    if (ver->parsed()) {
      const ScenarioConfig cfg = resolve(ver_opts, nlohmann::json::object());
      std::optional<ScenarioConfig> extra;
      if (!ver_opts.config_path.empty()) extra = cfg;
      const VerifyOutcome outcome = run_verify(cfg, extra, inject_fault);
      emit(ver_opts.out_path, [&](std::ostream& out) { out << outcome.report.dump(2) << '\n'; });
      std::cerr << outcome.report["summary"].get<std::string>().substr(
                       0, outcome.report["summary"].get<std::string>().find('\n'))
                << '\n';
      return outcome.passed ? kExitOk : kExitVerifyFailed;
    }
    if (sch->parsed()) {
      const ScenarioConfig cfg = resolve(sch_opts, nlohmann::json::object());
      emit(sch_opts.out_path, [&](std::ostream& out) { out << emit_schedule(cfg).dump(2) << '\n'; });
      return kExitOk;
    }
    if (st->parsed()) {
      const ScenarioConfig cfg = resolve(st_opts, nlohmann::json::object());
      const Scenario s = cfg.scenario();
      const int n_max = oracle_truncation(s, cfg.epsilon_trunc);
      nlohmann::json j = to_json(joint_state(s, tau, n_max));
      j["tau"] = tau;
      emit(st_opts.out_path, [&](std::ostream& out) { out << j.dump() << '\n'; });
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
