#pragma once

// Figure tables, the verification run and the characteristic-time schedule,
// as driven by the command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twomode/config.hpp"
#include "twomode/oracle.hpp"

namespace twomode {

enum class FigureId { fig1, fig2, fig3, fig4 };

// Throws ConfigError for unknown names.
FigureId parse_figure(const std::string& name);
std::string figure_name(FigureId id);

// Figure defaults; user settings are merged on top of them.
nlohmann::json figure_preset(FigureId id);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Header row, then one row per sample with 15 significant digits.
void write_csv(std::ostream& out, const Table& table);

// fig1/fig2: entropy for Phi in {0, pi/2, pi}; fig3: exchange functional for
// Phi in {0, pi} with balanced beta; fig4: the same for Phi = pi/2. The
// configured Phi is ignored since each figure fixes its own curves.
Table run_figure(FigureId id, const ScenarioConfig& config);

struct VerifyOutcome {
  nlohmann::ordered_json report;
  bool passed;
};

// Oracle vs closed forms, conservation laws and special-time checks over the
// default scenarios (|alpha|^2 in {1, 5}, Phi in {0, pi/2, pi}, balanced beta),
// plus `extra` when given. `inject_fault` swaps in a corrupted entropy.
VerifyOutcome run_verify(const ScenarioConfig& grid_source, const std::optional<ScenarioConfig>& extra,
                         bool inject_fault = false);

// Closed forms with the sign of the entropy interference terms flipped.
AnalyticModel corrupted_model();

nlohmann::ordered_json emit_schedule(const ScenarioConfig& config);

}  // namespace twomode
