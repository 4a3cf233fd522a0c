#include "twomode/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "twomode/errors.hpp"

namespace twomode {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& known) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(where + it.key(), "unknown field");
}

double number(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + key, "must be finite");
  return x;
}

int integer(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + key, "expected an integer");
  return v.get<int>();
}

}  // namespace

std::vector<double> GridSpec::taus() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (tau_max - tau_min) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = tau_min + i * step;
  out.back() = tau_max;
  return out;
}

void ScenarioConfig::validate() const {
  if (alpha_mag < 0.0) throw ConfigError("alpha_mag", "must be >= 0");
  if (beta.kind == BetaSpec::Kind::fixed && beta.mag < 0.0) throw ConfigError("beta.mag", "must be >= 0");
  if (!(lambda > 0.0)) throw ConfigError("lambda", "must be > 0");
  if (!(omega_a > 0.0) || !(omega_b > 0.0)) throw ConfigError("omega_a", "mode frequencies must be > 0");
  if (grid.points < 2) throw ConfigError("grid.points", "must be >= 2");
  if (!(grid.tau_max > grid.tau_min)) throw ConfigError("grid.tau_max", "must exceed grid.tau_min");
  if (!(epsilon_trunc > 0.0 && epsilon_trunc <= 1e-3))
    throw ConfigError("epsilon_trunc", "must lie in (0, 1e-3]");
  if (schedule_terms < 1) throw ConfigError("schedule_terms", "must be >= 1");
  if (angle_equals(Phi, kPi) && alpha_mag * alpha_mag < 1e-12)
    throw ConfigError("alpha_mag", "odd cat of the vacuum is the null vector");
}

Scenario ScenarioConfig::scenario() const {
  validate();
  const cplx alpha = std::polar(alpha_mag, alpha_phase);
  ModeCoupling coupling;
  coupling.omega_a = omega_a;
  coupling.omega_b = omega_b;
  coupling.nu = omega_a - omega_b - detuning;
  coupling.lambda = lambda;
  coupling.phi = phi_pump;
  cplx beta_value;
  if (beta.kind == BetaSpec::Kind::fixed) {
    beta_value = std::polar(beta.mag, beta.phase);
  } else {
    try {
      beta_value = std::polar(std::sqrt(balanced_intensity(alpha, Phi)), alpha_phase);
    } catch (const NullState& e) {
      throw ConfigError("beta", e.what());
    }
  }
  return Scenario{CatSpec{alpha, Phi}, beta_value, coupling};
}

ScenarioConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(j, "",
                 {"units", "alpha_mag", "alpha_phase", "Phi", "beta", "lambda", "phi_pump",
                  "detuning", "omega_a", "omega_b", "grid", "epsilon_trunc", "schedule_terms"});
  ScenarioConfig c;
  c.alpha_mag = number(j, "alpha_mag", c.alpha_mag, "");
  c.alpha_phase = number(j, "alpha_phase", c.alpha_phase, "");
  c.Phi = number(j, "Phi", c.Phi, "");
  c.lambda = number(j, "lambda", c.lambda, "");
  c.phi_pump = number(j, "phi_pump", c.phi_pump, "");
  c.detuning = number(j, "detuning", c.detuning, "");
  c.omega_a = number(j, "omega_a", c.omega_a, "");
  c.omega_b = number(j, "omega_b", c.omega_b, "");
  c.epsilon_trunc = number(j, "epsilon_trunc", c.epsilon_trunc, "");
  c.schedule_terms = integer(j, "schedule_terms", c.schedule_terms, "");
  if (j.contains("units") && !j["units"].is_string()) throw ConfigError("units", "expected a string");

  if (j.contains("beta")) {
    const json& b = j["beta"];
    if (!b.is_object()) throw ConfigError("beta", "expected an object");
    reject_unknown(b, "beta.", {"mode", "mag", "phase"});
    const std::string mode = b.value("mode", std::string("balanced"));
    if (mode == "balanced") {
      if (b.contains("mag") || b.contains("phase"))
        throw ConfigError("beta.mode", "balanced beta takes no mag/phase");
    } else if (mode == "explicit") {
      c.beta.kind = BetaSpec::Kind::fixed;
      c.beta.mag = number(b, "mag", 0.0, "beta.");
      c.beta.phase = number(b, "phase", 0.0, "beta.");
    } else {
      throw ConfigError("beta.mode", "expected \"balanced\" or \"explicit\", got \"" + mode + "\"");
    }
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) throw ConfigError("grid", "expected an object");
    reject_unknown(g, "grid.", {"tau_min", "tau_max", "points"});
    c.grid.tau_min = number(g, "tau_min", c.grid.tau_min, "grid.");
    c.grid.tau_max = number(g, "tau_max", c.grid.tau_max, "grid.");
    c.grid.points = integer(g, "points", c.grid.points, "grid.");
  }
  c.validate();
  return c;
}

nlohmann::ordered_json config_to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["units"] = kUnitsNote;
  j["alpha_mag"] = c.alpha_mag;
  j["alpha_phase"] = c.alpha_phase;
  j["Phi"] = c.Phi;
  if (c.beta.kind == BetaSpec::Kind::fixed)
    j["beta"] = {{"mode", "explicit"}, {"mag", c.beta.mag}, {"phase", c.beta.phase}};
  else
    j["beta"] = {{"mode", "balanced"}};
  j["lambda"] = c.lambda;
  j["phi_pump"] = c.phi_pump;
  j["detuning"] = c.detuning;
  j["omega_a"] = c.omega_a;
  j["omega_b"] = c.omega_b;
  j["grid"] = {{"tau_min", c.grid.tau_min}, {"tau_max", c.grid.tau_max}, {"points", c.grid.points}};
  j["epsilon_trunc"] = c.epsilon_trunc;
  j["schedule_terms"] = c.schedule_terms;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    std::ostringstream os;
    os << path.string() << ":" << line << ": " << e.what();
    throw ConfigError("", os.str());
  }
}

}  // namespace twomode
