#pragma once

// Scenario configuration files. Every field has a default; frequencies are in
// units of lambda and the time axis is tau = lambda t.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twomode/analytic.hpp"

namespace twomode {

struct GridSpec {
  double tau_min = 0.0;
  double tau_max = 2.0 * kPi;
  int points = 1025;

  std::vector<double> taus() const;
};

struct BetaSpec {
  enum class Kind { balanced, fixed };
  Kind kind = Kind::balanced;
  double mag = 0.0;
  double phase = 0.0;
};

struct ScenarioConfig {
  double alpha_mag = 1.0;
  double alpha_phase = 0.0;
  double Phi = 0.0;
  BetaSpec beta;
  double lambda = 1.0;
  double phi_pump = kPi / 2.0;
  double detuning = 0.0;
  double omega_a = 100.0;
  double omega_b = 60.0;
  GridSpec grid;
  double epsilon_trunc = kDefaultEpsilon;
  int schedule_terms = 4;

  // Throws ConfigError naming the field.
  void validate() const;
  Scenario scenario() const;
};

inline constexpr const char* kUnitsNote =
    "frequencies (lambda, detuning, omega_a, omega_b) in units of lambda; time axis is tau = lambda t";

// Unknown keys are rejected. Angles are radians.
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ScenarioConfig& c);

// Parses a JSON file; syntax errors are reported as ConfigError with the line.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace twomode
