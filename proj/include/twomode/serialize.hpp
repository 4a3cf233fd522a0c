#pragma once

// JSON form of truncated states: amplitudes as [re, im] pairs plus the
// truncation metadata.

#include <json.hpp>

#include "twomode/fock.hpp"

namespace twomode {

nlohmann::json to_json(const FockKet& ket);
nlohmann::json to_json(const TwoModeKet& ket);

// Throw ConfigError naming the offending field on malformed input.
FockKet fock_ket_from_json(const nlohmann::json& j);
TwoModeKet two_mode_ket_from_json(const nlohmann::json& j);

}  // namespace twomode
