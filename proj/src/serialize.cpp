#include "twomode/serialize.hpp"

#include "twomode/errors.hpp"

namespace twomode {
namespace {

nlohmann::json amps_json(std::span<const cplx> amps) {
  nlohmann::json out = nlohmann::json::array();
  for (const cplx& a : amps) out.push_back({a.real(), a.imag()});
  return out;
}

std::vector<cplx> amps_from(const nlohmann::json& j, std::size_t expected) {
  if (!j.contains("amps") || !j["amps"].is_array()) throw ConfigError("amps", "missing amplitude list");
  const auto& list = j["amps"];
  if (list.size() != expected)
    throw ConfigError("amps", "expected " + std::to_string(expected) + " amplitudes, got " +
                                  std::to_string(list.size()));
  std::vector<cplx> out;
  out.reserve(expected);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto& pair = list[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ConfigError("amps[" + std::to_string(k) + "]", "expected [re, im]");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

int truncation_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number_integer() || j[name].get<int>() < 0)
    throw ConfigError(name, "expected a non-negative integer");
  return j[name].get<int>();
}

double tail_field(const nlohmann::json& j) {
  if (!j.contains("tail_mass")) return 0.0;
  if (!j["tail_mass"].is_number()) throw ConfigError("tail_mass", "expected a number");
  return j["tail_mass"].get<double>();
}

}  // namespace

nlohmann::json to_json(const FockKet& ket) {
  return {{"kind", "fock_ket"}, {"n_max", ket.n_max()}, {"tail_mass", ket.tail_mass()},
          {"amps", amps_json(ket.amps())}};
}

nlohmann::json to_json(const TwoModeKet& ket) {
  return {{"kind", "two_mode_ket"},
          {"n_max_a", ket.n_max_a()},
          {"n_max_b", ket.n_max_b()},
          {"layout", "row-major (n_a, n_b)"},
          {"tail_mass", ket.tail_mass()},
          {"amps", amps_json(ket.amps())}};
}

FockKet fock_ket_from_json(const nlohmann::json& j) {
  const int n_max = truncation_field(j, "n_max");
  return FockKet(amps_from(j, static_cast<std::size_t>(n_max) + 1), tail_field(j));
}

TwoModeKet two_mode_ket_from_json(const nlohmann::json& j) {
  const int na = truncation_field(j, "n_max_a");
  const int nb = truncation_field(j, "n_max_b");
  const auto size = static_cast<std::size_t>(na + 1) * static_cast<std::size_t>(nb + 1);
  return TwoModeKet(na, nb, amps_from(j, size), tail_field(j));
}

}  // namespace twomode
