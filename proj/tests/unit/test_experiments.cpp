#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"
#include "twomode/errors.hpp"
#include "twomode/experiments.hpp"
#include "twomode/serialize.hpp"

using namespace twomode;
using nlohmann::json;

namespace {

std::string config_error_field(const json& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("config defaults and round trip") {
  const ScenarioConfig c = config_from_json(json::object());
  CHECK(c.alpha_mag == 1.0);
  CHECK(c.beta.kind == BetaSpec::Kind::balanced);
  CHECK(c.grid.points == 1025);
  const Scenario s = c.scenario();
  CHECK(std::norm(s.beta) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
  CHECK(is_resonant(s));

  const json j = {{"alpha_mag", 2.0},
                  {"alpha_phase", 0.3},
                  {"Phi", 1.0},
                  {"beta", {{"mode", "explicit"}, {"mag", 0.5}, {"phase", -1.0}}},
                  {"detuning", 0.25},
                  {"grid", {{"tau_min", 1.0}, {"tau_max", 2.0}, {"points", 11}}},
                  {"epsilon_trunc", 1e-9}};
  const ScenarioConfig parsed = config_from_json(j);
  const ScenarioConfig again = config_from_json(json::parse(config_to_json(parsed).dump()));
  CHECK(again.alpha_phase == 0.3);
  CHECK(again.beta.kind == BetaSpec::Kind::fixed);
  CHECK(again.beta.phase == -1.0);
  CHECK(again.grid.points == 11);
  CHECK(again.scenario().coupling.detuning() == doctest::Approx(0.25).epsilon(1e-12));
  const auto taus = again.grid.taus();
  CHECK(taus.front() == 1.0);
  CHECK(taus.back() == 2.0);
  CHECK(taus.size() == 11);
}

TEST_CASE("config validation names the field") {
  CHECK(config_error_field({{"grid", {{"points", 1}}}}) == "grid.points");
  CHECK(config_error_field({{"grid", {{"tau_min", 3.0}, {"tau_max", 1.0}}}}) == "grid.tau_max");
  CHECK(config_error_field({{"epsilon_trunc", 0.1}}) == "epsilon_trunc");
  CHECK(config_error_field({{"epsilon_trunc", 0.0}}) == "epsilon_trunc");
  CHECK(config_error_field({{"alpha_mag", "big"}}) == "alpha_mag");
  CHECK(config_error_field({{"colour", 1}}) == "colour");
  CHECK(config_error_field({{"beta", {{"mode", "weird"}}}}) == "beta.mode");
  CHECK(config_error_field({{"beta", {{"mode", "explicit"}, {"mag", -1.0}}}}) == "beta.mag");
  CHECK(config_error_field({{"lambda", 0.0}}) == "lambda");
  CHECK(config_error_field({{"alpha_mag", 0.0}, {"Phi", kPi}}) == "alpha_mag");
  CHECK_THROWS_AS(parse_figure("fig5"), ConfigError);
}

TEST_CASE("csv output") {
  Table t{{"tau", "x"}, {{0.0, 1.0 / 3.0}, {kPi, -2.5e-20}}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "tau,x\n0,0.333333333333333\n3.14159265358979,-2.5e-20\n");
}

TEST_CASE("figures") {
  json base = figure_preset(FigureId::fig1);
  base["grid"]["points"] = 9;
  const Table f1 = run_figure(FigureId::fig1, config_from_json(base));
  REQUIRE(f1.columns.size() == 4);
  CHECK(f1.columns[0] == "tau");
  REQUIRE(f1.rows.size() == 9);
  for (std::size_t i = 0; i < 9; i += 2)
    for (std::size_t c = 1; c < 4; ++c) CHECK(std::abs(f1.rows[i][c]) < 1e-9);
  CHECK(f1.rows[1][1] == doctest::Approx(0.290012829192987).epsilon(1e-12));

  const Table f3 = run_figure(FigureId::fig3, config_from_json(figure_preset(FigureId::fig3)));
  CHECK(f3.rows.size() == 2561);
  for (const std::size_t i : {256u, 1280u, 2304u}) {
    CHECK(std::abs(f3.rows[i][1] - 1.0) < 1e-10);
    CHECK(std::abs(f3.rows[i][2] - 1.0) < 1e-10);
  }
  const Table f4 = run_figure(FigureId::fig4, config_from_json(figure_preset(FigureId::fig4)));
  double top = 0.0;
  for (const auto& r : f4.rows) top = std::max(top, r[1]);
  CHECK(top < 1.0 - 1e-3);

  json detuned = figure_preset(FigureId::fig1);
  detuned["detuning"] = 0.5;
  CHECK_THROWS_AS(run_figure(FigureId::fig1, config_from_json(detuned)), ConfigError);
  json pump = figure_preset(FigureId::fig3);
  pump["phi_pump"] = 0.2;
  CHECK_THROWS_AS(run_figure(FigureId::fig3, config_from_json(pump)), ConfigError);
}

TEST_CASE("schedule") {
  const auto res = emit_schedule(config_from_json(json::object()));
  CHECK(res["recurrence_time"].get<double>() == doctest::Approx(kPi));
  CHECK(res["exchange_time"].get<double>() == doctest::Approx(kPi / 2.0));
  CHECK(res["exchanges"].size() == 4);

  const auto off = emit_schedule(config_from_json({{"phi_pump", 1.0}}));
  CHECK(off["exchanges"].empty());
  CHECK_FALSE(off["note"].get<std::string>().empty());

  const auto third = emit_schedule(config_from_json({{"detuning", 1.0 / std::sqrt(2.0)}}));
  CHECK(third["exact_recurrence"]["condition_holds"].get<bool>());
  CHECK(third["exact_recurrence"]["tau"].get<double>() == doctest::Approx(3.0 * kPi));
}

TEST_CASE("verify report is deterministic and the negative control fails") {
  json small = {{"grid", {{"points", 33}}}};
  const ScenarioConfig cfg = config_from_json(small);
  const VerifyOutcome a = run_verify(cfg, std::nullopt);
  const VerifyOutcome b = run_verify(cfg, std::nullopt);
  CHECK(a.passed);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["summary"].get<std::string>().rfind("verification passed", 0) == 0);
  const VerifyOutcome bad = run_verify(cfg, std::nullopt, true);
  CHECK_FALSE(bad.passed);
  CHECK(bad.report["n_failed"].get<int>() > 0);
}

TEST_CASE("state serialization round trip") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const FockKet k(test_support::random_vector(rng, 1 + trial), 1e-3 * trial);
    const FockKet back = fock_ket_from_json(json::parse(to_json(k).dump()));
    REQUIRE(back.n_max() == k.n_max());
    for (int n = 0; n <= k.n_max(); ++n) CHECK(back[n] == k[n]);
    CHECK(back.tail_mass() == k.tail_mass());

    const TwoModeKet t(trial % 3, 2, test_support::random_vector(rng, static_cast<std::size_t>((trial % 3 + 1) * 3)));
    const TwoModeKet tb = two_mode_ket_from_json(json::parse(to_json(t).dump()));
    CHECK(tb.n_max_a() == t.n_max_a());
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(tb.amps()[i] == t.amps()[i]);
  }
  CHECK_THROWS_AS(fock_ket_from_json({{"n_max", 2}, {"amps", {{1.0, 0.0}}}}), ConfigError);
  CHECK_THROWS_AS(two_mode_ket_from_json({{"n_max_a", -1}}), ConfigError);
}
