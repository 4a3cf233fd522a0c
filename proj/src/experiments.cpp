#include "twomode/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "twomode/errors.hpp"

namespace twomode {
namespace {

using ojson = nlohmann::ordered_json;

std::string fmt15(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void require_closed_form_config(const ScenarioConfig& c, bool exchange) {
  if (c.detuning != 0.0) throw ConfigError("detuning", "closed-form commands need detuning 0");
  if (exchange && !angle_equals(c.phi_pump, kPi / 2.0))
    throw ConfigError("phi_pump", "exchange-functional figures need phi_pump = pi/2");
}

Scenario with_phase(const ScenarioConfig& c, double Phi) {
  ScenarioConfig copy = c;
  copy.Phi = Phi;
  return copy.scenario();
}

std::string label(const Scenario& s) {
  std::ostringstream os;
  os.precision(6);
  os << "|alpha|^2=" << std::norm(s.cat.alpha) << " Phi=" << s.cat.Phi
     << " |beta|^2=" << std::norm(s.beta) << " phi=" << s.coupling.phi;
  return os.str();
}

class CheckList {
 public:
  void add(const std::string& name, const std::string& scenario, double tolerance, double observed,
           bool passed) {
    passed = passed && std::isfinite(observed);
    all_ = all_ && passed;
    if (!passed) ++failed_;
    ojson c;
    c["name"] = name;
    c["scenario"] = scenario;
    c["tolerance"] = tolerance;
    c["observed"] = observed;
    c["passed"] = passed;
    checks_.push_back(std::move(c));
    std::ostringstream line;
    line << (passed ? "PASS " : "FAIL ") << name << " [" << scenario << "] observed " << observed
         << " tolerance " << tolerance;
    summary_ += line.str() + "\n";
  }
  // Deviation-style check: observed <= tolerance.
  void bound(const std::string& name, const std::string& scenario, double tolerance, double observed) {
    add(name, scenario, tolerance, observed, observed <= tolerance);
  }

  ojson report() const {
    ojson r;
    std::ostringstream head;
    head << (all_ ? "verification passed: " : "verification FAILED: ") << checks_.size() - failed_
         << "/" << checks_.size() << " checks\n";
    r["summary"] = head.str() + summary_;
    r["passed"] = all_;
    r["n_checks"] = checks_.size();
    r["n_failed"] = failed_;
    r["checks"] = checks_;
    return r;
  }
  bool passed() const { return all_; }

 private:
  ojson checks_ = ojson::array();
  std::string summary_;
  bool all_ = true;
  std::size_t failed_ = 0;
};

void scenario_checks(CheckList& list, const Scenario& s, const std::vector<double>& taus,
                     const AnalyticModel& model) {
  const std::string name = label(s);
  const VerificationReport rep = verify_against_analytic(s, taus, Tolerances{}, model);
  for (const ObservableCheck& c : rep.checks)
    list.add("oracle." + c.name, name, c.tolerance, c.max_deviation, c.passed);

  const int n = rep.n_max;
  const double closed_recurrence = fidelity(recurrence_reference(s, n), joint_state(s, kPi, n));
  list.bound("recurrence.closed_form", name, 1e-10, 1.0 - closed_recurrence);
  const PropagatorBundle bundle = rwc_hamiltonian(s.coupling.phi, n, n);
  const double oracle_recurrence =
      fidelity(recurrence_reference(s, n), evolve(initial_state(s, n), bundle, kPi));
  list.bound("recurrence.oracle_vs_closed", name, 1e-8, std::abs(oracle_recurrence - closed_recurrence));

  const double drift_a = [&] {
    const auto rec = observe_grid(s, taus, n);
    double lo = rec.front().n_a, hi = lo;
    for (const auto& r : rec) {
      lo = std::min(lo, r.n_a);
      hi = std::max(hi, r.n_a);
    }
    return hi - lo;
  }();
  list.bound("balanced.n_a_drift", name, 1e-9, drift_a);

  if (!has_exchange_phase(s)) return;
  const double A = std::norm(s.cat.alpha);
  const double c = std::cos(s.cat.Phi);
  const double plateau = std::pow((c + std::exp(-2.0 * A)) / (1.0 + c * std::exp(-2.0 * A)), 2);
  list.bound("exchange.plateau_half_pi", name, 1e-9,
             std::abs(exchange_functional_closed(s, kPi / 2.0) - plateau));
  list.bound("exchange.plateau_three_half_pi", name, 1e-10,
             std::abs(exchange_functional_closed(s, 1.5 * kPi) - std::exp(-4.0 * std::norm(s.beta))));
  if (angle_equals(s.cat.Phi, 0.0) || angle_equals(s.cat.Phi, kPi)) {
    list.bound("exchange.closed_form_at_half_pi", name, 1e-10,
               std::abs(1.0 - exchange_functional_closed(s, kPi / 2.0)));
    list.bound("exchange.oracle_at_half_pi", name, 1e-10,
               std::abs(1.0 - observe_grid(s, {kPi / 2.0}, n).front().exchange_e));
  }
}

void coefficient_checks(CheckList& list) {
  for (const double chi : {0.0, 0.3, 1.0 / std::sqrt(2.0), 0.99}) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const EvolutionCoeffs k = evolution_coeffs(4.0 * kPi * i / 999.0, chi, kPi / 2.0);
      worst = std::max(worst, std::abs(std::norm(k.u1) + std::norm(k.v1) - 1.0));
    }
    list.bound("coefficients.unitarity", "chi=" + fmt15(chi), 1e-12, worst);
  }
  for (const double chi : {0.3, 1.0 / std::sqrt(2.0)}) {
    double worst = 0.0;
    for (const EvolutionCoeffs& e : integrate_heisenberg(chi, kPi / 2.0, 4.0 * kPi, kPi / 4096.0, 64)) {
      const EvolutionCoeffs k = evolution_coeffs(e.tau, chi, kPi / 2.0);
      worst = std::max({worst, std::abs(k.u1 - e.u1), std::abs(k.v1 - e.v1), std::abs(k.u2 - e.u2),
                        std::abs(k.v2 - e.v2)});
    }
    list.bound("coefficients.heisenberg_rk4", "chi=" + fmt15(chi), 1e-8, worst);
  }
}

}  // namespace

FigureId parse_figure(const std::string& name) {
  if (name == "fig1") return FigureId::fig1;
  if (name == "fig2") return FigureId::fig2;
  if (name == "fig3") return FigureId::fig3;
  if (name == "fig4") return FigureId::fig4;
  throw ConfigError("figure", "unknown figure \"" + name + "\" (expected fig1..fig4)");
}

std::string figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig1: return "fig1";
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
  }
  return "fig?";
}

nlohmann::json figure_preset(FigureId id) {
  switch (id) {
    case FigureId::fig1:
      return {{"alpha_mag", 1.0}, {"grid", {{"tau_min", 0.0}, {"tau_max", 2.0 * kPi}, {"points", 1025}}}};
    case FigureId::fig2:
      return {{"alpha_mag", std::sqrt(5.0)},
              {"grid", {{"tau_min", 0.0}, {"tau_max", 2.0 * kPi}, {"points", 1025}}}};
    case FigureId::fig3:
    case FigureId::fig4:
      return {{"alpha_mag", std::sqrt(5.0)},
              {"beta", {{"mode", "balanced"}}},
              {"grid", {{"tau_min", 0.0}, {"tau_max", 5.0 * kPi}, {"points", 2561}}}};
  }
  return nlohmann::json::object();
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt15(row[c]);
    out << '\n';
  }
}

Table run_figure(FigureId id, const ScenarioConfig& config) {
  const bool exchange = id == FigureId::fig3 || id == FigureId::fig4;
  require_closed_form_config(config, exchange);
  std::vector<double> phases;
  Table t;
  t.columns.push_back("tau");
  if (exchange) {
    phases = id == FigureId::fig3 ? std::vector<double>{0.0, kPi} : std::vector<double>{kPi / 2.0};
    for (const double p : phases) t.columns.push_back(p == 0.0 ? "E_Phi_0" : p == kPi ? "E_Phi_pi" : "E_Phi_pi_2");
  } else {
    phases = {0.0, kPi / 2.0, kPi};
    t.columns.insert(t.columns.end(), {"S_Phi_0", "S_Phi_pi_2", "S_Phi_pi"});
  }
  std::vector<Scenario> scenarios;
  for (const double p : phases) {
    ScenarioConfig c = config;
    if (exchange) c.beta.kind = BetaSpec::Kind::balanced;
    scenarios.push_back(with_phase(c, p));
  }
  for (const double tau : config.grid.taus()) {
    std::vector<double> row{tau};
    for (const Scenario& s : scenarios)
      row.push_back(exchange ? exchange_functional_closed(s, tau) : entropy_closed_form(s, tau));
    t.rows.push_back(std::move(row));
  }
  return t;
}

AnalyticModel corrupted_model() {
  AnalyticModel m = AnalyticModel::closed_forms();
  m.entropy = [](const Scenario& s, double tau) {
    const double A = std::norm(s.cat.alpha);
    const double c = std::cos(s.cat.Phi);
    const double N2 = 2.0 * (1.0 + c * std::exp(-2.0 * A));
    const double cos2t = std::cos(2.0 * tau);
    const double bracket = 1.0 + std::exp(-2.0 * A * (1.0 + cos2t)) + std::exp(-2.0 * A * (1.0 - cos2t)) -
                           4.0 * c * std::exp(-2.0 * A) - std::cos(2.0 * s.cat.Phi) * std::exp(-4.0 * A);
    return 1.0 - 2.0 * bracket / (N2 * N2);
  };
  return m;
}

VerifyOutcome run_verify(const ScenarioConfig& grid_source, const std::optional<ScenarioConfig>& extra,
                         bool inject_fault) {
  if (extra) require_closed_form_config(*extra, false);
  const std::vector<double> taus = grid_source.grid.taus();
  const AnalyticModel model = inject_fault ? corrupted_model() : AnalyticModel::closed_forms();

  std::vector<Scenario> scenarios;
  for (const double A : {1.0, 5.0})
    for (const double Phi : {0.0, kPi / 2.0, kPi}) scenarios.push_back(Scenario::balanced(std::sqrt(A), Phi));
  if (extra) scenarios.push_back(extra->scenario());

  CheckList list;
  coefficient_checks(list);
  for (const Scenario& s : scenarios) scenario_checks(list, s, taus, model);

  VerifyOutcome out{list.report(), list.passed()};
  out.report["grid"] = {{"tau_min", grid_source.grid.tau_min},
                        {"tau_max", grid_source.grid.tau_max},
                        {"points", grid_source.grid.points}};
  out.report["fault_injected"] = inject_fault;
  return out;
}

nlohmann::ordered_json emit_schedule(const ScenarioConfig& config) {
  const Scenario s = config.scenario();
  const ExchangeSchedule sched = special_times(s, config.schedule_terms);
  const DerivedParams d = s.derived();
  ojson j;
  j["units"] = kUnitsNote;
  j["Omega"] = d.Omega;
  j["chi"] = d.chi;
  j["omega_slow"] = d.omega_slow;
  j["recurrence_tau"] = kPi;
  j["recurrence_time"] = sched.recurrence_time;
  if (sched.exchange_time) {
    j["exchange_tau"] = kPi / 2.0;
    j["exchange_time"] = *sched.exchange_time;
  } else {
    j["exchange_tau"] = nullptr;
    j["exchange_time"] = nullptr;
  }
  ojson rec = ojson::array();
  for (const RecurrenceEntry& e : sched.recurrences)
    rec.push_back({{"n", e.n},
                   {"tau", e.tau},
                   {"time", e.time},
                   {"phase_a", {e.phase_a.real(), e.phase_a.imag()}},
                   {"phase_b", {e.phase_b.real(), e.phase_b.imag()}},
                   {"exact", e.exact}});
  j["recurrences"] = rec;
  ojson ex = ojson::array();
  for (const ExchangeEntry& e : sched.exchanges)
    ex.push_back({{"n", e.n}, {"tau", e.tau}, {"time", e.time}, {"theta", e.theta}, {"delta", e.delta}});
  j["exchanges"] = ex;
  ojson exact;
  exact["rational_chi"] = sched.chi_denominator > 0;
  exact["condition_holds"] = sched.rational_exact_recurrence;
  if (sched.chi_denominator > 0) {
    exact["chi_numerator"] = sched.chi_numerator;
    exact["chi_denominator"] = sched.chi_denominator;
  }
  exact["tau"] = sched.rational_exact_recurrence ? ojson(sched.chi_denominator * kPi) : ojson(nullptr);
  j["exact_recurrence"] = exact;
  j["note"] = sched.note;
  return j;
}

}  // namespace twomode
