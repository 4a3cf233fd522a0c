#pragma once

// Brute-force reference path: the resonant coupling Hamiltonian in the
// truncated two-mode basis, exact unitary propagation, and every observable
// recomputed from the propagated state.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twomode/analytic.hpp"

namespace twomode {

struct LadderMatrices {
  int n_max = 0;
  Eigen::MatrixXcd annihilate;  // sqrt(n) on the first superdiagonal
  Eigen::MatrixXd number;

  static LadderMatrices make(int n_max);
};

// H / (hbar lambda) = e^{i phi} a^+ b + e^{-i phi} a b^+ on {0..n_max_a} x {0..n_max_b},
// U(tau) = exp(-i H tau). H conserves n_a + n_b, so it is stored and
// diagonalized one total-number sector at a time.
class PropagatorBundle {
 public:
  PropagatorBundle(double phi, int n_max_a, int n_max_b);

  double phi() const noexcept { return phi_; }
  int n_max_a() const noexcept { return n_max_a_; }
  int n_max_b() const noexcept { return n_max_b_; }
  int dim() const noexcept { return (n_max_a_ + 1) * (n_max_b_ + 1); }

  Eigen::MatrixXcd hamiltonian() const;
  Eigen::MatrixXcd propagator(double tau) const;
  // Spectrum of the sector with the given total excitation number.
  Eigen::VectorXd sector_eigenvalues(int total) const;

  TwoModeKet apply(const TwoModeKet& state, double tau) const;

 private:
  struct Sector {
    std::vector<std::size_t> index;  // joint flat indices, ordered by n_a
    Eigen::MatrixXcd vectors;        // column-major eigenvectors
    Eigen::VectorXd values;
  };

  double phi_;
  int n_max_a_;
  int n_max_b_;
  std::vector<Sector> sectors_;
};

PropagatorBundle rwc_hamiltonian(double phi, int n_max_a, int n_max_b);

// Throws DimensionMismatch when the state and bundle truncations differ.
TwoModeKet evolve(const TwoModeKet& state, const PropagatorBundle& bundle, double tau);

// Per-mode truncation (choose_truncation + 4 guard levels), raised until the
// total excitation number tail of the initial state is below epsilon.
int oracle_truncation(const Scenario& s, double epsilon = kDefaultEpsilon,
                      int ceiling = kDefaultTruncationCeiling);

// The initial cat (x) coherent state.
TwoModeKet initial_state(const Scenario& s, int n_max);

struct ObservableRecord {
  double tau;
  double entropy_a, entropy_b;
  double n_a, n_b;
  double var_a, var_b;
  double exchange_e;
  double total_n;
  double total_var;
};

// Throws DetuningNotSupported for Omega != 0.
std::vector<ObservableRecord> observe_grid(const Scenario& s, const std::vector<double>& taus,
                                           int n_max);

// Closed-form evaluators compared against the oracle. Swappable so that a
// corrupted model can be fed in as a negative control.
struct AnalyticModel {
  using Fn = std::function<double(const Scenario&, double)>;
  Fn entropy, n_a, n_b, var_a, var_b, exchange;

  static AnalyticModel closed_forms();
};

struct Tolerances {
  double entropy = 1e-8;
  double mean = 1e-8;
  double variance = 1e-8;
  double exchange = 1e-8;
  double conservation = 1e-10;
};

struct ObservableCheck {
  std::string name;
  double tolerance;
  double max_deviation;
  double worst_tau;
  bool passed;
};

struct VerificationReport {
  int n_max;
  std::vector<ObservableCheck> checks;
  bool passed() const;
};

VerificationReport verify_against_analytic(const Scenario& s, const std::vector<double>& taus,
                                           const Tolerances& tol = {},
                                           const AnalyticModel& model = AnalyticModel::closed_forms(),
                                           std::optional<int> n_max = std::nullopt);

// Fixed-step RK4 solution of the Heisenberg equations
//   d a~/dtau = -i sqrt(1 - chi^2) e^{i(2 chi tau + phi)} b~,
//   d b~/dtau = -i sqrt(1 - chi^2) e^{-i(2 chi tau + phi)} a~,
// sampled every `stride` steps (and at the end).
std::vector<EvolutionCoeffs> integrate_heisenberg(double chi, double phi, double tau_end,
                                                  double step, int stride = 1);

}  // namespace twomode
