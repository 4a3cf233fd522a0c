#pragma once

// Closed-form dynamics of two modes under rotating-wave (up-conversion)
// coupling. Everything here lives in the interaction picture: the fast
// factors e^{-i w_a t}, e^{-i w_b t} are dropped, which leaves every scalar
// observable unchanged. Time is the dimensionless slow time tau = omega t;
// on resonance tau = lambda t.

#include <optional>
#include <string>
#include <vector>

#include "twomode/fock.hpp"

namespace twomode {

struct ModeCoupling {
  double omega_a = 100.0;
  double omega_b = 60.0;
  double nu = 40.0;
  double lambda = 1.0;
  double phi = kPi / 2.0;  // pump phase

  double detuning() const noexcept { return omega_a - omega_b - nu; }
  // Throws PreconditionError unless lambda > 0.
  void validate() const;
  // Set when lambda or |Omega| is not below 0.1 min(omega_a, omega_b).
  std::optional<std::string> rotating_wave_warning() const;
};

struct DerivedParams {
  double Omega;       // detuning omega_a - omega_b - nu
  double chi;         // Omega / (2 omega_slow), |chi| < 1
  double omega_slow;  // sqrt(Omega^2 + 4 lambda^2) / 2
};

DerivedParams derived_coupling(const ModeCoupling& c);

// Heisenberg solution a~(tau) = u1 a + v1 b, b~(tau) = u2 b + v2 a.
struct EvolutionCoeffs {
  double tau;
  cplx u1, u2, v1, v2;
};

EvolutionCoeffs evolution_coeffs(double tau, double chi, double phi);

// Coherent labels of the two branches of the evolved joint state.
struct ZLabels {
  cplx z1, z2, z3, z4;
};

ZLabels z_labels(const EvolutionCoeffs& coeffs, cplx alpha, cplx beta);

// Mode A starts as a cat state, mode B as the coherent state |beta>.
struct Scenario {
  CatSpec cat;
  cplx beta;
  ModeCoupling coupling;

  void validate() const;
  DerivedParams derived() const { return derived_coupling(coupling); }
  EvolutionCoeffs coeffs(double tau) const;
  ZLabels labels(double tau) const;

  // Resonant scenario (Omega = 0) with lambda = 1.
  static Scenario resonant(cplx alpha, double Phi, cplx beta, double pump_phase = kPi / 2.0);
  // Resonant scenario with the balanced-intensity |beta| and arg beta = arg alpha.
  static Scenario balanced(cplx alpha, double Phi, double pump_phase = kPi / 2.0);
};

// (|z1> (x) |z3> + e^{i Phi} |-z2> (x) |-z4>) / N in the truncated basis.
TwoModeKet joint_state(const Scenario& s, double tau, int n_max);

// Reduced state of mode A assembled from its four coherent dyads.
DensityMatrix reduced_state_closed(const Scenario& s, double tau, int n_max);

// Linear entropy of either mode. Resonance only.
double entropy_closed_form(const Scenario& s, double tau);

struct MeanExcitations {
  double n_a;
  double n_b;
};

// Mean photon numbers (energies divided by hbar omega_{a,b}). Resonance only.
MeanExcitations mean_excitations(const Scenario& s, double tau);

struct NumberMoments {
  double mean_a, var_a;
  double mean_b, var_b;
};

// Means and variances of both number operators from the factorial moments
// <a^+k a^k> of the coherent-dyad expansion. Resonance only, any Phi and beta.
NumberMoments number_moments_closed(const Scenario& s, double tau);

// Variance of n_A for even/odd cats with balanced intensities and real
// alpha beta^*. Throws UnsupportedPhase for other Phi, PreconditionError when
// beta is not balanced or alpha beta^* is not real.
double variance_closed_form(const Scenario& s, double tau);

// Explicit trigonometric form of the same variance at pump phase pi/2.
// `odd` selects Phi = pi.
double variance_balanced_trig(double alpha_sq, bool odd, double tau);

// |beta|^2 that freezes both mean energies.
double balanced_intensity(cplx alpha, double Phi);

// State-exchange functional, closed form. Needs Omega = 0 and pump phase pi/2.
double exchange_functional_closed(const Scenario& s, double tau);

// |<Psi_BA(0)|Psi_AB(tau)>|^2 / norms, with Psi_BA(0) = |beta>_A (x) cat_B.
double exchange_functional_overlap(const Scenario& s, double tau, int n_max);

// The exchanged reference state |beta>_A (x) cat(alpha, Phi)_B.
TwoModeKet exchanged_initial_state(const Scenario& s, int n_max);

// Initial state with rotated labels, cat(alpha e^{i pi (1 + chi)}) (x)
// |beta e^{i pi (1 - chi)}>, which the evolution reaches at tau = pi.
TwoModeKet recurrence_reference(const Scenario& s, int n_max);

struct RecurrenceEntry {
  int n;
  double tau;        // n pi
  double time;       // tau / omega_slow, in units of 1/lambda
  cplx phase_a;      // e^{i n pi (1 + chi)}
  cplx phase_b;      // e^{i n pi (1 - chi)}
  bool exact;        // both phases equal 1
};

struct ExchangeEntry {
  int n;
  double tau;    // (n - 1/2) pi
  double time;   // tau / lambda
  double theta;  // (n + 1) pi, phase of a~ -> b(0)
  double delta;  // n pi, phase of b~ -> a(0)
};

struct ExchangeSchedule {
  double recurrence_time;        // pi / omega_slow
  std::optional<double> exchange_time;  // pi / (2 lambda) on resonance with phi = pi/2
  std::vector<RecurrenceEntry> recurrences;
  std::vector<ExchangeEntry> exchanges;
  // chi = m/q in lowest terms with m < q and m + q even.
  bool rational_exact_recurrence = false;
  int chi_numerator = 0;
  int chi_denominator = 0;
  std::string note;
};

ExchangeSchedule special_times(const Scenario& s, int n_terms);

// True when the scenario sits on resonance (|Omega| <= 1e-12 lambda).
bool is_resonant(const Scenario& s);
bool has_exchange_phase(const Scenario& s);

}  // namespace twomode
