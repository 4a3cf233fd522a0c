#include "twomode/analytic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "twomode/errors.hpp"

namespace twomode {
namespace {

constexpr cplx kI{0.0, 1.0};

// 1 + c e^{-2A} and 1 - c e^{-2A}, accurate when the constant parts cancel.
double one_plus(double c, double A) { return (1.0 + c) + c * std::expm1(-2.0 * A); }
double one_minus(double c, double A) { return (1.0 - c) - c * std::expm1(-2.0 * A); }

double cos_snapped(double angle) { return unit_phase(angle).real(); }

// <x|y> for coherent states.
cplx coherent_overlap(cplx x, cplx y) {
  return std::exp(-0.5 * std::norm(x) - 0.5 * std::norm(y) + std::conj(x) * y);
}

void require_resonant(const Scenario& s, const char* what) {
  if (!is_resonant(s)) {
    std::ostringstream os;
    os << what << " is only available on resonance (Omega = 0); got Omega = "
       << s.coupling.detuning();
    throw DetuningNotSupported(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Coupling

void ModeCoupling::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "coupling strength lambda must be positive, got " << lambda;
    throw PreconditionError(os.str());
  }
  if (!std::isfinite(omega_a) || !std::isfinite(omega_b) || !std::isfinite(nu) ||
      !std::isfinite(phi))
    throw PreconditionError("coupling parameters must be finite");
}

std::optional<std::string> ModeCoupling::rotating_wave_warning() const {
  const double limit = 0.1 * std::min(omega_a, omega_b);
  if (lambda < limit && std::abs(detuning()) < limit) return std::nullopt;
  std::ostringstream os;
  os << "rotating-wave regime not satisfied: lambda=" << lambda << ", |Omega|=" << std::abs(detuning())
     << " should be below " << limit;
  return os.str();
}

DerivedParams derived_coupling(const ModeCoupling& c) {
  c.validate();
  const double Omega = c.detuning();
  const double omega_slow = 0.5 * std::hypot(Omega, 2.0 * c.lambda);
  return {Omega, Omega / (2.0 * omega_slow), omega_slow};
}

EvolutionCoeffs evolution_coeffs(double tau, double chi, double phi) {
  if (!(std::abs(chi) < 1.0)) throw PreconditionError("|chi| must be below 1");
  const double c = std::cos(tau);
  const double sn = std::sin(tau);
  const cplx slow = std::polar(1.0, chi * tau);
  const cplx u1 = slow * cplx(c, -chi * sn);
  const cplx v1 = -kI * std::sqrt(1.0 - chi * chi) * slow * unit_phase(phi) * sn;
  return {tau, u1, std::conj(u1), v1, -std::conj(v1)};
}

ZLabels z_labels(const EvolutionCoeffs& k, cplx alpha, cplx beta) {
  return {k.u1 * alpha + k.v1 * beta, k.u1 * alpha - k.v1 * beta, k.v2 * alpha + k.u2 * beta,
          k.v2 * alpha - k.u2 * beta};
}

// ---------------------------------------------------------------------------
// Scenario

void Scenario::validate() const {
  coupling.validate();
  cat.validate();
}

EvolutionCoeffs Scenario::coeffs(double tau) const {
  return evolution_coeffs(tau, derived().chi, coupling.phi);
}

ZLabels Scenario::labels(double tau) const { return z_labels(coeffs(tau), cat.alpha, beta); }

Scenario Scenario::resonant(cplx alpha, double Phi, cplx beta, double pump_phase) {
  Scenario s{CatSpec{alpha, Phi}, beta, ModeCoupling{}};
  s.coupling.phi = pump_phase;
  return s;
}

Scenario Scenario::balanced(cplx alpha, double Phi, double pump_phase) {
  const double mag = std::sqrt(balanced_intensity(alpha, Phi));
  const cplx beta = std::abs(alpha) > 0.0 ? mag * alpha / std::abs(alpha) : cplx{mag, 0.0};
  return resonant(alpha, Phi, beta, pump_phase);
}

bool is_resonant(const Scenario& s) {
  return std::abs(s.coupling.detuning()) <= 1e-12 * s.coupling.lambda;
}

bool has_exchange_phase(const Scenario& s) { return angle_equals(s.coupling.phi, kPi / 2.0); }

// ---------------------------------------------------------------------------
// States

TwoModeKet joint_state(const Scenario& s, double tau, int n_max) {
  s.validate();
  const ZLabels z = s.labels(tau);
  const double inv_norm = 1.0 / s.cat.normalization();
  const TwoModeKet first = tensor_product(coherent_ket(z.z1, n_max), coherent_ket(z.z3, n_max));
  const TwoModeKet second = tensor_product(coherent_ket(-z.z2, n_max), coherent_ket(-z.z4, n_max));
  const cplx phase = unit_phase(s.cat.Phi);
  std::vector<cplx> amps(first.size());
  for (std::size_t k = 0; k < amps.size(); ++k)
    amps[k] = (first.amps()[k] + phase * second.amps()[k]) * inv_norm;
  TwoModeKet out(n_max, n_max, std::move(amps));
  out.set_tail_mass(std::max(0.0, 1.0 - out.squared_norm()));
  return out;
}

DensityMatrix reduced_state_closed(const Scenario& s, double tau, int n_max) {
  s.validate();
  const ZLabels z = s.labels(tau);
  const double N = s.cat.normalization();
  const auto ket = [n_max](cplx label) {
    const FockKet k = coherent_ket(label, n_max);
    return Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(k.amps().data(), n_max + 1));
  };
  const Eigen::VectorXcd first = ket(z.z1);
  const Eigen::VectorXcd second = ket(-z.z2);
  // Magnitude is the decoherence factor exp[-|alpha|^2 (1 - cos 2 tau)] on resonance.
  const cplx coherence = std::conj(unit_phase(s.cat.Phi)) * coherent_overlap(-z.z4, z.z3);
  Eigen::MatrixXcd rho = first * first.adjoint() + second * second.adjoint();
  const Eigen::MatrixXcd cross = coherence * (first * second.adjoint());
  rho += cross + cross.adjoint();
  return DensityMatrix(rho / (N * N));
}

// ---------------------------------------------------------------------------
// Observables

double entropy_closed_form(const Scenario& s, double tau) {
  s.validate();
  require_resonant(s, "entropy_closed_form");
  const double A = std::norm(s.cat.alpha);
  const double c = cos_snapped(s.cat.Phi);
  const double c2 = cos_snapped(2.0 * s.cat.Phi);
  const double N2 = 2.0 * one_plus(c, A);
  const double cos2t = std::cos(2.0 * tau);
  // The two branches keep their mutual overlap, so the interference terms are
  // time independent; only the dyad overlaps within each mode move.
  const double bracket = 1.0 + std::exp(-2.0 * A * (1.0 + cos2t)) +
                         std::exp(-2.0 * A * (1.0 - cos2t)) + 4.0 * c * std::exp(-2.0 * A) +
                         c2 * std::exp(-4.0 * A);
  return 1.0 - 2.0 * bracket / (N2 * N2);
}

MeanExcitations mean_excitations(const Scenario& s, double tau) {
  s.validate();
  require_resonant(s, "mean_excitations");
  const double A = std::norm(s.cat.alpha);
  const double B = std::norm(s.beta);
  const double c = cos_snapped(s.cat.Phi);
  const double sPhi = unit_phase(s.cat.Phi).imag();
  const double N2 = 2.0 * one_plus(c, A);
  const double cos_sq = std::cos(tau) * std::cos(tau);
  const double sin_sq = std::sin(tau) * std::sin(tau);
  // Re(alpha beta^* e^{-i phi}); equals Im(alpha beta^*) at phi = pi/2.
  const double cross = (s.cat.alpha * std::conj(s.beta) * std::conj(unit_phase(s.coupling.phi))).real();
  const double interference = cross * std::sin(2.0 * tau) * sPhi * std::exp(-2.0 * A);
  const double lo = one_minus(c, A);
  const double hi = one_plus(c, A);
  return {2.0 / N2 * (A * cos_sq * lo + B * sin_sq * hi + interference),
          2.0 / N2 * (A * sin_sq * lo + B * cos_sq * hi - interference)};
}

NumberMoments number_moments_closed(const Scenario& s, double tau) {
  s.validate();
  require_resonant(s, "number_moments_closed");
  const ZLabels z = s.labels(tau);
  const double A = std::norm(s.cat.alpha);
  const double N = s.cat.normalization();
  const double N2 = N * N;
  // e^{-i Phi} <-z2, -z4 | z1, z3>, conserved by the unitary evolution.
  const cplx g = std::conj(unit_phase(s.cat.Phi)) * std::exp(-2.0 * A);
  const auto moments = [&](cplx x, cplx y, double& mean, double& var) {
    const cplx xy = std::conj(y) * x;
    mean = (std::norm(x) + std::norm(y) - 2.0 * (g * xy).real()) / N2;
    const double fact2 =
        (std::norm(x) * std::norm(x) + std::norm(y) * std::norm(y) + 2.0 * (g * xy * xy).real()) / N2;
    var = fact2 + mean - mean * mean;
  };
  NumberMoments m{};
  moments(z.z1, z.z2, m.mean_a, m.var_a);
  moments(z.z3, z.z4, m.mean_b, m.var_b);
  return m;
}

double variance_closed_form(const Scenario& s, double tau) {
  s.validate();
  require_resonant(s, "variance_closed_form");
  if (!angle_equals(s.cat.Phi, 0.0) && !angle_equals(s.cat.Phi, kPi)) {
    std::ostringstream os;
    os << "variance closed form needs Phi in {0, pi}, got " << s.cat.Phi;
    throw UnsupportedPhase(os.str());
  }
  const double target = balanced_intensity(s.cat.alpha, s.cat.Phi);
  if (std::abs(std::norm(s.beta) - target) > 1e-9 * std::max(1.0, target))
    throw PreconditionError("variance closed form needs the balanced-intensity |beta|^2");
  const cplx ab = s.cat.alpha * std::conj(s.beta);
  if (std::abs(ab.imag()) > 1e-12 * std::max(1.0, std::abs(ab)))
    throw PreconditionError("variance closed form needs real alpha beta^*");
  return number_moments_closed(s, tau).var_a;
}

double variance_balanced_trig(double alpha_sq, bool odd, double tau) {
  const double A = alpha_sq;
  const double r = odd ? 1.0 / std::tanh(A) : std::tanh(A);
  const double c = std::cos(tau) * std::cos(tau);
  const double sn = std::sin(tau) * std::sin(tau);
  return A * A * (c * c - r * r + r * r * sn * sn + (2.0 * r + 4.0 * r * r) * c * sn) + A * r;
}

double balanced_intensity(cplx alpha, double Phi) {
  const double A = std::norm(alpha);
  const double c = cos_snapped(Phi);
  if (c < -1.0 + 1e-12 && A < 1e-8)
    throw NullState("balanced intensity diverges for the odd cat as alpha -> 0");
  const double den = one_plus(c, A);
  if (den <= 1e-12) throw NullState("balanced intensity denominator vanishes");
  return A * one_minus(c, A) / den;
}

double exchange_functional_closed(const Scenario& s, double tau) {
  s.validate();
  require_resonant(s, "exchange_functional_closed");
  if (!has_exchange_phase(s)) {
    std::ostringstream os;
    os << "exchange functional closed form needs pump phase pi/2, got " << s.coupling.phi;
    throw DetuningNotSupported(os.str());
  }
  const cplx alpha = s.cat.alpha;
  const double A = std::norm(alpha);
  const double B = std::norm(s.beta);
  const double N = s.cat.normalization();
  const double N4 = N * N * N * N;
  const double Phi = s.cat.Phi;
  const ZLabels z = s.labels(tau);
  const cplx ab = alpha * std::conj(s.beta);
  const double ct = std::cos(tau);
  const double st = std::sin(tau);
  const double R = ab.real();
  const double shifted = Phi - 2.0 * ct * ab.imag();

  const double bracket = std::exp(2.0 * ct * R) * std::cosh(2.0 * (alpha * std::conj(z.z3)).real()) +
                         std::exp(-2.0 * ct * R) * std::cosh(2.0 * (alpha * std::conj(z.z4)).real()) +
                         std::exp(-2.0 * st * A) + 4.0 * std::cosh(2.0 * ct * R) * std::cos(shifted) +
                         std::exp(2.0 * st * A) * std::cos(2.0 * shifted);
  const double value = 2.0 * std::exp(-2.0 * (A + B * (1.0 - st))) / N4 * bracket;
  if (!(value >= -1e-10 && value <= 1.0 + 1e-10)) {
    std::ostringstream os;
    os << "exchange functional " << value << " outside [0, 1] at tau=" << tau;
    throw Error(os.str());
  }
  return value;
}

TwoModeKet exchanged_initial_state(const Scenario& s, int n_max) {
  s.validate();
  return tensor_product(coherent_ket(s.beta, n_max), cat_ket(s.cat, n_max));
}

TwoModeKet recurrence_reference(const Scenario& s, int n_max) {
  s.validate();
  const double chi = s.derived().chi;
  const CatSpec rotated{s.cat.alpha * unit_phase(kPi * (1.0 + chi)), s.cat.Phi};
  return tensor_product(cat_ket(rotated, n_max),
                        coherent_ket(s.beta * unit_phase(kPi * (1.0 - chi)), n_max));
}

double exchange_functional_overlap(const Scenario& s, double tau, int n_max) {
  const TwoModeKet evolved = joint_state(s, tau, n_max);
  const TwoModeKet reference = exchanged_initial_state(s, n_max);
  return fidelity(reference, evolved);
}

// ---------------------------------------------------------------------------
// Characteristic times

ExchangeSchedule special_times(const Scenario& s, int n_terms) {
  if (n_terms < 1) throw PreconditionError("n_terms must be >= 1");
  s.validate();
  const DerivedParams d = s.derived();
  ExchangeSchedule out;
  out.recurrence_time = kPi / d.omega_slow;
  for (int n = 1; n <= n_terms; ++n) {
    RecurrenceEntry e;
    e.n = n;
    e.tau = n * kPi;
    e.time = e.tau / d.omega_slow;
    e.phase_a = unit_phase(n * kPi * (1.0 + d.chi));
    e.phase_b = unit_phase(n * kPi * (1.0 - d.chi));
    e.exact = std::abs(e.phase_a - 1.0) <= 1e-12 && std::abs(e.phase_b - 1.0) <= 1e-12;
    out.recurrences.push_back(e);
  }

  const double chi = std::abs(d.chi);
  for (int q = 2; q <= 1000; ++q) {
    const double m = std::round(chi * q);
    if (m >= 1.0 && m < q && std::abs(m / q - chi) <= 1e-12) {
      const int mi = static_cast<int>(m);
      if (std::gcd(mi, q) != 1) continue;
      out.chi_numerator = mi;
      out.chi_denominator = q;
      out.rational_exact_recurrence = (mi + q) % 2 == 0;
      break;
    }
  }

  const bool resonant = is_resonant(s);
  const bool pump_ok = has_exchange_phase(s);
  if (resonant && pump_ok) {
    out.exchange_time = kPi / (2.0 * s.coupling.lambda);
    for (int n = 1; n <= n_terms; ++n) {
      const double tau = (n - 0.5) * kPi;
      out.exchanges.push_back({n, tau, tau / s.coupling.lambda, (n + 1) * kPi, n * kPi});
    }
    out.note = "modes exchange configuration at tau'_n = (n - 1/2) pi; recurrence period is twice that";
  } else if (!resonant) {
    out.note = "no state exchange: u1 vanishes only on resonance (Omega = 0)";
  } else {
    out.note = "no exchange schedule: the exchange phases assume pump phase phi = pi/2";
  }
  return out;
}

}  // namespace twomode
