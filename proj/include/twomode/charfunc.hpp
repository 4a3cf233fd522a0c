#pragma once

// Normally ordered characteristic function
//   chi_N(eta, zeta) = Tr[rho e^{eta a^+} e^{-eta^* a} e^{zeta b^+} e^{-zeta^* b}]
// of the evolved cat (x) coherent state, in closed form and by direct trace.

#include <utility>
#include <vector>

#include "twomode/analytic.hpp"

namespace twomode {

struct CharPoint {
  cplx eta, zeta;
  cplx eta_bar, zeta_bar;
  cplx chi_value;
};

// Parameters carrying the time dependence: chi_N(eta, zeta; tau) equals the
// initial-state function at (eta_bar, zeta_bar).
std::pair<cplx, cplx> bar_parameters(cplx eta, cplx zeta, const EvolutionCoeffs& coeffs);

// Single-mode normally ordered characteristic functions.
cplx coherent_char(cplx alpha, cplx eta);
cplx cat_char(const CatSpec& cat, cplx eta);

// Four-exponential closed form from the coherent-branch labels.
cplx chi_N_closed(const Scenario& s, double tau, cplx eta, cplx zeta);
// cat_char(eta_bar) * coherent_char(beta, zeta_bar).
cplx chi_N_factorized(const Scenario& s, double tau, cplx eta, cplx zeta);
// Symmetrically ordered version, chi_N e^{-(|eta|^2 + |zeta|^2)/2}.
cplx chi_S_closed(const Scenario& s, double tau, cplx eta, cplx zeta);

CharPoint char_point(const Scenario& s, double tau, cplx eta, cplx zeta);

// Direct trace in the truncated basis. Throws TruncationTooSmall when
// |eta| or |zeta| exceeds kMaxCharArgument or the state carries more than
// kCharEdgeMass in the top four levels of either mode.
inline constexpr double kMaxCharArgument = 3.0;
inline constexpr double kCharEdgeMass = 2e-16;

cplx chi_N_numeric(const TwoModeKet& state, cplx eta, cplx zeta);
cplx chi_N_numeric(const DensityMatrix& rho, cplx eta, cplx zeta);

// Truncation for direct traces on the default grid: the oracle rule with a
// total-number tail of kCharTailEpsilon, which keeps the trace error near 1e-10.
inline constexpr double kCharTailEpsilon = 1e-20;
int char_truncation(const Scenario& s);

// Truncated matrix of e^{c a}; exact on the retained block since a only lowers.
Eigen::MatrixXcd lowering_exponential(cplx c, int n_max);

// points x points square grid over [-extent, extent]^2 in the complex plane.
std::vector<cplx> char_grid(double extent = 1.5, int points = 5);

}  // namespace twomode
