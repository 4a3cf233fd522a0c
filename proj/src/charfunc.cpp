#include "twomode/charfunc.hpp"

#include <cmath>
#include <sstream>

#include "twomode/errors.hpp"
#include "twomode/oracle.hpp"

namespace twomode {
namespace {

void check_arguments(cplx eta, cplx zeta) {
  if (std::abs(eta) > kMaxCharArgument || std::abs(zeta) > kMaxCharArgument) {
    std::ostringstream os;
    os << "chi_N_numeric: |eta|=" << std::abs(eta) << ", |zeta|=" << std::abs(zeta)
       << " exceed the supported range " << kMaxCharArgument;
    throw TruncationTooSmall(os.str());
  }
}

bool in_edge(int n, int n_max) { return n >= 1 && n > n_max - 4; }

void check_edge(double edge, double total) {
  if (edge > kCharEdgeMass * total) {
    std::ostringstream os;
    os << "chi_N_numeric: population " << edge / total
       << " in the top four Fock levels; enlarge the truncation";
    throw TruncationTooSmall(os.str());
  }
}

}  // namespace

std::pair<cplx, cplx> bar_parameters(cplx eta, cplx zeta, const EvolutionCoeffs& k) {
  return {eta * std::conj(k.u1) + zeta * std::conj(k.v2),
          eta * std::conj(k.v1) + zeta * std::conj(k.u2)};
}

cplx coherent_char(cplx alpha, cplx eta) {
  return std::exp(eta * std::conj(alpha) - std::conj(eta) * alpha);
}

cplx cat_char(const CatSpec& cat, cplx eta) {
  cat.validate();
  const cplx a = cat.alpha;
  const double N = cat.normalization();
  const cplx phase = unit_phase(cat.Phi);
  const cplx x = eta * std::conj(a);
  const cplx y = std::conj(eta) * a;
  const double overlap = std::exp(-2.0 * std::norm(a));
  return (std::exp(x - y) + std::exp(y - x) +
          overlap * (phase * std::exp(x + y) + std::conj(phase) * std::exp(-x - y))) /
         (N * N);
}

cplx chi_N_closed(const Scenario& s, double tau, cplx eta, cplx zeta) {
  s.validate();
  const ZLabels z = s.labels(tau);
  const double N = s.cat.normalization();
  const cplx phase = unit_phase(s.cat.Phi);
  const double overlap = std::exp(-2.0 * std::norm(s.cat.alpha));
  const cplx ec = std::conj(eta);
  const cplx zc = std::conj(zeta);
  const cplx first = eta * std::conj(z.z1) - ec * z.z1 + zeta * std::conj(z.z3) - zc * z.z3;
  const cplx second = -eta * std::conj(z.z2) + ec * z.z2 - zeta * std::conj(z.z4) + zc * z.z4;
  const cplx up = eta * std::conj(z.z1) + ec * z.z2 + zeta * std::conj(z.z3) + zc * z.z4;
  const cplx down = -eta * std::conj(z.z2) - ec * z.z1 - zeta * std::conj(z.z4) - zc * z.z3;
  return (std::exp(first) + std::exp(second) +
          overlap * (phase * std::exp(up) + std::conj(phase) * std::exp(down))) /
         (N * N);
}

cplx chi_N_factorized(const Scenario& s, double tau, cplx eta, cplx zeta) {
  const auto [eb, zb] = bar_parameters(eta, zeta, s.coeffs(tau));
  return cat_char(s.cat, eb) * coherent_char(s.beta, zb);
}

cplx chi_S_closed(const Scenario& s, double tau, cplx eta, cplx zeta) {
  return chi_N_closed(s, tau, eta, zeta) * std::exp(-0.5 * (std::norm(eta) + std::norm(zeta)));
}

CharPoint char_point(const Scenario& s, double tau, cplx eta, cplx zeta) {
  const auto [eb, zb] = bar_parameters(eta, zeta, s.coeffs(tau));
  return {eta, zeta, eb, zb, chi_N_closed(s, tau, eta, zeta)};
}

int char_truncation(const Scenario& s) { return oracle_truncation(s, kCharTailEpsilon); }

Eigen::MatrixXcd lowering_exponential(cplx c, int n_max) {
  const int d = n_max + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int row = 0; row < d; ++row) {
    cplx entry{1.0, 0.0};
    m(row, row) = entry;
    for (int k = 1; row + k < d; ++k) {
      entry *= c * std::sqrt(static_cast<double>(row + k)) / static_cast<double>(k);
      m(row, row + k) = entry;
    }
  }
  return m;
}

// With L(c) = e^{c a} (x) e^{c' b}, the trace reduces to
// <L(eta^*, zeta^*) psi | L(-eta^*, -zeta^*) psi>: only lowering operators act.
cplx chi_N_numeric(const TwoModeKet& state, cplx eta, cplx zeta) {
  check_arguments(eta, zeta);
  const int da = state.dim_a();
  const int db = state.dim_b();
  using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> psi(state.amps().data(), da, db);

  double edge = 0.0;
  for (int na = 0; na < da; ++na)
    for (int nb = 0; nb < db; ++nb)
      if (in_edge(na, state.n_max_a()) || in_edge(nb, state.n_max_b())) edge += std::norm(psi(na, nb));
  const double total = state.squared_norm();
  check_edge(edge, total);

  const RowMajor left = lowering_exponential(std::conj(eta), state.n_max_a()) * psi *
                        lowering_exponential(std::conj(zeta), state.n_max_b()).transpose();
  const RowMajor right = lowering_exponential(-std::conj(eta), state.n_max_a()) * psi *
                         lowering_exponential(-std::conj(zeta), state.n_max_b()).transpose();
  const cplx value = (left.array().conjugate() * right.array()).sum();
  return value / total;
}

cplx chi_N_numeric(const DensityMatrix& rho, cplx eta, cplx zeta) {
  if (!rho.is_two_mode()) throw DimensionMismatch("chi_N_numeric needs a two-mode density matrix");
  check_arguments(eta, zeta);
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const Eigen::MatrixXcd& r = rho.entries();

  double edge = 0.0;
  for (int na = 0; na < da; ++na)
    for (int nb = 0; nb < db; ++nb)
      if (in_edge(na, da - 1) || in_edge(nb, db - 1)) edge += r(na * db + nb, na * db + nb).real();
  const double total = r.trace().real();
  check_edge(std::abs(edge), total);

  // Tr[rho L1^+ L2] with L1 = L(eta^*, zeta^*), L2 = L(-eta^*, -zeta^*).
  const auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j)
        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
  };
  const Eigen::MatrixXcd l1 = kron(lowering_exponential(std::conj(eta), da - 1),
                                   lowering_exponential(std::conj(zeta), db - 1));
  const Eigen::MatrixXcd l2 = kron(lowering_exponential(-std::conj(eta), da - 1),
                                   lowering_exponential(-std::conj(zeta), db - 1));
  const Eigen::MatrixXcd m = l1.adjoint() * l2;
  // Tr(rho m) = sum_ij rho_ij m_ji
  const cplx value = (r.array() * m.transpose().array()).sum();
  return value / total;
}

std::vector<cplx> char_grid(double extent, int points) {
  if (points < 2) throw PreconditionError("char_grid needs at least 2 points per axis");
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(points * points));
  const double step = 2.0 * extent / (points - 1);
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) out.emplace_back(-extent + i * step, -extent + j * step);
  return out;
}

}  // namespace twomode
