#include "twomode/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twomode/errors.hpp"
#include "twomode/kernels.hpp"

namespace twomode {
namespace {

constexpr double kTwoPi = 2.0 * kPi;

double cos_snapped(double angle) { return unit_phase(angle).real(); }

// Mean photon number and the |alpha|^2 of the underlying coherent branch.
double intensity(const StateSpec& spec) {
  return std::visit([](const auto& s) { return std::norm(s.alpha); }, spec);
}

// Populations are negligible beyond mean + 50 sigma; the ceiling keeps the
// search range independent of the state for small intensities.
int population_horizon(double A, int at_least) {
  const double reach = A + 50.0 * std::sqrt(A) + 60.0;
  return std::max(at_least, static_cast<int>(std::ceil(reach)));
}

std::string describe(const StateSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CatSpec>) {
          os << "cat(alpha=" << s.alpha << ", Phi=" << s.Phi << ")";
        } else {
          os << "coherent(alpha=" << s.alpha << ")";
        }
      },
      spec);
  return os.str();
}

void warn_tail(Warnings* warnings, const char* what, double tail, double epsilon, int n_max) {
  if (warnings == nullptr || tail <= epsilon) return;
  std::ostringstream os;
  os << what << ": tail mass " << tail << " beyond n_max=" << n_max << " exceeds epsilon "
     << epsilon;
  warnings->add(os.str());
}

}  // namespace

double reduce_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

bool angle_equals(double a, double b, double tol) {
  const double d = reduce_angle(a - b);
  return std::min(d, kTwoPi - d) <= tol;
}

cplx unit_phase(double angle) {
  static const cplx quarter[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (int q = 0; q < 4; ++q) {
    if (angle_equals(angle, q * kPi / 2.0)) return quarter[q];
  }
  return std::polar(1.0, angle);
}

// ---------------------------------------------------------------------------
// FockKet

FockKet::FockKet(std::vector<cplx> amps, double tail_mass)
    : amps_(std::move(amps)), tail_mass_(tail_mass) {
  if (amps_.empty()) throw PreconditionError("FockKet needs at least one amplitude (n_max >= 0)");
}

FockKet FockKet::basis(int n, int n_max) {
  if (n_max < 0 || n < 0 || n > n_max) throw PreconditionError("basis state index out of range");
  std::vector<cplx> amps(static_cast<std::size_t>(n_max) + 1);
  amps[static_cast<std::size_t>(n)] = 1.0;
  return FockKet(std::move(amps));
}

double FockKet::squared_norm() const { return kernels::norm2(amps_); }

double CatSpec::normalization() const {
  const double c = cos_snapped(Phi);
  const double A = std::norm(alpha);
  // 1 + c e^{-2A} written so that c = -1 keeps full relative precision.
  const double inner = (1.0 + c) + c * std::expm1(-2.0 * A);
  return std::sqrt(2.0 * std::max(inner, 0.0));
}

void CatSpec::validate() const {
  if (normalization() < 1e-12) {
    std::ostringstream os;
    os << "cat state with alpha=" << alpha << ", Phi=" << Phi << " has vanishing normalization";
    throw NullState(os.str());
  }
}

FockKet coherent_ket(cplx alpha, int n_max, double epsilon, Warnings* warnings) {
  if (n_max < 0) throw PreconditionError("n_max must be >= 0");
  std::vector<cplx> amps(static_cast<std::size_t>(n_max) + 1);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) {
    amps[static_cast<std::size_t>(n)] =
        amps[static_cast<std::size_t>(n) - 1] * alpha / std::sqrt(static_cast<double>(n));
  }
  const double tail = fock_tail_mass(CoherentSpec{alpha}, n_max);
  warn_tail(warnings, "coherent_ket", tail, epsilon, n_max);
  return FockKet(std::move(amps), tail);
}

FockKet cat_ket(const CatSpec& spec, int n_max, double epsilon, Warnings* warnings) {
  spec.validate();
  const FockKet branch = coherent_ket(spec.alpha, n_max, epsilon);
  const cplx phase = unit_phase(spec.Phi);
  const double inv_norm = 1.0 / spec.normalization();
  const cplx even = (1.0 + phase) * inv_norm;
  const cplx odd = (1.0 - phase) * inv_norm;
  std::vector<cplx> amps(branch.amps().begin(), branch.amps().end());
  for (std::size_t n = 0; n < amps.size(); ++n) amps[n] *= (n % 2 == 0) ? even : odd;
  const double tail = fock_tail_mass(spec, n_max);
  warn_tail(warnings, "cat_ket", tail, epsilon, n_max);
  return FockKet(std::move(amps), tail);
}

std::vector<double> photon_distribution(const StateSpec& spec, int n_upto) {
  if (n_upto < 0) throw PreconditionError("n_upto must be >= 0");
  const double A = intensity(spec);
  std::vector<double> p(static_cast<std::size_t>(n_upto) + 1, 0.0);
  if (A == 0.0) {
    p[0] = 1.0;
  } else {
    const double logA = std::log(A);
    for (int n = 0; n <= n_upto; ++n) {
      p[static_cast<std::size_t>(n)] = std::exp(-A + n * logA - std::lgamma(n + 1.0));
    }
  }
  if (const auto* cat = std::get_if<CatSpec>(&spec)) {
    cat->validate();
    const double c = cos_snapped(cat->Phi);
    const double N = cat->normalization();
    const double N2 = N * N;
    if (A == 0.0) return p;  // both branches are the vacuum
    for (int n = 0; n <= n_upto; ++n) {
      const double parity = (n % 2 == 0) ? 1.0 + c : 1.0 - c;
      p[static_cast<std::size_t>(n)] *= 2.0 * parity / N2;
    }
  }
  return p;
}

double fock_tail_mass(const StateSpec& spec, int n_max) {
  const int horizon = population_horizon(intensity(spec), n_max + 1);
  const std::vector<double> p = photon_distribution(spec, horizon);
  double tail = 0.0;
  for (int n = horizon; n > n_max; --n) tail += p[static_cast<std::size_t>(n)];
  return tail;
}

int choose_truncation(std::span<const StateSpec> specs, double epsilon, int ceiling) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  int chosen = 0;
  for (const StateSpec& spec : specs) {
    const int horizon = population_horizon(intensity(spec), ceiling + 1);
    const std::vector<double> p = photon_distribution(spec, horizon);
    // suffix[n] = mass strictly above n, accumulated from the small end.
    double tail = 0.0;
    int n = horizon;
    for (; n > 0; --n) {
      const double next_tail = tail + p[static_cast<std::size_t>(n)];
      if (next_tail >= epsilon) break;
      tail = next_tail;
    }
    // tail == mass above n, and adding p[n] would reach epsilon.
    if (n > ceiling) {
      std::ostringstream os;
      os << describe(spec) << " needs n_max=" << n << " for epsilon=" << epsilon
         << ", above ceiling " << ceiling;
      throw TruncationTooLarge(os.str());
    }
    chosen = std::max(chosen, n);
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// TwoModeKet

TwoModeKet::TwoModeKet(int n_max_a, int n_max_b)
    : n_max_a_(n_max_a),
      n_max_b_(n_max_b),
      amps_(static_cast<std::size_t>(n_max_a + 1) * static_cast<std::size_t>(n_max_b + 1)) {
  if (n_max_a < 0 || n_max_b < 0) throw PreconditionError("truncations must be >= 0");
}

TwoModeKet::TwoModeKet(int n_max_a, int n_max_b, std::vector<cplx> amps, double tail_mass)
    : n_max_a_(n_max_a), n_max_b_(n_max_b), amps_(std::move(amps)), tail_mass_(tail_mass) {
  if (n_max_a < 0 || n_max_b < 0) throw PreconditionError("truncations must be >= 0");
  if (amps_.size() != static_cast<std::size_t>(n_max_a + 1) * static_cast<std::size_t>(n_max_b + 1))
    throw DimensionMismatch("amplitude count does not match (n_max_a+1)(n_max_b+1)");
}

std::span<const cplx> TwoModeKet::row(int n_a) const {
  return std::span<const cplx>(amps_).subspan(index(n_a, 0), static_cast<std::size_t>(dim_b()));
}

double TwoModeKet::squared_norm() const { return kernels::norm2(amps_); }

TwoModeKet tensor_product(const FockKet& a, const FockKet& b) {
  TwoModeKet out(a.n_max(), b.n_max());
  for (int i = 0; i <= a.n_max(); ++i) {
    for (int j = 0; j <= b.n_max(); ++j) out(i, j) = a[i] * b[j];
  }
  out.set_tail_mass(a.tail_mass() + b.tail_mass() - a.tail_mass() * b.tail_mass());
  return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DimensionMismatch("density matrix must be square");
  dim_a_ = static_cast<int>(entries_.rows());
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, int dim_a, int dim_b)
    : entries_(std::move(entries)), dim_a_(dim_a), dim_b_(dim_b) {
  if (entries_.rows() != entries_.cols()) throw DimensionMismatch("density matrix must be square");
  if (static_cast<Eigen::Index>(dim_a) * dim_b != entries_.rows())
    throw DimensionMismatch("mode dimensions do not multiply to the matrix dimension");
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix projector(const FockKet& ket) {
  const auto v = Eigen::Map<const Eigen::VectorXcd>(ket.amps().data(), ket.n_max() + 1);
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix projector(const TwoModeKet& ket) {
  const auto v = Eigen::Map<const Eigen::VectorXcd>(ket.amps().data(),
                                                    static_cast<Eigen::Index>(ket.size()));
  return DensityMatrix(v * v.adjoint(), ket.dim_a(), ket.dim_b());
}

namespace {

// rho(i, j) = sum_k rows[i][k] conj(rows[j][k]) for a row-major block.
Eigen::MatrixXcd gram_of_rows(const cplx* data, int n_rows, int row_len) {
  Eigen::MatrixXcd rho(n_rows, n_rows);
  const auto len = static_cast<std::size_t>(row_len);
  for (int i = 0; i < n_rows; ++i) {
    const cplx* ri = data + static_cast<std::size_t>(i) * len;
    for (int j = 0; j <= i; ++j) {
      const cplx* rj = data + static_cast<std::size_t>(j) * len;
      const cplx v = kernels::active().cdot(rj, ri, len);
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
    rho(i, i) = rho(i, i).real();
  }
  return rho;
}

}  // namespace

DensityMatrix partial_trace(const TwoModeKet& state, Mode keep) {
  if (keep == Mode::A) {
    return DensityMatrix(gram_of_rows(state.amps().data(), state.dim_a(), state.dim_b()));
  }
  std::vector<cplx> transposed(state.size());
  for (int i = 0; i < state.dim_a(); ++i) {
    for (int k = 0; k < state.dim_b(); ++k) {
      transposed[static_cast<std::size_t>(k) * static_cast<std::size_t>(state.dim_a()) +
                 static_cast<std::size_t>(i)] = state(i, k);
    }
  }
  return DensityMatrix(gram_of_rows(transposed.data(), state.dim_b(), state.dim_a()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep) {
  if (!rho.is_two_mode()) throw PreconditionError("partial_trace needs a two-mode density matrix");
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const Eigen::MatrixXcd& m = rho.entries();
  if (keep == Mode::A) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return DensityMatrix(std::move(out));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return DensityMatrix(std::move(out));
}

PurityEntropy purity_and_linear_entropy(const DensityMatrix& rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw PreconditionError("density matrix has non-positive trace");
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  const double sq = kernels::active().norm2(rho.entries().data(),
                                            static_cast<std::size_t>(rho.entries().size()));
  const double purity = sq / (tr * tr);
  return {purity, 1.0 - purity};
}

namespace {

NumberStats stats_from_populations(std::span<const double> p) {
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    total += p[n];
    mean += static_cast<double>(n) * p[n];
  }
  if (!(total > 0.0)) throw PreconditionError("state has zero norm");
  mean /= total;
  double var = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    var += d * d * p[n];
  }
  return {mean, var / total};
}

}  // namespace

NumberStats number_statistics(const FockKet& state) {
  std::vector<double> p(state.amps().size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::norm(state.amps()[n]);
  return stats_from_populations(p);
}

NumberStats number_statistics(const TwoModeKet& state, Mode mode) {
  if (mode == Mode::A) {
    std::vector<double> p(static_cast<std::size_t>(state.dim_a()));
    for (int i = 0; i < state.dim_a(); ++i) p[static_cast<std::size_t>(i)] = kernels::norm2(state.row(i));
    return stats_from_populations(p);
  }
  std::vector<double> p(static_cast<std::size_t>(state.dim_b()), 0.0);
  for (int i = 0; i < state.dim_a(); ++i) {
    const auto r = state.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) p[k] += std::norm(r[k]);
  }
  return stats_from_populations(p);
}

NumberStats number_statistics(const DensityMatrix& rho) {
  if (rho.is_two_mode()) throw PreconditionError("two-mode density matrix needs a mode");
  std::vector<double> p(static_cast<std::size_t>(rho.dim()));
  for (int n = 0; n < rho.dim(); ++n) p[static_cast<std::size_t>(n)] = rho.entries()(n, n).real();
  return stats_from_populations(p);
}

NumberStats number_statistics(const DensityMatrix& rho, Mode mode) {
  if (!rho.is_two_mode()) return number_statistics(rho);
  const int db = rho.dim_b();
  std::vector<double> p(static_cast<std::size_t>(mode == Mode::A ? rho.dim_a() : db), 0.0);
  for (int i = 0; i < rho.dim_a(); ++i) {
    for (int k = 0; k < db; ++k) {
      const double d = rho.entries()(i * db + k, i * db + k).real();
      p[static_cast<std::size_t>(mode == Mode::A ? i : k)] += d;
    }
  }
  return stats_from_populations(p);
}

cplx overlap(const FockKet& x, const FockKet& y) {
  const std::size_t n = std::min(x.amps().size(), y.amps().size());
  return kernels::active().cdot(x.amps().data(), y.amps().data(), n);
}

cplx overlap(const TwoModeKet& x, const TwoModeKet& y) {
  const int rows = std::min(x.dim_a(), y.dim_a());
  const auto cols = static_cast<std::size_t>(std::min(x.dim_b(), y.dim_b()));
  cplx sum = 0.0;
  for (int i = 0; i < rows; ++i) sum += kernels::active().cdot(x.row(i).data(), y.row(i).data(), cols);
  return sum;
}

double fidelity(const TwoModeKet& x, const TwoModeKet& y) {
  return std::norm(overlap(x, y)) / (x.squared_norm() * y.squared_norm());
}

}  // namespace twomode
