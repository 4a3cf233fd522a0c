#pragma once

// Truncated single- and two-mode Fock-space states and the handful of
// operations the dynamics needs: coherent and cat expansions, tensor product,
// partial trace, purity, number statistics, overlaps and truncation choice.

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace twomode {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultEpsilon = 1e-12;
inline constexpr int kDefaultTruncationCeiling = 256;
// Angles closer than this (mod 2 pi) are treated as equal.
inline constexpr double kAngleTolerance = 1e-12;

enum class Mode { A, B };

// Collects non-fatal diagnostics (tail mass above the requested epsilon,
// coupling outside the rotating-wave regime, ...).
struct Warnings {
  std::vector<std::string> messages;
  void add(std::string message) { messages.push_back(std::move(message)); }
  bool empty() const noexcept { return messages.empty(); }
};

// Reduce to [0, 2 pi).
double reduce_angle(double angle);
bool angle_equals(double a, double b, double tol = kAngleTolerance);
// e^{i angle}, exact at multiples of pi/2 so that parity cancellations are exact.
cplx unit_phase(double angle);

class FockKet {
 public:
  FockKet() = default;
  explicit FockKet(std::vector<cplx> amps, double tail_mass = 0.0);

  static FockKet basis(int n, int n_max);

  int n_max() const noexcept { return static_cast<int>(amps_.size()) - 1; }
  std::span<const cplx> amps() const noexcept { return amps_; }
  cplx operator[](int n) const { return amps_[static_cast<std::size_t>(n)]; }
  double squared_norm() const;
  // Probability mass of the exact state beyond n_max (0 for basis states).
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  std::vector<cplx> amps_{cplx{1.0, 0.0}};
  double tail_mass_ = 0.0;
};

struct CoherentSpec {
  cplx alpha;
};

// (|alpha> + e^{i Phi} |-alpha>) / N with N = sqrt(2 (1 + cos Phi e^{-2|alpha|^2})).
struct CatSpec {
  cplx alpha;
  double Phi = 0.0;

  double normalization() const;
  // Throws NullState when N < 1e-12 (odd cat of the vacuum).
  void validate() const;
};

using StateSpec = std::variant<CoherentSpec, CatSpec>;

// amps[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!), by the running recurrence.
FockKet coherent_ket(cplx alpha, int n_max, double epsilon = kDefaultEpsilon,
                     Warnings* warnings = nullptr);
FockKet cat_ket(const CatSpec& spec, int n_max, double epsilon = kDefaultEpsilon,
                Warnings* warnings = nullptr);

// Exact photon-number populations p[0..n_upto] of a coherent or cat state.
std::vector<double> photon_distribution(const StateSpec& spec, int n_upto);
// sum_{n > n_max} p[n], computed from the populations directly (no 1 - sum).
double fock_tail_mass(const StateSpec& spec, int n_max);

// Smallest n_max such that every listed state has tail mass below epsilon.
// Throws TruncationTooLarge when that exceeds `ceiling`.
int choose_truncation(std::span<const StateSpec> specs, double epsilon = kDefaultEpsilon,
                      int ceiling = kDefaultTruncationCeiling);

// Two-mode amplitudes stored row-major: index = n_a * (n_max_b + 1) + n_b.
class TwoModeKet {
 public:
  TwoModeKet() = default;
  TwoModeKet(int n_max_a, int n_max_b);
  TwoModeKet(int n_max_a, int n_max_b, std::vector<cplx> amps, double tail_mass = 0.0);

  int n_max_a() const noexcept { return n_max_a_; }
  int n_max_b() const noexcept { return n_max_b_; }
  int dim_a() const noexcept { return n_max_a_ + 1; }
  int dim_b() const noexcept { return n_max_b_ + 1; }
  std::size_t size() const noexcept { return amps_.size(); }

  cplx operator()(int n_a, int n_b) const { return amps_[index(n_a, n_b)]; }
  cplx& operator()(int n_a, int n_b) { return amps_[index(n_a, n_b)]; }
  std::span<const cplx> row(int n_a) const;
  std::span<const cplx> amps() const noexcept { return amps_; }
  std::span<cplx> amps() noexcept { return amps_; }

  double squared_norm() const;
  double tail_mass() const noexcept { return tail_mass_; }
  void set_tail_mass(double t) noexcept { tail_mass_ = t; }

 private:
  std::size_t index(int n_a, int n_b) const {
    return static_cast<std::size_t>(n_a) * static_cast<std::size_t>(n_max_b_ + 1) +
           static_cast<std::size_t>(n_b);
  }

  int n_max_a_ = 0;
  int n_max_b_ = 0;
  std::vector<cplx> amps_{cplx{1.0, 0.0}};
  double tail_mass_ = 0.0;
};

TwoModeKet tensor_product(const FockKet& a, const FockKet& b);

// Dense Hermitian operator. Two-mode matrices remember their factor
// dimensions (row index = n_a * dim_b + n_b) so they can be partially traced.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Eigen::MatrixXcd entries);
  DensityMatrix(Eigen::MatrixXcd entries, int dim_a, int dim_b);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  bool is_two_mode() const noexcept { return dim_b_ > 0; }
  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

  cplx trace() const { return entries_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  Eigen::MatrixXcd entries_;
  int dim_a_ = 0;
  int dim_b_ = 0;
};

DensityMatrix projector(const FockKet& ket);
DensityMatrix projector(const TwoModeKet& ket);

DensityMatrix partial_trace(const TwoModeKet& state, Mode keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep);

struct PurityEntropy {
  double purity;
  double entropy;
};

// Purity of rho / Tr rho; entropy = 1 - purity. Assumes Hermitian input.
PurityEntropy purity_and_linear_entropy(const DensityMatrix& rho);

struct NumberStats {
  double mean;
  double variance;
};

// Moments of the number operator for the normalized state.
NumberStats number_statistics(const FockKet& state);
NumberStats number_statistics(const TwoModeKet& state, Mode mode);
NumberStats number_statistics(const DensityMatrix& rho);
NumberStats number_statistics(const DensityMatrix& rho, Mode mode);

// <x|y>; kets of different truncation are compared on the common block
// (the missing amplitudes of the smaller ket are zero).
cplx overlap(const FockKet& x, const FockKet& y);
cplx overlap(const TwoModeKet& x, const TwoModeKet& y);

// |<x|y>|^2 / (<x|x> <y|y>)
double fidelity(const TwoModeKet& x, const TwoModeKet& y);

}  // namespace twomode
