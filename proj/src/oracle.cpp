#include "twomode/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twomode/errors.hpp"
#include "twomode/kernels.hpp"

namespace twomode {

LadderMatrices LadderMatrices::make(int n_max) {
  if (n_max < 0) throw PreconditionError("ladder truncation must be >= 0");
  LadderMatrices m;
  m.n_max = n_max;
  m.annihilate = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  m.number = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    m.number(n, n) = n;
    if (n > 0) m.annihilate(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return m;
}

PropagatorBundle::PropagatorBundle(double phi, int n_max_a, int n_max_b)
    : phi_(phi), n_max_a_(n_max_a), n_max_b_(n_max_b) {
  if (n_max_a < 0 || n_max_b < 0) throw PreconditionError("truncations must be >= 0");
  if (n_max_a > kDefaultTruncationCeiling || n_max_b > kDefaultTruncationCeiling) {
    std::ostringstream os;
    os << "truncation " << std::max(n_max_a, n_max_b) << " exceeds ceiling "
       << kDefaultTruncationCeiling;
    throw TruncationTooLarge(os.str());
  }
  const cplx raise = unit_phase(phi);
  const auto db = static_cast<std::size_t>(n_max_b + 1);
  for (int total = 0; total <= n_max_a + n_max_b; ++total) {
    Sector sec;
    const int lo = std::max(0, total - n_max_b);
    const int hi = std::min(total, n_max_a);
    const int size = hi - lo + 1;
    for (int k = lo; k <= hi; ++k)
      sec.index.push_back(static_cast<std::size_t>(k) * db + static_cast<std::size_t>(total - k));
    // <k+1, total-k-1| e^{i phi} a^+ b |k, total-k> = e^{i phi} sqrt(k+1) sqrt(total-k)
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
    for (int j = 0; j + 1 < size; ++j) {
      const int k = lo + j;
      const cplx elem = raise * std::sqrt(static_cast<double>(k + 1) * (total - k));
      h(j + 1, j) = elem;
      h(j, j + 1) = std::conj(elem);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    sec.vectors = solver.eigenvectors();
    sec.values = solver.eigenvalues();
    sectors_.push_back(std::move(sec));
  }
}

Eigen::MatrixXcd PropagatorBundle::hamiltonian() const {
  const LadderMatrices a = LadderMatrices::make(n_max_a_);
  const LadderMatrices b = LadderMatrices::make(n_max_b_);
  const int da = n_max_a_ + 1;
  const int db = n_max_b_ + 1;
  // a^+ (x) b
  Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(dim(), dim());
  const Eigen::MatrixXcd ad = a.annihilate.adjoint();
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      if (ad(i, j) != cplx{}) hop.block(i * db, j * db, db, db) = ad(i, j) * b.annihilate;
  const Eigen::MatrixXcd term = unit_phase(phi_) * hop;
  return term + term.adjoint();
}

Eigen::MatrixXcd PropagatorBundle::propagator(double tau) const {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const Sector& sec : sectors_) {
    const Eigen::VectorXcd phases =
        (sec.values.cast<cplx>() * cplx(0.0, -tau)).array().exp().matrix();
    const Eigen::MatrixXcd block = sec.vectors * phases.asDiagonal() * sec.vectors.adjoint();
    for (std::size_t r = 0; r < sec.index.size(); ++r)
      for (std::size_t c = 0; c < sec.index.size(); ++c)
        u(static_cast<Eigen::Index>(sec.index[r]), static_cast<Eigen::Index>(sec.index[c])) =
            block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return u;
}

Eigen::VectorXd PropagatorBundle::sector_eigenvalues(int total) const {
  if (total < 0 || total >= static_cast<int>(sectors_.size()))
    throw PreconditionError("no such total-number sector");
  return sectors_[static_cast<std::size_t>(total)].values;
}

TwoModeKet PropagatorBundle::apply(const TwoModeKet& state, double tau) const {
  if (state.n_max_a() != n_max_a_ || state.n_max_b() != n_max_b_) {
    std::ostringstream os;
    os << "state truncation (" << state.n_max_a() << ", " << state.n_max_b()
       << ") does not match propagator (" << n_max_a_ << ", " << n_max_b_ << ")";
    throw DimensionMismatch(os.str());
  }
  TwoModeKet out(n_max_a_, n_max_b_);
  std::vector<cplx> local;
  std::vector<cplx> result;
  for (const Sector& sec : sectors_) {
    const std::size_t size = sec.index.size();
    local.resize(size);
    result.assign(size, cplx{});
    for (std::size_t j = 0; j < size; ++j) local[j] = state.amps()[sec.index[j]];
    for (std::size_t m = 0; m < size; ++m) {
      const cplx* column = sec.vectors.data() + m * size;
      const cplx coeff = kernels::cdot({column, size}, local) *
                         std::polar(1.0, -sec.values(static_cast<Eigen::Index>(m)) * tau);
      kernels::caxpy(coeff, {column, size}, result);
    }
    for (std::size_t j = 0; j < size; ++j) out.amps()[sec.index[j]] = result[j];
  }
  out.set_tail_mass(state.tail_mass());
  return out;
}

PropagatorBundle rwc_hamiltonian(double phi, int n_max_a, int n_max_b) {
  return PropagatorBundle(phi, n_max_a, n_max_b);
}

TwoModeKet evolve(const TwoModeKet& state, const PropagatorBundle& bundle, double tau) {
  return bundle.apply(state, tau);
}

int oracle_truncation(const Scenario& s, double epsilon, int ceiling) {
  s.validate();
  const std::vector<StateSpec> specs{s.cat, CoherentSpec{s.beta}};
  int n_max = choose_truncation(specs, epsilon, ceiling) + 4;

  // Total-number distribution of the initial state; conserved by the coupling,
  // and any state with n_a + n_b <= n_max fits the box in either mode.
  const int horizon = 2 * ceiling + 2;
  const std::vector<double> pa = photon_distribution(specs[0], horizon);
  const std::vector<double> pb = photon_distribution(specs[1], horizon);
  std::vector<double> total(static_cast<std::size_t>(horizon + 1), 0.0);
  for (int i = 0; i <= horizon; ++i)
    for (int j = 0; i + j <= horizon; ++j)
      total[static_cast<std::size_t>(i + j)] +=
          pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)];
  double tail = 0.0;
  int smallest = horizon;
  for (int n = horizon; n >= 0; --n) {
    if (tail + total[static_cast<std::size_t>(n)] >= epsilon) {
      smallest = n;
      break;
    }
    tail += total[static_cast<std::size_t>(n)];
  }
  n_max = std::max(n_max, smallest);
  if (n_max > ceiling) {
    std::ostringstream os;
    os << "oracle truncation " << n_max << " exceeds ceiling " << ceiling;
    throw TruncationTooLarge(os.str());
  }
  return n_max;
}

TwoModeKet initial_state(const Scenario& s, int n_max) {
  s.validate();
  return tensor_product(cat_ket(s.cat, n_max), coherent_ket(s.beta, n_max));
}

std::vector<ObservableRecord> observe_grid(const Scenario& s, const std::vector<double>& taus,
                                           int n_max) {
  s.validate();
  if (!is_resonant(s)) {
    std::ostringstream os;
    os << "oracle propagation needs Omega = 0, got " << s.coupling.detuning();
    throw DetuningNotSupported(os.str());
  }
  const PropagatorBundle bundle = rwc_hamiltonian(s.coupling.phi, n_max, n_max);
  const TwoModeKet start = initial_state(s, n_max);
  const TwoModeKet reference = exchanged_initial_state(s, n_max);
  const double reference_norm = reference.squared_norm();

  std::vector<double> total_weight(start.size());
  for (int na = 0; na <= n_max; ++na)
    for (int nb = 0; nb <= n_max; ++nb)
      total_weight[static_cast<std::size_t>(na * (n_max + 1) + nb)] = na + nb;
  std::vector<double> total_sq(total_weight.size());
  std::transform(total_weight.begin(), total_weight.end(), total_sq.begin(),
                 [](double w) { return w * w; });

  std::vector<ObservableRecord> out;
  out.reserve(taus.size());
  for (const double tau : taus) {
    const TwoModeKet psi = bundle.apply(start, tau);
    const double norm = psi.squared_norm();
    const PurityEntropy ea = purity_and_linear_entropy(partial_trace(psi, Mode::A));
    const PurityEntropy eb = purity_and_linear_entropy(partial_trace(psi, Mode::B));
    const NumberStats sa = number_statistics(psi, Mode::A);
    const NumberStats sb = number_statistics(psi, Mode::B);
    const double total_mean = kernels::weighted_norm2(psi.amps(), total_weight) / norm;
    const double total_second = kernels::weighted_norm2(psi.amps(), total_sq) / norm;
    ObservableRecord r;
    r.tau = tau;
    r.entropy_a = ea.entropy;
    r.entropy_b = eb.entropy;
    r.n_a = sa.mean;
    r.n_b = sb.mean;
    r.var_a = sa.variance;
    r.var_b = sb.variance;
    r.exchange_e = std::norm(overlap(reference, psi)) / (reference_norm * norm);
    r.total_n = total_mean;
    r.total_var = total_second - total_mean * total_mean;
    out.push_back(r);
  }
  return out;
}

AnalyticModel AnalyticModel::closed_forms() {
  AnalyticModel m;
  m.entropy = entropy_closed_form;
  m.n_a = [](const Scenario& s, double t) { return mean_excitations(s, t).n_a; };
  m.n_b = [](const Scenario& s, double t) { return mean_excitations(s, t).n_b; };
  m.var_a = [](const Scenario& s, double t) { return number_moments_closed(s, t).var_a; };
  m.var_b = [](const Scenario& s, double t) { return number_moments_closed(s, t).var_b; };
  m.exchange = exchange_functional_closed;
  return m;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ObservableCheck& c) { return c.passed; });
}

namespace {

struct Accumulator {
  std::string name;
  double tolerance;
  double worst = 0.0;
  double worst_tau = 0.0;
  bool finite = true;

  void add(double tau, double deviation) {
    if (!std::isfinite(deviation)) finite = false;
    if (deviation > worst || !std::isfinite(deviation)) {
      worst = deviation;
      worst_tau = tau;
    }
  }
  ObservableCheck finish() const {
    return {name, tolerance, worst, worst_tau, finite && worst <= tolerance};
  }
};

}  // namespace

VerificationReport verify_against_analytic(const Scenario& s, const std::vector<double>& taus,
                                           const Tolerances& tol, const AnalyticModel& model,
                                           std::optional<int> n_max) {
  VerificationReport report;
  report.n_max = n_max ? *n_max : oracle_truncation(s);
  const std::vector<ObservableRecord> records = observe_grid(s, taus, report.n_max);
  const bool exchange = has_exchange_phase(s) && static_cast<bool>(model.exchange);

  Accumulator entropy_a{"entropy_a", tol.entropy};
  Accumulator entropy_b{"entropy_b", tol.entropy};
  Accumulator n_a{"n_a", tol.mean};
  Accumulator n_b{"n_b", tol.mean};
  Accumulator var_a{"var_a", tol.variance};
  Accumulator var_b{"var_b", tol.variance};
  Accumulator exch{"exchange_e", tol.exchange};
  Accumulator total{"total_n_drift", tol.conservation};
  Accumulator total_var{"total_var_drift", tol.conservation};
  Accumulator purity_gap{"entropy_a_minus_b", tol.conservation};

  const double total0 = records.empty() ? 0.0 : records.front().total_n;
  const double total_var0 = records.empty() ? 0.0 : records.front().total_var;
  for (const ObservableRecord& r : records) {
    const double s_closed = model.entropy(s, r.tau);
    entropy_a.add(r.tau, std::abs(r.entropy_a - s_closed));
    entropy_b.add(r.tau, std::abs(r.entropy_b - s_closed));
    n_a.add(r.tau, std::abs(r.n_a - model.n_a(s, r.tau)));
    n_b.add(r.tau, std::abs(r.n_b - model.n_b(s, r.tau)));
    var_a.add(r.tau, std::abs(r.var_a - model.var_a(s, r.tau)));
    var_b.add(r.tau, std::abs(r.var_b - model.var_b(s, r.tau)));
    if (exchange) exch.add(r.tau, std::abs(r.exchange_e - model.exchange(s, r.tau)));
    total.add(r.tau, std::abs(r.total_n - total0));
    total_var.add(r.tau, std::abs(r.total_var - total_var0));
    purity_gap.add(r.tau, std::abs(r.entropy_a - r.entropy_b));
  }
  for (const Accumulator* a : {&entropy_a, &entropy_b, &n_a, &n_b, &var_a, &var_b})
    report.checks.push_back(a->finish());
  if (exchange) report.checks.push_back(exch.finish());
  for (const Accumulator* a : {&total, &total_var, &purity_gap}) report.checks.push_back(a->finish());
  return report;
}

}  // namespace twomode
