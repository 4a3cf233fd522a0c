#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "twomode/errors.hpp"
#include "twomode/oracle.hpp"

namespace twomode {

std::vector<EvolutionCoeffs> integrate_heisenberg(double chi, double phi, double tau_end,
                                                  double step, int stride) {
  if (!(std::abs(chi) < 1.0)) throw PreconditionError("|chi| must be below 1");
  if (!(step > 0.0) || !(tau_end >= 0.0) || stride < 1)
    throw PreconditionError("integrate_heisenberg: bad step, end or stride");

  // (u1, v1, v2, u2): a~ = u1 a + v1 b, b~ = v2 a + u2 b.
  using State = std::array<cplx, 4>;
  const double k = std::sqrt(1.0 - chi * chi);
  const auto rhs = [chi, phi, k](const State& x, State& dx, double tau) {
    const cplx up = cplx(0.0, -k) * std::polar(1.0, 2.0 * chi * tau + phi);
    const cplx down = cplx(0.0, -k) * std::polar(1.0, -(2.0 * chi * tau + phi));
    dx[0] = up * x[2];
    dx[1] = up * x[3];
    dx[2] = down * x[0];
    dx[3] = down * x[1];
  };

  boost::numeric::odeint::runge_kutta4<State> stepper;
  State x{cplx{1.0, 0.0}, cplx{}, cplx{}, cplx{1.0, 0.0}};
  const auto steps = static_cast<long>(std::ceil(tau_end / step - 1e-9));
  std::vector<EvolutionCoeffs> out;
  out.push_back({0.0, x[0], x[3], x[1], x[2]});
  for (long i = 0; i < steps; ++i) {
    const double t0 = static_cast<double>(i) * step;
    const double h = std::min(step, tau_end - t0);
    stepper.do_step(rhs, x, t0, h);
    if ((i + 1) % stride == 0 || i + 1 == steps) out.push_back({t0 + h, x[0], x[3], x[1], x[2]});
  }
  return out;
}

}  // namespace twomode
