#pragma once

#include <complex>
#include <random>
#include <vector>

namespace test_support {

using cplx = std::complex<double>;

inline std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

inline cplx random_cplx(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

}  // namespace test_support
