#pragma once

// Data-parallel complex kernels used by every Fock-space routine.
//
// Each kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2/FMA variant. The variant is picked once at first use from the CPU
// feature bits; setting TWOMODE_ISA=scalar in the environment forces the
// reference path. Both variants are exercised side by side in the kernel
// equivalence tests.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace twomode::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // sum_k conj(x[k]) * y[k]
  cplx (*cdot)(const cplx* x, const cplx* y, std::size_t n);
  // sum_k |x[k]|^2
  double (*norm2)(const cplx* x, std::size_t n);
  // sum_k w[k] |x[k]|^2
  double (*weighted_norm2)(const cplx* x, const double* w, std::size_t n);
  // y[k] += a * x[k]
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // y[k] *= a
  void (*cscale)(cplx a, cplx* y, std::size_t n);
};

const KernelTable& scalar_table();

// Null when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// The table selected for this process.
const KernelTable& active();

std::string_view isa_name(Isa isa);

inline cplx cdot(std::span<const cplx> x, std::span<const cplx> y) {
  return active().cdot(x.data(), y.data(), x.size());
}

inline double norm2(std::span<const cplx> x) { return active().norm2(x.data(), x.size()); }

inline double weighted_norm2(std::span<const cplx> x, std::span<const double> w) {
  return active().weighted_norm2(x.data(), w.data(), x.size());
}

inline void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active().caxpy(a, x.data(), y.data(), x.size());
}

inline void cscale(cplx a, std::span<cplx> y) { active().cscale(a, y.data(), y.size()); }

}  // namespace twomode::kernels
