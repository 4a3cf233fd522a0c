#include "twomode/kernels.hpp"

namespace twomode::kernels {
namespace {

cplx cdot_ref(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

double norm2_ref(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return s;
}

double weighted_norm2_ref(const cplx* x, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    s += w[k] * (x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
  return s;
}

void caxpy_ref(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = {y[k].real() + a.real() * x[k].real() - a.imag() * x[k].imag(),
            y[k].imag() + a.real() * x[k].imag() + a.imag() * x[k].real()};
  }
}

void cscale_ref(cplx a, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = {a.real() * y[k].real() - a.imag() * y[k].imag(),
            a.real() * y[k].imag() + a.imag() * y[k].real()};
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, cdot_ref, norm2_ref, weighted_norm2_ref, caxpy_ref,
                                 cscale_ref};
  return table;
}

}  // namespace twomode::kernels
