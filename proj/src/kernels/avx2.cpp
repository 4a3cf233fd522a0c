#include "avx2.hpp"

#include <immintrin.h>

// std::complex<double> is layout-compatible with double[2]; every kernel below
// works on the interleaved (re, im) stream, two complex values per register.

namespace twomode::kernels {
namespace {

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

cplx cdot_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  // same: xr*yr, xi*yi    cross: xr*yi, xi*yr
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  double re = hsum(same);
  double im = (c[0] - c[1]) + (c[2] - c[3]);
  for (; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

double norm2_avx2(const cplx* x, std::size_t n) {
  const double* xd = as_doubles(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return s;
}

double weighted_norm2_avx2(const cplx* x, const double* w, std::size_t n) {
  const double* xd = as_doubles(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    // (w0, w0, w1, w1)
    const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + k)), 0b01010000);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(xv, xv), wv, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += w[k] * (x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
  return s;
}

// (ar + i ai)(xr + i xi) = (ar xr - ai xi) + i (ar xi + ai xr); fmaddsub
// subtracts in even lanes and adds in odd lanes, which is exactly this.
inline __m256d cmul(__m256d ar, __m256d ai, __m256d xv) {
  return _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0b0101)));
}

void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(yv, cmul(ar, ai, xv)));
  }
  for (; k < n; ++k) {
    y[k] = {y[k].real() + a.real() * x[k].real() - a.imag() * x[k].imag(),
            y[k].imag() + a.real() * x[k].imag() + a.imag() * x[k].real()};
  }
}

void cscale_avx2(cplx a, cplx* y, std::size_t n) {
  double* yd = as_doubles(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, cmul(ar, ai, yv));
  }
  for (; k < n; ++k) {
    y[k] = {a.real() * y[k].real() - a.imag() * y[k].imag(),
            a.real() * y[k].imag() + a.imag() * y[k].real()};
  }
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{Isa::avx2, cdot_avx2, norm2_avx2, weighted_norm2_avx2, caxpy_avx2,
                                 cscale_avx2};
  return table;
}

}  // namespace twomode::kernels
