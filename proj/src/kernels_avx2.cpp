// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "nof1/kernels.hpp"

namespace nof1::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double sum(const double* v, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(v + i + 4));
  }
  if (i + 4 <= n) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += v[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double centered_index_dot(const double* v, std::size_t n) {
  const double mid = 0.5 * static_cast<double>(n - 1);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d x = _mm256_setr_pd(-mid, 1.0 - mid, 2.0 - mid, 3.0 - mid);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(x, _mm256_loadu_pd(v + i), acc);
    x = _mm256_add_pd(x, step);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += (static_cast<double>(i) - mid) * v[i];
  return s;
}

void center(const double* y, double mu, double* out, std::size_t n) {
  const __m256d m = _mm256_set1_pd(mu);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), m));
  for (; i < n; ++i) out[i] = y[i] - mu;
}

void detrend(const double* y, double mu, double beta, double* out, std::size_t n) {
  const double mid = 0.5 * static_cast<double>(n - 1);
  const __m256d m = _mm256_set1_pd(mu);
  const __m256d b = _mm256_set1_pd(beta);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d x = _mm256_setr_pd(-mid, 1.0 - mid, 2.0 - mid, 3.0 - mid);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_sub_pd(_mm256_loadu_pd(y + i), m);
    r = _mm256_sub_pd(r, _mm256_mul_pd(b, x));
    _mm256_storeu_pd(out + i, r);
    x = _mm256_add_pd(x, step);
  }
  for (; i < n; ++i) out[i] = y[i] - mu - beta * (static_cast<double>(i) - mid);
}

}  // namespace nof1::kernels::avx2
