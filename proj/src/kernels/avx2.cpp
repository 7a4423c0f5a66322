// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after the runtime CPU check in dispatch.cpp.

#include "dvp/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace dvp::kernels {
namespace {

inline __m256d
abs_pd(__m256d v)
{
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double
hsum(__m256d v)
{
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double
sum_avx2(const double* x, std::size_t n)
{
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i)
    s += x[i];
  return s;
}

double
abs_sum_avx2(const double* x, std::size_t n)
{
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
    acc1 = _mm256_add_pd(acc1, abs_pd(_mm256_loadu_pd(x + i + 4)));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i)
    s += std::abs(x[i]);
  return s;
}

double
dot_avx2(const double* x, const double* y, std::size_t n)
{
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(
      _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i)
    s += x[i] * y[i];
  return s;
}

void
axpy_avx2(double a, const double* x, double* y, std::size_t n)
{
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i)
    y[i] += a * x[i];
}

double
abs_diff_sum_avx2(const double* x, const double* y, std::size_t n)
{
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, abs_pd(d));
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    s += std::abs(x[i] - y[i]);
  return s;
}

double
sq_diff_sum_avx2(const double* x, const double* y, std::size_t n)
{
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double
sqrt_diff_sq_sum_avx2(const double* x, const double* y, std::size_t n)
{
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_sqrt_pd(_mm256_loadu_pd(x + i)),
                              _mm256_sqrt_pd(_mm256_loadu_pd(y + i)));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    double d = std::sqrt(x[i]) - std::sqrt(y[i]);
    s += d * d;
  }
  return s;
}

} // namespace

const KernelTable&
avx2_table_unchecked()
{
  static const KernelTable table{
    Isa::avx2,         sum_avx2,          abs_sum_avx2,
    dot_avx2,          axpy_avx2,         abs_diff_sum_avx2,
    sq_diff_sum_avx2,  sqrt_diff_sq_sum_avx2,
  };
  return table;
}

} // namespace dvp::kernels
