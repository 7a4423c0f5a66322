// NEON variants for aarch64, where Advanced SIMD is part of the baseline ISA.

#include "dvp/kernels.hpp"

#include <arm_neon.h>
#include <cmath>

namespace dvp::kernels {
namespace {

double
sum_neon(const double* x, std::size_t n)
{
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i)
    s += x[i];
  return s;
}

double
abs_sum_neon(const double* x, std::size_t n)
{
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i)
    s += std::abs(x[i]);
  return s;
}

double
dot_neon(const double* x, const double* y, std::size_t n)
{
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i)
    s += x[i] * y[i];
  return s;
}

void
axpy_neon(double a, const double* x, double* y, std::size_t n)
{
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i)
    y[i] += a * x[i];
}

double
abs_diff_sum_neon(const double* x, const double* y, std::size_t n)
{
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i)
    s += std::abs(x[i] - y[i]);
  return s;
}

double
sq_diff_sum_neon(const double* x, const double* y, std::size_t n)
{
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    acc = vfmaq_f64(acc, d, d);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double
sqrt_diff_sq_sum_neon(const double* x, const double* y, std::size_t n)
{
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d =
      vsubq_f64(vsqrtq_f64(vld1q_f64(x + i)), vsqrtq_f64(vld1q_f64(y + i)));
    acc = vfmaq_f64(acc, d, d);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    double d = std::sqrt(x[i]) - std::sqrt(y[i]);
    s += d * d;
  }
  return s;
}

} // namespace

const KernelTable&
neon_table_unchecked()
{
  static const KernelTable table{
    Isa::neon,         sum_neon,          abs_sum_neon,
    dot_neon,          axpy_neon,         abs_diff_sum_neon,
    sq_diff_sum_neon,  sqrt_diff_sq_sum_neon,
  };
  return table;
}

} // namespace dvp::kernels
