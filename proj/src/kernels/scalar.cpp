#include "dvp/kernels.hpp"

#include <cmath>

namespace dvp::kernels {
namespace {

double
sum_scalar(const double* x, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i];
  return s;
}

double
abs_sum_scalar(const double* x, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += std::abs(x[i]);
  return s;
}

double
dot_scalar(const double* x, const double* y, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i] * y[i];
  return s;
}

void
axpy_scalar(double a, const double* x, double* y, std::size_t n)
{
  for (std::size_t i = 0; i < n; ++i)
    y[i] += a * x[i];
}

double
abs_diff_sum_scalar(const double* x, const double* y, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += std::abs(x[i] - y[i]);
  return s;
}

double
sq_diff_sum_scalar(const double* x, const double* y, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double
sqrt_diff_sq_sum_scalar(const double* x, const double* y, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::sqrt(x[i]) - std::sqrt(y[i]);
    s += d * d;
  }
  return s;
}

} // namespace

const KernelTable&
scalar_table()
{
  static const KernelTable table{
    Isa::scalar,         sum_scalar,          abs_sum_scalar,
    dot_scalar,          axpy_scalar,         abs_diff_sum_scalar,
    sq_diff_sum_scalar,  sqrt_diff_sq_sum_scalar,
  };
  return table;
}

} // namespace dvp::kernels
