#pragma once

// Data-parallel arithmetic kernels used by quadrature, losses and grid
// evaluation. Every kernel has a scalar reference version; vectorised
// variants (AVX2+FMA on x86-64, NEON on aarch64) are selected once at
// runtime and must agree with the scalar reference up to summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace dvp::kernels {

enum class Isa
{
  scalar,
  avx2,
  neon,
};

std::string_view isa_name(Isa isa);

struct KernelTable
{
  Isa isa;
  double (*sum)(const double* x, std::size_t n);
  double (*abs_sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*abs_diff_sum)(const double* x, const double* y, std::size_t n);
  double (*sq_diff_sum)(const double* x, const double* y, std::size_t n);
  // sum (sqrt(x) - sqrt(y))^2, inputs nonnegative
  double (*sqrt_diff_sq_sum)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_table();
//! nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

//! Best table for this machine. DVP_FORCE_SCALAR=1 in the environment pins
//! the scalar reference.
const KernelTable& active();

double sum(std::span<const double> x);
double abs_sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
double abs_diff_sum(std::span<const double> x, std::span<const double> y);
double sq_diff_sum(std::span<const double> x, std::span<const double> y);
double sqrt_diff_sq_sum(std::span<const double> x, std::span<const double> y);

} // namespace dvp::kernels
