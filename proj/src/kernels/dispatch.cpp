#include "dvp/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

namespace dvp::kernels {

#if defined(DVP_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif
#if defined(DVP_HAVE_NEON)
const KernelTable& neon_table_unchecked();
#endif

std::string_view
isa_name(Isa isa)
{
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable*
avx2_table()
{
#if defined(DVP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
    __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable*
neon_table()
{
#if defined(DVP_HAVE_NEON)
  return &neon_table_unchecked();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable&
select_table()
{
  if (const char* force = std::getenv("DVP_FORCE_SCALAR");
      force != nullptr && std::string(force) == "1")
    return scalar_table();
  if (const KernelTable* t = avx2_table())
    return *t;
  if (const KernelTable* t = neon_table())
    return *t;
  return scalar_table();
}

} // namespace

const KernelTable&
active()
{
  static const KernelTable& table = select_table();
  return table;
}

double
sum(std::span<const double> x)
{
  return active().sum(x.data(), x.size());
}

double
abs_sum(std::span<const double> x)
{
  return active().abs_sum(x.data(), x.size());
}

double
dot(std::span<const double> x, std::span<const double> y)
{
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void
axpy(double a, std::span<const double> x, std::span<double> y)
{
  assert(x.size() == y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

double
abs_diff_sum(std::span<const double> x, std::span<const double> y)
{
  assert(x.size() == y.size());
  return active().abs_diff_sum(x.data(), y.data(), x.size());
}

double
sq_diff_sum(std::span<const double> x, std::span<const double> y)
{
  assert(x.size() == y.size());
  return active().sq_diff_sum(x.data(), y.data(), x.size());
}

double
sqrt_diff_sq_sum(std::span<const double> x, std::span<const double> y)
{
  assert(x.size() == y.size());
  return active().sqrt_diff_sq_sum(x.data(), y.data(), x.size());
}

} // namespace dvp::kernels
