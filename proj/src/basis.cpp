#include "dvp/basis.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dvp {

namespace {

void
check_index(int j, int n)
{
  if (n < 0)
    throw std::invalid_argument("basis degree must be nonnegative");
  if (j < 0 || j > 2 * n)
    throw std::out_of_range("basis index " + std::to_string(j) +
                            " outside 0.." + std::to_string(2 * n));
}

} // namespace

double
log_binom(int a, int b)
{
  if (b < 0 || b > a)
    return -std::numeric_limits<double>::infinity();
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

BasisSpec::BasisSpec(int n)
  : n_(n)
{
  if (n < 0)
    throw std::invalid_argument("basis degree must be nonnegative");
  log_norm_ = 2.0 * n * std::log(2.0) - std::log(kTwoPi) - log_binom(2 * n, n);
}

double
BasisSpec::log_kernel(double t) const
{
  if (n_ == 0)
    return log_norm_;
  double c = std::abs(std::cos(0.5 * t));
  if (c == 0.0)
    return -std::numeric_limits<double>::infinity();
  return log_norm_ + 2.0 * n_ * std::log(c);
}

double
BasisSpec::kernel(double t) const
{
  if (n_ == 0)
    return std::exp(log_norm_);
  double c = std::abs(std::cos(0.5 * t));
  if (c == 0.0)
    return 0.0;
  return std::exp(log_norm_ + 2.0 * n_ * std::log(c));
}

double
BasisSpec::log_eval(int j, double u) const
{
  return log_kernel(u - center(j));
}

double
BasisSpec::eval(int j, double u) const
{
  return kernel(u - center(j));
}

double
BasisSpec::derivative(int j, double u) const
{
  if (n_ == 0)
    return 0.0;
  double t = u - center(j);
  double c = std::abs(std::cos(0.5 * t));
  double power = 1.0;
  if (n_ > 1) {
    if (c == 0.0)
      return 0.0;
    power = std::exp(2.0 * (n_ - 1) * std::log(c));
  }
  return -0.5 * n_ * std::sin(t) * std::exp(log_norm_) * power;
}

double
eval_basis(int j, int n, Angle u)
{
  check_index(j, n);
  return BasisSpec(n).eval(j, u.value());
}

double
moment_ratio(int n, int p)
{
  if (n < 0)
    throw std::invalid_argument("basis degree must be nonnegative");
  p = std::abs(p);
  if (p > n)
    return 0.0;
  if (p <= 64) {
    // binom(2n, n-p)/binom(2n, n) = prod_{k=1}^{p} (n - k + 1)/(n + k)
    double r = 1.0;
    for (int k = 1; k <= p; ++k)
      r *= static_cast<double>(n - k + 1) / static_cast<double>(n + k);
    return r;
  }
  return std::exp(log_binom(2 * n, n - p) - log_binom(2 * n, n));
}

std::complex<double>
trig_moment(int j, int n, int p)
{
  check_index(j, n);
  double r = moment_ratio(n, p);
  if (r == 0.0)
    return { 0.0, 0.0 };
  return std::polar(r, kTwoPi * j * p / (2.0 * n + 1.0));
}

std::vector<Angle>
sample_basis(int j, int n, std::size_t count, Rng& rng)
{
  check_index(j, n);
  const double shift = kTwoPi * j / (2.0 * n + 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<Angle> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double sign = coin(rng) ? -1.0 : 1.0;
    double w = sample_beta(0.5, 0.5 + n, rng);
    double u = sign * std::acos(1.0 - 2.0 * w);
    out.emplace_back(u + shift);
  }
  return out;
}

ElevationMatrix::ElevationMatrix(int n, int r)
  : n_(n)
  , r_(r)
{
  if (n < 0 || r < 0)
    throw std::invalid_argument("elevation needs n >= 0 and r >= 0");
  const int m = n + r;
  const int src = 2 * n + 1;
  const int dst = 2 * m + 1;

  // 2 binom(2m, m) binom(2n, k) / (binom(2n, n) binom(2m, k + r))
  std::vector<double> a(n);
  for (int k = 0; k < n; ++k) {
    a[k] = 2.0 * std::exp(log_binom(2 * m, m) - log_binom(2 * n, n) +
                          log_binom(2 * n, k) - log_binom(2 * m, k + r));
  }

  d_.assign(static_cast<std::size_t>(src) * dst, 0.0);
  for (int j = 0; j < src; ++j) {
    for (int l = 0; l < dst; ++l) {
      double s = 1.0;
      for (int k = 0; k < n; ++k) {
        double f = 2.0 * (n - k) * kPi;
        s += a[k] * std::cos(f * l / dst - f * j / src);
      }
      d_[static_cast<std::size_t>(j) * dst + l] = s / dst;
    }
  }
}

std::vector<double>
ElevationMatrix::apply(std::span<const double> coeffs) const
{
  if (static_cast<int>(coeffs.size()) != rows())
    throw std::invalid_argument("coefficient count does not match 2n+1");
  std::vector<double> out(cols(), 0.0);
  for (int j = 0; j < rows(); ++j) {
    auto rj = row(j);
    for (int l = 0; l < cols(); ++l)
      out[l] += coeffs[j] * rj[l];
  }
  return out;
}

ElevationMatrix
elevation_matrix(int n, int r)
{
  return ElevationMatrix(n, r);
}

std::optional<Elevation>
elevate_to_nonnegative(std::span<const double> coeffs, int n, std::optional<int> max_r)
{
  if (n < 0 || static_cast<int>(coeffs.size()) != 2 * n + 1)
    throw std::invalid_argument("coefficient count does not match 2n+1");
  double total = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("coefficients must sum to one");

  const int cap = max_r.value_or(64 * n);
  for (int r = 0; r <= cap; ++r) {
    std::vector<double> w = r == 0 ? std::vector<double>(coeffs.begin(), coeffs.end())
                                   : ElevationMatrix(n, r).apply(coeffs);
    bool nonnegative = true;
    for (double x : w)
      nonnegative = nonnegative && x >= 0.0;
    if (nonnegative)
      return Elevation{ r, std::move(w) };
  }
  return std::nullopt;
}

} // namespace dvp
