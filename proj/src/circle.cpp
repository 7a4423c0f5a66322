#include "dvp/circle.hpp"

#include "dvp/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace dvp {

namespace {

double
wrap_value(double x)
{
  if (!std::isfinite(x))
    throw std::domain_error("angle must be finite");
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  // r + 2pi can round up to exactly 2pi for tiny negative x
  if (r >= kTwoPi)
    r = 0.0;
  return r;
}

} // namespace

Angle::Angle(double x)
  : value_(wrap_value(x))
{}

Angle
wrap(double x)
{
  return Angle(x);
}

double
ang_dist(Angle u, Angle v)
{
  double d = std::abs(u.value() - v.value());
  return d > kPi ? kTwoPi - d : d;
}

AngularGrid::AngularGrid(std::size_t size)
  : size_(size)
{
  if (size == 0)
    throw std::invalid_argument("grid size must be positive");
}

std::vector<double>
AngularGrid::points() const
{
  std::vector<double> out(size_);
  for (std::size_t k = 0; k < size_; ++k)
    out[k] = point(k);
  return out;
}

double
Bin::center() const
{
  return kTwoPi * j / (2.0 * n + 1.0);
}

double
Bin::arclength() const
{
  return kTwoPi / (2.0 * n + 1.0);
}

double
Bin::lower() const
{
  return kPi * (2.0 * j - 1.0) / (2.0 * n + 1.0);
}

double
Bin::upper() const
{
  return kPi * (2.0 * j + 1.0) / (2.0 * n + 1.0);
}

bool
Bin::contains(Angle u) const
{
  const double x = u.value();
  if (j == 0)
    return x < upper() || x >= lower() + kTwoPi;
  return lower() <= x && x < upper();
}

int
bin_index(Angle u, int n)
{
  if (n < 0)
    throw std::invalid_argument("degree must be nonnegative");
  const int m = 2 * n + 1;
  // u lies in R_{j,n} iff j <= u (2n+1)/(2pi) + 1/2 < j + 1
  double scaled = u.value() * m / kTwoPi + 0.5;
  int j = static_cast<int>(std::floor(scaled));
  return j >= m ? j - m : j;
}

double
integrate(std::span<const double> values, const AngularGrid& grid)
{
  if (values.size() != grid.size())
    throw std::invalid_argument("values do not match grid size");
  return kernels::sum(values) * grid.weight();
}

} // namespace dvp
