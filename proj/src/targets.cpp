#include "dvp/targets.hpp"

#include "dvp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dvp {

namespace {

constexpr std::size_t kNormGrid = 8192;
constexpr double kEnvelopeInflation = 1.01;

} // namespace

std::string_view
family_name(TargetFamily family)
{
  switch (family) {
    case TargetFamily::skewed_von_mises:
      return "skewed-vm";
    case TargetFamily::w:
      return "w";
  }
  return "unknown";
}

std::optional<TargetFamily>
parse_family(std::string_view name)
{
  if (name == "skewed-vm")
    return TargetFamily::skewed_von_mises;
  if (name == "w")
    return TargetFamily::w;
  return std::nullopt;
}

TargetDensity::TargetDensity(TargetFamily family, double alpha, const AngularGrid& grid)
  : family_(family)
  , alpha_(alpha)
  , grid_(grid)
{
  switch (family) {
    case TargetFamily::skewed_von_mises:
      if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("skewed-vm alpha must lie in [0, 1]");
      break;
    case TargetFamily::w:
      if (!(alpha >= 0.0 && alpha < kTwoPi))
        throw std::invalid_argument("w-family alpha must lie in [0, 2pi)");
      break;
  }

  const AngularGrid norm_grid(std::max(kNormGrid, grid.size()));
  std::vector<double> fine(norm_grid.size());
  for (std::size_t k = 0; k < fine.size(); ++k)
    fine[k] = unnormalized(norm_grid.point(k));
  norm_const_ = integrate(fine, norm_grid);

  values_.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    values_[k] = unnormalized(grid.point(k)) / norm_const_;
  max_value_ = std::max(*std::max_element(fine.begin(), fine.end()) / norm_const_,
                        *std::max_element(values_.begin(), values_.end()));
}

double
TargetDensity::unnormalized(double u) const
{
  switch (family_) {
    case TargetFamily::skewed_von_mises:
      // 1 + a sin(.) >= 0 for a <= 1; clamp the rounding at the zero
      return std::max(0.0, 1.0 + alpha_ * std::sin(u + 1.0)) *
             std::exp(3.0 * alpha_ * std::cos(u - kPi));
    case TargetFamily::w:
      return std::exp(std::sin(std::cos(2.0 * u) + std::sin(3.0 * u) + alpha_));
  }
  return 0.0;
}

TargetDensity
make_target(TargetFamily family, double alpha, const AngularGrid& grid)
{
  return TargetDensity(family, alpha, grid);
}

TargetSample
sample_target_with_stats(const TargetDensity& target, std::size_t count, Rng& rng)
{
  const double envelope = kEnvelopeInflation * target.max_value();
  TargetSample out{ {}, 0 };
  out.points.reserve(count);
  while (out.points.size() < count) {
    double u = kTwoPi * uniform01(rng);
    double y = envelope * uniform01(rng);
    ++out.proposals;
    if (y < target(u))
      out.points.emplace_back(u);
  }
  return out;
}

std::vector<Angle>
sample_target(const TargetDensity& target, std::size_t count, Rng& rng)
{
  return sample_target_with_stats(target, count, rng).points;
}

double
DensityEstimate::integral() const
{
  return integrate(values, grid);
}

} // namespace dvp
