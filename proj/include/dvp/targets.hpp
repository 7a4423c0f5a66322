#pragma once

// Simulation targets and loss functions.
//
//   skewed von Mises: v_a(u) ~ (1 + a sin(u + 1)) exp(3 a cos(u - pi)),  a in [0, 1]
//   w-family:         w_a(u) ~ exp(sin(cos(2u) + sin(3u) + a)),          a in [0, 2pi)

#include "dvp/circle.hpp"
#include "dvp/density.hpp"
#include "dvp/random.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dvp {

enum class TargetFamily
{
  skewed_von_mises,
  w,
};

std::string_view family_name(TargetFamily family);
//! Accepts "skewed-vm" and "w".
std::optional<TargetFamily> parse_family(std::string_view name);

class TargetDensity
{
public:
  TargetDensity(TargetFamily family, double alpha, const AngularGrid& grid);

  TargetFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  const AngularGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double norm_const() const { return norm_const_; }
  double max_value() const { return max_value_; }

  double unnormalized(double u) const;
  double operator()(double u) const { return unnormalized(u) / norm_const_; }

private:
  TargetFamily family_;
  double alpha_;
  AngularGrid grid_;
  std::vector<double> values_;
  double norm_const_;
  double max_value_;
};

//! Throws std::invalid_argument when alpha is outside the family's range.
TargetDensity make_target(TargetFamily family, double alpha, const AngularGrid& grid);

struct TargetSample
{
  std::vector<Angle> points;
  std::size_t proposals;
};

//! Rejection sampling from a uniform envelope at 1.01 x the grid maximum.
TargetSample sample_target_with_stats(const TargetDensity& target, std::size_t count, Rng& rng);
std::vector<Angle> sample_target(const TargetDensity& target, std::size_t count, Rng& rng);

// Losses between two densities sampled on the same grid.

//! integral f0 log(f0/f); +infinity when f vanishes where f0 > 0.
double kl_divergence(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid);
double l1_distance(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid);
//! (integral (f0 - f)^2)^{1/2}
double l2_distance(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid);
//! (integral (sqrt f0 - sqrt f)^2)^{1/2}, in [0, sqrt 2].
double hellinger_distance(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid);

double kl_loss(const TargetDensity& f0, const DensityEstimate& f);
double l1_loss(const TargetDensity& f0, const DensityEstimate& f);
double l2_loss(const TargetDensity& f0, const DensityEstimate& f);
double hellinger_loss(const TargetDensity& f0, const DensityEstimate& f);

enum class LossKind
{
  kl,
  l1,
  l2,
  hellinger,
};

std::string_view loss_name(LossKind loss);
std::optional<LossKind> parse_loss(std::string_view name);
double compute_loss(LossKind loss, const TargetDensity& f0, const DensityEstimate& f);

} // namespace dvp
