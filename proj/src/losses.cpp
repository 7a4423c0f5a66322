#include "dvp/targets.hpp"

#include "dvp/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dvp {

namespace {

void
check_shapes(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid)
{
  if (f0.size() != grid.size() || f.size() != grid.size())
    throw std::invalid_argument("densities must share the loss grid");
}

} // namespace

double
kl_divergence(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid)
{
  check_shapes(f0, f, grid);
  double s = 0.0;
  for (std::size_t k = 0; k < f0.size(); ++k) {
    if (f0[k] <= 0.0)
      continue;
    if (f[k] <= 0.0)
      return std::numeric_limits<double>::infinity();
    s += f0[k] * std::log(f0[k] / f[k]);
  }
  return s * grid.weight();
}

double
l1_distance(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid)
{
  check_shapes(f0, f, grid);
  return kernels::abs_diff_sum(f0, f) * grid.weight();
}

double
l2_distance(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid)
{
  check_shapes(f0, f, grid);
  return std::sqrt(kernels::sq_diff_sum(f0, f) * grid.weight());
}

double
hellinger_distance(std::span<const double> f0, std::span<const double> f, const AngularGrid& grid)
{
  check_shapes(f0, f, grid);
  return std::sqrt(kernels::sqrt_diff_sq_sum(f0, f) * grid.weight());
}

namespace {

const AngularGrid&
shared_grid(const TargetDensity& f0, const DensityEstimate& f)
{
  if (!(f0.grid() == f.grid))
    throw std::invalid_argument("target and estimate live on different grids");
  return f.grid;
}

} // namespace

double
kl_loss(const TargetDensity& f0, const DensityEstimate& f)
{
  return kl_divergence(f0.values(), f.values, shared_grid(f0, f));
}

double
l1_loss(const TargetDensity& f0, const DensityEstimate& f)
{
  return l1_distance(f0.values(), f.values, shared_grid(f0, f));
}

double
l2_loss(const TargetDensity& f0, const DensityEstimate& f)
{
  return l2_distance(f0.values(), f.values, shared_grid(f0, f));
}

double
hellinger_loss(const TargetDensity& f0, const DensityEstimate& f)
{
  return hellinger_distance(f0.values(), f.values, shared_grid(f0, f));
}

std::string_view
loss_name(LossKind loss)
{
  switch (loss) {
    case LossKind::kl:
      return "kl";
    case LossKind::l1:
      return "l1";
    case LossKind::l2:
      return "l2";
    case LossKind::hellinger:
      return "hellinger";
  }
  return "unknown";
}

std::optional<LossKind>
parse_loss(std::string_view name)
{
  for (LossKind k : { LossKind::kl, LossKind::l1, LossKind::l2, LossKind::hellinger })
    if (loss_name(k) == name)
      return k;
  return std::nullopt;
}

double
compute_loss(LossKind loss, const TargetDensity& f0, const DensityEstimate& f)
{
  switch (loss) {
    case LossKind::kl:
      return kl_loss(f0, f);
    case LossKind::l1:
      return l1_loss(f0, f);
    case LossKind::l2:
      return l2_loss(f0, f);
    case LossKind::hellinger:
      return hellinger_loss(f0, f);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace dvp
