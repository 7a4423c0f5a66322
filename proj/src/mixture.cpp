#include "dvp/mixture.hpp"

#include "dvp/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dvp {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {
  0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363
};
constexpr std::array<double, 4> kGlWeights = {
  0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763
};
constexpr int kPanelsPerBin = 32; // 32 panels x 8 nodes = 256 nodes per bin

double
gauss_legendre(const std::function<double(double)>& f, double a, double b)
{
  double total = 0.0;
  double h = (b - a) / kPanelsPerBin;
  for (int p = 0; p < kPanelsPerBin; ++p) {
    double mid = a + (p + 0.5) * h;
    double half = 0.5 * h;
    double s = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k)
      s += kGlWeights[k] * (f(mid - half * kGlNodes[k]) + f(mid + half * kGlNodes[k]));
    total += s * half;
  }
  return total;
}

DvpMixture
from_bin_masses(int n, std::vector<double> masses)
{
  for (double& c : masses) {
    if (!(c >= -1e-12))
      throw std::invalid_argument("input is not a density: negative bin mass");
    c = std::max(c, 0.0);
  }
  double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("input is not a density: total mass differs from one");
  for (double& c : masses)
    c /= total;
  // absorb the last rounding residue so the weights sum to one exactly
  double drift = 1.0 - std::accumulate(masses.begin(), masses.end(), 0.0);
  *std::max_element(masses.begin(), masses.end()) += drift;
  return DvpMixture(n, std::move(masses));
}

} // namespace

DvpMixture::DvpMixture(int n, std::vector<double> weights)
  : spec_(n)
  , weights_(std::move(weights))
{
  if (static_cast<int>(weights_.size()) != spec_.size())
    throw std::invalid_argument("mixture needs 2n+1 weights");
  double total = 0.0;
  for (double c : weights_) {
    if (!(c >= 0.0))
      throw std::invalid_argument("mixture weights must be nonnegative");
    total += c;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture weights must sum to one");
}

DvpMixture
DvpMixture::uniform(int n)
{
  return DvpMixture(n, std::vector<double>(2 * n + 1, 1.0 / (2 * n + 1)));
}

DvpMixture
DvpMixture::one_hot(int n, int j)
{
  if (j < 0 || j > 2 * n)
    throw std::out_of_range("mixture index out of range");
  std::vector<double> w(2 * n + 1, 0.0);
  w[j] = 1.0;
  return DvpMixture(n, std::move(w));
}

double
DvpMixture::operator()(double u) const
{
  double s = 0.0;
  for (int j = 0; j < spec_.size(); ++j)
    if (weights_[j] != 0.0)
      s += weights_[j] * spec_.eval(j, u);
  return s;
}

double
DvpMixture::derivative(double u) const
{
  double s = 0.0;
  for (int j = 0; j < spec_.size(); ++j)
    if (weights_[j] != 0.0)
      s += weights_[j] * spec_.derivative(j, u);
  return s;
}

std::vector<double>
DvpMixture::on_grid(const AngularGrid& grid) const
{
  std::vector<double> out(grid.size(), 0.0);
  std::vector<double> row(grid.size());
  for (int j = 0; j < spec_.size(); ++j) {
    if (weights_[j] == 0.0)
      continue;
    for (std::size_t k = 0; k < grid.size(); ++k)
      row[k] = spec_.eval(j, grid.point(k));
    kernels::axpy(weights_[j], row, out);
  }
  return out;
}

std::vector<double>
DvpMixture::derivative_on_grid(const AngularGrid& grid) const
{
  std::vector<double> out(grid.size(), 0.0);
  std::vector<double> row(grid.size());
  for (int j = 0; j < spec_.size(); ++j) {
    if (weights_[j] == 0.0)
      continue;
    for (std::size_t k = 0; k < grid.size(); ++k)
      row[k] = spec_.derivative(j, grid.point(k));
    kernels::axpy(weights_[j], row, out);
  }
  return out;
}

double
eval_mixture(const DvpMixture& m, Angle u)
{
  return m(u.value());
}

double
mixture_derivative(const DvpMixture& m, Angle u)
{
  return m.derivative(u.value());
}

std::vector<std::vector<double>>
basis_table(int n, const AngularGrid& grid)
{
  BasisSpec spec(n);
  std::vector<std::vector<double>> table(spec.size(), std::vector<double>(grid.size()));
  for (int j = 0; j < spec.size(); ++j)
    for (std::size_t k = 0; k < grid.size(); ++k)
      table[j][k] = spec.eval(j, grid.point(k));
  return table;
}

DvpMixture
discretized_operator(const std::function<double(double)>& f, int n)
{
  if (n < 0)
    throw std::invalid_argument("degree must be nonnegative");
  const int m = 2 * n + 1;
  std::vector<double> masses(m);
  for (int j = 0; j < m; ++j) {
    Bin bin{ j, n };
    masses[j] = gauss_legendre(f, bin.lower(), bin.upper());
  }
  return from_bin_masses(n, std::move(masses));
}

DvpMixture
discretized_operator(std::span<const double> f, const AngularGrid& grid, int n)
{
  if (n < 0)
    throw std::invalid_argument("degree must be nonnegative");
  if (f.size() != grid.size())
    throw std::invalid_argument("values do not match grid size");
  const int m = 2 * n + 1;
  const double width = kTwoPi / m;
  const double h = grid.weight();
  std::vector<double> masses(m, 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(f[k] >= 0.0))
      throw std::invalid_argument("input is not a density: negative value");
    // shift so that bin j is [j width, (j+1) width)
    double a = grid.point(k) - 0.5 * h + 0.5 * width;
    double b = a + h;
    while (a < b) {
      double jf = std::floor(a / width);
      // a / width can round down onto the previous bin when a sits on an edge
      if ((jf + 1.0) * width <= a)
        jf += 1.0;
      double end = std::min(b, (jf + 1.0) * width);
      int j = static_cast<int>(jf) % m;
      if (j < 0)
        j += m;
      masses[j] += f[k] * (end - a);
      a = end;
    }
  }
  return from_bin_masses(n, std::move(masses));
}

std::vector<double>
dvp_mean_operator(std::span<const double> f, const AngularGrid& grid, int n)
{
  if (f.size() != grid.size())
    throw std::invalid_argument("values do not match grid size");
  const std::size_t g = grid.size();
  BasisSpec spec(n);
  // doubled[t] = C_{0,n}(-2 pi (t - g)/g), so the row for node i is the
  // contiguous slice starting at g - i: doubled[g - i + k] = C_{0,n}(u_i - u_k).
  std::vector<double> doubled(2 * g);
  for (std::size_t t = 0; t < 2 * g; ++t) {
    double shift = static_cast<double>(t) - static_cast<double>(g);
    doubled[t] = spec.kernel(-kTwoPi * shift / static_cast<double>(g));
  }
  std::vector<double> out(g);
  const double h = grid.weight();
  for (std::size_t i = 0; i < g; ++i) {
    std::span<const double> row(doubled.data() + (g - i), g);
    out[i] = h * kernels::dot(f, row);
  }
  return out;
}

int
cyclic_variation(std::span<const double> x)
{
  int first = 0;
  int prev = 0;
  int changes = 0;
  for (double v : x) {
    int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0)
      continue;
    if (first == 0)
      first = s;
    else if (s != prev)
      ++changes;
    prev = s;
  }
  if (first != 0 && prev != first)
    ++changes;
  return changes;
}

std::vector<double>
cyclic_differences(std::span<const double> x)
{
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    d[i] = x[(i + 1) % x.size()] - x[i];
  return d;
}

ShapeReport
shape_report(const DvpMixture& m, const AngularGrid& grid)
{
  ShapeReport report{};
  std::vector<double> values = m.on_grid(grid);
  std::vector<double> deriv = m.derivative_on_grid(grid);

  report.total_variation = kernels::abs_sum(deriv) * grid.weight();

  // values below the rounding floor of the sum carry no sign information
  double scale = kernels::abs_sum(deriv) / static_cast<double>(deriv.size());
  double floor = 1e-12 * scale;
  for (double& d : deriv)
    if (std::abs(d) <= floor)
      d = 0.0;
  report.derivative_sign_changes = cyclic_variation(deriv);

  report.cyclic_variation_of_weights = cyclic_variation(cyclic_differences(m.weights()));
  report.periodically_unimodal = report.cyclic_variation_of_weights == 2;

  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  report.range_lo = *lo;
  report.range_hi = *hi;
  return report;
}

double
far_bin_mass(int n, Angle u, double delta)
{
  BasisSpec spec(n);
  const double scale = kTwoPi / (2.0 * n + 1.0);
  double total = 0.0;
  for (int j = 0; j < spec.size(); ++j) {
    Bin bin{ j, n };
    double dist = 0.0;
    if (!bin.contains(u))
      dist = std::min(ang_dist(u, Angle(bin.lower())), ang_dist(u, Angle(bin.upper())));
    if (dist >= delta)
      total += scale * spec.eval(j, u.value());
  }
  return total;
}

} // namespace dvp
