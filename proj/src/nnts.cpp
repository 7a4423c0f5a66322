#include "dvp/nnts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace dvp {

namespace {

constexpr double kNormTolerance = 1e-12;

double
squared_norm(std::span<const std::complex<double>> c)
{
  double s = 0.0;
  for (auto z : c)
    s += std::norm(z);
  return s;
}

using Params = std::vector<std::complex<double>>;

void
project_to_sphere(Params& c)
{
  double scale = kNntsRadius / std::sqrt(squared_norm(c));
  for (auto& z : c)
    z *= scale;
}

double
real_dot(const std::vector<double>& a, const std::vector<double>& b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

// Riemannian gradient: remove the radial component.
std::vector<double>
tangent_gradient(const NntsDesign& design, const Params& c)
{
  std::vector<double> g = design.gradient(c);
  double radial = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    radial += g[2 * k] * c[k].real() + g[2 * k + 1] * c[k].imag();
  radial /= squared_norm(c);
  for (std::size_t k = 0; k < c.size(); ++k) {
    g[2 * k] -= radial * c[k].real();
    g[2 * k + 1] -= radial * c[k].imag();
  }
  return g;
}

Params
step(const Params& c, const std::vector<double>& direction, double t)
{
  Params out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    out[k] = c[k] + t * std::complex<double>(direction[2 * k], direction[2 * k + 1]);
  project_to_sphere(out);
  return out;
}

bool
all_identical(std::span<const Angle> data)
{
  for (Angle a : data)
    if (ang_dist(a, data.front()) > 1e-12)
      return false;
  return true;
}

struct AscentResult
{
  Params coeffs;
  double loglik;
  int iterations;
  bool hit_cap;
};

AscentResult
ascend(const NntsDesign& design, Params c, const NntsOptions& options)
{
  double ll = design.loglik(c);
  if (options.observer)
    options.observer(ll, c);
  std::vector<double> g = tangent_gradient(design, c);
  Params prev_c;
  std::vector<double> prev_g;
  double t = 1e-3;
  int it = 0;
  bool converged = false;
  for (; it < options.max_iterations; ++it) {
    double gnorm2 = real_dot(g, g);
    if (gnorm2 == 0.0) {
      converged = true;
      break;
    }
    // Barzilai-Borwein trial step, then monotone backtracking.
    if (!prev_c.empty()) {
      std::vector<double> s(2 * c.size());
      std::vector<double> y(2 * c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        s[2 * k] = c[k].real() - prev_c[k].real();
        s[2 * k + 1] = c[k].imag() - prev_c[k].imag();
        y[2 * k] = prev_g[2 * k] - g[2 * k];
        y[2 * k + 1] = prev_g[2 * k + 1] - g[2 * k + 1];
      }
      double sy = real_dot(s, y);
      if (sy > 0.0)
        t = real_dot(s, s) / sy;
      else
        t *= 2.0;
    }
    t = std::clamp(t, 1e-12, 1e3);

    Params trial;
    double trial_ll = -std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial = step(c, g, t);
      trial_ll = design.loglik(trial);
      if (std::isfinite(trial_ll) && trial_ll >= ll + 1e-4 * t * gnorm2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted || trial_ll <= ll) {
      converged = true;
      break;
    }
    double change = trial_ll - ll;
    prev_c = std::move(c);
    prev_g = std::move(g);
    c = std::move(trial);
    ll = trial_ll;
    if (options.observer)
      options.observer(ll, c);
    g = tangent_gradient(design, c);
    if (change < options.tolerance * std::max(1.0, std::abs(ll))) {
      converged = true;
      ++it;
      break;
    }
  }
  return { std::move(c), ll, it, !converged };
}

} // namespace

NntsModel::NntsModel(std::vector<std::complex<double>> coeffs)
  : coeffs_(std::move(coeffs))
{
  if (coeffs_.empty())
    throw std::invalid_argument("NNTS model needs at least one coefficient");
  if (std::abs(squared_norm(coeffs_) - 1.0 / kTwoPi) > kNormTolerance)
    throw std::invalid_argument("NNTS coefficients must satisfy sum |c_k|^2 = 1/(2 pi)");
}

NntsModel
NntsModel::uniform()
{
  return NntsModel({ std::complex<double>(kNntsRadius, 0.0) });
}

NntsModel
NntsModel::normalized(std::vector<std::complex<double>> coeffs)
{
  double norm2 = squared_norm(coeffs);
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    throw std::invalid_argument("cannot normalise a zero coefficient vector");
  project_to_sphere(coeffs);
  return NntsModel(std::move(coeffs));
}

NntsModel
NntsModel::random(int degree, Rng& rng)
{
  if (degree < 0)
    throw std::invalid_argument("NNTS degree must be nonnegative");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::complex<double>> c(degree + 1);
  for (auto& z : c) {
    double re = normal(rng);
    double im = normal(rng);
    z = { re, im };
  }
  return normalized(std::move(c));
}

double
NntsModel::operator()(double u) const
{
  // Horner in e^{iu}
  const std::complex<double> z = std::polar(1.0, u);
  std::complex<double> s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    s = s * z + *it;
  return std::norm(s);
}

std::vector<double>
NntsModel::on_grid(const AngularGrid& grid) const
{
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    out[k] = (*this)(grid.point(k));
  return out;
}

std::vector<std::complex<double>>
NntsModel::autocorrelation() const
{
  const int m = degree();
  std::vector<std::complex<double>> r(m + 1);
  for (int d = 0; d <= m; ++d)
    for (int k = 0; k + d <= m; ++k)
      r[d] += coeffs_[k + d] * std::conj(coeffs_[k]);
  return r;
}

double
nnts_eval(const NntsModel& model, Angle u)
{
  return model(u.value());
}

NntsDesign::NntsDesign(std::span<const Angle> data, int degree)
  : degree_(degree)
  , n_(data.size())
  , powers_(data.size() * (degree + 1))
{
  if (degree < 0)
    throw std::invalid_argument("NNTS degree must be nonnegative");
  for (std::size_t i = 0; i < n_; ++i) {
    const std::complex<double> z = std::polar(1.0, data[i].value());
    std::complex<double> p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      powers_[i * (degree + 1) + k] = p;
      p *= z;
    }
  }
}

double
NntsDesign::loglik(std::span<const std::complex<double>> c) const
{
  const std::size_t m = c.size();
  double ll = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::complex<double>* p = &powers_[i * (degree_ + 1)];
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      s += c[k] * p[k];
    ll += std::log(std::norm(s));
  }
  return ll;
}

std::vector<double>
NntsDesign::gradient(std::span<const std::complex<double>> c) const
{
  const std::size_t m = c.size();
  std::vector<double> g(2 * m, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::complex<double>* p = &powers_[i * (degree_ + 1)];
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      s += c[k] * p[k];
    // d|s|^2/dRe c_k = 2 Re(conj(s) z^k), d|s|^2/dIm c_k = -2 Im(conj(s) z^k)
    const std::complex<double> w = std::conj(s) * (2.0 / std::norm(s));
    for (std::size_t k = 0; k < m; ++k) {
      std::complex<double> q = w * p[k];
      g[2 * k] += q.real();
      g[2 * k + 1] -= q.imag();
    }
  }
  return g;
}

NntsFit
nnts_mle(std::span<const Angle> data, int degree, Rng& rng, const NntsOptions& options)
{
  if (data.empty())
    throw std::invalid_argument("NNTS fit needs at least one observation");
  if (degree < 0)
    throw std::invalid_argument("NNTS degree must be nonnegative");
  if (degree == 0) {
    double ll = -static_cast<double>(data.size()) * std::log(kTwoPi);
    return { NntsModel::uniform(), ll, 0, false };
  }

  NntsDesign design(data, degree);
  const bool degenerate = all_identical(data);
  std::optional<AscentResult> best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    NntsModel start = NntsModel::random(degree, rng);
    Params c(start.coeffs().begin(), start.coeffs().end());
    AscentResult result = ascend(design, std::move(c), options);
    if (!best || result.loglik > best->loglik)
      best = std::move(result);
  }
  // re-normalise to remove accumulated rounding on the sphere
  NntsModel model = NntsModel::normalized(best->coeffs);
  return { std::move(model), best->loglik, best->iterations,
           degenerate || best->hit_cap };
}

int
nnts_parameter_count(int degree)
{
  return 2 * degree;
}

double
information_criterion(InfoCriterion ic, double loglik, int degree, std::size_t n)
{
  const double k = nnts_parameter_count(degree);
  switch (ic) {
    case InfoCriterion::aic:
      return -2.0 * loglik + 2.0 * k;
    case InfoCriterion::bic:
      return -2.0 * loglik + k * std::log(static_cast<double>(n));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double>
NntsPath::scores(InfoCriterion ic) const
{
  std::vector<double> out;
  out.reserve(fits.size());
  for (std::size_t i = 0; i < fits.size(); ++i)
    out.push_back(information_criterion(ic, fits[i].loglik, degrees[i], samples));
  return out;
}

const NntsFit&
NntsPath::select(InfoCriterion ic) const
{
  if (fits.empty())
    throw std::invalid_argument("no candidate degrees");
  std::vector<double> s = scores(ic);
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] < s[best] || (s[i] == s[best] && degrees[i] < degrees[best]))
      best = i;
  return fits[best];
}

NntsPath
fit_nnts_path(std::span<const Angle> data, std::span<const int> degrees, Rng& rng,
              const NntsOptions& options)
{
  if (degrees.empty())
    throw std::invalid_argument("candidate degree range is empty");
  if (data.empty())
    throw std::invalid_argument("NNTS fit needs at least one observation");
  NntsPath path{ {}, {}, data.size() };
  for (int m : degrees) {
    path.degrees.push_back(m);
    path.fits.push_back(nnts_mle(data, m, rng, options));
  }
  return path;
}

NntsFit
select_by_ic(std::span<const Angle> data, std::span<const int> degrees, InfoCriterion ic,
             Rng& rng, const NntsOptions& options)
{
  return fit_nnts_path(data, degrees, rng, options).select(ic);
}

} // namespace dvp
