#include "dvp/estimators.hpp"

#include "dvp/basis.hpp"
#include "dvp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace dvp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double
log_abs_cos_half(double t)
{
  double c = std::abs(std::cos(0.5 * t));
  return c == 0.0 ? kNegInf : std::log(c);
}

double
bin_center(int b, int n)
{
  return kTwoPi * b / (2.0 * n + 1.0);
}

// Uniform draw in (0, 1).
double
open_uniform(Rng& rng)
{
  double u;
  do {
    u = uniform01(rng);
  } while (u == 0.0);
  return u;
}

void
check_schedule(int iters, int burn_in, int thin_to)
{
  if (iters < 1 || burn_in < 0 || burn_in >= iters)
    throw std::invalid_argument("need 0 <= burn_in < iters");
  if (thin_to < 1 || thin_to > iters - burn_in)
    throw std::invalid_argument("thin_to must lie in 1..iters - burn_in");
}

} // namespace

void
DpmConfig::validate() const
{
  if (!(concentration > 0.0))
    throw std::invalid_argument("concentration must be positive");
  if (!(rho_rate > 0.0))
    throw std::invalid_argument("rho_rate must be positive");
  if (n_max < 1)
    throw std::invalid_argument("n_max must be at least 1");
  if (!(atom_step > 0.0))
    throw std::invalid_argument("atom_step must be positive");
  if (!(slice_decay > 0.0 && slice_decay < 1.0))
    throw std::invalid_argument("slice_decay must lie in (0, 1)");
  check_schedule(iters, burn_in, thin_to);
}

void
FdbayesConfig::validate() const
{
  if (m_max < 0)
    throw std::invalid_argument("m_max must be nonnegative");
  check_schedule(iters, burn_in, thin_to);
}

std::vector<double>
log_degree_prior(const DpmConfig& cfg)
{
  std::vector<double> lp(cfg.n_max);
  double top = -1.0 / cfg.rho_rate;
  double z = 0.0;
  for (int n = 1; n <= cfg.n_max; ++n) {
    lp[n - 1] = -n / cfg.rho_rate;
    z += std::exp(lp[n - 1] - top);
  }
  double log_z = top + std::log(z);
  for (double& v : lp)
    v -= log_z;
  return lp;
}

std::size_t
sample_log_categorical(std::span<const double> log_weights, Rng& rng)
{
  if (log_weights.empty())
    throw std::invalid_argument("cannot sample from an empty categorical");
  double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top))
    throw std::domain_error("categorical has no finite log weight");
  std::vector<double> cumulative(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    total += std::exp(log_weights[i] - top);
    cumulative[i] = total;
  }
  double target = uniform01(rng) * total;
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
  idx = std::min(idx, log_weights.size() - 1);
  // skip zero-probability entries that share a cumulative value
  while (std::exp(log_weights[idx] - top) == 0.0 && idx > 0)
    --idx;
  return idx;
}

int
update_degree(std::span<const double> loglik_by_degree, std::span<const double> log_prior, Rng& rng)
{
  if (loglik_by_degree.size() != log_prior.size())
    throw std::invalid_argument("likelihood and prior cover different degree ranges");
  std::vector<double> lw(log_prior.size());
  for (std::size_t i = 0; i < lw.size(); ++i)
    lw[i] = loglik_by_degree[i] + log_prior[i];
  return static_cast<int>(sample_log_categorical(lw, rng)) + 1;
}

bool
is_retained(int sweep, int iters, int burn_in, int thin_to)
{
  if (sweep < burn_in || sweep >= iters)
    return false;
  long long post = sweep - burn_in;
  long long span = iters - burn_in;
  return (post + 1) * thin_to / span > post * thin_to / span;
}

SliceSampler::SliceSampler(std::span<const Angle> data, LocationKernel kernel, const DpmConfig& cfg)
  : kernel_(kernel)
  , cfg_(cfg)
  , rng_(cfg.seed)
{
  cfg_.validate();
  if (data.empty())
    throw std::invalid_argument("DPM fit needs at least one observation");
  data_.reserve(data.size());
  for (Angle a : data)
    data_.push_back(a.value());

  log_norm_.resize(cfg_.n_max + 1);
  for (int n = 0; n <= cfg_.n_max; ++n)
    log_norm_[n] = BasisSpec(n).log_norm();
  log_prior_ = log_degree_prior(cfg_);

  state_.degree = 1;
  state_.sticks = { std::min(sample_beta(1.0, cfg_.concentration, rng_),
                             std::nextafter(1.0, 0.0)) };
  state_.atoms = { kTwoPi * uniform01(rng_) };
  state_.alloc.assign(data_.size(), 0);
  state_.slice.assign(data_.size(), 0.0);
  recompute_weights();
}

double
SliceSampler::slice_bound(std::size_t j) const
{
  return std::pow(cfg_.slice_decay, static_cast<double>(j + 1));
}

double
SliceSampler::log_kernel(double x, double mu, int n) const
{
  if (kernel_ == LocationKernel::binned) {
    int b = bin_index(Angle(mu), n);
    return log_norm_[n] + 2.0 * n * log_abs_cos_half(x - bin_center(b, n));
  }
  return log_norm_[n] + 2.0 * n * log_abs_cos_half(x - mu);
}

void
SliceSampler::recompute_weights()
{
  state_.weights.resize(state_.sticks.size());
  double remaining = 1.0;
  for (std::size_t j = 0; j < state_.sticks.size(); ++j) {
    state_.weights[j] = state_.sticks[j] * remaining;
    remaining *= 1.0 - state_.sticks[j];
  }
}

double
SliceSampler::instantiated_mass() const
{
  double s = 0.0;
  for (double w : state_.weights)
    s += w;
  return s;
}

void
SliceSampler::update_slices()
{
  for (std::size_t i = 0; i < data_.size(); ++i)
    state_.slice[i] = slice_bound(state_.alloc[i]) * open_uniform(rng_);
}

void
SliceSampler::extend_sticks(double min_slice)
{
  // instantiate every stick whose bound can still exceed a slice variable
  std::size_t needed = 0;
  while (slice_bound(needed) > min_slice)
    ++needed;
  while (state_.sticks.size() < needed) {
    state_.sticks.push_back(
      std::min(sample_beta(1.0, cfg_.concentration, rng_), std::nextafter(1.0, 0.0)));
    state_.atoms.push_back(kTwoPi * uniform01(rng_));
  }
  recompute_weights();
}

void
SliceSampler::update_allocations()
{
  const int n = state_.degree;
  const double log_decay = std::log(cfg_.slice_decay);
  std::vector<double> lw;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    lw.clear();
    for (std::size_t j = 0; j < state_.sticks.size(); ++j) {
      if (!(slice_bound(j) > state_.slice[i]))
        break;
      double w = state_.weights[j];
      double log_w = w > 0.0 ? std::log(w) : kNegInf;
      lw.push_back(log_w - (j + 1.0) * log_decay + log_kernel(data_[i], state_.atoms[j], n));
    }
    if (std::none_of(lw.begin(), lw.end(), [](double v) { return std::isfinite(v); }))
      continue;
    state_.alloc[i] = static_cast<int>(sample_log_categorical(lw, rng_));
  }
}

void
SliceSampler::update_sticks()
{
  const std::size_t k = static_cast<std::size_t>(
    *std::max_element(state_.alloc.begin(), state_.alloc.end()) + 1);
  state_.sticks.resize(k);
  state_.atoms.resize(k);
  std::vector<double> counts(k, 0.0);
  for (int s : state_.alloc)
    counts[s] += 1.0;
  double tail = 0.0;
  for (std::size_t j = k; j-- > 0;) {
    double v = sample_beta(1.0 + counts[j], cfg_.concentration + tail, rng_);
    state_.sticks[j] = std::min(v, std::nextafter(1.0, 0.0));
    tail += counts[j];
  }
  recompute_weights();
}

void
SliceSampler::update_atoms()
{
  const int n = state_.degree;
  const std::size_t k = state_.sticks.size();
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < data_.size(); ++i)
    members[state_.alloc[i]].push_back(i);

  const int bins = 2 * n + 1;
  const double width = kTwoPi / bins;
  std::normal_distribution<double> step(0.0, cfg_.atom_step);
  std::vector<double> lp(bins);

  for (std::size_t j = 0; j < k; ++j) {
    if (members[j].empty()) {
      state_.atoms[j] = kTwoPi * uniform01(rng_);
      continue;
    }
    if (kernel_ == LocationKernel::binned) {
      // exact conditional: pick a bin, then a uniform location inside it
      for (int b = 0; b < bins; ++b) {
        double s = 0.0;
        for (std::size_t i : members[j])
          s += log_abs_cos_half(data_[i] - bin_center(b, n));
        lp[b] = 2.0 * n * s;
      }
      int b = static_cast<int>(sample_log_categorical(lp, rng_));
      state_.atoms[j] = Angle(bin_center(b, n) + (uniform01(rng_) - 0.5) * width).value();
    } else {
      double current = state_.atoms[j];
      double proposal = Angle(current + step(rng_)).value();
      double diff = 0.0;
      for (std::size_t i : members[j])
        diff += log_abs_cos_half(data_[i] - proposal) - log_abs_cos_half(data_[i] - current);
      diff *= 2.0 * n;
      ++atom_proposals_;
      if (std::log(open_uniform(rng_)) < diff) {
        state_.atoms[j] = proposal;
        ++atom_accepts_;
      }
    }
  }
}

void
SliceSampler::update_degree_step()
{
  std::vector<double> ll(cfg_.n_max, 0.0);
  if (kernel_ == LocationKernel::continuous) {
    double s = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      s += log_abs_cos_half(data_[i] - state_.atoms[state_.alloc[i]]);
    const double count = static_cast<double>(data_.size());
    for (int n = 1; n <= cfg_.n_max; ++n)
      ll[n - 1] = std::isfinite(s) ? count * log_norm_[n] + 2.0 * n * s : kNegInf;
  } else {
    for (int n = 1; n <= cfg_.n_max; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < data_.size(); ++i)
        s += log_kernel(data_[i], state_.atoms[state_.alloc[i]], n);
      ll[n - 1] = s;
    }
  }
  state_.degree = update_degree(ll, log_prior_, rng_);
}

void
SliceSampler::sweep()
{
  update_slices();
  double min_slice = *std::min_element(state_.slice.begin(), state_.slice.end());
  extend_sticks(min_slice);
  update_allocations();
  update_sticks();
  update_atoms();
  update_degree_step();
}

std::vector<double>
SliceSampler::predictive(const AngularGrid& grid) const
{
  const int n = state_.degree;
  std::vector<double> out(grid.size(), (1.0 - instantiated_mass()) / kTwoPi);
  std::vector<double> row(grid.size());
  for (std::size_t j = 0; j < state_.sticks.size(); ++j) {
    for (std::size_t k = 0; k < grid.size(); ++k)
      row[k] = std::exp(log_kernel(grid.point(k), state_.atoms[j], n));
    kernels::axpy(state_.weights[j], row, out);
  }
  return out;
}

namespace {

DensityEstimate
fit_dpm(std::span<const Angle> data, LocationKernel kernel, const DpmConfig& cfg,
        const AngularGrid& grid)
{
  SliceSampler chain(data, kernel, cfg);
  const int n_max = cfg.n_max;

  // pd: per-degree bin masses; pc: trigonometric moments of the mean density
  std::vector<std::vector<double>> bin_mass(n_max + 1);
  double uniform_mass = 0.0;
  std::vector<std::complex<double>> moments(n_max + 1);
  std::vector<std::vector<double>> ratio(n_max + 1);
  if (kernel == LocationKernel::continuous)
    for (int n = 1; n <= n_max; ++n) {
      ratio[n].resize(n + 1);
      for (int p = 0; p <= n; ++p)
        ratio[n][p] = moment_ratio(n, p);
    }

  Diagnostics diag;
  diag.seed = cfg.seed;
  diag.degree_histogram.assign(n_max + 1, 0);
  double components = 0.0;

  for (int t = 0; t < cfg.iters; ++t) {
    chain.sweep();
    if (!is_retained(t, cfg.iters, cfg.burn_in, cfg.thin_to))
      continue;
    const ChainState& st = chain.state();
    const int n = st.degree;
    ++diag.retained;
    ++diag.degree_histogram[n];
    components += static_cast<double>(st.sticks.size());
    double residual = 1.0 - chain.instantiated_mass();
    if (kernel == LocationKernel::binned) {
      auto& masses = bin_mass[n];
      masses.resize(2 * n + 1, 0.0);
      for (std::size_t j = 0; j < st.sticks.size(); ++j)
        masses[bin_index(Angle(st.atoms[j]), n)] += st.weights[j];
      uniform_mass += residual;
    } else {
      moments[0] += 1.0;
      for (std::size_t j = 0; j < st.sticks.size(); ++j) {
        const std::complex<double> z = std::polar(1.0, st.atoms[j]);
        std::complex<double> zp = 1.0;
        for (int p = 1; p <= n; ++p) {
          zp *= z;
          moments[p] += st.weights[j] * ratio[n][p] * zp;
        }
      }
    }
  }

  DensityEstimate est;
  est.grid = grid;
  est.method = kernel == LocationKernel::binned ? "pd" : "pc";
  const double count = static_cast<double>(diag.retained);
  std::vector<double> values(grid.size(), 0.0);

  if (kernel == LocationKernel::binned) {
    std::vector<double> row(grid.size());
    for (int n = 1; n <= n_max; ++n) {
      if (bin_mass[n].empty())
        continue;
      BasisSpec spec(n);
      for (int j = 0; j < spec.size(); ++j) {
        if (bin_mass[n][j] == 0.0)
          continue;
        for (std::size_t k = 0; k < grid.size(); ++k)
          row[k] = spec.eval(j, grid.point(k));
        kernels::axpy(bin_mass[n][j] / count, row, values);
      }
    }
    const double base = uniform_mass / count / kTwoPi;
    for (double& v : values)
      v += base;
  } else {
    int top = 0;
    for (int n = 1; n <= n_max; ++n)
      if (diag.degree_histogram[n] > 0)
        top = n;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const std::complex<double> z = std::polar(1.0, -grid.point(k));
      std::complex<double> zp = 1.0;
      double s = moments[0].real();
      for (int p = 1; p <= top; ++p) {
        zp *= z;
        s += 2.0 * (moments[p] * zp).real();
      }
      // cancellation can leave values a few ulp below zero far from the data
      values[k] = std::max(0.0, s / (count * kTwoPi));
    }
  }

  est.values = std::move(values);
  diag.mean_components = components / count;
  if (kernel == LocationKernel::continuous && chain.atom_proposals() > 0)
    diag.acceptance_rate =
      static_cast<double>(chain.atom_accepts()) / static_cast<double>(chain.atom_proposals());
  est.diagnostics = std::move(diag);
  return est;
}

} // namespace

DensityEstimate
fit_pd(std::span<const Angle> data, const DpmConfig& cfg, const AngularGrid& grid)
{
  return fit_dpm(data, LocationKernel::binned, cfg, grid);
}

DensityEstimate
fit_pc(std::span<const Angle> data, const DpmConfig& cfg, const AngularGrid& grid)
{
  return fit_dpm(data, LocationKernel::continuous, cfg, grid);
}

} // namespace dvp
