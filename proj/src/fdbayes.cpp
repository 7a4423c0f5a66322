#include "dvp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace dvp {

DensityEstimate
fit_fdbayes(std::span<const Angle> data, const FdbayesConfig& cfg, const AngularGrid& grid)
{
  cfg.validate();
  if (data.empty())
    throw std::invalid_argument("fdbayes fit needs at least one observation");

  Rng rng(cfg.seed);
  const NntsDesign design(data, cfg.m_max);
  std::uniform_int_distribution<int> pick_degree(0, cfg.m_max);

  // The proposal is the prior, so the acceptance ratio is the likelihood ratio.
  NntsModel current = NntsModel::uniform();
  double current_ll = design.loglik(current.coeffs());

  std::vector<std::complex<double>> acc(cfg.m_max + 1);
  Diagnostics diag;
  diag.seed = cfg.seed;
  diag.degree_histogram.assign(cfg.m_max + 1, 0);
  std::size_t accepted = 0;

  for (int t = 0; t < cfg.iters; ++t) {
    NntsModel proposal = NntsModel::random(pick_degree(rng), rng);
    double ll = design.loglik(proposal.coeffs());
    double u = uniform01(rng);
    if (ll >= current_ll || (u > 0.0 && std::log(u) < ll - current_ll)) {
      current = std::move(proposal);
      current_ll = ll;
      ++accepted;
    }
    if (!is_retained(t, cfg.iters, cfg.burn_in, cfg.thin_to))
      continue;
    ++diag.retained;
    ++diag.degree_histogram[current.degree()];
    auto r = current.autocorrelation();
    for (std::size_t d = 1; d < r.size(); ++d)
      acc[d] += r[d];
  }

  const double count = static_cast<double>(diag.retained);
  DensityEstimate est;
  est.grid = grid;
  est.method = "fdbayes";
  est.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::complex<double> z = std::polar(1.0, grid.point(k));
    std::complex<double> zd = 1.0;
    double s = 1.0 / kTwoPi;
    for (int d = 1; d <= cfg.m_max; ++d) {
      zd *= z;
      s += 2.0 * (acc[d] * zd).real() / count;
    }
    est.values[k] = std::max(0.0, s);
  }
  diag.acceptance_rate = static_cast<double>(accepted) / cfg.iters;
  diag.loglik = current_ll;
  est.diagnostics = std::move(diag);
  return est;
}

DensityEstimate
nnts_estimate(const NntsFit& fit, const AngularGrid& grid, std::string method)
{
  DensityEstimate est;
  est.grid = grid;
  est.method = std::move(method);
  est.values = fit.model.on_grid(grid);
  est.diagnostics.selected_degree = fit.model.degree();
  est.diagnostics.loglik = fit.loglik;
  est.diagnostics.boundary_suspect = fit.boundary_suspect;
  return est;
}

DensityEstimate
fit_nnts_ic(std::span<const Angle> data, InfoCriterion ic, const NntsConfig& cfg,
            std::uint64_t seed, const AngularGrid& grid)
{
  Rng rng(seed);
  NntsFit fit = select_by_ic(data, cfg.degrees, ic, rng, cfg.options);
  DensityEstimate est = nnts_estimate(fit, grid, ic == InfoCriterion::aic ? "naic" : "nbic");
  est.diagnostics.seed = seed;
  return est;
}

} // namespace dvp
