#include "dvp/estimators.hpp"
#include "dvp/targets.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

using namespace dvp;

namespace {

std::vector<Angle>
uniform_data(std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<Angle> xs;
  for (std::size_t i = 0; i < n; ++i)
    xs.emplace_back(kTwoPi * uniform01(rng));
  return xs;
}

std::vector<Angle>
target_data(TargetFamily family, double alpha, std::size_t n, std::uint64_t seed)
{
  TargetDensity t(family, alpha, AngularGrid(2048));
  Rng rng(seed);
  return sample_target(t, n, rng);
}

DpmConfig
quick_dpm(std::uint64_t seed)
{
  DpmConfig cfg;
  cfg.iters = 2000;
  cfg.burn_in = 500;
  cfg.thin_to = 500;
  cfg.seed = seed;
  return cfg;
}

double
l1_between(const DensityEstimate& a, const DensityEstimate& b)
{
  return l1_distance(a.values, b.values, a.grid);
}

} // namespace

TEST_CASE("configuration validation")
{
  DpmConfig c;
  CHECK_NOTHROW(c.validate());
  c.concentration = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.burn_in = c.iters;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.n_max = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.thin_to = c.iters;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  FdbayesConfig f;
  CHECK_NOTHROW(f.validate());
  f.m_max = -1;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);

  CHECK_THROWS_AS(fit_pd(std::vector<Angle>{}, quick_dpm(1)), std::invalid_argument);
  CHECK_THROWS_AS(fit_fdbayes(std::vector<Angle>{}, FdbayesConfig{}), std::invalid_argument);
}

TEST_CASE("degree prior")
{
  DpmConfig cfg;
  auto lp = log_degree_prior(cfg);
  REQUIRE(lp.size() == 60);
  double s = 0.0;
  for (double v : lp)
    s += std::exp(v);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
  for (std::size_t i = 1; i < lp.size(); ++i)
    CHECK(lp[i] - lp[i - 1] == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("degree update")
{
  DpmConfig cfg;
  auto lp = log_degree_prior(cfg);

  SUBCASE("flat likelihood samples the prior")
  {
    std::vector<double> flat(60, -3.0);
    Rng rng(1);
    std::vector<int> hist(61, 0);
    const int draws = 20000;
    for (int i = 0; i < draws; ++i)
      ++hist[update_degree(flat, lp, rng)];
    CHECK(hist[0] == 0);
    for (int n = 1; n <= 5; ++n) {
      double p = std::exp(lp[n - 1]);
      double se = std::sqrt(p * (1 - p) / draws);
      CHECK(std::abs(hist[n] / double(draws) - p) < 4 * se);
    }
  }

  SUBCASE("overwhelming likelihood concentrates")
  {
    std::vector<double> ll(60);
    for (int n = 1; n <= 60; ++n)
      ll[n - 1] = -50.0 * (n - 7) * (n - 7);
    Rng rng(2);
    int hits = 0;
    for (int i = 0; i < 10000; ++i)
      hits += update_degree(ll, lp, rng) == 7 ? 1 : 0;
    CHECK(hits >= 9900);
  }

  SUBCASE("shift invariance")
  {
    std::vector<double> ll(60), shifted(60);
    Rng src(3);
    for (int i = 0; i < 60; ++i) {
      ll[i] = -5.0 * uniform01(src);
      shifted[i] = ll[i] + 1e4;
    }
    Rng a(4), b(4);
    for (int i = 0; i < 1000; ++i)
      REQUIRE(update_degree(ll, lp, a) == update_degree(shifted, lp, b));
  }

  SUBCASE("log-categorical skips impossible entries")
  {
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> lw{ ninf, 0.0, ninf };
    Rng rng(5);
    for (int i = 0; i < 100; ++i)
      REQUIRE(sample_log_categorical(lw, rng) == 1);
    std::vector<double> none{ ninf, ninf };
    CHECK_THROWS(sample_log_categorical(none, rng));
  }
}

TEST_CASE("thinning keeps exactly thin_to sweeps")
{
  for (auto [iters, burn, thin] : { std::tuple{ 8000, 2000, 2000 }, { 100, 10, 7 },
                                    { 50, 0, 50 }, { 1000, 999, 1 } }) {
    int kept = 0, first = -1;
    for (int t = 0; t < iters; ++t)
      if (is_retained(t, iters, burn, thin)) {
        ++kept;
        if (first < 0)
          first = t;
      }
    CHECK(kept == thin);
    CHECK(first >= burn);
  }
}

TEST_CASE("slice sampler state invariants")
{
  auto data = target_data(TargetFamily::skewed_von_mises, 1.0, 60, 11);
  for (LocationKernel kernel : { LocationKernel::binned, LocationKernel::continuous }) {
    DpmConfig cfg = quick_dpm(12);
    SliceSampler chain(data, kernel, cfg);
    AngularGrid g(1024);
    for (int t = 0; t < 300; ++t) {
      chain.sweep();
      const ChainState& s = chain.state();
      REQUIRE(s.sticks.size() == s.atoms.size());
      REQUIRE(s.weights.size() == s.sticks.size());
      double partial = 0.0;
      for (double w : s.weights) {
        REQUIRE(w >= 0.0);
        REQUIRE(w <= 1.0);
        partial += w;
        REQUIRE(partial < 1.0 + 1e-15);
      }
      for (std::size_t i = 0; i < data.size(); ++i) {
        REQUIRE(s.alloc[i] >= 0);
        REQUIRE(static_cast<std::size_t>(s.alloc[i]) < s.sticks.size());
        REQUIRE(s.slice[i] < chain.slice_bound(s.alloc[i]));
      }
      REQUIRE(s.degree >= 1);
      REQUIRE(s.degree <= cfg.n_max);
      if (t % 50 == 0)
        REQUIRE(std::abs(integrate(chain.predictive(g), g) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("estimators on uniform data")
{
  auto data = uniform_data(100, 21);
  const double u = 1.0 / kTwoPi;
  std::vector<double> flat(2048, u);
  AngularGrid g(2048);

  DpmConfig dpm;
  dpm.seed = 22;
  auto pd = fit_pd(data, dpm);
  auto pc = fit_pc(data, dpm);
  FdbayesConfig fd;
  fd.seed = 23;
  auto fdb = fit_fdbayes(data, fd);

  for (const auto* e : { &pd, &pc, &fdb }) {
    CHECK(e->integral() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(*std::min_element(e->values.begin(), e->values.end()) >= 0.0);
    CHECK(e->diagnostics.retained == 2000);
  }
  CHECK(l1_distance(flat, pd.values, g) <= 0.3);
  CHECK(l1_distance(flat, pc.values, g) <= 0.3);
  CHECK(kl_divergence(flat, fdb.values, g) <= 0.05);
  CHECK(pd.method == "pd");
  CHECK(pc.diagnostics.acceptance_rate > 0.0);
  CHECK(pc.diagnostics.acceptance_rate < 1.0);
  CHECK(fdb.diagnostics.acceptance_rate > 0.0);
  CHECK(fdb.diagnostics.acceptance_rate < 1.0);
  CHECK(std::accumulate(pd.diagnostics.degree_histogram.begin(),
                        pd.diagnostics.degree_histogram.end(), std::size_t{ 0 }) == 2000);
}

TEST_CASE("identical seeds give identical estimates")
{
  auto data = uniform_data(40, 31);
  for (int rep = 0; rep < 2; ++rep) {
    auto a = rep == 0 ? fit_pd(data, quick_dpm(5)) : fit_pc(data, quick_dpm(5));
    auto b = rep == 0 ? fit_pd(data, quick_dpm(5)) : fit_pc(data, quick_dpm(5));
    CHECK(a.values == b.values);
  }
  FdbayesConfig fd;
  fd.iters = 20000;
  fd.burn_in = 2000;
  fd.seed = 6;
  CHECK(fit_fdbayes(data, fd).values == fit_fdbayes(data, fd).values);
}

TEST_CASE("fdbayes restricted to degree zero is uniform")
{
  auto data = uniform_data(30, 41);
  FdbayesConfig fd;
  fd.m_max = 0;
  fd.iters = 5000;
  fd.burn_in = 500;
  fd.seed = 7;
  auto e = fit_fdbayes(data, fd);
  for (double v : e.values)
    REQUIRE(v == 1.0 / kTwoPi);
  CHECK(e.diagnostics.acceptance_rate == 1.0);
}

TEST_CASE("pd and pc agree on a skewed sample")
{
  auto data = target_data(TargetFamily::skewed_von_mises, 1.0, 100, 51);
  DpmConfig cfg;
  cfg.seed = 52;
  auto pd = fit_pd(data, cfg);
  auto pc = fit_pc(data, cfg);
  CHECK(l1_between(pd, pc) < 0.35);
}

TEST_CASE("pc is rotation equivariant up to Monte Carlo error")
{
  auto data = target_data(TargetFamily::skewed_von_mises, 1.0, 100, 61);
  AngularGrid g(2048);
  const std::size_t shift = 300;
  const double delta = g.point(shift);
  std::vector<Angle> rotated;
  for (Angle x : data)
    rotated.push_back(x + delta);

  DpmConfig cfg;
  cfg.seed = 62;
  auto a = fit_pc(data, cfg, g);
  auto b = fit_pc(rotated, cfg, g);
  std::vector<double> back(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    back[k] = b.values[(k + shift) % g.size()];
  CHECK(l1_distance(a.values, back, g) < 0.05);
}

TEST_CASE("pd improves with sample size")
{
  TargetDensity target(TargetFamily::skewed_von_mises, 1.0, AngularGrid(2048));
  auto mean_loss = [&](std::size_t n) {
    double s = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      auto data = target_data(TargetFamily::skewed_von_mises, 1.0, n, 1000 + rep);
      auto e = fit_pd(data, quick_dpm(2000 + rep));
      s += l1_loss(target, e);
    }
    return s / 20.0;
  };
  double small = mean_loss(30);
  double large = mean_loss(200);
  MESSAGE("mean L1 at n=30: " << small << ", at n=200: " << large);
  CHECK(large < small);
}

TEST_CASE("NNTS point estimates")
{
  auto data = target_data(TargetFamily::skewed_von_mises, 1.0, 100, 71);
  NntsConfig cfg;
  auto aic = fit_nnts_ic(data, InfoCriterion::aic, cfg, 3);
  auto bic = fit_nnts_ic(data, InfoCriterion::bic, cfg, 3);
  CHECK(aic.method == "naic");
  CHECK(bic.method == "nbic");
  CHECK(aic.diagnostics.selected_degree >= bic.diagnostics.selected_degree);
  CHECK(bic.diagnostics.selected_degree >= 1);
  CHECK(aic.integral() == doctest::Approx(1.0).epsilon(1e-9));
}
