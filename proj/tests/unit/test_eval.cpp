#include "dvp/basis.hpp"
#include "dvp/targets.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace dvp;

namespace {

DensityEstimate
as_estimate(const AngularGrid& g, std::vector<double> values)
{
  DensityEstimate e;
  e.grid = g;
  e.values = std::move(values);
  return e;
}

std::vector<double>
random_density(const AngularGrid& g, Rng& rng)
{
  std::vector<double> v(g.size());
  double a = uniform01(rng), b = 4.0 * uniform01(rng);
  int k = 1 + static_cast<int>(4 * uniform01(rng));
  for (std::size_t i = 0; i < g.size(); ++i)
    v[i] = std::exp(b * std::cos(k * g.point(i) - a));
  double z = integrate(v, g);
  for (double& x : v)
    x /= z;
  return v;
}

// CDF of the grid density, by cumulative rectangle rule on a fine grid
double
ks_distance(std::vector<double> xs, const TargetDensity& t)
{
  std::sort(xs.begin(), xs.end());
  const std::size_t G = 1 << 16;
  AngularGrid g(G);
  std::vector<double> cdf(G + 1, 0.0);
  for (std::size_t k = 0; k < G; ++k)
    cdf[k + 1] = cdf[k] + t(g.point(k) + 0.5 * g.weight()) * g.weight();
  double worst = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double pos = xs[i] / g.weight();
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(pos), G - 1);
    double F = cdf[k] + (pos - k) * (cdf[k + 1] - cdf[k]);
    worst = std::max({ worst, std::abs(F - i / n), std::abs(F - (i + 1) / n) });
  }
  return worst;
}

} // namespace

TEST_CASE("target families")
{
  AngularGrid g(2048);
  auto flat = make_target(TargetFamily::skewed_von_mises, 0.0, g);
  for (double v : flat.values())
    REQUIRE(v == doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));

  auto v1 = make_target(TargetFamily::skewed_von_mises, 1.0, g);
  CHECK(*std::min_element(v1.values().begin(), v1.values().end()) >= 0.0);
  CHECK(v1.norm_const() == doctest::Approx(9.764988919129489).epsilon(1e-12));
  CHECK(integrate(v1.values(), g) == doctest::Approx(1.0).epsilon(1e-10));

  auto w0 = make_target(TargetFamily::w, 0.0, g);
  CHECK(w0.norm_const() == doctest::Approx(7.925738898207539).epsilon(1e-12));

  CHECK_THROWS_AS(make_target(TargetFamily::skewed_von_mises, 1.1, g), std::invalid_argument);
  CHECK_THROWS_AS(make_target(TargetFamily::skewed_von_mises, -0.1, g), std::invalid_argument);
  CHECK_THROWS_AS(make_target(TargetFamily::w, kTwoPi, g), std::invalid_argument);

  CHECK(parse_family("w") == TargetFamily::w);
  CHECK(parse_family("skewed-vm") == TargetFamily::skewed_von_mises);
  CHECK_FALSE(parse_family("vm").has_value());
  CHECK(family_name(TargetFamily::w) == "w");
}

TEST_CASE("normalisation is stable under grid doubling")
{
  for (int i = 0; i <= 20; ++i) {
    double a_vm = i / 20.0;
    double a_w = kTwoPi * i / 21.0;
    for (auto [fam, a] : { std::pair{ TargetFamily::skewed_von_mises, a_vm },
                           { TargetFamily::w, a_w } }) {
      double z1 = TargetDensity(fam, a, AngularGrid(8192)).norm_const();
      double z2 = TargetDensity(fam, a, AngularGrid(16384)).norm_const();
      REQUIRE(std::abs(z1 - z2) < 1e-9);
    }
  }
}

TEST_CASE("rejection sampling")
{
  AngularGrid g(2048);
  Rng rng(17);

  auto flat = make_target(TargetFamily::skewed_von_mises, 0.0, g);
  auto s = sample_target_with_stats(flat, 100000, rng);
  double rate = static_cast<double>(s.points.size()) / static_cast<double>(s.proposals);
  CHECK(rate == doctest::Approx(1.0 / 1.01).epsilon(0.01));
  CHECK(sample_target(flat, 0, rng).empty());

  auto v1 = make_target(TargetFamily::skewed_von_mises, 1.0, g);
  const std::size_t count = 100000;
  auto xs = sample_target(v1, count, rng);
  std::complex<double> m = 0.0;
  for (Angle x : xs)
    m += std::polar(1.0, x.value());
  m /= static_cast<double>(count);
  const double se = 1.0 / std::sqrt(static_cast<double>(count));
  CHECK(std::abs(m.real() - -0.6146184633957166) < 4 * se);
  CHECK(std::abs(m.imag() - 0.4581325677587869) < 4 * se);

  std::vector<double> raw;
  for (Angle x : xs)
    raw.push_back(x.value());
  CHECK(ks_distance(raw, v1) < 2.0 / std::sqrt(static_cast<double>(count)));

  auto w0 = make_target(TargetFamily::w, 0.0, g);
  raw.clear();
  for (Angle x : sample_target(w0, count, rng))
    raw.push_back(x.value());
  CHECK(ks_distance(raw, w0) < 2.0 / std::sqrt(static_cast<double>(count)));

  Rng a(5), b(5);
  auto da = sample_target(v1, 50, a);
  auto db = sample_target(v1, 50, b);
  for (std::size_t i = 0; i < 50; ++i)
    CHECK(da[i].value() == db[i].value());
}

TEST_CASE("losses")
{
  SUBCASE("self distance is zero")
  {
    AngularGrid g(2048);
    auto v1 = make_target(TargetFamily::skewed_von_mises, 1.0, g);
    auto e = as_estimate(g, { v1.values().begin(), v1.values().end() });
    for (LossKind l : { LossKind::kl, LossKind::l1, LossKind::l2, LossKind::hellinger })
      CHECK(compute_loss(l, v1, e) == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("KL against uniform, stable under grid doubling")
  {
    double prev = 0.0;
    for (std::size_t G : { 8192u, 16384u, 32768u }) {
      AngularGrid g(G);
      auto v1 = make_target(TargetFamily::skewed_von_mises, 1.0, g);
      double kl = kl_loss(v1, as_estimate(g, std::vector<double>(G, 1.0 / kTwoPi)));
      CHECK(kl == doctest::Approx(0.8270244661178990).epsilon(1e-9));
      if (prev != 0.0)
        CHECK(std::abs(kl - prev) < 1e-8);
      prev = kl;
    }
  }

  SUBCASE("KL is infinite across a hard zero")
  {
    AngularGrid g(64);
    std::vector<double> f0(64, 1.0 / kTwoPi), f(64, 1.0 / kTwoPi);
    f[10] = 0.0;
    CHECK(kl_divergence(f0, f, g) == std::numeric_limits<double>::infinity());
    // zeros of f0 contribute nothing
    f0[10] = 0.0;
    CHECK(std::isfinite(kl_divergence(f0, f, g)));
  }

  SUBCASE("L1 between uniform and C_{0,1}")
  {
    AngularGrid g(8192);
    BasisSpec b(1);
    std::vector<double> f0(g.size(), 1.0 / kTwoPi), f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
      f[k] = b.eval(0, g.point(k));
    CHECK(std::abs(l1_distance(f0, f, g) - 2.0 / kPi) < 1e-6);
  }

  SUBCASE("bounds and Pinsker on random pairs")
  {
    AngularGrid g(1024);
    Rng rng(19);
    for (int i = 0; i < 200; ++i) {
      auto p = random_density(g, rng);
      auto q = random_density(g, rng);
      double l1 = l1_distance(p, q, g);
      REQUIRE(l1 <= 2.0 + 1e-9);
      REQUIRE(hellinger_distance(p, q, g) <= std::sqrt(2.0) + 1e-12);
      REQUIRE(l2_distance(p, q, g) >= 0.0);
      REQUIRE(kl_divergence(p, q, g) >= 0.5 * l1 * l1 - 1e-10);
    }
  }

  SUBCASE("loss names")
  {
    CHECK(parse_loss("hellinger") == LossKind::hellinger);
    CHECK(loss_name(LossKind::kl) == "kl");
    CHECK_FALSE(parse_loss("l3").has_value());
  }

  SUBCASE("grid mismatch is rejected")
  {
    auto t = make_target(TargetFamily::w, 1.0, AngularGrid(128));
    auto e = as_estimate(AngularGrid(64), std::vector<double>(64, 1.0 / kTwoPi));
    CHECK_THROWS_AS(l1_loss(t, e), std::invalid_argument);
  }
}
