#include "dvp/nnts.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

using namespace dvp;
using cplx = std::complex<double>;

namespace {

std::vector<Angle>
uniform_data(std::size_t n, Rng& rng)
{
  std::vector<Angle> xs;
  for (std::size_t i = 0; i < n; ++i)
    xs.emplace_back(kTwoPi * uniform01(rng));
  return xs;
}

} // namespace

TEST_CASE("model values")
{
  const double c = 1.0 / std::sqrt(4.0 * kPi);
  NntsModel m({ cplx(c, 0.0), cplx(c, 0.0) });
  CHECK(m.degree() == 1);
  CHECK(m(0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(m(kPi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(nnts_eval(m, Angle(0.0)) == m(0.0));
  CHECK(NntsModel::uniform()(2.0) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));

  CHECK_THROWS_AS(NntsModel({ cplx(1.0, 0.0) }), std::invalid_argument);
  CHECK_THROWS_AS(NntsModel(std::vector<cplx>{}), std::invalid_argument);
  CHECK_THROWS_AS(NntsModel::normalized({ cplx(0.0, 0.0) }), std::invalid_argument);
}

TEST_CASE("random models are normalised densities")
{
  Rng rng(5);
  AngularGrid g(256);
  for (int i = 0; i < 100; ++i) {
    int M = i % 8;
    auto m = NntsModel::random(M, rng);
    double norm = 0.0;
    for (cplx c : m.coeffs())
      norm += std::norm(c);
    REQUIRE(std::abs(norm - 1.0 / kTwoPi) < 1e-13);
    auto v = m.on_grid(g);
    REQUIRE(std::abs(integrate(v, g) - 1.0) < 1e-9);
    for (double x : v)
      REQUIRE(x >= 0.0);
  }
}

TEST_CASE("autocorrelation reproduces the density")
{
  Rng rng(6);
  auto m = NntsModel::random(4, rng);
  auto r = m.autocorrelation();
  REQUIRE(r.size() == 5);
  CHECK(r[0].real() == doctest::Approx(1.0 / kTwoPi).epsilon(1e-13));
  for (double u : { 0.0, 0.5, 2.0, 4.4 }) {
    double s = r[0].real();
    for (std::size_t d = 1; d < r.size(); ++d)
      s += 2.0 * (r[d] * std::polar(1.0, d * u)).real();
    CHECK(s == doctest::Approx(m(u)).epsilon(1e-12));
  }
}

TEST_CASE("log-likelihood and gradient")
{
  Rng rng(7);
  auto data = uniform_data(50, rng);
  NntsDesign design(data, 3);
  auto m = NntsModel::random(3, rng);
  auto c = std::vector<cplx>(m.coeffs().begin(), m.coeffs().end());

  double direct = 0.0;
  for (Angle x : data)
    direct += std::log(m(x.value()));
  CHECK(design.loglik(c) == doctest::Approx(direct).epsilon(1e-12));

  // shorter coefficient vectors evaluate the nested lower-degree model
  auto u = NntsModel::uniform();
  CHECK(design.loglik(u.coeffs()) == doctest::Approx(-50.0 * std::log(kTwoPi)).epsilon(1e-13));

  auto grad = design.gradient(c);
  REQUIRE(grad.size() == 8);
  const double h = 1e-6;
  for (std::size_t p = 0; p < grad.size(); ++p) {
    auto up = c, down = c;
    cplx step = p % 2 == 0 ? cplx(h, 0.0) : cplx(0.0, h);
    up[p / 2] += step;
    down[p / 2] -= step;
    double fd = (design.loglik(up) - design.loglik(down)) / (2 * h);
    CHECK(std::abs(grad[p] - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("maximum likelihood")
{
  Rng rng(9);
  // a concentrated sample: the fitted model must beat the uniform fit
  std::vector<Angle> data;
  std::normal_distribution<double> noise(1.0, 0.4);
  for (int i = 0; i < 200; ++i)
    data.emplace_back(noise(rng));

  auto zero = nnts_mle(data, 0, rng);
  CHECK(zero.loglik == doctest::Approx(-200.0 * std::log(kTwoPi)).epsilon(1e-13));
  CHECK(zero.model.degree() == 0);

  double prev = zero.loglik;
  for (int M = 1; M <= 4; ++M) {
    auto fit = nnts_mle(data, M, rng);
    CHECK(fit.model.degree() == M);
    CHECK(fit.loglik >= prev - 1e-6);
    auto g = NntsDesign(data, M).gradient(fit.model.coeffs());
    // at a constrained optimum the gradient is parallel to c
    std::vector<cplx> c(fit.model.coeffs().begin(), fit.model.coeffs().end());
    double dot = 0.0, gn = 0.0, cn = 0.0;
    for (int k = 0; k <= M; ++k) {
      dot += g[2 * k] * c[k].real() + g[2 * k + 1] * c[k].imag();
      gn += g[2 * k] * g[2 * k] + g[2 * k + 1] * g[2 * k + 1];
      cn += std::norm(c[k]);
    }
    CHECK(dot / std::sqrt(gn * cn) == doctest::Approx(1.0).epsilon(1e-4));
    prev = fit.loglik;
  }
  CHECK(prev > zero.loglik + 50.0);
}

TEST_CASE("degenerate data is flagged")
{
  Rng rng(10);
  std::vector<Angle> same(20, Angle(1.0));
  auto fit = nnts_mle(same, 2, rng);
  CHECK(fit.boundary_suspect);
  CHECK_THROWS_AS(nnts_mle(std::vector<Angle>{}, 1, rng), std::invalid_argument);
}

TEST_CASE("information criteria")
{
  CHECK(nnts_parameter_count(0) == 0);
  CHECK(nnts_parameter_count(3) == 6);
  CHECK(information_criterion(InfoCriterion::aic, -10.0, 2, 100) == doctest::Approx(28.0));
  CHECK(information_criterion(InfoCriterion::bic, -10.0, 2, 100) ==
        doctest::Approx(20.0 + 4.0 * std::log(100.0)));

  Rng rng(12);
  std::vector<int> degrees{ 0, 1, 2, 3, 4 };
  int small = 0;
  for (int rep = 0; rep < 10; ++rep) {
    auto data = uniform_data(300, rng);
    auto path = fit_nnts_path(data, degrees, rng);
    REQUIRE(path.fits.size() == degrees.size());
    auto& bic = path.select(InfoCriterion::bic);
    auto& aic = path.select(InfoCriterion::aic);
    CHECK(bic.model.degree() <= aic.model.degree());
    small += bic.model.degree() <= 1 ? 1 : 0;
  }
  CHECK(small >= 8);

  CHECK_THROWS_AS(select_by_ic(uniform_data(10, rng), std::vector<int>{}, InfoCriterion::aic, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_by_ic(std::vector<Angle>{}, degrees, InfoCriterion::aic, rng),
                  std::invalid_argument);
}

TEST_CASE("fits are reproducible for a fixed seed")
{
  Rng a(99), b(99);
  Rng data_rng(1);
  auto data = uniform_data(40, data_rng);
  auto fa = nnts_mle(data, 3, a);
  auto fb = nnts_mle(data, 3, b);
  CHECK(fa.loglik == fb.loglik);
  for (int k = 0; k <= 3; ++k)
    CHECK(fa.model.coeffs()[k] == fb.model.coeffs()[k]);
}
