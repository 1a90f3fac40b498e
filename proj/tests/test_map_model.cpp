// Tests of the map layer: componentwise image/Jacobian enclosures vs point
// sampling, parameter validation, and fixed-point enclosures against the
// frozen extended-precision oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blendercert/map_model.hpp"
#include "reference_values.hpp"

using namespace bcert;

namespace {

double sample_inside(const Interval& x, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.0, 1.0);
  const double p = x.lo + t(rng) * (x.hi - x.lo);
  return std::min(std::max(p, x.lo), x.hi);
}

}  // namespace

TEST_CASE("parameter validation: xi must exceed 1") {
  CHECK_THROWS_AS(HenonParams(Interval(-9.5), Interval(0.3), Interval(1.0)),
                  IntervalError);
  CHECK_THROWS_AS(HenonParams(Interval(0.99)), IntervalError);
  CHECK_THROWS_AS(HenonParams(Interval(0.5, 1.5)), IntervalError);
  CHECK_NOTHROW(HenonParams(Interval(1.01, 1.125)));
  const HenonParams p{Interval(1.1)};
  CHECK(p.mu.lo == kDefaultMu);
  CHECK(p.beta.hi == kDefaultBeta);
}

TEST_CASE("image enclosure contains sampled point images") {
  const HenonParams p{Interval(1.05, 1.06)};
  const IVector3 box{Interval(-0.5, 0.7), Interval(2.0, 3.5), Interval(-12.0, -9.0)};
  const IVector3 img = henon_image(p, box);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    const double x = sample_inside(box[0], rng);
    const double y = sample_inside(box[1], rng);
    const double z = sample_inside(box[2], rng);
    const double xi = sample_inside(p.xi, rng);
    const double fx = y;
    const double fy = -9.5 + y * y + 0.3 * x;
    const double fz = xi * z + y;
    CHECK(contains(img[0], fx));
    CHECK(contains(img[1], fy));
    CHECK(contains(img[2], fz));
  }
}

TEST_CASE("jacobian enclosure matches the analytic derivative rows") {
  const HenonParams p{Interval(1.1)};
  const IVector3 box{Interval(0.0, 1.0), Interval(-2.0, 2.0), Interval(-1.0, 1.0)};
  const IMatrix3 j = henon_jacobian(p, box);
  // Row 0: (0, 1, 0) exactly.
  CHECK(j[0][0].lo == 0.0);
  CHECK(j[0][0].hi == 0.0);
  CHECK(j[0][1].lo == 1.0);
  CHECK(j[0][1].hi == 1.0);
  CHECK(j[0][2].lo == 0.0);
  CHECK(j[0][2].hi == 0.0);
  // Row 1: (beta, 2Y, 0).
  CHECK(contains(j[1][0], 0.3));
  CHECK(j[1][1].lo <= -4.0);
  CHECK(j[1][1].hi >= 4.0);
  CHECK(j[1][2].lo == 0.0);
  CHECK(j[1][2].hi == 0.0);
  // Row 2: (0, 1, xi).
  CHECK(j[2][0].lo == 0.0);
  CHECK(j[2][1].lo == 1.0);
  CHECK(contains(j[2][2], 1.1));
}

TEST_CASE("image enclosure is inclusion monotone in the box") {
  const HenonParams p{Interval(1.05)};
  const IVector3 big{Interval(-1.0, 1.0), Interval(-3.0, 3.0), Interval(-5.0, 5.0)};
  const IVector3 small{Interval(-0.5, 0.5), Interval(-1.0, 2.0), Interval(0.0, 4.0)};
  const IVector3 ib = henon_image(p, big);
  const IVector3 is = henon_image(p, small);
  for (int i = 0; i < 3; ++i) CHECK(subset(is[i], ib[i]));
}

TEST_CASE("fixed points: rho+ matches the frozen oracle within 1e-12") {
  const HenonParams p{Interval(1.1)};
  const auto [p_plus, p_minus] = fixed_points(p);
  const Interval rho = p_plus[0];
  CHECK(width(rho) <= 1e-12);
  // The enclosure and the oracle bracket both contain the exact value, so
  // they must intersect; the midpoints must agree to the stated tolerance.
  CHECK(rho.lo <= ref::kRhoPlusHi);
  CHECK(rho.hi >= ref::kRhoPlusLo);
  CHECK(std::abs(midpoint(rho) - 0.5 * (ref::kRhoPlusLo + ref::kRhoPlusHi)) <=
        1e-12);
  // Both fixed points satisfy X = Y.
  CHECK(rho.lo == p_plus[1].lo);
  CHECK(p_minus[0].lo == p_minus[1].lo);
  // rho- < 0 < rho+ for these parameters.
  CHECK(p_minus[0].hi < 0.0);
  CHECK(rho.lo > 0.0);
}

TEST_CASE("fixed points: residual contains zero for 20 random parameter boxes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu_d(-12.0, -2.0);
  std::uniform_real_distribution<double> beta_d(0.05, 0.9);
  std::uniform_real_distribution<double> xi_d(1.01, 1.3);
  std::uniform_real_distribution<double> w_d(0.0, 1e-3);
  for (int k = 0; k < 20; ++k) {
    const double mu = mu_d(rng), beta = beta_d(rng), xi = xi_d(rng);
    const HenonParams p(Interval(mu, mu + w_d(rng)),
                        Interval(beta, beta + w_d(rng)),
                        Interval(xi, xi + w_d(rng)));
    const auto [p_plus, p_minus] = fixed_points(p);
    for (const IVector3& fp : {p_plus, p_minus}) {
      const IVector3 img = henon_image(p, fp);
      const IVector3 res = sub(img, fp);
      CHECK(contains_zero(res[0]));
      CHECK(contains_zero(res[1]));
      CHECK(contains_zero(res[2]));
    }
  }
}

TEST_CASE("fixed points: discriminant must be positive") {
  // mu > (1-beta)^2/4 has no real fixed points: mu = 1, beta = 0.3.
  CHECK_THROWS_AS(
      fixed_points(HenonParams(Interval(1.0), Interval(0.3), Interval(1.1))),
      IntervalError);
}

TEST_CASE("HenonMap implements the MapModel interface consistently") {
  const HenonParams p{Interval(1.1)};
  const HenonMap m(p);
  const IVector3 box{Interval(0.0, 0.1), Interval(3.0, 3.3), Interval(-12.0, -11.0)};
  const IVector3 a = m.image(box);
  const IVector3 b = henon_image(p, box);
  for (int i = 0; i < 3; ++i) {
    CHECK(a[i].lo == b[i].lo);
    CHECK(a[i].hi == b[i].hi);
  }
}
