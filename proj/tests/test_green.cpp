#include <doctest.h>

#include <cmath>

#include "scv/green.hpp"
#include "scv/rng.hpp"

using namespace scv;

namespace {

ComplexPoint random_point(CounterRng& rng, std::size_t n, double r) {
  std::vector<Complex> c(n);
  for (auto& x : c) x = std::polar(r * std::sqrt(rng.uniform()) / std::sqrt(double(n)), rng.uniform(0, 2 * M_PI));
  return ComplexPoint(c);
}

}  // namespace

TEST_CASE("green examples") {
  CHECK(green(DomainSpec::unit_disc(), {0.2}, {0.5}) == doctest::Approx(std::log(0.3 / 0.9)).epsilon(1e-12));
  // gauge 0.25 on the ellipsoid: |z1|^4 = 0.25^4 with z2 = 0
  CHECK(green(DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}, {0.25, 0.0}) ==
        doctest::Approx(std::log(0.25)).epsilon(1e-12));
  CHECK(std::isinf(green(DomainSpec::ball(2), {0.1, 0.2}, {0.1, 0.2})));
  CHECK(green(DomainSpec::ball(2), {0.1, 0.2}, {0.1, 0.2}) < 0);
}

TEST_CASE("green is negative inside and supported where expected") {
  CHECK(green_supported(DomainSpec::ball(3), {0.1, 0.2, 0.0}));
  CHECK(green_supported(DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}));
  CHECK_FALSE(green_supported(DomainSpec::ellipsoid({2, 3}), {0.1, 0.0}));
  CHECK_THROWS_AS(green(DomainSpec::ellipsoid({2, 3}), {0.1, 0.0}, {0.0, 0.0}), Unsupported);
  CHECK_THROWS_AS(green(DomainSpec::unit_disc(), {1.5}, {0.0}), OutsideDomain);
  CounterRng rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const auto w = random_point(rng, 2, 0.9);
    const auto z = random_point(rng, 2, 0.9);
    CHECK(green(DomainSpec::ball(2), w, z) < 0.0);
    CHECK(green(DomainSpec::polydisc({1, 1}), w, z) < 0.0);
  }
}

TEST_CASE("ball green is symmetric and matches the automorphism") {
  CounterRng rng(2, 0);
  for (int i = 0; i < 50; ++i) {
    const auto w = random_point(rng, 2, 0.9);
    const auto z = random_point(rng, 2, 0.9);
    const double g = green(DomainSpec::ball(2), w, z);
    CHECK(g == doctest::Approx(green(DomainSpec::ball(2), z, w)).epsilon(1e-10));
    CHECK(g == doctest::Approx(std::log(ball_automorphism(w, z).norm())).epsilon(1e-10));
  }
}

TEST_CASE("sublevel examples") {
  const auto s = sublevel_set(DomainSpec::unit_disc(), {0.5}, std::log(0.5));
  const auto* e = std::get_if<EuclideanDisc>(&s.shape);
  REQUIRE(e);
  CHECK(e->center.real() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(e->radius == doctest::Approx(0.4).epsilon(1e-12));

  const auto t = sublevel_set(DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}, -1.0);
  const auto* c = std::get_if<ScaledCopy>(&t.shape);
  REQUIRE(c);
  CHECK(c->factor == doctest::Approx(std::exp(-1.0)));

  const auto u = scaled_sublevel(DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}, -2.5);
  const auto* cu = std::get_if<ScaledCopy>(&u.shape);
  REQUIRE(cu);
  CHECK(cu->factor == doctest::Approx(1.0).epsilon(1e-14));

  const auto v = scaled_sublevel(DomainSpec::unit_disc(), {0.5}, std::log(0.5));
  const auto* ev = std::get_if<EuclideanDisc>(&v.shape);
  REQUIRE(ev);
  CHECK(ev->center.real() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(ev->radius == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("a = 0 gives the domain itself") {
  CounterRng rng(4, 0);
  const DomainSpec d = DomainSpec::ball(2);
  const ComplexPoint w{0.3, -0.2};
  const auto s = sublevel_set(d, w, 0.0);
  for (int i = 0; i < 500; ++i) {
    const auto z = random_point(rng, 2, 1.2);
    CHECK(s.contains(z) == contains(d, z));
  }
}

TEST_CASE("sublevel sets agree with the green function and are nested") {
  CounterRng rng(5, 0);
  const std::vector<std::pair<DomainSpec, ComplexPoint>> cases = {
      {DomainSpec::unit_disc(), {Complex(0.3, 0.4)}},
      {DomainSpec::ball(2), {0.2, Complex(0.1, 0.3)}},
      {DomainSpec::polydisc({1, 2}), {0.5, Complex(0.0, -1.0)}},
      {DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}},
  };
  for (const auto& [d, w] : cases) {
    const auto s1 = sublevel_set(d, w, -1.0);
    const auto s2 = sublevel_set(d, w, -0.5);
    for (int i = 0; i < 300; ++i) {
      const auto z = random_point(rng, d.dim(), 1.5);
      if (!contains(d, z)) continue;
      const double g = green(d, w, z);
      if (std::abs(g + 1.0) > 1e-9) CHECK(s1.contains(z) == (g < -1.0));
      if (s1.contains(z)) CHECK(s2.contains(z));
    }
  }
}

TEST_CASE("scaled sublevel is the sublevel set rescaled about the pole") {
  const DomainSpec d = DomainSpec::ball(2);
  const ComplexPoint w{0.4, 0.1};
  const double a = -0.7;
  const auto s = sublevel_set(d, w, a);
  const auto t = scaled_sublevel(d, w, a);
  CounterRng rng(6, 0);
  for (int i = 0; i < 300; ++i) {
    const auto z = random_point(rng, 2, 1.0);
    const ComplexPoint scaled = w + Complex(std::exp(-a)) * (z - w);
    CHECK(s.contains(z) == t.contains(scaled));
  }
}

TEST_CASE("sublevel geometry round-trips through its affine model") {
  const auto d = DomainSpec::product({DomainSpec::unit_disc(), DomainSpec::ball(2)});
  const auto s = sublevel_set(d, {0.3, 0.1, 0.2}, -0.4);
  const auto m = s.affine_model();
  // Off-centre ball sublevels are ellipsoids outside the catalog; centred ones are not.
  CHECK_THROWS_AS(s.as_domain(), Unsupported);
  const auto c = sublevel_set(d, {0.3, 0.0, 0.0}, -0.4);
  const auto as_d = c.as_domain();
  CounterRng rng(7, 0);
  for (int i = 0; i < 300; ++i) {
    const auto z = random_point(rng, 3, 1.2);
    CHECK(s.contains(z) == contains(m, z));
    CHECK(c.contains(z) == contains(as_d, z));
  }
}
