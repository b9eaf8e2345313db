#include <doctest.h>

#include <cmath>

#include "scv/domains.hpp"
#include "scv/rng.hpp"

using namespace scv;

TEST_CASE("gauge examples") {
  CHECK(gauge(DomainSpec::ball(2), {0.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gauge(DomainSpec::polydisc({1, 1}), {0.2, 0.7}) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(gauge(DomainSpec::ellipsoid({2, 3}), {0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gauge is absolutely homogeneous") {
  const std::vector<DomainSpec> domains = {DomainSpec::ball(3), DomainSpec::polydisc({1, 2}),
                                           DomainSpec::ellipsoid({2, 3}), DomainSpec::model_z1z2(),
                                           DomainSpec::product({DomainSpec::unit_disc(), DomainSpec::ball(2)})};
  CounterRng rng(3, 0);
  for (const auto& d : domains) {
    for (int i = 0; i < 50; ++i) {
      std::vector<Complex> c(d.dim());
      for (auto& x : c) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const ComplexPoint z(c);
      const Complex lambda = std::polar(rng.uniform(0.01, 3.0), rng.uniform(0, 2 * M_PI));
      CHECK(gauge(d, lambda * z) == doctest::Approx(std::abs(lambda) * gauge(d, z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("gauge rejects off-centre discs") {
  CHECK_THROWS_AS(gauge(DomainSpec::disc(0.2, 1.0), {0.1}), Error);
}

TEST_CASE("contains examples") {
  CHECK(contains(DomainSpec::disc(0.2, 1.0), {1.1}));
  CHECK_FALSE(contains(DomainSpec::disc(0.2, 1.0), {1.3}));
  CHECK_FALSE(contains(DomainSpec::ball(2), {1.0, 0.0}));
  CHECK(contains(DomainSpec::model_z1z2(), {10.0, 0.05}));
}

TEST_CASE("bounding box examples") {
  const auto b = bounding_box(DomainSpec::polydisc({1, 2}));
  REQUIRE(b);
  CHECK(b->hi == std::vector<double>{1, 1, 2, 2});
  CHECK(b->lo == std::vector<double>{-1, -1, -2, -2});
  const auto e = bounding_box(DomainSpec::ellipsoid({2, 3}));
  REQUIRE(e);
  CHECK(e->hi == std::vector<double>{1, 1, 1, 1});
  CHECK_FALSE(bounding_box(DomainSpec::model_z1z2()));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(DomainSpec::ball(0), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::disc(0.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::polydisc({1, 0}), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::ellipsoid({2, -1}), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::ball(9), InvalidArgument);
  CHECK_THROWS_AS(DomainSpec::balanced_gauge(
                      "bad", 1, [](std::span<const Complex> z) { return std::abs(z[0]) * std::abs(z[0]); }, true,
                      true),
                  InvalidArgument);
}

TEST_CASE("structure flags") {
  CHECK(DomainSpec::ball(2).is_balanced());
  CHECK_FALSE(DomainSpec::disc(0.5, 1.0).is_balanced());
  CHECK(DomainSpec::disc(0.5, 1.0).is_convex());
  CHECK_FALSE(DomainSpec::ellipsoid({2, 3}).is_convex());
  CHECK_FALSE(DomainSpec::model_z1z2().is_bounded());
  const auto p = DomainSpec::product({DomainSpec::unit_disc(), DomainSpec::ball(2)});
  CHECK(p.dim() == 3);
  CHECK(p.factor_dims() == std::vector<std::size_t>{1, 2});
}

TEST_CASE("bounding boxes contain sampled members") {
  const auto d = DomainSpec::product({DomainSpec::disc({0.3, -0.2}, 0.5), DomainSpec::ellipsoid({1, 2})});
  const auto box = bounding_box(d);
  REQUIRE(box);
  CounterRng rng(9, 1);
  int inside = 0;
  for (int i = 0; i < 2000; ++i) {
    std::vector<Complex> c(3);
    for (auto& x : c) x = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const ComplexPoint z(c);
    if (!contains(d, z)) continue;
    ++inside;
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(z[j].real() >= box->lo[2 * j]);
      CHECK(z[j].real() <= box->hi[2 * j]);
      CHECK(z[j].imag() >= box->lo[2 * j + 1]);
      CHECK(z[j].imag() <= box->hi[2 * j + 1]);
    }
  }
  CHECK(inside > 0);
}

TEST_CASE("reinhardt model of an off-centre disc") {
  const auto d = DomainSpec::disc({0.2, 0.1}, 0.5);
  const auto m = reinhardt_model(d);
  CHECK(m.jacobian() == doctest::Approx(1.0));
  CHECK(contains(m, {Complex(0.6, 0.1)}));
  CHECK_FALSE(contains(m, {Complex(0.75, 0.1)}));
}

TEST_CASE("canonical text form") {
  CHECK(to_string(DomainSpec::ball(2)) == "ball:n=2");
  CHECK(to_string(DomainSpec::product({DomainSpec::unit_disc(), DomainSpec::model_z1z2()})) ==
        "product(disc:c=0+0i,r=1;gauge:model-z1z2)");
}
