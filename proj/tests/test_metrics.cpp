#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "scv/bergman.hpp"
#include "scv/metrics.hpp"
#include "scv/rng.hpp"

using namespace scv;

namespace {

const DomainSpec kDisc = DomainSpec::unit_disc();

ComplexPoint random_vec(CounterRng& rng, std::size_t n, double scale) {
  std::vector<Complex> c(n);
  for (auto& x : c) x = {scale * rng.uniform(-1, 1), scale * rng.uniform(-1, 1)};
  return ComplexPoint(c);
}

}  // namespace

TEST_CASE("azukawa examples") {
  CHECK(azukawa(kDisc, {0.5}, {1.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(azukawa(DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}, {0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(azukawa(DomainSpec::ball(2), {0.2, 0.3}, {0.0, 0.0}) == 0.0);
  CHECK(azukawa(kDisc, {0.3}, {0.0}) == 0.0);
}

TEST_CASE("azukawa is homogeneous in the vector") {
  CounterRng rng(21, 0);
  for (int i = 0; i < 30; ++i) {
    const ComplexPoint w = random_vec(rng, 2, 0.4);
    const ComplexPoint x = random_vec(rng, 2, 1.0);
    const Complex l = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0, 2 * M_PI));
    for (const auto& d : {DomainSpec::ball(2), DomainSpec::polydisc({1, 1})}) {
      CHECK(azukawa(d, w, l * x) == doctest::Approx(std::abs(l) * azukawa(d, w, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ladder agrees with the closed form") {
  CounterRng rng(22, 0);
  for (int i = 0; i < 20; ++i) {
    const ComplexPoint w = random_vec(rng, 2, 0.45);
    const ComplexPoint x = random_vec(rng, 2, 1.0);
    for (const auto& d : {DomainSpec::ball(2), DomainSpec::polydisc({1, 2})}) {
      const auto l = azukawa_ladder(d, w, x);
      CHECK(l.stable);
      CHECK(l.extrapolated == doctest::Approx(azukawa(d, w, x)).epsilon(1e-6));
    }
  }
  const auto disc = azukawa_ladder(kDisc, {0.5}, {1.0});
  CHECK(disc.extrapolated == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("indicatrix membership") {
  CHECK(indicatrix_contains(kDisc, {0.5}, {0.7}));
  CHECK_FALSE(indicatrix_contains(kDisc, {0.5}, {0.8}));
  CHECK(indicatrix_contains(DomainSpec::ball(2), {0.3, 0.1}, {0.0, 0.0}));
  CounterRng rng(23, 0);
  const auto e = DomainSpec::ellipsoid({2, 3});
  for (int i = 0; i < 300; ++i) {
    const ComplexPoint x = random_vec(rng, 2, 1.2);
    CHECK(indicatrix_contains(e, {0.0, 0.0}, x) == contains(e, x));
  }
}

TEST_CASE("exact indicatrix volumes") {
  CHECK(*indicatrix_volume_exact(kDisc, {0.0}) == doctest::Approx(M_PI));
  CHECK(*indicatrix_volume_exact(kDisc, {0.6}) == doctest::Approx(M_PI * 0.64 * 0.64));
  CHECK(*indicatrix_volume_exact(DomainSpec::ball(2), {0.0, 0.0}) == doctest::Approx(M_PI * M_PI / 2));
  // Ball: I(w) is the image of the unit ball under a map of |det|^2 = (1 - |w|^2)^3.
  const ComplexPoint w{0.3, Complex(0.1, 0.2)};
  const double s = 1 - w.norm_squared();
  CHECK(*indicatrix_volume_exact(DomainSpec::ball(2), w) == doctest::Approx(M_PI * M_PI / 2 * s * s * s));
  CHECK_FALSE(indicatrix_volume_exact(DomainSpec::model_z1z2(), {0.0, 0.0}));
  CHECK_FALSE(indicatrix_volume(DomainSpec::model_z1z2(), {0.0, 0.0}, 1000, 1));
}

TEST_CASE("monte carlo volume examples") {
  const struct {
    DomainSpec d;
    ComplexPoint w;
    double exact;
  } cases[] = {{kDisc, {0.0}, M_PI}, {kDisc, {0.6}, M_PI * 0.64 * 0.64}, {DomainSpec::ball(2), {0.0, 0.0}, M_PI * M_PI / 2}};
  for (const auto& c : cases) {
    const auto v = indicatrix_volume(c.d, c.w, 200000, 5);
    REQUIRE(v);
    CHECK(std::abs(v->mean - c.exact) <= 3 * v->std_error);
  }
}

TEST_CASE("monte carlo calibration: 3 sigma coverage over seeds") {
  const auto d = DomainSpec::ball(2);
  const double exact = M_PI * M_PI / 2;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto v = indicatrix_volume(d, {0.0, 0.0}, 100000, seed);
    covered += std::abs(v->mean - exact) <= 3 * v->std_error ? 1 : 0;
  }
  CHECK(covered >= 95);
}

TEST_CASE("monte carlo volume is deterministic and independent of worker count") {
  const auto d = DomainSpec::product({DomainSpec::disc(0.2, 1.0), DomainSpec::ball(2)});
  const ComplexPoint w{0.3, 0.1, 0.2};
  setenv("SCV_WORKERS", "1", 1);
  const auto a = indicatrix_volume(d, w, 100000, 42);
  setenv("SCV_WORKERS", "4", 1);
  const auto b = indicatrix_volume(d, w, 100000, 42);
  unsetenv("SCV_WORKERS");
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->hits == b->hits);
  CHECK(a->mean == b->mean);
  CHECK(a->std_error == b->std_error);
  const auto c = indicatrix_volume(d, w, 100000, 43);
  CHECK(c->hits != a->hits);
}

TEST_CASE("monte carlo volume of generic gauge domains") {
  const auto e = DomainSpec::ellipsoid({2, 3});
  const auto v = indicatrix_volume(e, {0.0, 0.0}, 200000, 8);
  REQUIRE(v);
  CHECK(std::abs(v->mean - *moment(e, MultiIndex{0, 0})) <= 3 * v->std_error);
}

TEST_CASE("cr_lower examples and bound") {
  CHECK(cr_lower(kDisc, {0.0}, {1.0}, 1) == doctest::Approx(1.0));
  CHECK(cr_lower(kDisc, {0.0}, {1.0}, 3) == doctest::Approx(1.0));
  CHECK(cr_lower(DomainSpec::polydisc({1, 1}), {0.0, 0.0}, {1.0, 0.0}, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cr_lower(DomainSpec::model_z1z2(), {0.0, 0.0}, {1.0, 0.0}, 1), Error);
  CHECK_THROWS_AS(cr_lower(kDisc, {0.2}, {1.0}, 1), Unsupported);
  CounterRng rng(24, 0);
  const std::vector<DomainSpec> domains = {DomainSpec::ball(2), DomainSpec::polydisc({1, 2}),
                                           DomainSpec::ellipsoid({2, 3}), DomainSpec::ball(3)};
  for (const auto& d : domains) {
    for (int i = 0; i < 20; ++i) {
      const ComplexPoint x = random_vec(rng, d.dim(), 1.0);
      for (int k = 1; k <= 4; ++k) CHECK(cr_lower(d, ComplexPoint::zero(d.dim()), x, k) <= azukawa(d, ComplexPoint::zero(d.dim()), x) * (1 + 1e-12));
    }
  }
}

TEST_CASE("log sup of monomials") {
  CHECK(log_sup_monomial(DomainSpec::ball(2), MultiIndex{1, 1}) == doctest::Approx(std::log(0.5)));
  CHECK(log_sup_monomial(DomainSpec::polydisc({2, 3}), MultiIndex{1, 2}) == doctest::Approx(std::log(18.0)));
}
