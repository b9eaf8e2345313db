#include <doctest.h>

#include <cmath>

#include "scv/probes.hpp"

using namespace scv;

namespace {

const DomainSpec kDisc = DomainSpec::unit_disc();

Complex mobius(Complex q, Complex rot, Complex z) { return rot * (z - q) / (1.0 - std::conj(q) * z); }

}  // namespace

TEST_CASE("suita functional examples, closed form") {
  const auto e = suita_functional(DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}, 0, 0, 20);
  CHECK(e.f_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(suita_functional(kDisc, {0.6}, 0, 0, 40).f_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(suita_functional(DomainSpec::ball(2), {0.3, 0.0}, 0, 0, 30).f_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("suita functional examples, Monte Carlo") {
  for (const auto& [d, w] : std::vector<std::pair<DomainSpec, ComplexPoint>>{
           {DomainSpec::ellipsoid({2, 3}), {0.0, 0.0}}, {kDisc, {0.6}}, {DomainSpec::ball(2), {0.3, 0.0}}}) {
    const auto f = suita_functional(d, w, 200000, 3, 20);
    CHECK(f.status == SuitaStatus::ok);
    CHECK(f.ci_low <= 1.0);
    CHECK(f.ci_high >= 1.0);
    CHECK_FALSE(f.violation);
  }
}

TEST_CASE("suita functional on an infinite indicatrix is inconclusive") {
  const auto f = suita_functional(DomainSpec::model_z1z2(), {0.0, 0.0}, 1000, 0, 10);
  CHECK(f.status == SuitaStatus::inconclusive);
  CHECK(f.volume_infinite);
  CHECK_FALSE(f.note.empty());
}

TEST_CASE("suita functional is invariant under disc automorphisms") {
  CounterRng rng(41, 0);
  for (int i = 0; i < 20; ++i) {
    const Complex q = std::polar(0.7 * rng.uniform(), rng.uniform(0, 2 * M_PI));
    const Complex rot = std::polar(1.0, rng.uniform(0, 2 * M_PI));
    const Complex w = std::polar(0.7 * rng.uniform(), rng.uniform(0, 2 * M_PI));
    const auto a = suita_functional(kDisc, {w}, 100000, stream_key(41, 2 * i), 40);
    const auto b = suita_functional(kDisc, {mobius(q, rot, w)}, 100000, stream_key(41, 2 * i + 1), 40);
    CHECK(std::abs(a.f_value - b.f_value) <= 3 * std::hypot(a.sigma, b.sigma));
  }
}

TEST_CASE("monotonicity scan examples") {
  const auto one = HomogeneousPoly::constant(1);
  const auto s = monotonicity_scan(kDisc, {0.5}, one, {-3, -2, -1, -0.25}, 40);
  for (double v : s.values) CHECK(v == doctest::Approx(16 / (9 * M_PI)).epsilon(1e-8));
  CHECK(s.endpoint == doctest::Approx(16 / (9 * M_PI)).epsilon(1e-8));
  CHECK(s.report.verdict == Verdict::pass);

  const auto H = HomogeneousPoly::monomial(MultiIndex{1, 1});
  const auto e = DomainSpec::ellipsoid({2, 3});
  const auto se = monotonicity_scan(e, {0.0, 0.0}, H, {-2, -1, 0}, 20);
  for (double v : se.values) CHECK(v == doctest::Approx(kernel_h_balanced(e, H)).epsilon(1e-10));
  CHECK(se.report.verdict == Verdict::pass);

  const auto single = monotonicity_scan(kDisc, {0.0}, one, {0.0}, 40);
  CHECK(single.report.verdict == Verdict::pass);
  CHECK_THROWS_AS(monotonicity_scan(kDisc, {0.0}, one, {0.5}, 40), InvalidArgument);
}

TEST_CASE("log convexity probe examples") {
  const auto one = HomogeneousPoly::constant(1);
  const auto r = log_convexity_probe(kDisc, {0.5}, one, {-3, -2, -1, -0.25}, 40);
  CHECK(r.verdict == Verdict::inconclusive);
  for (const auto& c : r.checks) CHECK(std::abs(c.lhs) <= 1e-8);
  const auto b = log_convexity_probe(DomainSpec::ball(2), {0.0, 0.0}, HomogeneousPoly::monomial(MultiIndex{1, 0}),
                                     {-2, -1, 0}, 20);
  for (const auto& c : b.checks) CHECK(std::abs(c.lhs) <= 1e-8);
  CHECK_THROWS_WITH_AS(log_convexity_probe(kDisc, {0.0}, one, {-1, 0}, 40), "need >= 3 grid points",
                       InvalidArgument);
}

TEST_CASE("volume convexity probe") {
  for (const auto& d : {DomainSpec::polydisc({1, 1}), DomainSpec::ball(2), kDisc}) {
    const auto r = volume_convexity_probe(d, 50, {0.25, 0.5, 0.75}, 0, 1);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.checks.size() == 150);
  }
  const auto mc = volume_convexity_probe(DomainSpec::ball(2), 5, {0.5}, 50000, 2);
  CHECK(mc.verdict == Verdict::pass);
  CHECK(mc.policy == TolerancePolicy::stochastic);
  CHECK_THROWS_AS(volume_convexity_probe(DomainSpec::ellipsoid({2, 3}), 5, {0.5}, 0, 1), Unsupported);
}

TEST_CASE("volume psh probe") {
  const auto r = volume_psh_probe(DomainSpec::polydisc({1, 1}), 20, {0.05, 0.2}, 0, 3, PshTarget::volume);
  CHECK(r.verdict == Verdict::pass);
  const auto a = volume_psh_probe(kDisc, 20, {0.05, 0.2}, 0, 3, PshTarget::azukawa);
  CHECK(a.verdict == Verdict::pass);
  const auto a32 = volume_psh_probe(kDisc, 20, {0.05, 0.2}, 0, 3, PshTarget::azukawa, 32);
  CHECK(a32.verdict == a.verdict);
  CHECK_THROWS_AS(volume_psh_probe(kDisc, 5, {0.0}, 0, 3, PshTarget::volume), InvalidArgument);
}

TEST_CASE("boundary limit scan examples") {
  const auto d = boundary_limit_scan(kDisc, {1.0}, {0.9, 0.99, 0.999}, 0, 0, 40);
  CHECK(d.verdict == Verdict::pass);
  for (const auto& c : d.checks) CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-9));
  const auto b = boundary_limit_scan(DomainSpec::ball(2), {1.0, 0.0}, {0.0, 0.9, 0.99, 0.999}, 100000, 1, 20);
  CHECK(b.verdict == Verdict::pass);
  CHECK_THROWS_AS(boundary_limit_scan(kDisc, {1.0}, {1.5}, 0, 0, 40), OutsideDomain);
  CHECK_THROWS_AS(boundary_limit_scan(kDisc, {0.0}, {0.5}, 0, 0, 40), InvalidArgument);
}

TEST_CASE("dimension probe examples") {
  const auto b = dimension_probe(DomainSpec::ball(2), 5);
  CHECK(b.count == 21);
  CHECK(b.classification == DimensionClass::all_integrable);
  CHECK(b.counts_equal);
  for (auto c : b.scaled_counts) CHECK(c == 21);
  REQUIRE(b.indicatrix_count);
  CHECK(*b.indicatrix_count == 21);
  const auto m = dimension_probe(DomainSpec::model_z1z2(), 10);
  CHECK(m.count == 0);
  CHECK(m.classification == DimensionClass::trivial);
  CHECK(m.counts_equal);
  CHECK(dimension_probe(kDisc, 0).count == 1);
  CHECK_THROWS_AS(dimension_probe(DomainSpec::disc(0.5, 1.0), 3), Unsupported);
}

TEST_CASE("transformation and product rules") {
  const auto t = transformation_rule_probe(5, 1, 60);
  CHECK(t.verdict == Verdict::pass);
  CHECK(t.violations() == 0);
  const auto p = product_rule_probe(10, 1);
  CHECK(p.verdict == Verdict::pass);
}

TEST_CASE("suita inequality probe") {
  const auto r = suita_inequality_probe(10, 20000, 5, 20);
  CHECK(r.violations() == 0);
}

TEST_CASE("probes are pure functions of the seed") {
  const auto a = volume_convexity_probe(DomainSpec::ball(2), 3, {0.5}, 20000, 9);
  const auto b = volume_convexity_probe(DomainSpec::ball(2), 3, {0.5}, 20000, 9);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].lhs == b.checks[i].lhs);
    CHECK(a.checks[i].rhs == b.checks[i].rhs);
  }
}

TEST_CASE("random catalog points are interior") {
  CounterRng rng(44, 0);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_catalog_pair(rng);
    CHECK(contains(s.domain, s.point));
  }
}
