#include <cmath>
#include <limits>
#include <map>

#include <Eigen/SVD>

#include "scv/bergman.hpp"
#include "scv/cli.hpp"
#include "scv/metrics.hpp"
#include "scv/probes.hpp"

namespace scv::cli {

namespace {

SuiteRow close_to(std::string check, double measured, double expected, double tol) {
  return {std::move(check), measured, expected, tol, std::abs(measured - expected) <= tol};
}

SuiteRow relative(std::string check, double measured, double expected, double tol) {
  const double err = std::abs(measured - expected) / std::max(std::abs(expected), 1e-300);
  return {std::move(check), measured, expected, tol, err <= tol};
}

SuiteRow at_most(std::string check, double measured, double bound) {
  return {std::move(check), measured, bound, 0.0, measured <= bound};
}

SuiteRow count_is(std::string check, std::size_t measured, std::size_t expected) {
  return {std::move(check), static_cast<double>(measured), static_cast<double>(expected), 0.0, measured == expected};
}

SuiteRow verdict_is(std::string check, Verdict v, Verdict expected) {
  return {std::move(check), v == Verdict::pass ? 1.0 : v == Verdict::fail ? 0.0 : 0.5,
          expected == Verdict::pass ? 1.0 : expected == Verdict::fail ? 0.0 : 0.5, 0.0, v == expected};
}

HomogeneousPoly mono(std::initializer_list<int> alpha, Complex c = 1.0) {
  return HomogeneousPoly::monomial(MultiIndex(alpha), c);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return stream_key(seed, 0x5017e000ULL + tag); }

// ---- criterion 1 ----
std::vector<SuiteRow> kernel_oracle(std::uint64_t) {
  const double disc = kernel(DomainSpec::unit_disc(), ComplexPoint{0.5}, 50).value;
  const double bidisc = kernel(DomainSpec::polydisc({1.0, 1.0}), ComplexPoint::zero(2), 30).value;
  return {close_to("disc w=0.5 series", disc, 16.0 / (9.0 * M_PI), 1e-8),
          close_to("bidisc w=0 series", bidisc, 1.0 / (M_PI * M_PI), 1e-10)};
}

// ---- criterion 2 ----
std::vector<SuiteRow> balanced_formula(std::uint64_t) {
  std::vector<SuiteRow> rows;
  const DomainSpec disc = DomainSpec::unit_disc();
  for (int k = 0; k <= 6; ++k) {
    const double expected = factorial(k) * factorial(k) * (k + 1.0) / M_PI;
    const HomogeneousPoly H = mono({k});
    rows.push_back(relative("balanced formula z^" + std::to_string(k), kernel_h_balanced(disc, H), expected, 1e-10));
    rows.push_back(relative("projection z^" + std::to_string(k) + " cap 40", kernel_h(disc, ComplexPoint{0.0}, H, 40).value,
                            expected, 1e-8));
  }
  return rows;
}

// ---- criterion 3 ----
std::vector<SuiteRow> metric_identity(std::uint64_t seed) {
  std::vector<SuiteRow> rows;
  rows.push_back(close_to("disc w=0.5 X=1", bergman_metric(DomainSpec::unit_disc(), ComplexPoint{0.5}, ComplexPoint{1.0}, 40),
                          std::sqrt(2.0) / 0.75, 1e-8));
  const std::vector<DomainSpec> domains = {DomainSpec::unit_disc(), DomainSpec::ball(2), DomainSpec::polydisc({1.0, 2.0}),
                                           DomainSpec::ellipsoid({2.0, 3.0})};
  CounterRng rng(seed, 3);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DomainSpec& d = domains[static_cast<std::size_t>(i) % domains.size()];
    const ComplexPoint w = random_interior_point(d, rng, 0.5);
    std::vector<Complex> x(d.dim());
    for (auto& c : x) c = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const ComplexPoint X(x);
    const int cap = default_degree_cap(d.dim());
    const double beta = bergman_metric(d, w, X, cap);
    const double k = kernel(d, w, cap).value;
    const double kx = kernel_h(d, w, HomogeneousPoly::linear_form(X), cap).value;
    worst = std::max(worst, std::abs(beta * beta * k - kx) / kx);
  }
  rows.push_back(at_most("max relative |beta^2 K - K^{H_X}| over 50 samples", worst, 1e-9));
  return rows;
}

// ---- criterion 4 ----
std::vector<SuiteRow> suita_centre(std::uint64_t seed) {
  std::vector<SuiteRow> rows;
  const std::vector<DomainSpec> domains = {DomainSpec::ball(2), DomainSpec::polydisc({1.0, 1.0}),
                                           DomainSpec::ellipsoid({2.0, 3.0})};
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const DomainSpec& d = domains[i];
    const SuitaValue f = suita_functional(d, ComplexPoint::zero(d.dim()), 1000000, sub_seed(seed, 40 + i),
                                          default_degree_cap(d.dim()));
    rows.push_back(close_to("F(0) " + to_string(d), f.f_value, 1.0, 3.0 * f.sigma));
    rows.push_back(at_most("sigma " + to_string(d), f.sigma, 2e-3));
  }
  return rows;
}

// ---- criterion 5 ----
std::vector<SuiteRow> suita_random(std::uint64_t seed) {
  const ProbeReport r = suita_inequality_probe(100, 100000, sub_seed(seed, 5), 0);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : r.checks) worst = std::max(worst, c.margin / c.tolerance);
  return {count_is("checked pairs", r.checks.size(), 100), count_is("violations beyond 3 sigma", r.violations(), 0),
          at_most("largest (1 - F) / (3 sigma)", worst, 1.0)};
}

// ---- criterion 6 ----
std::vector<SuiteRow> monotone_shadow(std::uint64_t) {
  std::vector<SuiteRow> rows;
  const std::vector<double> grid = {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, -0.25, 0.0};
  const double expected = 16.0 / (9.0 * M_PI);
  const MonotonicityScan s =
      monotonicity_scan(DomainSpec::unit_disc(), ComplexPoint{0.5}, HomogeneousPoly::constant(1), grid, 40);
  rows.push_back(verdict_is("disc pole 0.5 verdict", s.report.verdict, Verdict::pass));
  double dev = 0.0;
  for (double v : s.values) dev = std::max(dev, std::abs(v - expected));
  rows.push_back(at_most("disc pole 0.5 max |K - 16/(9 pi)|", dev, 1e-8));
  rows.push_back(close_to("disc pole 0.5 endpoint", s.endpoint, expected, 1e-8));
  const std::vector<DomainSpec> balanced = {DomainSpec::ball(2), DomainSpec::polydisc({1.0, 1.0}),
                                            DomainSpec::polydisc({1.0, 2.0}), DomainSpec::ellipsoid({2.0, 3.0})};
  for (const auto& d : balanced) {
    const HomogeneousPoly H = mono({1, 1});
    const double value = kernel_h_balanced(d, H);
    const MonotonicityScan b = monotonicity_scan(d, ComplexPoint::zero(2), H, grid, default_degree_cap(2));
    rows.push_back(verdict_is(to_string(d) + " verdict", b.report.verdict, Verdict::pass));
    rows.push_back(at_most(to_string(d) + " relative deviation", b.max_deviation, 1e-8));
    rows.push_back(relative(to_string(d) + " endpoint", b.endpoint, value, 1e-8));
  }
  return rows;
}

// ---- criterion 7 ----
std::vector<SuiteRow> transformation_product(std::uint64_t seed) {
  const ProbeReport t = transformation_rule_probe(20, sub_seed(seed, 7), 60);
  const ProbeReport p = product_rule_probe(20, sub_seed(seed, 70));
  return {count_is("transformation rule configurations", t.checks.size(), 20),
          count_is("transformation rule violations", t.violations(), 0),
          count_is("product rule configurations", p.checks.size() / 3, 20),
          count_is("product rule violations", p.violations(), 0)};
}

// ---- criterion 8 ----
std::vector<SuiteRow> convexity_psh(std::uint64_t seed) {
  std::vector<SuiteRow> rows;
  const std::vector<DomainSpec> domains = {DomainSpec::disc(Complex(0.2, 0.1), 1.5), DomainSpec::ball(2),
                                           DomainSpec::polydisc({1.0, 2.0}),
                                           DomainSpec::product({DomainSpec::unit_disc(), DomainSpec::ball(2)})};
  const std::vector<double> ts = {0.25, 0.5, 0.75};
  const std::vector<double> radii = {0.05, 0.3};

  std::size_t configs = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const ProbeReport r = volume_convexity_probe(domains[i], 17, ts, 0, sub_seed(seed, 80 + i));
    configs += r.checks.size();
    violations += r.violations();
  }
  rows.push_back(at_most("convexity closed-form configurations >= 200", 200.0, static_cast<double>(configs)));
  rows.push_back(count_is("convexity closed-form violations", violations, 0));

  configs = violations = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    const ProbeReport r = volume_convexity_probe(domains[i], 10, ts, 100000, sub_seed(seed, 84 + i));
    configs += r.checks.size();
    violations += r.violations();
  }
  rows.push_back(count_is("convexity Monte Carlo configurations", configs, 60));
  rows.push_back(count_is("convexity Monte Carlo violations", violations, 0));

  for (const PshTarget target : {PshTarget::volume, PshTarget::azukawa}) {
    const std::string name = std::string("psh ") + to_string(target);
    configs = violations = 0;
    std::size_t verdict_changes = 0;
    for (std::size_t i = 0; i < domains.size(); ++i) {
      const std::uint64_t s = sub_seed(seed, (target == PshTarget::volume ? 90 : 95) + i);
      const ProbeReport r16 = volume_psh_probe(domains[i], 25, radii, 0, s, target, 16);
      const ProbeReport r32 = volume_psh_probe(domains[i], 25, radii, 0, s, target, 32);
      configs += r16.checks.size();
      violations += r16.violations() + r32.violations();
      verdict_changes += r16.verdict != r32.verdict ? 1 : 0;
    }
    rows.push_back(at_most(name + " closed-form configurations >= 200", 200.0, static_cast<double>(configs)));
    rows.push_back(count_is(name + " violations (16 and 32 points)", violations, 0));
    rows.push_back(count_is(name + " verdict changes 16 -> 32 points", verdict_changes, 0));
  }

  configs = violations = 0;
  std::size_t verdict_changes = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::uint64_t s = sub_seed(seed, 99 + i);
    const ProbeReport r16 = volume_psh_probe(domains[i], 5, radii, 20000, s, PshTarget::volume, 16);
    const ProbeReport r32 = volume_psh_probe(domains[i], 5, radii, 20000, s, PshTarget::volume, 32);
    configs += r16.checks.size();
    violations += r16.violations() + r32.violations();
    verdict_changes += r16.verdict != r32.verdict ? 1 : 0;
  }
  rows.push_back(count_is("psh vol Monte Carlo configurations", configs, 20));
  rows.push_back(count_is("psh vol Monte Carlo violations", violations, 0));
  rows.push_back(count_is("psh vol Monte Carlo verdict changes", verdict_changes, 0));
  return rows;
}

// ---- criterion 9 ----
std::vector<SuiteRow> dimensions(std::uint64_t) {
  const DimensionReport ball = dimension_probe(DomainSpec::ball(2), 5);
  const DimensionReport model = dimension_probe(DomainSpec::model_z1z2(), 10);
  const DimensionReport ell = dimension_probe(DomainSpec::ellipsoid({2.0, 3.0}), 8);
  return {count_is("ball(2) cap 5 count", ball.count, 21),
          count_is("ball(2) counts equal on D, D_a, I_D(0)", ball.counts_equal ? 1 : 0, 1),
          count_is("model-z1z2 cap 10 count", model.count, 0),
          count_is("model-z1z2 trivial", model.classification == DimensionClass::trivial ? 1 : 0, 1),
          count_is("model-z1z2 counts equal", model.counts_equal ? 1 : 0, 1),
          count_is("ellipsoid(2,3) counts equal", ell.counts_equal ? 1 : 0, 1)};
}

// ---- criterion 10 ----
std::vector<SuiteRow> boundary(std::uint64_t seed) {
  std::vector<SuiteRow> rows;
  const std::vector<double> ts = {0.9, 0.99, 0.999};
  const ProbeReport disc =
      boundary_limit_scan(DomainSpec::unit_disc(), ComplexPoint{1.0}, ts, 1000000, sub_seed(seed, 10), 40);
  const ProbeReport ball =
      boundary_limit_scan(DomainSpec::ball(2), ComplexPoint{1.0, 0.0}, ts, 1000000, sub_seed(seed, 11), 30);
  for (const auto* r : {&disc, &ball}) {
    const std::string name = r == &disc ? "disc" : "ball(2)";
    for (std::size_t i = 0; i < r->checks.size(); ++i) {
      const auto& c = r->checks[i];
      rows.push_back({name + " |F - 1| at t=" + format_double(ts[i]), c.margin, 0.0, c.tolerance, !c.violated});
    }
  }
  return rows;
}

// ---- criterion 11: independent brute-force oracle for the constrained projection ----

struct OracleConfig {
  DomainSpec domain;
  ComplexPoint w;
  HomogeneousPoly H;
  int cap;
};

// D^beta z^alpha at w, recomputed here without the library's jet code.
Complex jet(const MultiIndex& alpha, const MultiIndex& beta, const ComplexPoint& w) {
  Complex v = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (beta[j] > alpha[j]) return 0.0;
    for (int t = alpha[j] - beta[j] + 1; t <= alpha[j]; ++t) v *= static_cast<double>(t);
    v *= std::pow(w[j], alpha[j] - beta[j]);
  }
  return v;
}

struct OracleResult {
  double library;
  double attained;
  double sampled_max;
};

OracleResult brute_force(const OracleConfig& c, CounterRng& rng) {
  std::vector<MultiIndex> basis;
  std::vector<double> scale;
  for (const auto& alpha : multi_indices_up_to(c.domain.dim(), c.cap)) {
    const auto m = moment(c.domain, alpha);
    if (!m) continue;
    basis.push_back(alpha);
    scale.push_back(1.0 / std::sqrt(*m));
  }
  const auto m = static_cast<Eigen::Index>(basis.size());
  const auto betas = multi_indices_up_to(c.domain.dim(), c.H.degree() - 1);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (const auto& [beta, a] : c.H.terms()) v(i) += a * jet(basis[i], beta, c.w) * scale[i];
  }
  Eigen::MatrixXcd null_basis;
  if (c.H.degree() == 0) {
    null_basis = Eigen::MatrixXcd::Identity(m, m);
  } else {
    Eigen::MatrixXcd C(static_cast<Eigen::Index>(betas.size()), m);
    for (std::size_t r = 0; r < betas.size(); ++r) {
      for (Eigen::Index i = 0; i < m; ++i) C(static_cast<Eigen::Index>(r), i) = jet(basis[i], betas[r], c.w) * scale[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 * sv(0) ? 1 : 0;
    null_basis = svd.matrixV().rightCols(m - rank);
  }
  // f = N c with |c| = 1 is feasible and unit-norm; P_H f(w) = v^T N c.
  const Eigen::RowVectorXcd u = v.transpose() * null_basis;
  const auto d = null_basis.cols();
  double sampled = 0.0;
  Eigen::VectorXcd best = Eigen::VectorXcd::Zero(d);
  for (int s = 0; s < 20000; ++s) {
    Eigen::VectorXcd x(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = rng.normal();
      x(i) = Complex(re, rng.normal());
    }
    x.normalize();
    const double val = std::norm((u * x)(0));
    if (val > sampled) {
      sampled = val;
      best = x;
    }
  }
  // Projected ascent from the best sample: x <- normalise(x + grad / |u|^2), grad = u^* (u x).
  const double u2 = u.squaredNorm();
  for (int it = 0; it < 200 && u2 > 0.0; ++it) {
    const Complex ux = (u * best)(0);
    Eigen::VectorXcd next = best + u.adjoint() * (ux / u2);
    best = next.normalized();
  }
  return {kernel_h(c.domain, c.w, c.H, c.cap).value, std::norm((u * best)(0)), sampled};
}

std::vector<SuiteRow> projection_oracle(std::uint64_t seed) {
  std::map<MultiIndex, Complex> sq{{MultiIndex{2, 0}, 1.0}, {MultiIndex{0, 2}, Complex(0.0, 1.0)}};
  const std::vector<OracleConfig> configs = {
      {DomainSpec::unit_disc(), ComplexPoint{0.0}, mono({1}), 6},
      {DomainSpec::unit_disc(), ComplexPoint{0.3}, mono({1}), 6},
      {DomainSpec::unit_disc(), ComplexPoint{Complex(0.2, 0.1)}, mono({2}), 6},
      {DomainSpec::disc(0.0, 1.5), ComplexPoint{0.4}, mono({3}, Complex(0.5, 1.0)), 6},
      {DomainSpec::polydisc({1.0, 1.0}), ComplexPoint{0.2, -0.1}, mono({1, 0}), 5},
      {DomainSpec::polydisc({1.0, 2.0}), ComplexPoint{Complex(0.0, 0.1), 0.3}, mono({1, 1}), 5},
      {DomainSpec::ball(2), ComplexPoint{0.1, 0.2}, mono({1, 0}), 5},
      {DomainSpec::ball(2), ComplexPoint{Complex(0.0, 0.2), 0.0}, HomogeneousPoly(2, 2, sq), 6},
      {DomainSpec::ellipsoid({2.0, 3.0}), ComplexPoint{0.1, 0.1}, mono({0, 1}), 6},
      {DomainSpec::product({DomainSpec::unit_disc(), DomainSpec::ball(2)}), ComplexPoint{0.1, 0.1, 0.0},
       mono({1, 0, 1}), 4},
  };
  std::vector<SuiteRow> rows;
  CounterRng rng(seed, 11);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const OracleResult r = brute_force(configs[i], rng);
    const double tol = 1e-9 * std::max(1.0, r.library);
    const std::string name = "config " + std::to_string(i) + " " + to_string(configs[i].domain);
    rows.push_back(close_to(name + " attained", r.attained, r.library, tol));
    rows.push_back({name + " sampled max <= value", r.sampled_max, r.library, tol, r.sampled_max <= r.library + tol});
  }
  return rows;
}

}  // namespace

const std::vector<SuiteCriterion>& suite_criteria() {
  static const std::vector<SuiteCriterion> list = {
      {1, "kernel oracle", kernel_oracle},
      {2, "balanced formula", balanced_formula},
      {3, "metric ratio identity", metric_identity},
      {4, "Suita equality at the centre", suita_centre},
      {5, "Suita inequality on random pairs", suita_random},
      {6, "monotone sublevel kernels", monotone_shadow},
      {7, "transformation and product rules", transformation_product},
      {8, "convexity and plurisubharmonicity", convexity_psh},
      {9, "dimension counts", dimensions},
      {10, "boundary limit of F", boundary},
      {11, "constrained projection oracle", projection_oracle},
  };
  return list;
}

Table run_suite(std::uint64_t seed, bool& all_passed) {
  Table t;
  t.columns = {"criterion", "name", "check", "measured", "expected", "tolerance", "passed", "seed"};
  all_passed = true;
  for (const auto& c : suite_criteria()) {
    for (const auto& row : c.run(seed)) {
      all_passed = all_passed && row.passed;
      t.add({c.id, c.name, row.check, row.measured, row.expected, row.tolerance, row.passed, seed});
    }
  }
  return t;
}

}  // namespace scv::cli
