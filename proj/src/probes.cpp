#include "scv/probes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace scv {

namespace {

constexpr double kExactTolerance = 1e-9;
constexpr double kBoundaryFloor = 5e-3;

// Stream indices for the generators that draw probe configurations; MC seeds of individual
// configurations come from stream_key(seed, configuration index).
constexpr std::uint64_t kConfigStream = 0x70726f6265ULL;

std::string pad(std::size_t i, int width = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return buf;
}

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ProbeCheck make_check(std::string config, double lhs, double rhs, double tolerance) {
  ProbeCheck c{std::move(config), lhs, rhs, lhs - rhs, tolerance, false};
  c.violated = !(c.margin <= tolerance);
  return c;
}

ProbeCheck make_equality(std::string config, double lhs, double rhs, double tolerance) {
  ProbeCheck c{std::move(config), lhs, rhs, std::abs(lhs - rhs), tolerance, false};
  c.violated = !(c.margin <= tolerance);
  return c;
}

void finalize(ProbeReport& report, bool inconclusive = false) {
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const ProbeCheck& a, const ProbeCheck& b) { return a.config < b.config; });
  if (report.violations() > 0) {
    report.verdict = Verdict::fail;
  } else {
    report.verdict = inconclusive ? Verdict::inconclusive : Verdict::pass;
  }
}

ComplexPoint gaussian_vector(CounterRng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& c : v) {
    const double re = rng.normal();
    c = Complex(re, rng.normal());
  }
  return ComplexPoint(std::move(v));
}

ComplexPoint unit_vector(CounterRng& rng, std::size_t n) {
  ComplexPoint v = gaussian_vector(rng, n);
  while (v.norm() < 1e-8) v = gaussian_vector(rng, n);
  return Complex(1.0 / v.norm()) * v;
}

void require_point_dim(const DomainSpec& domain, const ComplexPoint& z, const char* what) {
  if (z.dim() != domain.dim()) throw InvalidArgument(std::string(what) + " dimension does not match domain");
}

void require_sorted_levels(const std::vector<double>& a_grid) {
  if (a_grid.empty()) throw InvalidArgument("level grid is empty");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] <= 0.0)) throw InvalidArgument("levels must satisfy a <= 0");
    if (i > 0 && !(a_grid[i - 1] < a_grid[i])) throw InvalidArgument("level grid must be strictly increasing");
  }
}

// K^H of D_a(pole) at the pole, closed form when the geometry admits one.
double scaled_kernel_h(const DomainSpec& domain, const ComplexPoint& pole, const HomogeneousPoly& H, double a,
                       int degree_cap) {
  return kernel_h_on_sublevel(scaled_sublevel(domain, pole, a), pole, H, degree_cap).best();
}

// -log vol I_D(z) with its standard error.
struct LogVolume {
  double u;
  double sigma;
};

LogVolume neg_log_volume(const DomainSpec& domain, const ComplexPoint& z, std::uint64_t mc_samples,
                         std::uint64_t seed) {
  if (mc_samples == 0) {
    const auto v = indicatrix_volume_exact(domain, z);
    if (!v) throw NumericError("indicatrix volume is infinite");
    return {-std::log(*v), 0.0};
  }
  const auto est = indicatrix_volume(domain, z, mc_samples, seed);
  if (!est) throw NumericError("indicatrix volume is infinite");
  if (est->hits == 0) throw NumericError("no Monte Carlo hits; raise the sample count");
  return {-std::log(est->mean), est->std_error / est->mean};
}

void require_convex_catalog(const DomainSpec& domain, const char* probe) {
  if (!domain.is_convex()) {
    throw Unsupported(std::string(probe) + " needs a disc, ball, polydisc or a product of these");
  }
}

// Largest radius not above r whose circle (and a safety band) stays inside the domain.
double fit_circle(const DomainSpec& domain, const ComplexPoint& center, const ComplexPoint& direction, double r,
                  int points, std::size_t& shrinks) {
  for (int attempt = 0; attempt < 60; ++attempt) {
    bool inside = true;
    for (int j = 0; j < points && inside; ++j) {
      const double theta = 2.0 * M_PI * j / points;
      inside = contains(domain, center + std::polar(1.02 * r, theta) * direction);
    }
    if (inside) return r;
    r *= 0.5;
    ++shrinks;
  }
  throw NumericError("could not fit a circle inside the domain");
}

template <class F>
double circle_average(int points, F&& f) {
  double s = 0.0;
  for (int j = 0; j < points; ++j) s += f(2.0 * M_PI * j / points);
  return s / points;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(TolerancePolicy p) {
  switch (p) {
    case TolerancePolicy::exact: return "exact";
    case TolerancePolicy::stochastic: return "stochastic";
    case TolerancePolicy::mixed: return "mixed";
  }
  return "?";
}

const char* to_string(PshTarget t) { return t == PshTarget::volume ? "vol" : "azukawa"; }

const char* to_string(DimensionClass c) {
  switch (c) {
    case DimensionClass::trivial: return "trivial";
    case DimensionClass::at_least_count: return "at-least-count";
    case DimensionClass::all_integrable: return "all-integrable";
  }
  return "?";
}

std::size_t ProbeReport::violations() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const ProbeCheck& c) { return c.violated; }));
}

SuitaValue suita_functional(const DomainSpec& domain, const ComplexPoint& w, std::uint64_t mc_samples,
                            std::uint64_t seed, int degree_cap) {
  require_point_dim(domain, w, "point");
  if (!contains(domain, w)) throw OutsideDomain("point lies outside the domain");
  const double n = static_cast<double>(domain.dim());
  SuitaValue out;
  out.kernel_part = kernel(domain, w, degree_cap);
  const double K = out.kernel_part.best();

  if (mc_samples == 0) {
    const auto v = indicatrix_volume_exact(domain, w);
    out.volume_infinite = !v.has_value();
    if (v) out.volume_part.mean = *v;
  } else {
    const auto est = indicatrix_volume(domain, w, mc_samples, seed);
    out.volume_infinite = !est.has_value();
    if (est) out.volume_part = *est;
  }
  out.volume_part.seed = seed;

  if (out.volume_infinite) {
    out.f_value = std::numeric_limits<double>::quiet_NaN();
    out.ci_low = out.ci_high = out.f_value;
    out.status = SuitaStatus::inconclusive;
    out.note = K == 0.0 ? "0 * infinity: trivial Bergman space and unbounded indicatrix"
                        : "unbounded indicatrix";
    return out;
  }
  const double V = out.volume_part.mean;
  if (!(V > 0.0)) throw NumericError("indicatrix volume estimate is zero; raise the sample count");
  out.f_value = std::pow(K * V, 1.0 / n);
  out.sigma = out.f_value * (out.volume_part.std_error / V) / n;
  // The truncated series undershoots the kernel by at most about the reported tail.
  const double kernel_slack =
      out.kernel_part.closed_form ? 0.0 : out.f_value * (out.kernel_part.tail_estimate / std::max(K, 1e-300)) / n;
  out.ci_low = out.f_value - 3.0 * out.sigma - kernel_slack;
  out.ci_high = out.f_value + 3.0 * out.sigma + kernel_slack;
  out.violation = out.ci_high < 1.0;
  return out;
}

MonotonicityScan monotonicity_scan(const DomainSpec& domain, const ComplexPoint& pole, const HomogeneousPoly& H,
                                   const std::vector<double>& a_grid, int degree_cap) {
  require_point_dim(domain, pole, "pole");
  if (H.dim() != domain.dim()) throw InvalidArgument("polynomial dimension does not match domain");
  require_sorted_levels(a_grid);
  MonotonicityScan scan;
  scan.a_grid = a_grid;
  scan.report.probe = "monotonicity";
  scan.report.policy = TolerancePolicy::exact;
  for (double a : a_grid) scan.values.push_back(scaled_kernel_h(domain, pole, H, a, degree_cap));
  // The a -> -infinity end is the balanced formula on the indicatrix, never a sampled volume.
  scan.endpoint =
      kernel_h_on_model(indicatrix_model(domain, pole), ComplexPoint::zero(domain.dim()), H, degree_cap).best();

  const double scale = std::max(1.0, std::abs(scan.values.front()));
  for (double v : scan.values) scan.max_deviation = std::max(scan.max_deviation, std::abs(v - scan.values.front()) / scale);
  for (std::size_t i = 0; i + 1 < a_grid.size(); ++i) {
    const double tol = kExactTolerance * std::max(1.0, std::abs(scan.values[i + 1]));
    scan.report.checks.push_back(make_check("step=" + pad(i), scan.values[i], scan.values[i + 1], tol));
  }
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double tol = kExactTolerance * std::max(1.0, std::abs(scan.values[i]));
    scan.report.checks.push_back(make_check("endpoint=" + pad(i), scan.endpoint, scan.values[i], tol));
  }
  if (!pole.is_zero()) scan.report.notes.push_back("D_a is scaled about the pole");
  finalize(scan.report);
  return scan;
}

ProbeReport log_convexity_probe(const DomainSpec& domain, const ComplexPoint& pole, const HomogeneousPoly& H,
                                const std::vector<double>& a_grid, int degree_cap) {
  if (a_grid.size() < 3) throw InvalidArgument("need >= 3 grid points");
  require_point_dim(domain, pole, "pole");
  if (H.dim() != domain.dim()) throw InvalidArgument("polynomial dimension does not match domain");
  require_sorted_levels(a_grid);
  ProbeReport report;
  report.probe = "log-convexity";
  std::vector<double> logs;
  for (double a : a_grid) logs.push_back(std::log(scaled_kernel_h(domain, pole, H, a, degree_cap)));
  std::size_t concave = 0;
  for (std::size_t i = 1; i + 1 < a_grid.size(); ++i) {
    const double left = (logs[i] - logs[i - 1]) / (a_grid[i] - a_grid[i - 1]);
    const double right = (logs[i + 1] - logs[i]) / (a_grid[i + 1] - a_grid[i]);
    const double second = 2.0 * (right - left) / (a_grid[i + 1] - a_grid[i - 1]);
    // Convexity reads 0 <= second; recorded with margin -second but never counted as a violation.
    ProbeCheck c{"a=" + pad(i), 0.0, second, -second, kExactTolerance, false};
    if (-second > kExactTolerance) ++concave;
    report.checks.push_back(c);
  }
  report.notes.push_back("open question: evidence only, no verdict");
  report.notes.push_back(std::to_string(concave) + " grid point(s) with negative second difference beyond tolerance");
  finalize(report, true);
  return report;
}

ProbeReport volume_convexity_probe(const DomainSpec& domain, std::size_t n_pairs, const std::vector<double>& t_grid,
                                   std::uint64_t mc_samples, std::uint64_t seed) {
  require_convex_catalog(domain, "volume convexity probe");
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("t must lie in [0, 1]");
  }
  ProbeReport report;
  report.probe = "volume-convexity";
  report.policy = mc_samples == 0 ? TolerancePolicy::exact : TolerancePolicy::stochastic;
  report.seed = seed;
  report.mc_samples = mc_samples;
  CounterRng rng(seed, kConfigStream);
  std::size_t config = 0;
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const ComplexPoint w = random_interior_point(domain, rng, 0.9);
    const ComplexPoint z = random_interior_point(domain, rng, 0.9);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti, ++config) {
      const double t = t_grid[ti];
      // Common random numbers inside one configuration, fresh streams across configurations.
      const std::uint64_t s = stream_key(seed, config);
      const ComplexPoint mid = Complex(t) * w + Complex(1.0 - t) * z;
      const LogVolume um = neg_log_volume(domain, mid, mc_samples, s);
      const LogVolume uw = neg_log_volume(domain, w, mc_samples, s);
      const LogVolume uz = neg_log_volume(domain, z, mc_samples, s);
      const double rhs = t * uw.u + (1.0 - t) * uz.u;
      const double sigma = std::sqrt(um.sigma * um.sigma + t * t * uw.sigma * uw.sigma +
                                     (1.0 - t) * (1.0 - t) * uz.sigma * uz.sigma);
      const double tol = mc_samples == 0 ? kExactTolerance * std::max(1.0, std::abs(rhs)) : 3.0 * sigma;
      report.checks.push_back(make_check("pair=" + pad(p) + ",t=" + short_double(t), um.u, rhs, tol));
    }
  }
  finalize(report);
  return report;
}

ProbeReport volume_psh_probe(const DomainSpec& domain, std::size_t n_lines, const std::vector<double>& circle_radii,
                             std::uint64_t mc_samples, std::uint64_t seed, PshTarget target, int quadrature_points) {
  require_convex_catalog(domain, "plurisubharmonicity probe");
  if (quadrature_points < 3) throw InvalidArgument("circle quadrature needs at least 3 points");
  for (double r : circle_radii) {
    if (!(r > 0.0)) throw InvalidArgument("circle radii must be positive");
  }
  const bool sampled = target == PshTarget::volume && mc_samples > 0;
  ProbeReport report;
  report.probe = std::string("psh-") + to_string(target);
  report.policy = sampled ? TolerancePolicy::stochastic : TolerancePolicy::exact;
  report.seed = seed;
  report.mc_samples = target == PshTarget::volume ? mc_samples : 0;
  const std::size_t n = domain.dim();
  CounterRng rng(seed, kConfigStream);
  std::size_t shrinks = 0;
  std::size_t config = 0;
  for (std::size_t l = 0; l < n_lines; ++l) {
    const ComplexPoint center = random_interior_point(domain, rng, 0.7);
    const ComplexPoint v = unit_vector(rng, n);
    const ComplexPoint X = unit_vector(rng, n);
    const ComplexPoint Y = Complex(0.3) * unit_vector(rng, n);
    for (std::size_t ri = 0; ri < circle_radii.size(); ++ri, ++config) {
      // Radii are fitted with the 32-point circle so that 16 and 32 points see the same circle.
      double r = fit_circle(domain, center, v, circle_radii[ri], 32, shrinks);
      r = std::min(r, 2.0);  // keeps X + zeta Y away from 0 on the azukawa slice
      const std::uint64_t s = stream_key(seed, config);
      double lhs = 0.0;
      double avg = 0.0;
      double sigma2 = 0.0;
      if (target == PshTarget::volume) {
        const LogVolume c = neg_log_volume(domain, center, mc_samples, s);
        lhs = c.u;
        sigma2 = c.sigma * c.sigma;
        double sum_sigma2 = 0.0;
        avg = circle_average(quadrature_points, [&](double theta) {
          const LogVolume p = neg_log_volume(domain, center + std::polar(r, theta) * v, mc_samples, s);
          sum_sigma2 += p.sigma * p.sigma;
          return p.u;
        });
        sigma2 += sum_sigma2 / (static_cast<double>(quadrature_points) * quadrature_points);
      } else {
        lhs = std::log(azukawa(domain, center, X));
        avg = circle_average(quadrature_points, [&](double theta) {
          const Complex zeta = std::polar(r, theta);
          return std::log(azukawa(domain, center + zeta * v, X + zeta * Y));
        });
      }
      const double tol = sampled ? 3.0 * std::sqrt(sigma2) : kExactTolerance * std::max(1.0, std::abs(avg));
      report.checks.push_back(make_check("line=" + pad(l) + ",r=" + pad(ri, 2), lhs, avg, tol));
    }
  }
  if (shrinks > 0) report.notes.push_back("circle radius halved " + std::to_string(shrinks) + " time(s) to stay inside");
  finalize(report);
  return report;
}

ProbeReport boundary_limit_scan(const DomainSpec& domain, const ComplexPoint& direction,
                                const std::vector<double>& t_grid, std::uint64_t mc_samples, std::uint64_t seed,
                                int degree_cap) {
  require_point_dim(domain, direction, "direction");
  if (direction.is_zero()) throw InvalidArgument("ray direction must be non-zero");
  ProbeReport report;
  report.probe = "boundary-limit";
  report.policy = mc_samples == 0 ? TolerancePolicy::exact : TolerancePolicy::stochastic;
  report.seed = seed;
  report.mc_samples = mc_samples;
  bool inconclusive = false;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const ComplexPoint w = Complex(t_grid[i]) * direction;
    if (!contains(domain, w)) throw OutsideDomain("ray leaves the domain at t = " + format_double(t_grid[i]));
    const SuitaValue f = suita_functional(domain, w, mc_samples, stream_key(seed, i), degree_cap);
    if (f.status == SuitaStatus::inconclusive) {
      inconclusive = true;
      report.notes.push_back("t=" + short_double(t_grid[i]) + ": " + f.note);
      continue;
    }
    const double tol = std::max(kBoundaryFloor, 3.0 * f.sigma);
    report.checks.push_back(make_equality("t=" + pad(i), f.f_value, 1.0, tol));
  }
  finalize(report, inconclusive);
  return report;
}

DimensionReport dimension_probe(const DomainSpec& domain, int degree_cap, const std::vector<double>& a_grid) {
  if (degree_cap < 0) throw InvalidArgument("degree cap must be non-negative");
  if (!domain.is_reinhardt()) throw Unsupported("dimension probe needs a Reinhardt domain centred at the origin");
  DimensionReport out;
  const MomentTable table(domain, degree_cap);
  out.count = table.finite_count();
  out.total = table.entries().size();
  out.classification = out.count == 0          ? DimensionClass::trivial
                       : out.count == out.total ? DimensionClass::all_integrable
                                                : DimensionClass::at_least_count;
  if (domain.is_balanced()) {
    const ComplexPoint origin = ComplexPoint::zero(domain.dim());
    for (double a : a_grid) {
      const DomainSpec da = scaled_sublevel(domain, origin, a).as_domain();
      out.a_grid.push_back(a);
      out.scaled_counts.push_back(MomentTable(da, degree_cap).finite_count());
    }
    out.indicatrix_count = MomentTable(indicatrix_model(domain, origin).base, degree_cap).finite_count();
    out.counts_equal = *out.indicatrix_count == out.count &&
                       std::all_of(out.scaled_counts.begin(), out.scaled_counts.end(),
                                   [&](std::size_t c) { return c == out.count; });
  }
  return out;
}

ProbeReport transformation_rule_probe(std::size_t n_configs, std::uint64_t seed, int degree_cap) {
  ProbeReport report;
  report.probe = "transformation-rule";
  report.seed = seed;
  const DomainSpec disc = DomainSpec::unit_disc();
  CounterRng rng(seed, kConfigStream);
  for (std::size_t i = 0; i < n_configs; ++i) {
    // F(z) = e^{i theta} (z - q) / (1 - conj(q) z), an automorphism of the unit disc.
    const Complex q = std::polar(0.5 * std::sqrt(rng.uniform()), 2.0 * M_PI * rng.uniform());
    const Complex rot = std::polar(1.0, 2.0 * M_PI * rng.uniform());
    const Complex w = std::polar(0.5 * std::sqrt(rng.uniform()), 2.0 * M_PI * rng.uniform());
    const int k = static_cast<int>(rng.next_u64() % 4);
    const Complex c = std::polar(rng.uniform(0.5, 2.0), 2.0 * M_PI * rng.uniform());
    const Complex Fw = rot * (w - q) / (1.0 - std::conj(q) * w);
    const Complex dF = rot * (1.0 - std::norm(q)) / ((1.0 - std::conj(q) * w) * (1.0 - std::conj(q) * w));
    const HomogeneousPoly H = HomogeneousPoly::monomial(MultiIndex{k}, c);
    const double lhs = kernel_h(disc, ComplexPoint{w}, H, degree_cap).value;
    const HomogeneousPoly pushed = H.compose_linear(ComplexMatrix::Constant(1, 1, dF));
    const auto rhs_closed = kernel_h(disc, ComplexPoint{Fw}, pushed, 0).closed_form;
    const double rhs = *rhs_closed * std::norm(dF);
    report.checks.push_back(
        make_equality("config=" + pad(i) + ",k=" + std::to_string(k), lhs / rhs, 1.0, 1e-8));
  }
  report.notes.push_back("relative difference, series side at degree cap " + std::to_string(degree_cap));
  finalize(report);
  return report;
}

namespace {

HomogeneousPoly random_poly(CounterRng& rng, std::size_t n, int degree, int max_terms) {
  const auto alphas = multi_indices_of_degree(n, degree);
  std::map<MultiIndex, Complex> terms;
  for (int t = 0; t < max_terms; ++t) {
    const auto& alpha = alphas[rng.next_u64() % alphas.size()];
    terms[alpha] = std::polar(rng.uniform(0.5, 2.0), 2.0 * M_PI * rng.uniform());
  }
  return HomogeneousPoly(n, degree, terms);
}

DomainSpec random_balanced_factor(CounterRng& rng) {
  switch (rng.next_u64() % 4) {
    case 0: return DomainSpec::disc(0.0, rng.uniform(0.5, 2.0));
    case 1: return DomainSpec::ball(2);
    case 2: return DomainSpec::polydisc({rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)});
    default: return DomainSpec::ellipsoid({rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)});
  }
}

}  // namespace

ProbeReport product_rule_probe(std::size_t n_configs, std::uint64_t seed) {
  ProbeReport report;
  report.probe = "product-rule";
  report.seed = seed;
  CounterRng rng(seed, kConfigStream);
  for (std::size_t i = 0; i < n_configs; ++i) {
    const DomainSpec d1 = random_balanced_factor(rng);
    const DomainSpec d2 = random_balanced_factor(rng);
    const DomainSpec prod = DomainSpec::product({d1, d2});
    const ComplexPoint origin = ComplexPoint::zero(prod.dim());
    const std::string cfg = "config=" + pad(i);
    {
      // Monomial H_j: the balanced formula on both sides, and the projection on the product.
      const HomogeneousPoly h1 = random_poly(rng, d1.dim(), static_cast<int>(rng.next_u64() % 4), 1);
      const HomogeneousPoly h2 = random_poly(rng, d2.dim(), static_cast<int>(rng.next_u64() % 4), 1);
      const HomogeneousPoly h = h1.tensor(h2);
      const double rhs = kernel_h_balanced(d1, h1) * kernel_h_balanced(d2, h2);
      report.checks.push_back(make_equality(cfg + ",formula", kernel_h_balanced(prod, h) / rhs, 1.0, 1e-10));
      report.checks.push_back(
          make_equality(cfg + ",projection", kernel_h(prod, origin, h, h.degree() + 2).value / rhs, 1.0, 1e-10));
    }
    {
      // Two-term H_j: projection values on the factors against the projection on the product.
      const HomogeneousPoly h1 = random_poly(rng, d1.dim(), 1 + static_cast<int>(rng.next_u64() % 3), 2);
      const HomogeneousPoly h2 = random_poly(rng, d2.dim(), 1 + static_cast<int>(rng.next_u64() % 3), 2);
      const HomogeneousPoly h = h1.tensor(h2);
      const double rhs = kernel_h(d1, ComplexPoint::zero(d1.dim()), h1, h1.degree() + 2).value *
                         kernel_h(d2, ComplexPoint::zero(d2.dim()), h2, h2.degree() + 2).value;
      report.checks.push_back(
          make_equality(cfg + ",polynomial", kernel_h(prod, origin, h, h.degree() + 2).value / rhs, 1.0, 1e-10));
    }
  }
  report.notes.push_back("relative difference");
  finalize(report);
  return report;
}

ProbeReport suita_inequality_probe(std::size_t n_pairs, std::uint64_t mc_samples, std::uint64_t seed,
                                   int degree_cap) {
  ProbeReport report;
  report.probe = "suita-inequality";
  report.policy = mc_samples == 0 ? TolerancePolicy::exact : TolerancePolicy::stochastic;
  report.seed = seed;
  report.mc_samples = mc_samples;
  CounterRng rng(seed, kConfigStream);
  bool inconclusive = false;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const CatalogSample s = random_catalog_pair(rng);
    const int cap = degree_cap > 0 ? degree_cap : default_degree_cap(s.domain.dim());
    const SuitaValue f = suita_functional(s.domain, s.point, mc_samples, stream_key(seed, i), cap);
    const std::string cfg = "pair=" + pad(i) + "," + to_string(s.domain);
    if (f.status == SuitaStatus::inconclusive) {
      inconclusive = true;
      report.notes.push_back(cfg + ": " + f.note);
      continue;
    }
    const double tol = mc_samples == 0 ? kExactTolerance : f.f_value - f.ci_low;
    report.checks.push_back(make_check(cfg, 1.0, f.f_value, tol));
  }
  finalize(report, inconclusive);
  return report;
}

ComplexPoint random_interior_point(const DomainSpec& domain, CounterRng& rng, double max_gauge) {
  if (!(max_gauge > 0.0 && max_gauge < 1.0)) throw InvalidArgument("max_gauge must lie in (0, 1)");
  const std::size_t n = domain.dim();
  if (const auto* d = domain.get_if<Disc>()) {
    const double s = max_gauge * std::sqrt(rng.uniform());
    return ComplexPoint{d->center + std::polar(d->radius * s, 2.0 * M_PI * rng.uniform())};
  }
  if (const auto* p = domain.get_if<Product>()) {
    std::vector<Complex> coords;
    for (const auto& f : p->factors) {
      const ComplexPoint part = random_interior_point(f, rng, max_gauge);
      coords.insert(coords.end(), part.coords().begin(), part.coords().end());
    }
    return ComplexPoint(std::move(coords));
  }
  if (const auto* p = domain.get_if<Polydisc>()) {
    std::vector<Complex> coords;
    for (double r : p->radii) coords.push_back(std::polar(r * max_gauge * std::sqrt(rng.uniform()), 2.0 * M_PI * rng.uniform()));
    return ComplexPoint(std::move(coords));
  }
  // Balanced domains: a random direction scaled to a random gauge level.
  const ComplexPoint v = unit_vector(rng, n);
  const double h = gauge(domain, v);
  const double level = max_gauge * std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(n)));
  if (h == 0.0) return Complex(level) * v;  // unbounded direction of the domain
  return Complex(level / h) * v;
}

CatalogSample random_catalog_pair(CounterRng& rng) {
  const auto disc = [&] {
    const Complex c = std::polar(rng.uniform(0.0, 1.0), 2.0 * M_PI * rng.uniform());
    return DomainSpec::disc(c, rng.uniform(0.5, 2.0));
  };
  DomainSpec d = DomainSpec::unit_disc();
  bool centre_only = false;
  switch (rng.next_u64() % 6) {
    case 0: d = disc(); break;
    case 1: d = DomainSpec::ball(2); break;
    case 2: d = DomainSpec::ball(3); break;
    case 3: d = DomainSpec::polydisc({rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)}); break;
    case 4: d = DomainSpec::product({disc(), DomainSpec::ball(2)}); break;
    default:
      d = DomainSpec::ellipsoid({rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)});
      centre_only = true;
      break;
  }
  const ComplexPoint w = centre_only ? ComplexPoint::zero(d.dim()) : random_interior_point(d, rng, 0.9);
  return {d, w};
}

}  // namespace scv
