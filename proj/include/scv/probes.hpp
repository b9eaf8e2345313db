#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scv/bergman.hpp"
#include "scv/metrics.hpp"
#include "scv/rng.hpp"

namespace scv {

enum class Verdict { pass, fail, inconclusive };
/// exact: 1e-9 on closed-form paths; stochastic: 3 sigma on Monte Carlo paths.
enum class TolerancePolicy { exact, stochastic, mixed };

const char* to_string(Verdict v);
const char* to_string(TolerancePolicy p);

/// One sampled inequality lhs <= rhs. margin = lhs - rhs, so a check is violated when
/// margin > tolerance. Equalities are recorded as |lhs - rhs| <= tolerance.
struct ProbeCheck {
  std::string config;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool violated = false;
};

struct ProbeReport {
  std::string probe;
  std::vector<ProbeCheck> checks;
  Verdict verdict = Verdict::pass;
  TolerancePolicy policy = TolerancePolicy::exact;
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 0;
  std::vector<std::string> notes;

  std::size_t violations() const;
};

enum class SuitaStatus { ok, inconclusive };

/// F_D(w) = (K_D(w) vol(I_D(w)))^{1/n}.
struct SuitaValue {
  double f_value = 0.0;
  KernelResult kernel_part;
  VolumeEstimate volume_part;   // mean/std_error; n_samples == 0 marks an exact volume
  bool volume_infinite = false;
  double sigma = 0.0;           // propagated Monte Carlo standard error of f_value
  double ci_low = 0.0;
  double ci_high = 0.0;
  SuitaStatus status = SuitaStatus::ok;
  bool violation = false;       // ci_high < 1
  std::string note;
};

/// mc_samples == 0 uses the closed-form indicatrix volume instead of sampling.
SuitaValue suita_functional(const DomainSpec& domain, const ComplexPoint& w, std::uint64_t mc_samples,
                            std::uint64_t seed, int degree_cap);

struct MonotonicityScan {
  std::vector<double> a_grid;
  std::vector<double> values;  // K^H_{D_a}(pole)
  double endpoint = 0.0;       // K^H_{I_D(pole)}(0), the a -> -infinity limit
  double max_deviation = 0.0;  // max relative distance of the values from the first one
  ProbeReport report;
};

MonotonicityScan monotonicity_scan(const DomainSpec& domain, const ComplexPoint& pole, const HomogeneousPoly& H,
                                   const std::vector<double>& a_grid, int degree_cap);

/// Second divided differences of a -> log K^H_{D_a}(pole). Evidence only: the verdict is
/// always inconclusive.
ProbeReport log_convexity_probe(const DomainSpec& domain, const ComplexPoint& pole, const HomogeneousPoly& H,
                                const std::vector<double>& a_grid, int degree_cap);

/// u(tw + (1-t)z) <= t u(w) + (1-t) u(z) for u = -log vol I_D. mc_samples == 0 uses closed forms.
ProbeReport volume_convexity_probe(const DomainSpec& domain, std::size_t n_pairs, const std::vector<double>& t_grid,
                                   std::uint64_t mc_samples, std::uint64_t seed);

enum class PshTarget { volume, azukawa };
const char* to_string(PshTarget t);

/// Sub-mean-value checks on random complex lines. For the volume target u = -log vol I_D(z);
/// for the azukawa target u = log A_D(z; X) on lines of D x C^n.
ProbeReport volume_psh_probe(const DomainSpec& domain, std::size_t n_lines, const std::vector<double>& circle_radii,
                             std::uint64_t mc_samples, std::uint64_t seed, PshTarget target,
                             int quadrature_points = 16);

/// F_D along the ray t -> t * direction.
ProbeReport boundary_limit_scan(const DomainSpec& domain, const ComplexPoint& direction,
                                const std::vector<double>& t_grid, std::uint64_t mc_samples, std::uint64_t seed,
                                int degree_cap);

enum class DimensionClass { trivial, at_least_count, all_integrable };
const char* to_string(DimensionClass c);

struct DimensionReport {
  std::size_t count = 0;  // square-integrable monomials with |alpha| <= cap
  std::size_t total = 0;  // all monomials with |alpha| <= cap
  DimensionClass classification = DimensionClass::trivial;
  std::vector<double> a_grid;
  std::vector<std::size_t> scaled_counts;  // counts on D_a(0), balanced domains only
  std::optional<std::size_t> indicatrix_count;
  bool counts_equal = true;
};

DimensionReport dimension_probe(const DomainSpec& domain, int degree_cap,
                                const std::vector<double>& a_grid = {-2.0, -1.0, -0.5});

/// K^H_D(w) = K^{H o F'(w)^T}_D(F(w)) |F'(w)|^2 for disc automorphisms F and H = c z^k,
/// series on the left against closed forms on the right.
ProbeReport transformation_rule_probe(std::size_t n_configs, std::uint64_t seed, int degree_cap);

/// K^{H1 H2}_{D1 x D2}(0) = K^{H1}_{D1}(0) K^{H2}_{D2}(0) on random balanced Reinhardt factors.
ProbeReport product_rule_probe(std::size_t n_configs, std::uint64_t seed);

/// F_D(w) >= 1 - 3 sigma on random catalog (domain, point) pairs.
ProbeReport suita_inequality_probe(std::size_t n_pairs, std::uint64_t mc_samples, std::uint64_t seed,
                                   int degree_cap);

struct CatalogSample {
  DomainSpec domain;
  ComplexPoint point;
};

/// A random domain from the part of the catalog where F_D is computable, with an interior point.
CatalogSample random_catalog_pair(CounterRng& rng);

/// Random point of D with (factorwise) gauge below max_gauge, measured after centring discs.
ComplexPoint random_interior_point(const DomainSpec& domain, CounterRng& rng, double max_gauge);

}  // namespace scv
