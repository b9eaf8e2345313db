#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "scv/domains.hpp"
#include "scv/green.hpp"

namespace scv {

/// Hit-or-miss estimate of a Lebesgue volume in R^{2n}.
struct VolumeEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double box_volume = 0.0;
  std::uint64_t hits = 0;

  double relative_error() const noexcept { return mean > 0.0 ? std_error / mean : 0.0; }
};

/// Azukawa pseudometric A_D(w; X) from closed forms.
double azukawa(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X);

/// Numeric cross-check of the Azukawa limit: exp(G(w + lambda X, w) - log|lambda|) on a
/// three-rung ladder of lambda, extrapolated to lambda = 0.
struct LadderResult {
  std::array<double, 3> lambdas{};
  std::array<double, 3> values{};
  double extrapolated = 0.0;
  double spread = 0.0;  // max - min of the rung values
  bool stable = true;   // false when the rungs disagree by more than 1e-2 relative
};
LadderResult azukawa_ladder(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X);

bool indicatrix_contains(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X);

/// I_D(w) as map(base) with base a balanced Reinhardt domain.
AffineModel indicatrix_model(const DomainSpec& domain, const ComplexPoint& w);

/// Coordinate box containing I_D(w); std::nullopt when the indicatrix is unbounded.
std::optional<Box> indicatrix_box(const DomainSpec& domain, const ComplexPoint& w);

/// Exact lambda^{2n}(I_D(w)); std::nullopt when infinite.
std::optional<double> indicatrix_volume_exact(const DomainSpec& domain, const ComplexPoint& w);

/// Monte Carlo lambda^{2n}(I_D(w)); std::nullopt signals an unbounded (infinite-volume)
/// indicatrix. Deterministic in (domain, w, n_samples, seed) whatever the worker count.
std::optional<VolumeEstimate> indicatrix_volume(const DomainSpec& domain, const ComplexPoint& w,
                                                std::uint64_t n_samples, std::uint64_t seed);

/// Hit-or-miss volume of an affine image map(base) over the given box.
VolumeEstimate monte_carlo_volume(const AffineModel& model, const Box& box, std::uint64_t n_samples,
                                  std::uint64_t seed);

/// Certified lower bound for the k-th Caratheodory-Reiffen pseudometric at the origin of a
/// bounded balanced Reinhardt domain, from the normalised monomials z^alpha / sup_D |z^alpha|.
double cr_lower(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X, int k);

/// log sup_D |z^alpha| for a bounded balanced Reinhardt domain.
double log_sup_monomial(const DomainSpec& domain, const MultiIndex& alpha);

}  // namespace scv
