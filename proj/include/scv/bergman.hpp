#pragma once

#include <optional>
#include <vector>

#include "scv/domains.hpp"
#include "scv/green.hpp"
#include "scv/poly.hpp"

namespace scv {

/// Integral of |z^alpha|^2 over a Reinhardt domain; std::nullopt when it diverges.
/// Throws Unsupported for non-Reinhardt domains.
std::optional<double> moment(const DomainSpec& domain, const MultiIndex& alpha);

enum class MomentMethod { closed_form, quadrature };

/// Monomial moments of a Reinhardt domain for every |alpha| <= degree_cap, graded by degree.
class MomentTable {
 public:
  struct Entry {
    MultiIndex alpha;
    std::optional<double> moment;
    MomentMethod method;
  };

  MomentTable(const DomainSpec& domain, int degree_cap);

  int degree_cap() const noexcept { return degree_cap_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t finite_count() const noexcept;

 private:
  int degree_cap_;
  std::vector<Entry> entries_;
};

struct KernelResult {
  double value = 0.0;         // truncated series value
  int degree_cap = 0;
  double tail_estimate = 0.0;  // contribution of the top degree block
  bool exact_flag = false;     // a closed form is known and reported alongside
  std::optional<double> closed_form;
  bool trivial_space = false;  // no square-integrable monomials

  /// The closed form when known, else the series value.
  double best() const noexcept { return closed_form.value_or(value); }
};

/// 40 for n = 1, 30 for n = 2, 20 beyond.
int default_degree_cap(std::size_t n);

/// Bergman kernel on the diagonal, by the monomial series truncated at total degree degree_cap.
KernelResult kernel(const DomainSpec& domain, const ComplexPoint& w, int degree_cap);

/// Closed form of the Bergman kernel for discs, balls, polydiscs, their products, and
/// balanced Reinhardt domains at the origin.
std::optional<double> kernel_closed_form(const DomainSpec& domain, const ComplexPoint& w);

/// Kernel of a sublevel geometry through its affine model.
KernelResult kernel_on_sublevel(const SublevelGeometry& geom, const ComplexPoint& w, int degree_cap);

/// |sum |a_alpha|^2 alpha!|^2 / integral |H|^2 at the origin of a balanced Reinhardt domain.
/// This is |P_H f|^2 for the test function f = H* / ||H||; it equals K^H_D(0) when H is a
/// monomial or when the degree-k moments are proportional to alpha! (the ball), and is a lower
/// bound otherwise. kernel_h reports the exact supremum.
double kernel_h_balanced(const DomainSpec& domain, const HomogeneousPoly& H);

/// sup |P_H f(w)|^2 over unit-norm f whose jets of order < deg H vanish at w, computed in the
/// truncated orthonormal monomial basis.
KernelResult kernel_h(const DomainSpec& domain, const ComplexPoint& w, const HomogeneousPoly& H, int degree_cap);

/// kernel_h on offset + map(base), via K^H(offset + map u) = K_base^{H o map^{-T}}(u) / |det map|^2.
KernelResult kernel_h_on_model(const AffineModel& model, const ComplexPoint& w, const HomogeneousPoly& H,
                               int degree_cap);
KernelResult kernel_h_on_sublevel(const SublevelGeometry& geom, const ComplexPoint& w, const HomogeneousPoly& H,
                                  int degree_cap);

/// K^(k)(w; X) = K^{H_X^k}(w).
KernelResult kernel_k(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X, int k, int degree_cap);

/// sqrt(K^{H_X}(w) / K(w)).
double bergman_metric(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X, int degree_cap);

}  // namespace scv
