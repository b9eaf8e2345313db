#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scv/poly.hpp"
#include "scv/types.hpp"

namespace scv {

class DomainSpec;

/// {|z - center| < radius} in C.
struct Disc {
  Complex center;
  double radius;
};

/// Unit ball of C^n.
struct Ball {
  int n;
};

struct Polydisc {
  std::vector<double> radii;
};

/// Complex ellipsoid {sum_j |z_j|^(2 p_j) < 1}.
struct Ellipsoid {
  std::vector<double> exponents;
};

/// Balanced domain {h < 1} given by its Minkowski gauge h.
struct BalancedGauge {
  std::string name;
  int n;
  std::function<double(std::span<const Complex>)> gauge;
  bool bounded;
  bool reinhardt;
  /// Per-coordinate modulus bound for bounded gauges; empty when unknown.
  std::vector<double> half_widths;
  /// Monomial moments when known; std::nullopt from the callback marks a divergent integral.
  std::function<std::optional<double>(const MultiIndex&)> moments;
};

struct Product {
  std::vector<DomainSpec> factors;
};

/// Tagged description of a catalog domain. Immutable after construction.
class DomainSpec {
 public:
  using Variant = std::variant<Disc, Ball, Polydisc, Ellipsoid, BalancedGauge, Product>;

  static DomainSpec disc(Complex center, double radius);
  static DomainSpec unit_disc() { return disc(0.0, 1.0); }
  static DomainSpec ball(int n);
  static DomainSpec polydisc(std::vector<double> radii);
  static DomainSpec ellipsoid(std::vector<double> exponents);
  /// Validates absolute homogeneity of `gauge` on sampled (lambda, z).
  static DomainSpec balanced_gauge(std::string name, int n,
                                   std::function<double(std::span<const Complex>)> gauge,
                                   bool bounded, bool reinhardt,
                                   std::vector<double> half_widths = {},
                                   std::function<std::optional<double>(const MultiIndex&)> moments = {});
  /// The unbounded {|z_1 z_2| < 1} with gauge sqrt|z_1 z_2|.
  static DomainSpec model_z1z2();
  static DomainSpec product(std::vector<DomainSpec> factors);

  const Variant& variant() const noexcept { return *v_; }
  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(v_.get());
  }

  std::size_t dim() const noexcept { return dim_; }
  bool is_balanced() const noexcept;
  bool is_reinhardt() const noexcept;
  bool is_bounded() const noexcept;
  /// Disc, Ball, Polydisc and products of these.
  bool is_convex() const noexcept;
  /// Dimension of each product factor (or {dim()} for a non-product).
  std::vector<std::size_t> factor_dims() const;

 private:
  explicit DomainSpec(Variant v);
  std::shared_ptr<const Variant> v_;
  std::size_t dim_ = 0;
};

constexpr std::size_t kMaxDimension = 8;

/// Axis-aligned box in R^{2n}, coordinates ordered (Re z_1, Im z_1, Re z_2, ...).
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  double volume() const;
};

/// Canonical mini-language form, e.g. "product(disc:c=0+0i,r=1;ball:n=2)".
std::string to_string(const DomainSpec& domain);

/// Minkowski gauge h with D = {h < 1}. Rejects non-balanced variants.
double gauge(const DomainSpec& domain, const ComplexPoint& z);
bool contains(const DomainSpec& domain, const ComplexPoint& z);
/// std::nullopt for unbounded domains.
std::optional<Box> bounding_box(const DomainSpec& domain);

/// offset + map(base) with base a Reinhardt domain centred at the origin.
struct AffineModel {
  ComplexPoint offset;
  ComplexMatrix map;
  DomainSpec base;

  ComplexPoint to_base(const ComplexPoint& z) const;
  ComplexPoint from_base(const ComplexPoint& u) const;
  /// |det map|^2, the real Jacobian of the affine map.
  double jacobian() const;
  bool map_is_diagonal() const;
};

/// Represents a translate of a Reinhardt domain (a Disc off the origin included).
AffineModel reinhardt_model(const DomainSpec& domain);
bool contains(const AffineModel& model, const ComplexPoint& z);

}  // namespace scv
