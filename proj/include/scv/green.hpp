#pragma once

#include <variant>
#include <vector>

#include "scv/domains.hpp"

namespace scv {

struct SublevelGeometry;

/// factor * base, scaled about the origin.
struct ScaledCopy {
  double factor;
  DomainSpec base;
};

struct EuclideanDisc {
  Complex center;
  double radius;
};

/// center + map(B_n): the sublevel sets of the ball Green function with a pole off the origin.
struct AffineBall {
  ComplexPoint center;
  ComplexMatrix map;
};

struct ProductOf {
  std::vector<SublevelGeometry> factors;
};

/// Exact description of {G < a}, or of its rescaling about the pole.
struct SublevelGeometry {
  std::variant<ScaledCopy, EuclideanDisc, AffineBall, ProductOf> shape;

  std::size_t dim() const;
  bool contains(const ComplexPoint& z) const;
  /// The same point set written as offset + map(Reinhardt base).
  AffineModel affine_model() const;
  /// The point set as a catalog domain, so it can serve as a domain in its own right.
  DomainSpec as_domain() const;
};

/// True when a closed-form Green function exists for (domain, pole).
bool green_supported(const DomainSpec& domain, const ComplexPoint& pole);

/// G_D(z, pole); -infinity exactly at z == pole.
double green(const DomainSpec& domain, const ComplexPoint& pole, const ComplexPoint& z);

/// {z : G_D(z, pole) < a}, a <= 0.
SublevelGeometry sublevel_set(const DomainSpec& domain, const ComplexPoint& pole, double a);

/// D_a(pole) = pole + e^{-a} ({G < a} - pole).
SublevelGeometry scaled_sublevel(const DomainSpec& domain, const ComplexPoint& pole, double a);

/// Ball automorphism phi_w sending w to 0, evaluated at z.
ComplexPoint ball_automorphism(const ComplexPoint& w, const ComplexPoint& z);

}  // namespace scv
