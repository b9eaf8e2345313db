#include "scv/green.hpp"

#include <cmath>
#include <limits>

namespace scv {

namespace {

constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_inside(const DomainSpec& domain, const ComplexPoint& z, const char* what) {
  if (!contains(domain, z)) throw OutsideDomain(std::string(what) + " lies outside the domain");
}

// Green function of the unit disc with pole q, at zeta.
double unit_disc_green(Complex q, Complex zeta) {
  return std::log(std::abs(zeta - q)) - std::log(std::abs(1.0 - std::conj(q) * zeta));
}

EuclideanDisc unit_disc_sublevel(Complex q, double rho) {
  const double q2 = std::norm(q);
  const double den = 1.0 - rho * rho * q2;
  return {q * (1.0 - rho * rho) / den, rho * (1.0 - q2) / den};
}

EuclideanDisc disc_sublevel(Complex center, double radius, Complex pole, double rho) {
  const EuclideanDisc unit = unit_disc_sublevel((pole - center) / radius, rho);
  return {center + radius * unit.center, radius * unit.radius};
}

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    m.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return m;
}

// {|phi_w(z)| < rho} for the unit ball, w != 0.
AffineBall ball_sublevel(const ComplexPoint& w, double rho) {
  const double t = w.norm();
  const double t2 = t * t;
  const double r2 = rho * rho;
  const double den = 1.0 - r2 * t2;
  const double c_axis = t * (1.0 - r2) / den;
  const double r_axis = rho * (1.0 - t2) / den;
  const double r_perp = rho * std::sqrt((1.0 - t2) / den);
  const auto n = static_cast<Eigen::Index>(w.dim());
  Eigen::VectorXcd e(n);
  for (Eigen::Index i = 0; i < n; ++i) e(i) = w[static_cast<std::size_t>(i)] / t;
  ComplexMatrix map = r_perp * ComplexMatrix::Identity(n, n) + (r_axis - r_perp) * (e * e.adjoint());
  return {(c_axis / t) * w, map};
}

bool balanced_at_origin(const DomainSpec& domain, const ComplexPoint& pole) {
  return domain.is_balanced() && pole.is_zero();
}

void require_level(double a) {
  if (!(a <= 0.0) || !std::isfinite(a)) throw InvalidArgument("sublevel height must be finite and <= 0");
}

void require_supported(const DomainSpec& domain, const ComplexPoint& pole) {
  if (!green_supported(domain, pole)) throw Unsupported("no closed-form Green function for this domain and pole");
  require_inside(domain, pole, "pole");
}

}  // namespace

ComplexPoint ball_automorphism(const ComplexPoint& w, const ComplexPoint& z) {
  const double w2 = w.norm_squared();
  const ComplexPoint d = z - w;
  const Complex denom = 1.0 - hermitian_dot(z, w);
  if (w2 == 0.0) return Complex(-1.0) * z;
  const ComplexPoint along = (hermitian_dot(d, w) / w2) * w;
  const ComplexPoint across = d - along;
  const double s = std::sqrt(1.0 - w2);
  return (-1.0 / denom) * (along + Complex(s) * across);
}

bool green_supported(const DomainSpec& domain, const ComplexPoint& pole) {
  if (pole.dim() != domain.dim()) throw InvalidArgument("pole dimension does not match domain");
  return std::visit(overloaded{
                        [](const Disc&) { return true; },
                        [](const Ball&) { return true; },
                        [](const Polydisc&) { return true; },
                        [&](const Ellipsoid&) { return pole.is_zero(); },
                        [&](const BalancedGauge&) { return pole.is_zero(); },
                        [&](const Product& p) {
                          std::size_t off = 0;
                          for (const auto& f : p.factors) {
                            if (!green_supported(f, pole.slice(off, f.dim()))) return false;
                            off += f.dim();
                          }
                          return true;
                        },
                    },
                    domain.variant());
}

double green(const DomainSpec& domain, const ComplexPoint& pole, const ComplexPoint& z) {
  require_supported(domain, pole);
  require_inside(domain, z, "point");
  if (z == pole) return kMinusInfinity;
  return std::visit(overloaded{
                        [&](const Disc& d) {
                          return unit_disc_green((pole[0] - d.center) / d.radius, (z[0] - d.center) / d.radius);
                        },
                        [&](const Ball&) { return std::log(ball_automorphism(pole, z).norm()); },
                        [&](const Polydisc& p) {
                          double g = kMinusInfinity;
                          for (std::size_t j = 0; j < z.dim(); ++j) {
                            if (z[j] == pole[j]) continue;
                            g = std::max(g, unit_disc_green(pole[j] / p.radii[j], z[j] / p.radii[j]));
                          }
                          return g;
                        },
                        [&](const Product& p) {
                          double g = kMinusInfinity;
                          std::size_t off = 0;
                          for (const auto& f : p.factors) {
                            g = std::max(g, green(f, pole.slice(off, f.dim()), z.slice(off, f.dim())));
                            off += f.dim();
                          }
                          return g;
                        },
                        [&](const auto&) { return std::log(gauge(domain, z)); },
                    },
                    domain.variant());
}

SublevelGeometry sublevel_set(const DomainSpec& domain, const ComplexPoint& pole, double a) {
  require_supported(domain, pole);
  require_level(a);
  const double rho = std::exp(a);
  if (balanced_at_origin(domain, pole)) return {ScaledCopy{rho, domain}};
  return std::visit(overloaded{
                        [&](const Disc& d) -> SublevelGeometry {
                          return {disc_sublevel(d.center, d.radius, pole[0], rho)};
                        },
                        [&](const Ball&) -> SublevelGeometry { return {ball_sublevel(pole, rho)}; },
                        [&](const Polydisc& p) -> SublevelGeometry {
                          ProductOf out;
                          for (std::size_t j = 0; j < p.radii.size(); ++j) {
                            out.factors.push_back({disc_sublevel(0.0, p.radii[j], pole[j], rho)});
                          }
                          return {out};
                        },
                        [&](const Product& p) -> SublevelGeometry {
                          ProductOf out;
                          std::size_t off = 0;
                          for (const auto& f : p.factors) {
                            out.factors.push_back(sublevel_set(f, pole.slice(off, f.dim()), a));
                            off += f.dim();
                          }
                          return {out};
                        },
                        [&](const auto&) -> SublevelGeometry { throw Unsupported("unsupported sublevel"); },
                    },
                    domain.variant());
}

SublevelGeometry scaled_sublevel(const DomainSpec& domain, const ComplexPoint& pole, double a) {
  require_supported(domain, pole);
  require_level(a);
  // The balanced case is exact: e^{-a} e^{a} D = D.
  if (balanced_at_origin(domain, pole)) return {ScaledCopy{1.0, domain}};
  const double s = std::exp(-a);
  return std::visit(
      overloaded{
          [&](const Disc&) -> SublevelGeometry {
            const auto g = std::get<EuclideanDisc>(sublevel_set(domain, pole, a).shape);
            return {EuclideanDisc{pole[0] + s * (g.center - pole[0]), s * g.radius}};
          },
          [&](const Ball&) -> SublevelGeometry {
            const auto g = std::get<AffineBall>(sublevel_set(domain, pole, a).shape);
            return {AffineBall{pole + Complex(s) * (g.center - pole), s * g.map}};
          },
          [&](const Polydisc& p) -> SublevelGeometry {
            ProductOf out;
            for (std::size_t j = 0; j < p.radii.size(); ++j) {
              out.factors.push_back(scaled_sublevel(DomainSpec::disc(0.0, p.radii[j]), ComplexPoint{pole[j]}, a));
            }
            return {out};
          },
          [&](const Product& p) -> SublevelGeometry {
            ProductOf out;
            std::size_t off = 0;
            for (const auto& f : p.factors) {
              out.factors.push_back(scaled_sublevel(f, pole.slice(off, f.dim()), a));
              off += f.dim();
            }
            return {out};
          },
          [&](const auto&) -> SublevelGeometry { throw Unsupported("unsupported sublevel"); },
      },
      domain.variant());
}

std::size_t SublevelGeometry::dim() const {
  return std::visit(overloaded{
                        [](const ScaledCopy& s) { return s.base.dim(); },
                        [](const EuclideanDisc&) -> std::size_t { return 1; },
                        [](const AffineBall& b) { return b.center.dim(); },
                        [](const ProductOf& p) {
                          std::size_t d = 0;
                          for (const auto& f : p.factors) d += f.dim();
                          return d;
                        },
                    },
                    shape);
}

bool SublevelGeometry::contains(const ComplexPoint& z) const {
  if (z.dim() != dim()) throw InvalidArgument("point dimension does not match sublevel geometry");
  return std::visit(overloaded{
                        [&](const ScaledCopy& s) { return scv::contains(s.base, Complex(1.0 / s.factor) * z); },
                        [&](const EuclideanDisc& d) { return std::abs(z[0] - d.center) < d.radius; },
                        [&](const AffineBall&) { return scv::contains(affine_model(), z); },
                        [&](const ProductOf& p) {
                          std::size_t off = 0;
                          for (const auto& f : p.factors) {
                            if (!f.contains(z.slice(off, f.dim()))) return false;
                            off += f.dim();
                          }
                          return true;
                        },
                    },
                    shape);
}

AffineModel SublevelGeometry::affine_model() const {
  return std::visit(
      overloaded{
          [](const ScaledCopy& s) {
            const auto n = static_cast<Eigen::Index>(s.base.dim());
            return AffineModel{ComplexPoint::zero(s.base.dim()), s.factor * ComplexMatrix::Identity(n, n), s.base};
          },
          [](const EuclideanDisc& d) {
            return AffineModel{ComplexPoint{d.center}, ComplexMatrix::Constant(1, 1, d.radius),
                               DomainSpec::unit_disc()};
          },
          [](const AffineBall& b) {
            return AffineModel{b.center, b.map, DomainSpec::ball(static_cast<int>(b.center.dim()))};
          },
          [](const ProductOf& p) {
            std::vector<Complex> offset;
            std::vector<ComplexMatrix> maps;
            std::vector<DomainSpec> bases;
            for (const auto& f : p.factors) {
              AffineModel m = f.affine_model();
              offset.insert(offset.end(), m.offset.coords().begin(), m.offset.coords().end());
              maps.push_back(m.map);
              bases.push_back(m.base);
            }
            DomainSpec base = bases.size() == 1 ? bases.front() : DomainSpec::product(bases);
            return AffineModel{ComplexPoint(std::move(offset)), block_diagonal(maps), base};
          },
      },
      shape);
}

DomainSpec SublevelGeometry::as_domain() const {
  return std::visit(
      overloaded{
          [](const ScaledCopy& s) -> DomainSpec {
            if (s.factor == 1.0) return s.base;
            if (const auto* d = s.base.get_if<Disc>()) return DomainSpec::disc(0.0, s.factor * d->radius);
            if (const auto* p = s.base.get_if<Polydisc>()) {
              std::vector<double> radii = p->radii;
              for (double& r : radii) r *= s.factor;
              return DomainSpec::polydisc(std::move(radii));
            }
            std::vector<double> widths;
            if (const auto box = s.base.is_bounded() ? bounding_box(s.base) : std::nullopt) {
              for (std::size_t i = 0; i < box->hi.size(); i += 2) widths.push_back(s.factor * box->hi[i]);
            }
            const DomainSpec base = s.base;
            const double f = s.factor;
            return DomainSpec::balanced_gauge(
                "scaled", static_cast<int>(base.dim()),
                [base, f](std::span<const Complex> z) {
                  return gauge(base, ComplexPoint(std::vector<Complex>(z.begin(), z.end()))) / f;
                },
                base.is_bounded(), base.is_reinhardt(), widths);
          },
          [](const EuclideanDisc& d) -> DomainSpec { return DomainSpec::disc(d.center, d.radius); },
          [](const AffineBall&) -> DomainSpec {
            throw Unsupported("an off-centre ball sublevel is not a catalog domain");
          },
          [](const ProductOf& p) -> DomainSpec {
            std::vector<DomainSpec> factors;
            for (const auto& f : p.factors) factors.push_back(f.as_domain());
            return factors.size() == 1 ? factors.front() : DomainSpec::product(std::move(factors));
          },
      },
      shape);
}

}  // namespace scv
