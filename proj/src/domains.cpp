#include "scv/domains.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::size_t variant_dim(const DomainSpec::Variant& v) {
  return std::visit(
      overloaded{
          [](const Disc&) -> std::size_t { return 1; },
          [](const Ball& b) -> std::size_t { return static_cast<std::size_t>(b.n); },
          [](const Polydisc& p) -> std::size_t { return p.radii.size(); },
          [](const Ellipsoid& e) -> std::size_t { return e.exponents.size(); },
          [](const BalancedGauge& g) -> std::size_t { return static_cast<std::size_t>(g.n); },
          [](const Product& p) -> std::size_t {
            std::size_t d = 0;
            for (const auto& f : p.factors) d += f.dim();
            return d;
          },
      },
      v);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be positive and finite");
}

void require_dim(const DomainSpec& d, const ComplexPoint& z) {
  if (d.dim() != z.dim()) {
    throw InvalidArgument("dimension mismatch: domain has dimension " + std::to_string(d.dim()) +
                          ", point has " + std::to_string(z.dim()));
  }
}

double ellipsoid_gauge(const Ellipsoid& e, const ComplexPoint& z) {
  const double zmax = z.max_modulus();
  if (zmax == 0.0) return 0.0;
  const double pmin = *std::min_element(e.exponents.begin(), e.exponents.end());
  const double n = static_cast<double>(e.exponents.size());
  // Work with u = t / zmax so the bracket is scale free.
  auto excess = [&](double u) {
    double s = 0.0;
    for (std::size_t j = 0; j < e.exponents.size(); ++j) {
      s += std::pow(std::abs(z[j]) / (zmax * u), 2.0 * e.exponents[j]);
    }
    return s - 1.0;
  };
  double lo = 1.0;
  double hi = std::pow(n, 1.0 / pmin);
  if (excess(lo) <= 0.0) return zmax;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return zmax * 0.5 * (lo + hi);
}

}  // namespace

DomainSpec::DomainSpec(Variant v)
    : v_(std::make_shared<const Variant>(std::move(v))), dim_(variant_dim(*v_)) {
  if (dim_ == 0) throw InvalidArgument("domain dimension must be at least 1");
  if (dim_ > kMaxDimension) {
    throw InvalidArgument("domain dimension " + std::to_string(dim_) + " exceeds the limit of " +
                          std::to_string(kMaxDimension));
  }
}

DomainSpec DomainSpec::disc(Complex center, double radius) {
  require_positive(radius, "disc radius");
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) {
    throw InvalidArgument("disc centre must be finite");
  }
  return DomainSpec(Disc{center, radius});
}

DomainSpec DomainSpec::ball(int n) {
  if (n < 1) throw InvalidArgument("ball dimension must be at least 1");
  return DomainSpec(Ball{n});
}

DomainSpec DomainSpec::polydisc(std::vector<double> radii) {
  if (radii.empty()) throw InvalidArgument("polydisc needs at least one radius");
  for (double r : radii) require_positive(r, "polydisc radius");
  return DomainSpec(Polydisc{std::move(radii)});
}

DomainSpec DomainSpec::ellipsoid(std::vector<double> exponents) {
  if (exponents.empty()) throw InvalidArgument("ellipsoid needs at least one exponent");
  for (double p : exponents) require_positive(p, "ellipsoid exponent");
  return DomainSpec(Ellipsoid{std::move(exponents)});
}

DomainSpec DomainSpec::balanced_gauge(std::string name, int n,
                                      std::function<double(std::span<const Complex>)> gauge_fn,
                                      bool bounded, bool reinhardt, std::vector<double> half_widths,
                                      std::function<std::optional<double>(const MultiIndex&)> moments) {
  if (n < 1) throw InvalidArgument("gauge dimension must be at least 1");
  if (!gauge_fn) throw InvalidArgument("gauge function is empty");
  if (!half_widths.empty() && half_widths.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("gauge half-widths must have one entry per coordinate");
  }
  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> modulus(0.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  std::vector<Complex> lz(z.size());
  for (int trial = 0; trial < 100; ++trial) {
    for (auto& c : z) c = {normal(gen), normal(gen)};
    const Complex lambda = std::polar(modulus(gen), angle(gen));
    for (std::size_t j = 0; j < z.size(); ++j) lz[j] = lambda * z[j];
    const double expect = std::abs(lambda) * gauge_fn(z);
    if (std::abs(gauge_fn(lz) - expect) > 1e-12 * std::max(1.0, expect)) {
      throw InvalidArgument("gauge '" + name + "' is not absolutely homogeneous");
    }
  }
  return DomainSpec(BalancedGauge{std::move(name), n, std::move(gauge_fn), bounded, reinhardt,
                                  std::move(half_widths), std::move(moments)});
}

DomainSpec DomainSpec::model_z1z2() {
  return balanced_gauge(
      "model-z1z2", 2, [](std::span<const Complex> z) { return std::sqrt(std::abs(z[0] * z[1])); },
      /*bounded=*/false, /*reinhardt=*/true, {},
      // The fibre integral over z_1 leaves |z_2|^(2b-2a-2) radially, never integrable at both 0 and infinity.
      [](const MultiIndex&) -> std::optional<double> { return std::nullopt; });
}

DomainSpec DomainSpec::product(std::vector<DomainSpec> factors) {
  if (factors.size() < 2) throw InvalidArgument("product needs at least two factors");
  return DomainSpec(Product{std::move(factors)});
}

bool DomainSpec::is_balanced() const noexcept {
  return std::visit(overloaded{
                        [](const Disc& d) { return d.center == Complex{}; },
                        [](const Product& p) {
                          return std::all_of(p.factors.begin(), p.factors.end(),
                                             [](const DomainSpec& f) { return f.is_balanced(); });
                        },
                        [](const auto&) { return true; },
                    },
                    *v_);
}

bool DomainSpec::is_reinhardt() const noexcept {
  return std::visit(overloaded{
                        [](const Disc& d) { return d.center == Complex{}; },
                        [](const BalancedGauge& g) { return g.reinhardt; },
                        [](const Product& p) {
                          return std::all_of(p.factors.begin(), p.factors.end(),
                                             [](const DomainSpec& f) { return f.is_reinhardt(); });
                        },
                        [](const auto&) { return true; },
                    },
                    *v_);
}

bool DomainSpec::is_bounded() const noexcept {
  return std::visit(overloaded{
                        [](const BalancedGauge& g) { return g.bounded; },
                        [](const Product& p) {
                          return std::all_of(p.factors.begin(), p.factors.end(),
                                             [](const DomainSpec& f) { return f.is_bounded(); });
                        },
                        [](const auto&) { return true; },
                    },
                    *v_);
}

bool DomainSpec::is_convex() const noexcept {
  return std::visit(overloaded{
                        [](const Disc&) { return true; },
                        [](const Ball&) { return true; },
                        [](const Polydisc&) { return true; },
                        [](const Product& p) {
                          return std::all_of(p.factors.begin(), p.factors.end(),
                                             [](const DomainSpec& f) { return f.is_convex(); });
                        },
                        [](const auto&) { return false; },
                    },
                    *v_);
}

std::vector<std::size_t> DomainSpec::factor_dims() const {
  if (const auto* p = get_if<Product>()) {
    std::vector<std::size_t> dims;
    for (const auto& f : p->factors) dims.push_back(f.dim());
    return dims;
  }
  return {dim_};
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

double gauge(const DomainSpec& domain, const ComplexPoint& z) {
  require_dim(domain, z);
  if (!domain.is_balanced()) throw InvalidArgument("gauge requires a balanced domain");
  if (z.is_zero()) return 0.0;
  return std::visit(overloaded{
                        [&](const Disc& d) { return std::abs(z[0]) / d.radius; },
                        [&](const Ball&) { return z.norm(); },
                        [&](const Polydisc& p) {
                          double h = 0.0;
                          for (std::size_t j = 0; j < z.dim(); ++j) h = std::max(h, std::abs(z[j]) / p.radii[j]);
                          return h;
                        },
                        [&](const Ellipsoid& e) { return ellipsoid_gauge(e, z); },
                        [&](const BalancedGauge& g) { return g.gauge(z.coords()); },
                        [&](const Product& p) {
                          double h = 0.0;
                          std::size_t off = 0;
                          for (const auto& f : p.factors) {
                            h = std::max(h, gauge(f, z.slice(off, f.dim())));
                            off += f.dim();
                          }
                          return h;
                        },
                    },
                    domain.variant());
}

bool contains(const DomainSpec& domain, const ComplexPoint& z) {
  require_dim(domain, z);
  if (const auto* d = domain.get_if<Disc>()) return std::abs(z[0] - d->center) < d->radius;
  if (const auto* p = domain.get_if<Product>()) {
    std::size_t off = 0;
    for (const auto& f : p->factors) {
      if (!contains(f, z.slice(off, f.dim()))) return false;
      off += f.dim();
    }
    return true;
  }
  if (const auto* e = domain.get_if<Ellipsoid>()) {
    // The gauge is the root of sum |z_j / t|^(2 p_j) = 1, and that sum decreases in t.
    double sum = 0.0;
    for (std::size_t j = 0; j < e->exponents.size(); ++j) sum += std::pow(std::norm(z[j]), e->exponents[j]);
    return sum < 1.0;
  }
  return gauge(domain, z) < 1.0;
}

std::optional<Box> bounding_box(const DomainSpec& domain) {
  if (!domain.is_bounded()) return std::nullopt;
  Box box;
  auto push_disc = [&box](Complex c, double r) {
    box.lo.push_back(c.real() - r);
    box.hi.push_back(c.real() + r);
    box.lo.push_back(c.imag() - r);
    box.hi.push_back(c.imag() + r);
  };
  std::visit(overloaded{
                 [&](const Disc& d) { push_disc(d.center, d.radius); },
                 [&](const Ball& b) {
                   for (int j = 0; j < b.n; ++j) push_disc(0.0, 1.0);
                 },
                 [&](const Polydisc& p) {
                   for (double r : p.radii) push_disc(0.0, r);
                 },
                 [&](const Ellipsoid& e) {
                   for (std::size_t j = 0; j < e.exponents.size(); ++j) push_disc(0.0, 1.0);
                 },
                 [&](const BalancedGauge& g) {
                   if (g.half_widths.empty()) {
                     throw Unsupported("gauge '" + g.name + "' has no known bounding box");
                   }
                   for (double r : g.half_widths) push_disc(0.0, r);
                 },
                 [&](const Product& p) {
                   for (const auto& f : p.factors) {
                     auto fb = bounding_box(f);
                     box.lo.insert(box.lo.end(), fb->lo.begin(), fb->lo.end());
                     box.hi.insert(box.hi.end(), fb->hi.begin(), fb->hi.end());
                   }
                 },
             },
             domain.variant());
  return box;
}

ComplexPoint AffineModel::to_base(const ComplexPoint& z) const {
  const ComplexPoint d = z - offset;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d.dim()));
  for (std::size_t i = 0; i < d.dim(); ++i) v(static_cast<Eigen::Index>(i)) = d[i];
  Eigen::VectorXcd u = map_is_diagonal() ? Eigen::VectorXcd(v.cwiseQuotient(map.diagonal()))
                                         : Eigen::VectorXcd(map.partialPivLu().solve(v));
  return ComplexPoint(std::vector<Complex>(u.data(), u.data() + u.size()));
}

ComplexPoint AffineModel::from_base(const ComplexPoint& u) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(u.dim()));
  for (std::size_t i = 0; i < u.dim(); ++i) v(static_cast<Eigen::Index>(i)) = u[i];
  Eigen::VectorXcd z = map * v;
  return offset + ComplexPoint(std::vector<Complex>(z.data(), z.data() + z.size()));
}

double AffineModel::jacobian() const { return std::norm(map.determinant()); }

bool AffineModel::map_is_diagonal() const {
  for (Eigen::Index i = 0; i < map.rows(); ++i) {
    for (Eigen::Index j = 0; j < map.cols(); ++j) {
      if (i != j && map(i, j) != Complex{}) return false;
    }
  }
  return true;
}

AffineModel reinhardt_model(const DomainSpec& domain) {
  const auto n = static_cast<Eigen::Index>(domain.dim());
  if (domain.is_reinhardt()) {
    return {ComplexPoint::zero(domain.dim()), ComplexMatrix::Identity(n, n), domain};
  }
  if (const auto* d = domain.get_if<Disc>()) {
    return {ComplexPoint{d->center}, ComplexMatrix::Identity(1, 1), DomainSpec::disc(0.0, d->radius)};
  }
  if (const auto* p = domain.get_if<Product>()) {
    std::vector<Complex> offset;
    std::vector<DomainSpec> bases;
    for (const auto& f : p->factors) {
      AffineModel m = reinhardt_model(f);
      offset.insert(offset.end(), m.offset.coords().begin(), m.offset.coords().end());
      bases.push_back(m.base);
    }
    return {ComplexPoint(std::move(offset)), ComplexMatrix::Identity(n, n), DomainSpec::product(std::move(bases))};
  }
  throw Unsupported("domain is not a translate of a Reinhardt domain");
}

bool contains(const AffineModel& model, const ComplexPoint& z) { return contains(model.base, model.to_base(z)); }

std::string to_string(const DomainSpec& domain) {
  auto join = [](const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i > 0 ? "," : "") + format_double(xs[i]);
    return out;
  };
  return std::visit(overloaded{
                        [](const Disc& d) {
                          return "disc:c=" + format_complex(d.center) + ",r=" + format_double(d.radius);
                        },
                        [](const Ball& b) { return "ball:n=" + std::to_string(b.n); },
                        [&](const Polydisc& p) { return "polydisc:r=" + join(p.radii); },
                        [&](const Ellipsoid& e) { return "ellipsoid:p=" + join(e.exponents); },
                        [](const BalancedGauge& g) { return "gauge:" + g.name; },
                        [](const Product& p) {
                          std::string out = "product(";
                          for (std::size_t i = 0; i < p.factors.size(); ++i) {
                            out += (i > 0 ? ";" : "") + to_string(p.factors[i]);
                          }
                          return out + ")";
                        },
                    },
                    domain.variant());
}

}  // namespace scv
