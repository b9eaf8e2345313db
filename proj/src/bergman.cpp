#include "scv/bergman.hpp"

#include <cmath>

namespace scv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kRankTolerance = 1e-10;

double disc_moment(double r, int a) { return M_PI * std::pow(r, 2.0 * a + 2.0) / (a + 1.0); }

std::optional<double> ellipsoid_moment(const Ellipsoid& e, const MultiIndex& alpha) {
  // Polar coordinates in each variable, then t_j = |z_j|^(2 p_j) turns the domain into the
  // standard simplex and the integral into a Dirichlet (multivariate Beta) integral.
  double log_m = static_cast<double>(alpha.size()) * std::log(M_PI);
  double total = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const double b = (alpha[j] + 1.0) / e.exponents[j];
    log_m += std::lgamma(b) - std::log(e.exponents[j]);
    total += b;
  }
  log_m -= std::lgamma(1.0 + total);
  return std::exp(log_m);
}

void require_point(const DomainSpec& domain, const ComplexPoint& w) {
  if (w.dim() != domain.dim()) throw InvalidArgument("point dimension does not match domain");
  if (!contains(domain, w)) throw OutsideDomain("point lies outside the domain");
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm_sq(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return s;
}

// Removes from x its components along the orthonormal vectors in basis, twice for stability.
void project_out(const std::vector<std::vector<Complex>>& basis, std::vector<Complex>& x) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const Complex c = inner(q, x);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * q[i];
    }
  }
}

// Closed forms of K^H for Disc(0, r) at any point and for balanced Reinhardt bases at 0.
std::optional<double> kernel_h_closed_form_reinhardt(const DomainSpec& base, const ComplexPoint& u,
                                                     const HomogeneousPoly& H) {
  if (const auto* d = base.get_if<Disc>()) {
    const int k = H.degree();
    const double a2 = std::norm(H.coefficient(MultiIndex{k}));
    const double r = d->radius;
    const double s = 1.0 - std::norm(u[0]) / (r * r);
    const double kf = factorial(k);
    return a2 * kf * kf * (k + 1.0) / (M_PI * std::pow(r, 2.0 * k + 2.0) * std::pow(s, 2.0 * k + 2.0));
  }
  if (u.is_zero() && base.is_balanced() && base.is_reinhardt()) {
    // Only the degree-k block of f contributes at 0, and monomials are orthogonal, so the
    // supremum is sum |a_alpha alpha!|^2 / moment(alpha).
    try {
      double sum = 0.0;
      for (const auto& [alpha, c] : H.terms()) {
        const auto m = moment(base, alpha);
        if (!m) return std::nullopt;
        sum += std::norm(c) * std::exp(2.0 * alpha.log_factorial()) / *m;
      }
      return sum;
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

KernelResult kernel_h_reinhardt(const DomainSpec& base, const ComplexPoint& u, const HomogeneousPoly& H,
                                int degree_cap) {
  if (H.dim() != base.dim()) throw InvalidArgument("polynomial dimension does not match domain");
  if (degree_cap < 0) throw InvalidArgument("degree cap must be non-negative");
  const MomentTable table(base, degree_cap);
  KernelResult result;
  result.degree_cap = degree_cap;

  std::vector<MultiIndex> alphas;
  std::vector<double> inv_sqrt_moment;
  for (const auto& e : table.entries()) {
    if (!e.moment) continue;
    alphas.push_back(e.alpha);
    inv_sqrt_moment.push_back(1.0 / std::sqrt(*e.moment));
  }
  if (alphas.empty()) {
    result.trivial_space = true;
    return result;
  }

  const std::size_t m = alphas.size();
  std::vector<Complex> functional(m);
  for (std::size_t i = 0; i < m; ++i) functional[i] = H.apply_to_monomial(alphas[i], u) * inv_sqrt_moment[i];

  // Jet constraints D^beta f(u) = 0 for |beta| < k, orthonormalised with a rank tolerance.
  std::vector<std::vector<Complex>> constraints;
  for (const auto& beta : multi_indices_up_to(base.dim(), H.degree() - 1)) {
    std::vector<Complex> row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = monomial_derivative(alphas[i], beta, u) * inv_sqrt_moment[i];
    const double initial = std::sqrt(norm_sq(row));
    if (initial == 0.0) continue;
    project_out(constraints, row);
    const double remaining = std::sqrt(norm_sq(row));
    if (remaining <= kRankTolerance * initial) continue;
    for (auto& x : row) x /= remaining;
    constraints.push_back(std::move(row));
  }

  project_out(constraints, functional);
  result.value = norm_sq(functional);
  for (std::size_t i = 0; i < m; ++i) {
    if (alphas[i].degree() == degree_cap) result.tail_estimate += std::norm(functional[i]);
  }
  return result;
}

std::optional<double> ball_kernel(int n, double w2) {
  return factorial(n) / (std::pow(M_PI, n) * std::pow(1.0 - w2, n + 1.0));
}

}  // namespace

std::optional<double> moment(const DomainSpec& domain, const MultiIndex& alpha) {
  if (alpha.size() != domain.dim()) throw InvalidArgument("multi-index dimension does not match domain");
  if (!domain.is_reinhardt()) throw Unsupported("moments are defined only for Reinhardt domains");
  return std::visit(
      overloaded{
          [&](const Disc& d) -> std::optional<double> { return disc_moment(d.radius, alpha[0]); },
          [&](const Ball& b) -> std::optional<double> {
            return std::exp(b.n * std::log(M_PI) + alpha.log_factorial() - log_factorial(alpha.degree() + b.n));
          },
          [&](const Polydisc& p) -> std::optional<double> {
            double m = 1.0;
            for (std::size_t j = 0; j < alpha.size(); ++j) m *= disc_moment(p.radii[j], alpha[j]);
            return m;
          },
          [&](const Ellipsoid& e) { return ellipsoid_moment(e, alpha); },
          [&](const BalancedGauge& g) -> std::optional<double> {
            if (!g.moments) throw Unsupported("no moment formula for gauge '" + g.name + "'");
            return g.moments(alpha);
          },
          [&](const Product& p) -> std::optional<double> {
            double m = 1.0;
            std::size_t off = 0;
            for (const auto& f : p.factors) {
              const auto fm = moment(f, alpha.slice(off, f.dim()));
              if (!fm) return std::nullopt;
              m *= *fm;
              off += f.dim();
            }
            return m;
          },
      },
      domain.variant());
}

MomentTable::MomentTable(const DomainSpec& domain, int degree_cap) : degree_cap_(degree_cap) {
  for (auto& alpha : multi_indices_up_to(domain.dim(), degree_cap)) {
    auto m = moment(domain, alpha);
    if (m && !(std::isfinite(*m) && *m > 0.0)) {
      throw NumericError("moment underflow or overflow at degree " + std::to_string(alpha.degree()));
    }
    entries_.push_back({std::move(alpha), m, MomentMethod::closed_form});
  }
}

std::size_t MomentTable::finite_count() const noexcept {
  std::size_t c = 0;
  for (const auto& e : entries_) c += e.moment.has_value() ? 1 : 0;
  return c;
}

int default_degree_cap(std::size_t n) {
  if (n <= 1) return 40;
  if (n == 2) return 30;
  return 20;
}

std::optional<double> kernel_closed_form(const DomainSpec& domain, const ComplexPoint& w) {
  return std::visit(
      overloaded{
          [&](const Disc& d) -> std::optional<double> {
            const double r2 = d.radius * d.radius;
            const double gap = r2 - std::norm(w[0] - d.center);
            return r2 / (M_PI * gap * gap);
          },
          [&](const Ball& b) { return ball_kernel(b.n, w.norm_squared()); },
          [&](const Polydisc& p) -> std::optional<double> {
            double k = 1.0;
            for (std::size_t j = 0; j < p.radii.size(); ++j) {
              const double r2 = p.radii[j] * p.radii[j];
              const double gap = r2 - std::norm(w[j]);
              k *= r2 / (M_PI * gap * gap);
            }
            return k;
          },
          [&](const Product& p) -> std::optional<double> {
            double k = 1.0;
            std::size_t off = 0;
            for (const auto& f : p.factors) {
              const auto fk = kernel_closed_form(f, w.slice(off, f.dim()));
              if (!fk) return std::nullopt;
              k *= *fk;
              off += f.dim();
            }
            return k;
          },
          [&](const auto&) -> std::optional<double> {
            if (!w.is_zero() || !domain.is_reinhardt()) return std::nullopt;
            // At the centre of a balanced Reinhardt domain only the constant term survives.
            try {
              const auto m0 = moment(domain, MultiIndex::zero(domain.dim()));
              return m0 ? std::optional<double>(1.0 / *m0) : std::optional<double>(0.0);
            } catch (const Unsupported&) {
              return std::nullopt;
            }
          },
      },
      domain.variant());
}

KernelResult kernel(const DomainSpec& domain, const ComplexPoint& w, int degree_cap) {
  require_point(domain, w);
  if (degree_cap < 0) throw InvalidArgument("degree cap must be non-negative");
  const AffineModel model = reinhardt_model(domain);
  const ComplexPoint u = w - model.offset;
  const MomentTable table(model.base, degree_cap);
  KernelResult result;
  result.degree_cap = degree_cap;
  result.trivial_space = table.finite_count() == 0;
  for (const auto& e : table.entries()) {
    if (!e.moment) continue;
    const double term = std::norm(monomial(u, e.alpha)) / *e.moment;
    result.value += term;
    if (e.alpha.degree() == degree_cap) result.tail_estimate += term;
  }
  result.closed_form = kernel_closed_form(domain, w);
  result.exact_flag = result.closed_form.has_value();
  return result;
}

KernelResult kernel_on_sublevel(const SublevelGeometry& geom, const ComplexPoint& w, int degree_cap) {
  if (!geom.contains(w)) throw OutsideDomain("point lies outside the sublevel geometry");
  const AffineModel model = geom.affine_model();
  const double jac = model.jacobian();
  KernelResult r = kernel(model.base, model.to_base(w), degree_cap);
  r.value /= jac;
  r.tail_estimate /= jac;
  if (r.closed_form) *r.closed_form /= jac;
  return r;
}

double kernel_h_balanced(const DomainSpec& domain, const HomogeneousPoly& H) {
  if (H.dim() != domain.dim()) throw InvalidArgument("polynomial dimension does not match domain");
  if (!domain.is_balanced() || !domain.is_reinhardt()) {
    throw Unsupported("the balanced formula needs a balanced Reinhardt domain");
  }
  if (H.is_zero()) throw InvalidArgument("the balanced formula needs a nonzero polynomial");
  // Monomials are orthogonal, so the norm of H splits into moments.
  double denominator = 0.0;
  for (const auto& [alpha, c] : H.terms()) {
    const auto m = moment(domain, alpha);
    if (!m) throw NumericError("integral of |H|^2 diverges");
    denominator += std::norm(c) * *m;
  }
  const double numerator = H.pairing_with_conjugate();
  return numerator * numerator / denominator;
}

KernelResult kernel_h(const DomainSpec& domain, const ComplexPoint& w, const HomogeneousPoly& H, int degree_cap) {
  require_point(domain, w);
  const AffineModel model = reinhardt_model(domain);
  const ComplexPoint u = w - model.offset;
  KernelResult r = kernel_h_reinhardt(model.base, u, H, degree_cap);
  r.closed_form = kernel_h_closed_form_reinhardt(model.base, u, H);
  r.exact_flag = r.closed_form.has_value();
  return r;
}

KernelResult kernel_h_on_model(const AffineModel& model, const ComplexPoint& w, const HomogeneousPoly& H,
                               int degree_cap) {
  const ComplexPoint u = model.to_base(w);
  if (!contains(model.base, u)) throw OutsideDomain("point lies outside the affine image");
  const ComplexMatrix inv_t = model.map.inverse().transpose();
  const HomogeneousPoly pulled = H.compose_linear(inv_t);
  const double jac = model.jacobian();
  KernelResult r = kernel_h_reinhardt(model.base, u, pulled, degree_cap);
  r.closed_form = kernel_h_closed_form_reinhardt(model.base, u, pulled);
  r.exact_flag = r.closed_form.has_value();
  r.value /= jac;
  r.tail_estimate /= jac;
  if (r.closed_form) *r.closed_form /= jac;
  return r;
}

KernelResult kernel_h_on_sublevel(const SublevelGeometry& geom, const ComplexPoint& w, const HomogeneousPoly& H,
                                  int degree_cap) {
  return kernel_h_on_model(geom.affine_model(), w, H, degree_cap);
}

KernelResult kernel_k(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X, int k, int degree_cap) {
  if (k < 0) throw InvalidArgument("order k must be non-negative");
  return kernel_h(domain, w, HomogeneousPoly::linear_form(X).pow(k), degree_cap);
}

double bergman_metric(const DomainSpec& domain, const ComplexPoint& w, const ComplexPoint& X, int degree_cap) {
  const KernelResult k = kernel(domain, w, degree_cap);
  if (!(k.value > 0.0)) throw NumericError("Bergman metric undefined: kernel vanishes");
  const KernelResult kx = kernel_h(domain, w, HomogeneousPoly::linear_form(X), degree_cap);
  return std::sqrt(kx.value / k.value);
}

}  // namespace scv
