#include "scv/poly.hpp"

#include <cmath>

namespace scv {

HomogeneousPoly::HomogeneousPoly(std::size_t n, int degree) : n_(n), degree_(degree) {
  if (n == 0) throw InvalidArgument("polynomial dimension must be positive");
  if (degree < 0) throw InvalidArgument("polynomial degree must be non-negative");
}

HomogeneousPoly::HomogeneousPoly(std::size_t n, int degree, const std::map<MultiIndex, Complex>& terms)
    : HomogeneousPoly(n, degree) {
  for (const auto& [alpha, c] : terms) {
    if (alpha.size() != n) throw InvalidArgument("term dimension does not match polynomial dimension");
    if (alpha.degree() != degree) {
      throw InvalidArgument("term of degree " + std::to_string(alpha.degree()) +
                            " in homogeneous polynomial of degree " + std::to_string(degree));
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("polynomial coefficients must be finite");
    }
    add_term(alpha, c);
  }
}

void HomogeneousPoly::add_term(const MultiIndex& alpha, Complex c) {
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (c != Complex{}) terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

HomogeneousPoly HomogeneousPoly::constant(std::size_t n, Complex c) {
  return HomogeneousPoly(n, 0, {{MultiIndex::zero(n), c}});
}

HomogeneousPoly HomogeneousPoly::monomial(const MultiIndex& alpha, Complex c) {
  return HomogeneousPoly(alpha.size(), alpha.degree(), {{alpha, c}});
}

HomogeneousPoly HomogeneousPoly::linear_form(const ComplexPoint& X) {
  HomogeneousPoly h(X.dim(), 1);
  for (std::size_t j = 0; j < X.dim(); ++j) h.add_term(MultiIndex::unit(X.dim(), j), X[j]);
  return h;
}

Complex HomogeneousPoly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex HomogeneousPoly::operator()(const ComplexPoint& z) const {
  if (z.dim() != n_) throw InvalidArgument("polynomial evaluated at point of wrong dimension");
  Complex s{};
  for (const auto& [alpha, c] : terms_) s += c * scv::monomial(z, alpha);
  return s;
}

HomogeneousPoly HomogeneousPoly::conjugate() const {
  HomogeneousPoly h(n_, degree_);
  for (const auto& [alpha, c] : terms_) h.add_term(alpha, std::conj(c));
  return h;
}

HomogeneousPoly HomogeneousPoly::scaled(Complex s) const {
  HomogeneousPoly h(n_, degree_);
  for (const auto& [alpha, c] : terms_) h.add_term(alpha, s * c);
  return h;
}

HomogeneousPoly HomogeneousPoly::pow(int k) const {
  if (k < 0) throw InvalidArgument("negative polynomial power");
  HomogeneousPoly acc = constant(n_);
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

HomogeneousPoly HomogeneousPoly::compose_linear(const ComplexMatrix& M) const {
  if (static_cast<std::size_t>(M.rows()) != n_ || static_cast<std::size_t>(M.cols()) != n_) {
    throw InvalidArgument("linear map size does not match polynomial dimension");
  }
  // (Mz)_i as linear forms.
  std::vector<HomogeneousPoly> rows;
  rows.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::vector<Complex> row(n_);
    for (std::size_t j = 0; j < n_; ++j) row[j] = M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    HomogeneousPoly form(n_, 1);
    for (std::size_t j = 0; j < n_; ++j) form.add_term(MultiIndex::unit(n_, j), row[j]);
    rows.push_back(std::move(form));
  }
  HomogeneousPoly out(n_, degree_);
  for (const auto& [alpha, c] : terms_) {
    HomogeneousPoly term = constant(n_, c);
    for (std::size_t i = 0; i < n_; ++i) term = term * rows[i].pow(alpha[i]);
    out = out + term;
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::tensor(const HomogeneousPoly& other) const {
  HomogeneousPoly out(n_ + other.n_, degree_ + other.degree_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) out.add_term(concat(a, b), ca * cb);
  }
  return out;
}

Complex HomogeneousPoly::apply_to_monomial(const MultiIndex& alpha, const ComplexPoint& w) const {
  Complex s{};
  for (const auto& [beta, c] : terms_) s += c * monomial_derivative(alpha, beta, w);
  return s;
}

double HomogeneousPoly::pairing_with_conjugate() const {
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) s += std::norm(c) * alpha.factorial();
  return s;
}

HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.n_ != b.n_) throw InvalidArgument("polynomial dimension mismatch");
  HomogeneousPoly out(a.n_, a.degree_ + b.degree_);
  for (const auto& [x, cx] : a.terms_) {
    for (const auto& [y, cy] : b.terms_) out.add_term(x + y, cx * cy);
  }
  return out;
}

HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.n_ != b.n_ || a.degree_ != b.degree_) throw InvalidArgument("polynomial shape mismatch");
  HomogeneousPoly out = a;
  for (const auto& [beta, c] : b.terms_) out.add_term(beta, c);
  return out;
}

Complex monomial_derivative(const MultiIndex& alpha, const MultiIndex& beta, const ComplexPoint& w) {
  if (alpha.size() != beta.size() || alpha.size() != w.dim()) {
    throw InvalidArgument("derivative dimension mismatch");
  }
  Complex v{1.0, 0.0};
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (beta[j] > alpha[j]) return Complex{};
    v *= falling_factorial(alpha[j], beta[j]);
    for (int e = 0; e < alpha[j] - beta[j]; ++e) v *= w[j];
  }
  return v;
}

}  // namespace scv
