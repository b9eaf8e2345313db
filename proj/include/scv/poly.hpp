#pragma once

#include <map>

#include <Eigen/Dense>

#include "scv/types.hpp"

namespace scv {

using ComplexMatrix = Eigen::MatrixXcd;

/// H(z) = sum_{|alpha| = k} a_alpha z^alpha on C^n. Zero coefficients are never stored.
class HomogeneousPoly {
 public:
  HomogeneousPoly(std::size_t n, int degree);
  HomogeneousPoly(std::size_t n, int degree, const std::map<MultiIndex, Complex>& terms);

  static HomogeneousPoly constant(std::size_t n, Complex c = 1.0);
  static HomogeneousPoly monomial(const MultiIndex& alpha, Complex c = 1.0);
  /// H_X(z) = X_1 z_1 + ... + X_n z_n.
  static HomogeneousPoly linear_form(const ComplexPoint& X);

  std::size_t dim() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  const std::map<MultiIndex, Complex>& terms() const noexcept { return terms_; }
  Complex coefficient(const MultiIndex& alpha) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex operator()(const ComplexPoint& z) const;

  /// H*(z) = sum conj(a_alpha) z^alpha.
  HomogeneousPoly conjugate() const;
  HomogeneousPoly scaled(Complex s) const;
  HomogeneousPoly pow(int k) const;
  /// z -> H(M z).
  HomogeneousPoly compose_linear(const ComplexMatrix& M) const;
  /// H1(z') * H2(z'') on C^{n1 + n2}.
  HomogeneousPoly tensor(const HomogeneousPoly& other) const;

  /// (P_H z^alpha)(w) where P_H = sum a_beta D^beta.
  Complex apply_to_monomial(const MultiIndex& alpha, const ComplexPoint& w) const;

  /// sum |a_alpha|^2 alpha!, which equals P_H(H*).
  double pairing_with_conjugate() const;

  friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b);
  friend HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b);

 private:
  void add_term(const MultiIndex& alpha, Complex c);

  std::size_t n_;
  int degree_;
  std::map<MultiIndex, Complex> terms_;
};

/// D^beta z^alpha evaluated at w: alpha!/(alpha-beta)! w^(alpha-beta), zero unless alpha >= beta.
Complex monomial_derivative(const MultiIndex& alpha, const MultiIndex& beta, const ComplexPoint& w);

}  // namespace scv
