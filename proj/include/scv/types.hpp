#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scv {

using Complex = std::complex<double>;

// Error hierarchy. The CLI maps InvalidArgument/ParseError to usage errors
// and the remaining kinds to numeric errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t column, const std::string& what)
      : InvalidArgument("column " + std::to_string(column) + ": " + what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// No closed form is available for the requested (domain, pole) combination.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A point was required to lie inside a domain and does not.
class OutsideDomain : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// A point of C^n. Always non-empty with finite coordinates.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(std::vector<Complex> coords);
  ComplexPoint(std::initializer_list<Complex> coords);

  static ComplexPoint zero(std::size_t n);

  std::size_t dim() const noexcept { return coords_.size(); }
  Complex operator[](std::size_t i) const { return coords_[i]; }
  Complex& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Complex> coords() const noexcept { return coords_; }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  double max_modulus() const noexcept;
  bool is_zero() const noexcept;

  ComplexPoint slice(std::size_t offset, std::size_t count) const;

  bool operator==(const ComplexPoint&) const = default;

 private:
  std::vector<Complex> coords_;
};

ComplexPoint operator+(const ComplexPoint& a, const ComplexPoint& b);
ComplexPoint operator-(const ComplexPoint& a, const ComplexPoint& b);
ComplexPoint operator*(Complex s, const ComplexPoint& a);
ComplexPoint concat(const ComplexPoint& a, const ComplexPoint& b);
Complex hermitian_dot(const ComplexPoint& a, const ComplexPoint& b);  // sum a_j conj(b_j)

/// Exponent vector alpha of a monomial z^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(std::size_t n, std::size_t j);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const noexcept { return entries_; }
  int degree() const noexcept;

  double factorial() const;
  double log_factorial() const;

  /// True when every entry of `other` is <= the matching entry here.
  bool dominates(const MultiIndex& other) const;
  MultiIndex slice(std::size_t offset, std::size_t count) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
MultiIndex concat(const MultiIndex& a, const MultiIndex& b);

/// All alpha with |alpha| == degree, in descending lexicographic order.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int degree);
/// All alpha with |alpha| <= cap, graded by degree.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int cap);

double factorial(int k);
double log_factorial(int k);
/// k! / (k - j)!, zero when j > k.
double falling_factorial(int k, int j);
double binomial(int n, int k);

/// z^alpha.
Complex monomial(const ComplexPoint& z, const MultiIndex& alpha);

// Canonical text forms: 17 significant digits, complex as <re>+<im>i, points comma-separated.
std::string format_double(double x);
std::string format_complex(Complex z);
std::string format_point(const ComplexPoint& z);

}  // namespace scv
