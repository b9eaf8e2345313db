#include "scv/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace scv {

ComplexPoint::ComplexPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("point must have at least one coordinate");
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("point coordinates must be finite");
    }
  }
}

ComplexPoint::ComplexPoint(std::initializer_list<Complex> coords)
    : ComplexPoint(std::vector<Complex>(coords)) {}

ComplexPoint ComplexPoint::zero(std::size_t n) { return ComplexPoint(std::vector<Complex>(n)); }

double ComplexPoint::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& c : coords_) s += std::norm(c);
  return s;
}

double ComplexPoint::norm() const noexcept { return std::sqrt(norm_squared()); }

double ComplexPoint::max_modulus() const noexcept {
  double m = 0.0;
  for (const auto& c : coords_) m = std::max(m, std::abs(c));
  return m;
}

bool ComplexPoint::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Complex& c) { return c == Complex{}; });
}

ComplexPoint ComplexPoint::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > coords_.size()) throw InvalidArgument("point slice out of range");
  return ComplexPoint(std::vector<Complex>(coords_.begin() + static_cast<std::ptrdiff_t>(offset),
                                           coords_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

namespace {
void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidArgument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}
}  // namespace

ComplexPoint operator+(const ComplexPoint& a, const ComplexPoint& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<Complex> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return ComplexPoint(std::move(out));
}

ComplexPoint operator-(const ComplexPoint& a, const ComplexPoint& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<Complex> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return ComplexPoint(std::move(out));
}

ComplexPoint operator*(Complex s, const ComplexPoint& a) {
  std::vector<Complex> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = s * a[i];
  return ComplexPoint(std::move(out));
}

ComplexPoint concat(const ComplexPoint& a, const ComplexPoint& b) {
  std::vector<Complex> out(a.coords().begin(), a.coords().end());
  out.insert(out.end(), b.coords().begin(), b.coords().end());
  return ComplexPoint(std::move(out));
}

Complex hermitian_dot(const ComplexPoint& a, const ComplexPoint& b) {
  require_same_dim(a.dim(), b.dim());
  Complex s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw InvalidArgument("multi-index entries must be non-negative");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t j) {
  std::vector<int> e(n, 0);
  e.at(j) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::degree() const noexcept {
  int d = 0;
  for (int e : entries_) d += e;
  return d;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : entries_) f *= scv::factorial(e);
  return f;
}

double MultiIndex::log_factorial() const {
  double f = 0.0;
  for (int e : entries_) f += scv::log_factorial(e);
  return f;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  if (other.size() != size()) throw InvalidArgument("multi-index size mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (other[i] > entries_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > size()) throw InvalidArgument("multi-index slice out of range");
  return MultiIndex(std::vector<int>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                     entries_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw InvalidArgument("multi-index size mismatch");
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
  return MultiIndex(std::move(e));
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (!a.dominates(b)) throw InvalidArgument("multi-index difference would be negative");
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] - b[i];
  return MultiIndex(std::move(e));
}

MultiIndex concat(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> e(a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return MultiIndex(std::move(e));
}

namespace {
void fill_degree(std::size_t pos, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_degree(pos + 1, remaining - e, cur, out);
  }
}
}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int degree) {
  if (n == 0) throw InvalidArgument("multi-index dimension must be positive");
  if (degree < 0) return {};
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  fill_degree(0, degree, cur, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int cap) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= cap; ++d) {
    auto block = multi_indices_of_degree(n, d);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

double factorial(int k) {
  if (k < 0) throw InvalidArgument("factorial of a negative integer");
  if (k <= 20) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<double>(f);
  }
  if (k <= 100) {
    double f = factorial(20);
    for (int i = 21; i <= k; ++i) f *= i;
    return f;
  }
  return std::exp(log_factorial(k));
}

double log_factorial(int k) {
  if (k < 0) throw InvalidArgument("factorial of a negative integer");
  if (k <= 100) return std::log(factorial(k));
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double falling_factorial(int k, int j) {
  if (j < 0) throw InvalidArgument("negative falling-factorial order");
  if (j > k) return 0.0;
  double f = 1.0;
  for (int i = 0; i < j; ++i) f *= static_cast<double>(k - i);
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

Complex monomial(const ComplexPoint& z, const MultiIndex& alpha) {
  if (z.dim() != alpha.size()) throw InvalidArgument("monomial dimension mismatch");
  Complex v{1.0, 0.0};
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (int e = 0; e < alpha[j]; ++e) v *= z[j];
  }
  return v;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
}

std::string format_point(const ComplexPoint& z) {
  std::string out;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    if (i > 0) out += ',';
    out += format_complex(z[i]);
  }
  return out;
}

}  // namespace scv
