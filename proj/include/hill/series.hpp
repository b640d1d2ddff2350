#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace hill {

// Coefficient-ring inverse, specialized per scalar type.
inline std::complex<double> ring_inverse(const std::complex<double>& x) {
  if (x == std::complex<double>(0.0)) throw std::domain_error("ring_inverse: zero");
  return 1.0 / x;
}

// Dense truncated power series sum_{k=0}^{order} c[k] z^k.  Operands of a
// binary operation must share the same order.
template <typename T>
struct Series {
  std::vector<T> c;

  Series() = default;
  explicit Series(std::size_t order) : c(order + 1) {}

  std::size_t order() const { return c.size() - 1; }
  const T& operator[](std::size_t k) const { return c[k]; }
  T& operator[](std::size_t k) { return c[k]; }

  static void check(const Series& a, const Series& b) {
    if (a.c.size() != b.c.size()) throw std::invalid_argument("Series: order mismatch");
  }

  friend Series operator+(Series a, const Series& b) {
    check(a, b);
    for (std::size_t k = 0; k < a.c.size(); ++k) a.c[k] += b.c[k];
    return a;
  }
  friend Series operator-(Series a, const Series& b) {
    check(a, b);
    for (std::size_t k = 0; k < a.c.size(); ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend Series operator*(const Series& a, const Series& b) {
    check(a, b);
    Series r(a.order());
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; i + j < a.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Series operator*(const T& s, Series a) {
    for (auto& v : a.c) v = s * v;
    return a;
  }

  // Multiplicative inverse; requires an invertible constant term.
  Series reciprocal() const {
    Series r(order());
    T inv0 = ring_inverse_dispatch(c[0]);
    r.c[0] = inv0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      T s{};
      for (std::size_t j = 1; j <= k; ++j) s += c[j] * r.c[k - j];
      r.c[k] = -(inv0 * s);
    }
    return r;
  }

 private:
  template <typename U>
  static auto ring_inverse_dispatch(const U& x) -> decltype(x.inverse()) {
    return x.inverse();
  }
  static std::complex<double> ring_inverse_dispatch(const std::complex<double>& x) {
    return ring_inverse(x);
  }
};

// F(u) for a polynomial F given by its coefficient list (f[m] multiplies u^m),
// composed with a series u having zero constant term.  Horner evaluation.
template <typename T>
Series<T> compose_poly(const std::vector<T>& f, const Series<T>& u) {
  Series<T> r(u.order());
  for (std::size_t m = f.size(); m-- > 0;) {
    r = r * u;
    r.c[0] += f[m];
  }
  return r;
}

}  // namespace hill
