#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace hill {

using BigRational = boost::multiprecision::cpp_rational;

// Gaussian rational a + b*i.  Field operations only; no ordering.
struct ExactComplex {
  BigRational re{0};
  BigRational im{0};

  ExactComplex() = default;
  ExactComplex(BigRational r, BigRational i = 0) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(long r) : re(r) {}
  ExactComplex(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }

  ExactComplex operator-() const { return {-re, -im}; }
  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  ExactComplex conj() const { return {re, -im}; }
  ExactComplex inverse() const {
    BigRational n = re * re + im * im;
    if (n == 0) throw std::domain_error("ExactComplex: division by zero");
    return {re / n, -im / n};
  }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

// (2i)^k as a Gaussian rational; negative k allowed.
ExactComplex two_i_pow(int k);

// Laurent polynomial in pi over the Gaussian rationals.  Exact values of the
// mean integrals a_k live in this ring: each term is coeff * pi^power.
struct PiPoly {
  std::map<int, ExactComplex> terms;  // power -> coefficient, zero entries erased

  PiPoly() = default;
  PiPoly(int power, ExactComplex c) {
    if (!c.is_zero()) terms.emplace(power, std::move(c));
  }
  static PiPoly constant(ExactComplex c) { return PiPoly(0, std::move(c)); }

  bool is_zero() const { return terms.empty(); }

  PiPoly& operator+=(const PiPoly& o);
  PiPoly& operator-=(const PiPoly& o);
  friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
  friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
  PiPoly operator-() const;
  friend PiPoly operator*(const PiPoly& a, const PiPoly& b);
  friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.terms == b.terms; }

  // Defined for single-term values only (all that series reciprocals need).
  PiPoly inverse() const;

  std::complex<double> to_complex() const;
};

// Parse "-12", "3/4", "0.3", "-1.25e-2" into an exact rational.
BigRational rational_from_decimal(const std::string& s);

}  // namespace hill
