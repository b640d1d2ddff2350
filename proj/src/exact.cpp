#include "hill/exact.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace hill {

ExactComplex two_i_pow(int k) {
  // (2i)^k = 2^k * i^k; i^k cycles through 1, i, -1, -i.
  BigRational mag = 1;
  if (k >= 0) {
    mag = boost::multiprecision::pow(boost::multiprecision::cpp_int(2), k);
  } else {
    mag = BigRational(1, boost::multiprecision::pow(boost::multiprecision::cpp_int(2), -k));
  }
  switch (((k % 4) + 4) % 4) {
    case 0: return {mag, 0};
    case 1: return {0, mag};
    case 2: return {-mag, 0};
    default: return {0, -mag};  // i^3 = -i
  }
}

PiPoly& PiPoly::operator+=(const PiPoly& o) {
  for (const auto& [p, c] : o.terms) {
    auto it = terms.find(p);
    if (it == terms.end()) {
      terms.emplace(p, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  return *this;
}

PiPoly& PiPoly::operator-=(const PiPoly& o) {
  for (const auto& [p, c] : o.terms) {
    auto it = terms.find(p);
    if (it == terms.end()) {
      terms.emplace(p, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  return *this;
}

PiPoly PiPoly::operator-() const {
  PiPoly r;
  for (const auto& [p, c] : terms) r.terms.emplace(p, -c);
  return r;
}

PiPoly operator*(const PiPoly& a, const PiPoly& b) {
  PiPoly r;
  for (const auto& [pa, ca] : a.terms)
    for (const auto& [pb, cb] : b.terms) r += PiPoly(pa + pb, ca * cb);
  return r;
}

PiPoly PiPoly::inverse() const {
  if (terms.size() != 1)
    throw std::domain_error("PiPoly::inverse: only monomials are invertible here");
  const auto& [p, c] = *terms.begin();
  return PiPoly(-p, c.inverse());
}

std::complex<double> PiPoly::to_complex() const {
  std::complex<double> s = 0.0;
  for (const auto& [p, c] : terms) s += c.to_complex() * std::pow(M_PI, p);
  return s;
}

BigRational rational_from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational_from_decimal: empty string");
  // Split off an exponent part first, then an optional fraction bar or decimal dot.
  std::string t = s;
  long expo = 0;
  if (auto e = t.find_first_of("eE"); e != std::string::npos) {
    expo = std::strtol(t.c_str() + e + 1, nullptr, 10);
    t = t.substr(0, e);
  }
  if (auto bar = t.find('/'); bar != std::string::npos) {
    if (expo != 0) throw std::invalid_argument("rational_from_decimal: exponent with '/'");
    BigRational num(boost::multiprecision::cpp_int(t.substr(0, bar)));
    boost::multiprecision::cpp_int den(t.substr(bar + 1));
    if (den == 0) throw std::invalid_argument("rational_from_decimal: zero denominator");
    return num / BigRational(den);
  }
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    if (t[i] == '.') {
      if (seen_dot) throw std::invalid_argument("rational_from_decimal: bad literal " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digits += t[i];
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("rational_from_decimal: bad literal " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("rational_from_decimal: bad literal " + s);
  boost::multiprecision::cpp_int mant(digits.empty() ? "0" : digits);
  BigRational r(mant);
  long p10 = expo - frac_digits;
  boost::multiprecision::cpp_int ten = 10;
  if (p10 > 0) r *= BigRational(boost::multiprecision::pow(ten, static_cast<unsigned>(p10)));
  if (p10 < 0) r /= BigRational(boost::multiprecision::pow(ten, static_cast<unsigned>(-p10)));
  return neg ? -r : r;
}

}  // namespace hill
