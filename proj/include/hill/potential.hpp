#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace hill {

using cplx = std::complex<double>;

struct PotentialError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Zero-mean 1-periodic trigonometric polynomial
//   q(x) = sum_{0 < |n| <= bandwidth} coeff(n) e^{2 pi i n x}.
// A nonzero mean coefficient is rejected at construction.
class Potential {
 public:
  Potential() = default;
  explicit Potential(std::map<int, cplx> coeffs);

  const std::map<int, cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? cplx(0.0) : it->second;
  }
  int bandwidth() const { return bandwidth_; }
  bool is_real() const { return is_real_; }
  bool is_zero() const { return coeffs_.empty(); }

  // ( sum_{n != 0} |n|^{2N} |coeff(n)|^2 )^{1/2}
  double sobolev_norm(int N) const;

  // Pairings against the elementary waves, all with the integral convention
  // over one period: pair_exp(n) = \int q e^{-2 pi i n x} dx = coeff(n).
  cplx pair_exp(int n) const { return coeff(n); }
  cplx pair_cos(int n) const { return 0.5 * (coeff(n) + coeff(-n)); }
  cplx pair_sin(int n) const { return (coeff(-n) - coeff(n)) * cplx(0.0, -0.5); }

  cplx evaluate(double x) const;
  Potential derivative(int k = 1) const;
  Potential translate(double a) const;  // x -> q(x + a)

  // sum |coeff(n)|, a sup-norm bound used for spectral brackets
  double l1_norm() const;

  std::string to_json() const;
  static Potential from_json(const std::string& text);

  friend Potential operator*(cplx s, const Potential& q);
  friend bool operator==(const Potential& a, const Potential& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::map<int, cplx> coeffs_;
  int bandwidth_ = 0;
  bool is_real_ = true;
};

// Parser for the CLI potential mini-language.  Accepted terms:
//   a*cos(2*pi*k*x)   a*sin(2*pi*k*x)   (re,im)*exp(2*pi*i*k*x)
// with a a decimal, "i", or "a*i"; terms joined by + or -; "0" for q = 0.
Potential parse_potential(const std::string& text);

}  // namespace hill
