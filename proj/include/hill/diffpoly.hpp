#pragma once

#include "hill/exact.hpp"
#include "hill/potential.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hill {

struct DiffPolyError : std::domain_error {
  using std::domain_error::domain_error;
};

// c * prod_i d^{orders[i]} q with exact rational c; orders kept sorted.
struct DiffMonomial {
  BigRational coeff;
  std::vector<int> orders;
};

// Merged canonical sum of differential monomials.
class DiffPolynomial {
 public:
  DiffPolynomial() = default;
  static DiffPolynomial monomial(BigRational c, std::vector<int> orders);

  const std::vector<DiffMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  DiffPolynomial& operator+=(const DiffPolynomial& o);
  DiffPolynomial& operator-=(const DiffPolynomial& o);
  friend DiffPolynomial operator+(DiffPolynomial a, const DiffPolynomial& b) { return a += b; }
  friend DiffPolynomial operator-(DiffPolynomial a, const DiffPolynomial& b) { return a -= b; }
  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
  DiffPolynomial operator-() const;
  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b);

  DiffPolynomial dx() const;  // total x-derivative (Leibniz over factors)

 private:
  void canonicalize(std::map<std::vector<int>, BigRational> acc);
  std::vector<DiffMonomial> terms_;  // sorted by orders vector
};

inline constexpr int kSkDepthLimit = 12;

// s_1 = q, s_2 = -q', s_{k+1} = -s_k' - sum_{j=1}^{k-1} s_{k-j} s_j.  Memoized.
const DiffPolynomial& sk(int k, int depth_limit = kSkDepthLimit);

// Twice the isobaric degree (q counts 1, each derivative 1/2) when every
// monomial agrees; nullopt for inhomogeneous polynomials.
std::optional<int> isobaric_degree_x2(const DiffPolynomial& p);

struct LeadingSplit {
  DiffMonomial leading;
  DiffPolynomial rest;
};
// Splits s_k into its unique single-factor monomial and the remainder.
LeadingSplit leading_split(int k, int depth_limit = kSkDepthLimit);

// Fourier coefficients (frequency -> value) of p evaluated on q; the mean is
// carried at key 0.
std::map<int, cplx> eval_density(const DiffPolynomial& p, const Potential& q);
cplx a_k(int k, const Potential& q, int depth_limit = kSkDepthLimit);

// Exact path: potential coefficients as Gaussian rationals, values in the
// Laurent-in-pi ring (one PiPoly per frequency).
using ExactFourier = std::map<int, ExactComplex>;
std::map<int, PiPoly> eval_density_exact(const DiffPolynomial& p, const ExactFourier& qhat);
PiPoly a_k_exact(int k, const ExactFourier& qhat, int depth_limit = kSkDepthLimit);

// "q'' - q^2" style rendering; sk_pretty prefixes "s_k = ".
std::string to_string(const DiffPolynomial& p);
std::string sk_pretty(int k, int depth_limit = kSkDepthLimit);

}  // namespace hill
