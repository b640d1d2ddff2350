#pragma once

#include "hill/diffpoly.hpp"
#include "hill/exact.hpp"
#include "hill/potential.hpp"
#include "hill/series.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace hill {

struct AsymptoticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar constants of the coefficient ring used by the series machinery.
template <typename T>
struct SeriesRing;

template <>
struct SeriesRing<cplx> {
  static cplx pi() { return cplx(M_PI); }
  static cplx ratio(long n, long d) { return cplx(double(n) / double(d)); }
};

template <>
struct SeriesRing<PiPoly> {
  static PiPoly pi() { return PiPoly(1, ExactComplex(1)); }
  static PiPoly ratio(long n, long d) { return PiPoly::constant(ExactComplex(BigRational(n, d))); }
};

// Odd coefficients b_3, b_5, ... of the branch rho solving
//   rho(z) = F(z / (pi + z rho(z))),
// where F collects the mean integrals: F(u) = sum_{l>=1} (-1)^l a_{2l+1} u^{2l+1} / 2^{2l+1}.
// Input: a_{2l+1} keyed by 2l+1; missing keys are treated as zero.
template <typename T>
std::map<int, T> branch_coefficients(const std::map<int, T>& a, int max_odd) {
  if (max_odd < 3 || max_odd % 2 == 0)
    throw AsymptoticError("branch_coefficients: max_odd must be odd and >= 3");
  using R = SeriesRing<T>;
  const std::size_t M = static_cast<std::size_t>(max_odd);

  std::vector<T> f(M + 1);
  for (int l = 1; 2 * l + 1 <= max_odd; ++l) {
    auto it = a.find(2 * l + 1);
    if (it == a.end()) continue;
    long den = 1L << (2 * l + 1);
    f[2 * l + 1] = R::ratio(l % 2 ? -1 : 1, den) * it->second;
  }

  Series<T> z(M);
  z[1] = R::ratio(1, 1);
  Series<T> pi_s(M);
  pi_s[0] = R::pi();

  // each substitution extends the agreement by two orders
  Series<T> rho(M);
  for (int it = 0; it < (max_odd + 1) / 2; ++it) {
    Series<T> u = z * (pi_s + z * rho).reciprocal();
    rho = compose_poly(f, u);
  }

  std::map<int, T> b;
  for (int k = 3; k <= max_odd; k += 2) b[k] = rho[k];
  return b;
}

// Even coefficients c_2, c_4, ... of c(x) = 2 pi B(x)/x + B(x)^2 with
// B(x) = sum b_{2k+1} x^{2k+1}.  Requires b up to max_even + 1.
template <typename T>
std::map<int, T> center_coefficients(const std::map<int, T>& b, int max_even) {
  if (max_even < 2 || max_even % 2 == 1)
    throw AsymptoticError("center_coefficients: max_even must be even and >= 2");
  using R = SeriesRing<T>;
  const std::size_t M = static_cast<std::size_t>(max_even);

  Series<T> bs(M), b_over_x(M);
  for (const auto& [k, v] : b) {
    if (k < 1) continue;
    if (static_cast<std::size_t>(k) <= M) bs[k] = v;
    if (static_cast<std::size_t>(k - 1) <= M) b_over_x[k - 1] = v;
  }
  if (b.find(max_even + 1) == b.end())
    throw AsymptoticError("center_coefficients: b_{max_even+1} is required");

  T two_pi = R::ratio(2, 1) * R::pi();
  Series<T> c = two_pi * b_over_x + bs * bs;

  std::map<int, T> out;
  for (int k = 2; k <= max_even; k += 2) out[k] = c[k];
  return out;
}

// Truncated expansions of the spectral quantities around the n-th cluster.
// Order N controls both which center corrections c_{2j} enter (2j <= N+1)
// and which mean integrals are available (odd k <= N+2).
class AsymptoticModel {
 public:
  AsymptoticModel(const Potential& q, int N);

  int order() const { return N_; }
  const Potential& potential() const { return q_; }

  cplx a(int k) const;  // mean integral; exact zero for even k
  cplx b(int k) const;
  cplx c(int k) const;

  // cluster center m_n = n^2 pi^2 + sum_{2 <= 2j <= N+1} c_{2j} n^{-2j}
  cplx m(int n) const;

  cplx predict_mu(int n) const;
  cplx predict_eta(int n) const;
  cplx predict_tau(int n) const { return m(n); }
  cplx predict_kappa(int n) const;
  cplx predict_gap(int n) const;
  // {m - s, m + s} with s the principal square root of the coefficient product
  std::pair<cplx, cplx> predict_pair(int n) const;

 private:
  void check_n(int n) const;

  Potential q_;
  int N_;
  int max_odd_;
  std::map<int, cplx> a_, b_, c_;
};

}  // namespace hill
