#pragma once

#include "hill/potential.hpp"

#include <stdexcept>
#include <vector>

namespace hill {

struct ProductError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (H alpha)_n = sum_{m != n} alpha_m (1/(n-m) + 1/(n+m)) for n = 1..out_len.
// alpha[0] holds alpha_1.  Direct double summation; bounded with norm <= 2 pi.
std::vector<cplx> hilbert_transform(const std::vector<cplx>& alpha, int out_len);

struct ProductValue {
  cplx value;         // product of the explicit factors (1 + a_m)
  double tail_bound;  // |true/value - 1| <= tail_bound, from exp(tail_l1) - 1
};

// Product over the explicit factors with a certified multiplicative bracket
// for the dropped tail, whose l^1 mass is majorized by tail_l1.
ProductValue product_eval(const std::vector<cplx>& a, double tail_l1 = 0.0);

// Pi_{m != n} (m^2 pi^2 - lambda)/(m^2 pi^2), evaluated through the sine
// product; stable arbitrarily close to lambda = n^2 pi^2, where the value
// tends to (-1)^{n+1}/2.
cplx sine_ratio_product(int n, cplx lambda);

// Family of isolating neighbourhoods U_n = {|z - center_n| <= r pi^2} for
// n = n0, n0+1, ...; centers stay within r pi^2 of the lattice n^2 pi^2 and
// the discs are pairwise disjoint; rho scales the separation inequality
// |b_m - lambda_n| >= |n^2 - m^2| / rho enforced at evaluation sites.
struct IsolatingFamily {
  int n0 = 1;
  double r = 0.25;
  double rho = 1.0;
  std::vector<cplx> centers;

  void validate() const;
  bool contains(int n, cplx z) const;
};

// f_n(lambda) = Pi_{m != n} (a_m - lambda)/(b_m - lambda) over the common
// explicit range m = n0 .. n0+len-1; beyond it the sequences agree and the
// tail ratio is exactly 1.  Preconditions (membership and separation) are
// enforced and violations reported as ProductError.
cplx ratio_product(const std::vector<cplx>& a, const std::vector<cplx>& b, cplx lambda, int n,
                   const IsolatingFamily& fam);

}  // namespace hill
