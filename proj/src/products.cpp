#include "hill/products.hpp"

#include <cmath>

namespace hill {

namespace {
constexpr double kPi2 = M_PI * M_PI;
}

std::vector<cplx> hilbert_transform(const std::vector<cplx>& alpha, int out_len) {
  if (out_len < 0) throw ProductError("hilbert_transform: negative output length");
  std::vector<cplx> out(out_len);
  for (int n = 1; n <= out_len; ++n) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      int m = static_cast<int>(j) + 1;
      if (m == n) continue;
      s += alpha[j] * (1.0 / double(n - m) + 1.0 / double(n + m));
    }
    out[n - 1] = s;
  }
  return out;
}

ProductValue product_eval(const std::vector<cplx>& a, double tail_l1) {
  if (!(tail_l1 >= 0.0) || !std::isfinite(tail_l1))
    throw ProductError("product_eval: tail mass must be finite and nonnegative");
  cplx v = 1.0;
  for (cplx am : a) v *= (1.0 + am);
  return {v, std::expm1(tail_l1)};
}

cplx sine_ratio_product(int n, cplx lambda) {
  if (n < 1) throw ProductError("sine_ratio_product: n must be >= 1");
  double npi = n * M_PI;
  cplx d = std::sqrt(lambda) - npi;
  cplx sinc = (d == cplx(0.0)) ? cplx(1.0) : std::sin(d) / d;
  double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  return sign * sinc * (npi * npi) / ((npi + d) * (2.0 * npi + d));
}

void IsolatingFamily::validate() const {
  if (n0 < 1) throw ProductError("isolating family: n0 must be >= 1");
  if (!(r > 0.0) || !(rho > 0.0))
    throw ProductError("isolating family: r and rho must be positive");
  double rad = r * kPi2;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    double lat = double(n0 + k) * double(n0 + k) * kPi2;
    if (std::abs(centers[k] - lat) > rad)
      throw ProductError("isolating family: center " + std::to_string(n0 + int(k)) +
                         " strays from its lattice point");
    if (k > 0 && !(std::abs(centers[k] - centers[k - 1]) > 2.0 * rad))
      throw ProductError("isolating family: neighbouring discs overlap");
  }
}

bool IsolatingFamily::contains(int n, cplx z) const {
  int idx = n - n0;
  if (idx < 0 || idx >= static_cast<int>(centers.size())) return false;
  return std::abs(z - centers[idx]) <= r * kPi2;
}

cplx ratio_product(const std::vector<cplx>& a, const std::vector<cplx>& b, cplx lambda, int n,
                   const IsolatingFamily& fam) {
  fam.validate();
  if (a.size() != b.size()) throw ProductError("ratio_product: length mismatch");
  if (b.size() > fam.centers.size())
    throw ProductError("ratio_product: family does not cover the support");
  if (!fam.contains(n, lambda))
    throw ProductError("ratio_product: lambda outside its isolating disc");

  cplx f = 1.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    int m = fam.n0 + static_cast<int>(j);
    if (m == n) continue;
    if (!fam.contains(m, b[j]))
      throw ProductError("ratio_product: b_" + std::to_string(m) + " outside its disc");
    double need = std::abs(double(n) * n - double(m) * m) / fam.rho;
    cplx den = b[j] - lambda;
    if (std::abs(den) < need)
      throw ProductError("ratio_product: separation hypothesis fails at m = " +
                         std::to_string(m));
    f *= (a[j] - lambda) / den;
  }
  return f;
}

}  // namespace hill
