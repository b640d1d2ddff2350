#include "hill/asymptotics.hpp"

#include <cmath>

namespace hill {

namespace {
constexpr int kMaxOrder = 9;
}

AsymptoticModel::AsymptoticModel(const Potential& q, int N) : q_(q), N_(N) {
  if (N < 0 || N > kMaxOrder)
    throw AsymptoticError("AsymptoticModel: order outside [0, " + std::to_string(kMaxOrder) + "]");

  int max_even = (N + 1) - (N + 1) % 2;  // largest even <= N + 1
  max_odd_ = std::max(3, N + 2 - (N + 1) % 2);  // largest odd <= N + 2
  if (max_even + 1 > max_odd_) max_odd_ = max_even + 1;

  for (int k = 1; k <= max_odd_; k += 2) a_[k] = a_k(k, q_);

  std::map<int, cplx> a_tail(a_.lower_bound(3), a_.end());
  b_ = branch_coefficients(a_tail, max_odd_);
  if (max_even >= 2) c_ = center_coefficients(b_, max_even);
}

cplx AsymptoticModel::a(int k) const {
  if (k % 2 == 0) {
    if (k < 2 || k > max_odd_ + 1) throw AsymptoticError("a: index outside computed range");
    return 0.0;  // certified vanishing of the even means
  }
  if (k < 1 || k > max_odd_) throw AsymptoticError("a: index outside computed range");
  return a_.at(k);
}

cplx AsymptoticModel::b(int k) const {
  auto it = b_.find(k);
  if (it == b_.end()) throw AsymptoticError("b: index outside computed range");
  return it->second;
}

cplx AsymptoticModel::c(int k) const {
  auto it = c_.find(k);
  if (it == c_.end()) throw AsymptoticError("c: index outside computed range");
  return it->second;
}

void AsymptoticModel::check_n(int n) const {
  if (n < 1) throw AsymptoticError("predictor: n must be >= 1");
}

cplx AsymptoticModel::m(int n) const {
  check_n(n);
  cplx v = M_PI * M_PI * double(n) * double(n);
  double inv2 = 1.0 / (double(n) * double(n));
  double w = 1.0;
  for (int j = 2; j <= N_ + 1; j += 2) {
    w *= inv2;
    v += c_.at(j) * w;
  }
  return v;
}

cplx AsymptoticModel::predict_mu(int n) const { return m(n) - q_.pair_cos(n); }

cplx AsymptoticModel::predict_eta(int n) const { return m(n) + q_.pair_cos(n); }

cplx AsymptoticModel::predict_kappa(int n) const {
  check_n(n);
  return q_.pair_sin(n) / (2.0 * M_PI * double(n));
}

cplx AsymptoticModel::predict_gap(int n) const {
  check_n(n);
  return 2.0 * std::sqrt(q_.coeff(n) * q_.coeff(-n));
}

std::pair<cplx, cplx> AsymptoticModel::predict_pair(int n) const {
  cplx center = m(n);
  cplx s = std::sqrt(q_.coeff(n) * q_.coeff(-n));
  return {center - s, center + s};
}

}  // namespace hill
