#include "hill/diffpoly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace hill {

DiffPolynomial DiffPolynomial::monomial(BigRational c, std::vector<int> orders) {
  for (int o : orders)
    if (o < 0) throw DiffPolyError("DiffPolynomial: negative derivative order");
  std::sort(orders.begin(), orders.end());
  DiffPolynomial p;
  if (c != 0) p.terms_.push_back({std::move(c), std::move(orders)});
  return p;
}

void DiffPolynomial::canonicalize(std::map<std::vector<int>, BigRational> acc) {
  terms_.clear();
  for (auto& [orders, c] : acc)
    if (c != 0) terms_.push_back({std::move(c), orders});
}

DiffPolynomial& DiffPolynomial::operator+=(const DiffPolynomial& o) {
  std::map<std::vector<int>, BigRational> acc;
  for (const auto& m : terms_) acc[m.orders] += m.coeff;
  for (const auto& m : o.terms_) acc[m.orders] += m.coeff;
  canonicalize(std::move(acc));
  return *this;
}

DiffPolynomial& DiffPolynomial::operator-=(const DiffPolynomial& o) {
  std::map<std::vector<int>, BigRational> acc;
  for (const auto& m : terms_) acc[m.orders] += m.coeff;
  for (const auto& m : o.terms_) acc[m.orders] -= m.coeff;
  canonicalize(std::move(acc));
  return *this;
}

DiffPolynomial DiffPolynomial::operator-() const {
  DiffPolynomial r;
  for (const auto& m : terms_) r.terms_.push_back({-m.coeff, m.orders});
  return r;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
  std::map<std::vector<int>, BigRational> acc;
  for (const auto& ma : a.terms_)
    for (const auto& mb : b.terms_) {
      std::vector<int> orders = ma.orders;
      orders.insert(orders.end(), mb.orders.begin(), mb.orders.end());
      std::sort(orders.begin(), orders.end());
      acc[std::move(orders)] += ma.coeff * mb.coeff;
    }
  DiffPolynomial r;
  r.canonicalize(std::move(acc));
  return r;
}

bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].orders != b.terms_[i].orders || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

DiffPolynomial DiffPolynomial::dx() const {
  std::map<std::vector<int>, BigRational> acc;
  for (const auto& m : terms_)
    for (std::size_t i = 0; i < m.orders.size(); ++i) {
      std::vector<int> orders = m.orders;
      orders[i] += 1;
      std::sort(orders.begin(), orders.end());
      acc[std::move(orders)] += m.coeff;
    }
  DiffPolynomial r;
  r.canonicalize(std::move(acc));
  return r;
}

const DiffPolynomial& sk(int k, int depth_limit) {
  if (k < 1) throw DiffPolyError("sk: index must be >= 1");
  if (k > depth_limit)
    throw DiffPolyError("sk: depth limit exceeded (k = " + std::to_string(k) +
                        ", limit = " + std::to_string(depth_limit) + ")");
  static std::mutex mtx;
  static std::vector<DiffPolynomial> cache;  // cache[k-1] = s_k
  std::lock_guard<std::mutex> lock(mtx);
  if (cache.empty()) {
    cache.push_back(DiffPolynomial::monomial(1, {0}));   // s_1 = q
    cache.push_back(DiffPolynomial::monomial(-1, {1}));  // s_2 = -q'
  }
  while (static_cast<int>(cache.size()) < k) {
    int m = static_cast<int>(cache.size());  // have s_1..s_m, build s_{m+1}
    DiffPolynomial next = -cache[m - 1].dx();
    for (int j = 1; j <= m - 1; ++j) next -= cache[m - j - 1] * cache[j - 1];
    cache.push_back(std::move(next));
  }
  return cache[k - 1];
}

std::optional<int> isobaric_degree_x2(const DiffPolynomial& p) {
  std::optional<int> deg;
  for (const auto& m : p.terms()) {
    int d = 2 * static_cast<int>(m.orders.size());
    for (int o : m.orders) d += o;
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg;
}

LeadingSplit leading_split(int k, int depth_limit) {
  const DiffPolynomial& p = sk(k, depth_limit);
  LeadingSplit out;
  bool found = false;
  DiffPolynomial rest;
  for (const auto& m : p.terms()) {
    if (m.orders.size() == 1) {
      if (found) throw DiffPolyError("leading_split: multiple single-factor monomials");
      out.leading = m;
      found = true;
    } else {
      rest += DiffPolynomial::monomial(m.coeff, m.orders);
    }
  }
  if (!found) throw DiffPolyError("leading_split: no single-factor monomial in s_k");
  out.rest = std::move(rest);
  return out;
}

namespace {

// One factor d^o q contributes coefficient (2 pi i m)^o qhat_m at frequency m.
std::map<int, cplx> convolve_factor(const std::map<int, cplx>& acc, const Potential& q, int o) {
  std::map<int, cplx> next;
  for (const auto& [f, v] : acc)
    for (const auto& [m, qm] : q.coeffs()) {
      cplx w(1.0);
      for (int t = 0; t < o; ++t) w *= cplx(0.0, 2.0 * M_PI * m);
      next[f + m] += v * w * qm;
    }
  return next;
}

std::map<int, PiPoly> convolve_factor_exact(const std::map<int, PiPoly>& acc,
                                            const ExactFourier& qhat, int o) {
  std::map<int, PiPoly> next;
  for (const auto& [f, v] : acc)
    for (const auto& [m, qm] : qhat) {
      if (qm.is_zero()) continue;
      // (2 pi i m)^o = (2i)^o m^o pi^o
      BigRational mo = 1;
      for (int t = 0; t < o; ++t) mo *= m;
      PiPoly w(o, two_i_pow(o) * ExactComplex(mo) * qm);
      next[f + m] += v * w;
    }
  return next;
}

}  // namespace

std::map<int, cplx> eval_density(const DiffPolynomial& p, const Potential& q) {
  std::map<int, cplx> out;
  for (const auto& m : p.terms()) {
    std::map<int, cplx> acc{{0, static_cast<double>(m.coeff)}};
    for (int o : m.orders) acc = convolve_factor(acc, q, o);
    for (const auto& [f, v] : acc) out[f] += v;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == cplx(0.0) ? out.erase(it) : std::next(it);
  return out;
}

cplx a_k(int k, const Potential& q, int depth_limit) {
  auto d = eval_density(sk(k, depth_limit), q);
  auto it = d.find(0);
  return it == d.end() ? cplx(0.0) : it->second;
}

std::map<int, PiPoly> eval_density_exact(const DiffPolynomial& p, const ExactFourier& qhat) {
  for (const auto& [n, c] : qhat)
    if (n == 0 && !c.is_zero())
      throw DiffPolyError("eval_density_exact: potential must have zero mean");
  std::map<int, PiPoly> out;
  for (const auto& m : p.terms()) {
    std::map<int, PiPoly> acc;
    acc.emplace(0, PiPoly::constant(ExactComplex(m.coeff)));
    for (int o : m.orders) acc = convolve_factor_exact(acc, qhat, o);
    for (const auto& [f, v] : acc) out[f] += v;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

PiPoly a_k_exact(int k, const ExactFourier& qhat, int depth_limit) {
  auto d = eval_density_exact(sk(k, depth_limit), qhat);
  auto it = d.find(0);
  return it == d.end() ? PiPoly() : it->second;
}

namespace {

std::string factor_text(int order, int count) {
  std::string base = "q";
  if (order >= 1 && order <= 3)
    base += std::string(static_cast<std::size_t>(order), '\'');
  else if (order >= 4)
    base += "^(" + std::to_string(order) + ")";
  if (count > 1) base += "^" + std::to_string(count);
  return base;
}

std::string monomial_text(const DiffMonomial& m) {
  std::ostringstream os;
  BigRational mag = m.coeff < 0 ? BigRational(-m.coeff) : m.coeff;
  std::string parts;
  int i = 0;
  int n = static_cast<int>(m.orders.size());
  while (i < n) {
    int j = i;
    while (j < n && m.orders[j] == m.orders[i]) ++j;
    if (!parts.empty()) parts += "*";
    parts += factor_text(m.orders[i], j - i);
    i = j;
  }
  if (mag != 1 || parts.empty()) {
    os << mag;
    if (!parts.empty()) os << "*";
  }
  os << parts;
  return os.str();
}

}  // namespace

std::string to_string(const DiffPolynomial& p) {
  if (p.is_zero()) return "0";
  // Display order: highest derivative first, then fewer factors, then the
  // canonical orders comparison.  Matches the usual hand-written form.
  std::vector<DiffMonomial> ms = p.terms();
  std::sort(ms.begin(), ms.end(), [](const DiffMonomial& a, const DiffMonomial& b) {
    int ha = a.orders.empty() ? -1 : a.orders.back();
    int hb = b.orders.empty() ? -1 : b.orders.back();
    if (ha != hb) return ha > hb;
    if (a.orders.size() != b.orders.size()) return a.orders.size() < b.orders.size();
    return a.orders < b.orders;
  });
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool neg = ms[i].coeff < 0;
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += monomial_text(ms[i]);
  }
  return out;
}

std::string sk_pretty(int k, int depth_limit) {
  return "s_" + std::to_string(k) + " = " + to_string(sk(k, depth_limit));
}

}  // namespace hill
