#include "hill/potential.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace hill {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Conjugate symmetry coeff(-n) == conj(coeff(n)) within a relative slack, so
// translated real potentials keep their flag despite rounding.
bool detect_real(const std::map<int, cplx>& c) {
  double scale = 0.0;
  for (const auto& [n, v] : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return true;
  for (const auto& [n, v] : c) {
    auto it = c.find(-n);
    cplx mirror = it == c.end() ? cplx(0.0) : it->second;
    if (std::abs(std::conj(v) - mirror) > 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace

Potential::Potential(std::map<int, cplx> coeffs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (!finite(it->second)) throw PotentialError("Potential: non-finite coefficient");
    if (it->first == 0) {
      if (it->second != cplx(0.0))
        throw PotentialError("Potential: nonzero mean coefficient (index 0)");
      it = coeffs.erase(it);
    } else if (it->second == cplx(0.0)) {
      it = coeffs.erase(it);
    } else {
      ++it;
    }
  }
  coeffs_ = std::move(coeffs);
  for (const auto& [n, v] : coeffs_) bandwidth_ = std::max(bandwidth_, std::abs(n));
  is_real_ = detect_real(coeffs_);
}

double Potential::sobolev_norm(int N) const {
  if (N < 0) throw PotentialError("sobolev_norm: negative order");
  double s = 0.0;
  for (const auto& [n, v] : coeffs_)
    s += std::pow(static_cast<double>(std::abs(n)), 2 * N) * std::norm(v);
  return std::sqrt(s);
}

cplx Potential::evaluate(double x) const {
  cplx s = 0.0;
  for (const auto& [n, v] : coeffs_) {
    double th = 2.0 * M_PI * n * x;
    s += v * cplx(std::cos(th), std::sin(th));
  }
  return s;
}

Potential Potential::derivative(int k) const {
  if (k < 0) throw PotentialError("derivative: negative order");
  std::map<int, cplx> d;
  for (const auto& [n, v] : coeffs_) {
    cplx f = std::pow(cplx(0.0, 2.0 * M_PI * n), k);
    d.emplace(n, f * v);
  }
  return Potential(std::move(d));
}

Potential Potential::translate(double a) const {
  std::map<int, cplx> d;
  for (const auto& [n, v] : coeffs_) {
    double th = 2.0 * M_PI * n * a;
    d.emplace(n, v * cplx(std::cos(th), std::sin(th)));
  }
  return Potential(std::move(d));
}

double Potential::l1_norm() const {
  double s = 0.0;
  for (const auto& [n, v] : coeffs_) s += std::abs(v);
  return s;
}

Potential operator*(cplx s, const Potential& q) {
  std::map<int, cplx> d;
  for (const auto& [n, v] : q.coeffs_) d.emplace(n, s * v);
  return Potential(std::move(d));
}

std::string Potential::to_json() const {
  nlohmann::ordered_json j;
  j["coeffs"] = nlohmann::ordered_json::array();
  for (const auto& [n, v] : coeffs_)
    j["coeffs"].push_back({{"n", n}, {"re", v.real()}, {"im", v.imag()}});
  j["real"] = is_real_;
  return j.dump();
}

Potential Potential::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PotentialError(std::string("Potential::from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw PotentialError("Potential::from_json: missing coeffs array");
  std::map<int, cplx> c;
  for (const auto& e : j["coeffs"]) {
    if (!e.contains("n") || !e.contains("re"))
      throw PotentialError("Potential::from_json: coeff entry needs n and re");
    int n = e["n"].get<int>();
    double re = e["re"].get<double>();
    double im = e.value("im", 0.0);
    auto [it, fresh] = c.emplace(n, cplx(re, im));
    if (!fresh) throw PotentialError("Potential::from_json: duplicate index");
  }
  Potential q(std::move(c));
  if (j.contains("real") && j["real"].get<bool>() && !q.is_real())
    throw PotentialError("Potential::from_json: real flag set but coefficients are not conjugate-symmetric");
  return q;
}

// ---------------------------------------------------------------------------
// expression mini-language

namespace {

struct ExprParser {
  const std::string& s;
  std::size_t i = 0;

  explicit ExprParser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip();
    std::size_t n = std::string_view(w).size();
    if (s.compare(i, n, w) == 0) {
      i += n;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw PotentialError("potential expression: " + what + " at position " +
                         std::to_string(i) + " in \"" + s + "\"");
  }

  bool peek_number() {
    skip();
    return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.');
  }
  double number() {
    skip();
    const char* begin = s.c_str() + i;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    i += static_cast<std::size_t>(end - begin);
    return v;
  }

  // Product of factors up to ')': numbers, pi, i, x.  Returns the numeric
  // multiplier and counts of each symbol.
  struct Arg {
    double mult = 1.0;
    int n_pi = 0, n_i = 0, n_x = 0;
  };
  Arg argument() {
    Arg a;
    bool neg = eat('-');
    if (neg) a.mult = -1.0;
    while (true) {
      if (eat_word("pi")) {
        ++a.n_pi;
      } else if (eat_word("x")) {
        ++a.n_x;
      } else if (eat_word("i")) {
        ++a.n_i;
      } else if (peek_number() ||
                 (i < s.size() && s[i] == '-')) {  // allow interior negative factor
        a.mult *= number();
      } else {
        fail("expected factor in wave argument");
      }
      if (!eat('*')) break;
    }
    return a;
  }

  // Frequency index n from the argument 2*pi*n*x (or i-bearing exp variant).
  int frequency(const Arg& a, bool want_i) {
    if (a.n_x != 1) fail("argument needs exactly one x");
    if (a.n_pi != 1) fail("argument needs exactly one pi");
    if (a.n_i != (want_i ? 1 : 0)) fail(want_i ? "exp argument needs i" : "unexpected i");
    double half = a.mult / 2.0;
    double r = std::round(half);
    if (std::abs(half - r) > 1e-9 || r == 0.0)
      fail("frequency must be a nonzero integer multiple of 2*pi");
    return static_cast<int>(r);
  }

  // One additive term, already signed by the caller.
  void term(std::map<int, cplx>& acc, double sign) {
    cplx coef(sign, 0.0);
    bool have_coef = false;

    skip();
    if (i < s.size() && s[i] == '(') {
      // complex coefficient "(re,im)"
      ++i;
      double re = number();
      if (!eat(',')) fail("expected ',' in complex coefficient");
      double im = number();
      if (!eat(')')) fail("expected ')' in complex coefficient");
      coef *= cplx(re, im);
      have_coef = true;
    } else if (peek_number()) {
      coef *= number();
      // "2i" and "2*i" both denote an imaginary amplitude
      std::size_t save = i;
      if (eat_word("i")) {
        coef *= cplx(0.0, 1.0);
      } else if (eat('*') && eat_word("i")) {
        coef *= cplx(0.0, 1.0);
      } else {
        i = save;
      }
      have_coef = true;
    } else if (eat_word("i") ) {
      // bare "i" coefficient, only when followed by '*'
      coef *= cplx(0.0, 1.0);
      have_coef = true;
    }

    if (have_coef && !eat('*')) {
      // constant term: only 0 is allowed (zero-mean potentials)
      if (coef != cplx(0.0)) fail("nonzero constant term breaks the zero-mean constraint");
      return;
    }

    skip();
    if (eat_word("cos")) {
      if (!eat('(')) fail("expected '('");
      int n = frequency(argument(), false);
      if (!eat(')')) fail("expected ')'");
      n = std::abs(n);
      acc[n] += 0.5 * coef;
      acc[-n] += 0.5 * coef;
    } else if (eat_word("sin")) {
      if (!eat('(')) fail("expected '('");
      int n = frequency(argument(), false);
      if (!eat(')')) fail("expected ')'");
      if (n < 0) {
        coef = -coef;
        n = -n;
      }
      acc[n] += coef * cplx(0.0, -0.5);
      acc[-n] += coef * cplx(0.0, 0.5);
    } else if (eat_word("exp")) {
      if (!eat('(')) fail("expected '('");
      int n = frequency(argument(), true);
      if (!eat(')')) fail("expected ')'");
      acc[n] += coef;
    } else {
      fail("expected cos(...), sin(...) or exp(...)");
    }
  }
};

}  // namespace

Potential parse_potential(const std::string& text) {
  ExprParser p(text);
  std::map<int, cplx> acc;
  if (p.done()) throw PotentialError("potential expression: empty string");
  double sign = 1.0;
  if (p.eat('-')) sign = -1.0;
  p.term(acc, sign);
  while (!p.done()) {
    if (p.eat('+'))
      sign = 1.0;
    else if (p.eat('-'))
      sign = -1.0;
    else
      p.fail("expected '+' or '-' between terms");
    p.term(acc, sign);
  }
  return Potential(std::move(acc));
}

}  // namespace hill
