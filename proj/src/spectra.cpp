#include "hill/spectra.hpp"

#include "hill/parallel.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hill {

namespace {

constexpr double kPi = M_PI;

double sq(double x) { return x * x; }

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Potential real_part(const Potential& q) {
  std::map<int, cplx> c;
  for (const auto& [n, v] : q.coeffs()) {
    cplx r = 0.5 * (v + std::conj(q.coeff(-n)));
    if (r != cplx(0.0)) c[n] = r;
  }
  return Potential(std::move(c));
}

// f and df/dlambda of the active root function, extracted from the
// variational solve.
enum class RootFn { dirichlet, neumann, delta };

std::pair<cplx, cplx> root_fn(RootFn which, const FundamentalDerivatives& fd) {
  switch (which) {
    case RootFn::dirichlet: return {fd.base.y2, fd.d_y2};
    case RootFn::neumann: return {fd.base.dy1, fd.d_dy1};
    default: return {fd.base.y1 + fd.base.dy2, fd.d_y1 + fd.d_dy2};
  }
}

// -------------------------------------------------------------------- scans

struct Scan {
  std::vector<double> lam;
  std::vector<FundamentalSolution> f;
};

Scan make_scan(const Potential& q, int n_max, double tol, int refine) {
  Scan s;
  double lam_min = -(q.l1_norm() + 2.0);
  int neg_pts = 8 * refine;
  for (int i = 0; i < neg_pts; ++i)
    s.lam.push_back(lam_min + (4.0 - lam_min) * i / neg_pts);
  double s_top = (n_max + 0.55) * kPi;
  double ds = kPi / (8.0 * refine);
  for (double t = 2.0; t <= s_top; t += ds) s.lam.push_back(sq(t));
  s.f.resize(s.lam.size());
  parallel_for_index(static_cast<int>(s.lam.size()), [&](int i) {
    s.f[i] = integrate_fundamental(q, s.lam[i], tol);
  });
  return s;
}

struct Bracket {
  double lo, hi;
  double flo, fhi;
};

std::vector<Bracket> sign_changes(const Scan& s, const std::function<double(const FundamentalSolution&)>& g) {
  std::vector<Bracket> out;
  double prev = g(s.f[0]);
  for (std::size_t i = 1; i < s.lam.size(); ++i) {
    double cur = g(s.f[i]);
    if ((prev < 0.0) != (cur < 0.0)) out.push_back({s.lam[i - 1], s.lam[i], prev, cur});
    prev = cur;
  }
  return out;
}

// Discrete extrema of Delta along the scan bracket the zeros of Delta'.
std::vector<Bracket> extremum_brackets(const Scan& s) {
  std::vector<Bracket> out;
  auto delta = [&](std::size_t i) { return (s.f[i].y1 + s.f[i].dy2).real(); };
  for (std::size_t i = 1; i + 1 < s.lam.size(); ++i) {
    double d1 = delta(i) - delta(i - 1);
    double d2 = delta(i + 1) - delta(i);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
      out.push_back({s.lam[i - 1], s.lam[i + 1], 0.0, 0.0});
  }
  return out;
}

// --------------------------------------------------------- 1-d root polish

// Bracketed Newton on the real part of the chosen root function; the bracket
// is maintained as a bisection safeguard.
double newton_bracketed(const Potential& q, double tol, RootFn which, double offset, Bracket b,
                        double init, double* df_out) {
  double x = (init > b.lo && init < b.hi) ? init : 0.5 * (b.lo + b.hi);
  double f = 0.0, df = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    FundamentalDerivatives fd = dlambda(q, x, tol);
    auto [fc, dfc] = root_fn(which, fd);
    f = fc.real() + offset;
    df = dfc.real();
    if ((f < 0.0) == (b.flo < 0.0)) {
      b.lo = x;
      b.flo = f;
    } else {
      b.hi = x;
      b.fhi = f;
    }
    double xn = x - f / df;
    if (!std::isfinite(xn) || xn <= b.lo || xn >= b.hi) xn = 0.5 * (b.lo + b.hi);
    double step = std::abs(xn - x);
    x = xn;
    double target = 0.5 * tol * std::max(1.0, std::abs(x));
    if (step <= target) break;
    // evaluation noise keeps steps from contracting further; the residual
    // certificate below still gates the accepted iterate
    if (step >= 0.5 * prev && step <= 16.0 * target && prev <= 16.0 * target) break;
    prev = step;
    if (b.hi - b.lo <= 0.25 * tol * std::max(1.0, std::abs(x))) break;
  }
  if (std::abs(f) > 1e3 * tol * std::max(1.0, std::abs(df) * std::abs(x)))
    throw SolverError("root polish: residual too large at lambda = " + std::to_string(x));
  if (std::abs(df) < 1e-9 / (1.0 + std::abs(x)))
    throw SolverError("root polish: derivative certificate failed (root not simple?)");
  if (df_out) *df_out = df;
  return x;
}

cplx newton_complex(const Potential& q, double tol, RootFn which, double offset, cplx init,
                    cplx* df_out = nullptr) {
  cplx x = init;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 40; ++it) {
    FundamentalDerivatives fd = dlambda(q, x, tol);
    auto [fc, dfc] = root_fn(which, fd);
    cplx f = fc + offset;
    cplx dx = -f / dfc;
    x += dx;
    double step = std::abs(dx);
    double target = 0.5 * tol * std::max(1.0, std::abs(x));
    if (step <= target ||
        (step >= 0.5 * prev && step <= 16.0 * target && prev <= 16.0 * target)) {
      if (df_out) *df_out = dfc;
      return x;
    }
    prev = step;
  }
  throw SolverError("complex Newton did not converge");
}

// Unguarded Newton for a simple root known to sit close to init.
double newton_simple(const Potential& q, double tol, RootFn which, double init, double* df_out) {
  double x = init;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    FundamentalDerivatives fd = dlambda(q, x, tol);
    auto [fc, dfc] = root_fn(which, fd);
    double dx = -fc.real() / dfc.real();
    x += dx;
    if (!std::isfinite(x) || std::abs(x - init) > 2.0 + 1e-3 * std::abs(init))
      throw SolverError("local Newton wandered away from its seed");
    double step = std::abs(dx);
    double target = 0.5 * tol * std::max(1.0, std::abs(x));
    if (step <= target ||
        (step >= 0.5 * prev && step <= 16.0 * target && prev <= 16.0 * target)) {
      if (df_out) *df_out = dfc.real();
      return x;
    }
    prev = step;
  }
  throw SolverError("local Newton did not converge near lambda = " + std::to_string(x) +
                    ", last step " + std::to_string(prev));
}

// Secant with bisection safeguard for Delta'(lambda) = 0 along the real axis.
double critical_point(const Potential& q, double tol, Bracket b) {
  auto eval = [&](double x) {
    FundamentalDerivatives fd = dlambda(q, x, tol);
    return (fd.d_y1 + fd.d_dy2).real();
  };
  double glo = eval(b.lo), ghi = eval(b.hi);
  if ((glo < 0.0) == (ghi < 0.0))
    throw SolverError("critical point: endpoints do not straddle a sign change");
  double x0 = b.lo, x1 = b.hi, g0 = glo, g1 = ghi;
  for (int it = 0; it < 80; ++it) {
    double xn = x1 - g1 * (x1 - x0) / (g1 - g0);
    if (!std::isfinite(xn) || xn <= b.lo || xn >= b.hi) xn = 0.5 * (b.lo + b.hi);
    double gn = eval(xn);
    if ((gn < 0.0) == (glo < 0.0)) {
      b.lo = xn;
      glo = gn;
    } else {
      b.hi = xn;
      ghi = gn;
    }
    x0 = x1;
    g0 = g1;
    x1 = xn;
    g1 = gn;
    if (std::abs(x1 - x0) <= 0.5 * tol * std::max(1.0, std::abs(x1))) break;
    if (b.hi - b.lo <= 0.25 * tol * std::max(1.0, std::abs(x1))) break;
  }
  return x1;
}

// Dirichlet / Neumann shared driver for real potentials.
std::vector<double> real_eigs_scan(const Potential& q, int n_max, double tol, RootFn which,
                                   int expected,
                                   const std::function<double(int)>& prediction) {
  for (int refine = 1; refine <= 4; refine *= 2) {
    Scan s = make_scan(q, n_max, tol, refine);
    auto pick = [&](const FundamentalSolution& f) {
      return which == RootFn::dirichlet ? f.y2.real() : f.dy1.real();
    };
    std::vector<Bracket> br = sign_changes(s, pick);
    if (static_cast<int>(br.size()) != expected) continue;
    std::vector<double> roots(br.size());
    parallel_for_index(static_cast<int>(br.size()), [&](int i) {
      roots[i] = newton_bracketed(q, tol, which, 0.0, br[i], prediction(i), nullptr);
    });
    return roots;
  }
  throw SolverError("eigenvalue scan: could not isolate the expected number of roots");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

// ------------------------------------------------------------------ public

std::vector<cplx> dirichlet_eigs(const Potential& q, int n_max, double tol) {
  if (n_max < 1) throw std::invalid_argument("dirichlet_eigs: n_max must be >= 1");
  if (q.is_real()) {
    double c2 = sq(q.sobolev_norm(0)) / (4.0 * sq(kPi));
    auto pred = [&](int i) {
      int n = i + 1;
      return sq(n * kPi) + c2 / sq(double(n)) - q.pair_cos(n).real();
    };
    auto roots = real_eigs_scan(q, n_max, tol, RootFn::dirichlet, n_max, pred);
    return std::vector<cplx>(roots.begin(), roots.end());
  }
  std::vector<cplx> base = dirichlet_eigs(real_part(q), n_max, tol);
  std::vector<cplx> out(base.size());
  parallel_for_index(static_cast<int>(base.size()), [&](int i) {
    out[i] = newton_complex(q, tol, RootFn::dirichlet, 0.0, base[i]);
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<cplx> neumann_eigs(const Potential& q, int n_max, double tol) {
  if (n_max < 0) throw std::invalid_argument("neumann_eigs: n_max must be >= 0");
  if (q.is_real()) {
    double c2 = sq(q.sobolev_norm(0)) / (4.0 * sq(kPi));
    auto pred = [&](int i) {
      if (i == 0) return -0.5 * sq(q.sobolev_norm(0));  // crude; bracket midpoint fallback
      return sq(i * kPi) + c2 / sq(double(i)) + q.pair_cos(i).real();
    };
    auto roots = real_eigs_scan(q, n_max, tol, RootFn::neumann, n_max + 1, pred);
    return std::vector<cplx>(roots.begin(), roots.end());
  }
  std::vector<cplx> base = neumann_eigs(real_part(q), n_max, tol);
  std::vector<cplx> out(base.size());
  parallel_for_index(static_cast<int>(base.size()), [&](int i) {
    out[i] = newton_complex(q, tol, RootFn::neumann, 0.0, base[i]);
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

namespace {

// Gap-splitting resolution: below this the local quadratic model cannot
// separate the pair from discriminant noise.
double split_threshold(double tol, double lam) {
  double scale = std::max(1.0, std::abs(lam));
  return std::max(std::sqrt(800.0 * tol * scale), 1e3 * tol * scale);
}

PeriodicSpectrum periodic_eigs_real(const Potential& q, int n_max, double tol) {
  for (int refine = 1; refine <= 4; refine *= 2) {
    Scan s = make_scan(q, n_max, tol, refine);
    std::vector<Bracket> crit = extremum_brackets(s);
    if (static_cast<int>(crit.size()) != n_max) continue;

    PeriodicSpectrum out;
    out.pairs.resize(n_max);
    parallel_for_index(n_max, [&](int i) {
      int n = i + 1;
      double par = (n % 2 == 0) ? 1.0 : -1.0;
      double dot = critical_point(q, tol, crit[i]);
      FundamentalDerivatives fd = dlambda(q, dot, tol);
      double delta_val = (fd.base.y1 + fd.base.dy2).real();
      double e = par * delta_val - 2.0;
      double theta = split_threshold(tol, dot);
      // half-width estimate from the factorisation
      // Delta^2 - 4 = (y1 - y2')^2 + 4 y1' y2, whose small factors vanish at
      // the well-conditioned Dirichlet and Neumann roots; both terms of the
      // estimate are nonnegative for real q, so it cannot collapse spuriously
      double hr = std::numeric_limits<double>::infinity();
      bool have_local = false;
      try {
        double d_mu = 0.0, d_eta = 0.0;
        double mu = newton_simple(q, tol, RootFn::dirichlet, dot, &d_mu);
        double eta = newton_simple(q, tol, RootFn::neumann, dot, &d_eta);
        double dd = (fd.base.y1 - fd.base.dy2).real();
        double dhalf = 0.5 * (mu - eta);
        double disc = dhalf * dhalf - dd * dd / (4.0 * d_mu * d_eta);
        hr = disc > 0.0 ? std::sqrt(disc) : 0.0;
        have_local = true;
      } catch (const SolverError&) {
        // the local solves stray only when the gap is wide; route direct
      }
      PeriodicPair pp{};
      if (!have_local || hr > theta) {
        pp.near_degenerate = false;
        // expand outwards until par*Delta - 2 turns negative, then polish the
        // two simple roots; brackets carry values of Delta - 2*par so that
        // their signs agree with the root function used by the polisher
        auto h_of = [&](double x) {
          FundamentalSolution f = integrate_fundamental(q, x, tol);
          return (f.y1 + f.dy2).real() - 2.0 * par;
        };
        double e_rf = par * e;  // value of Delta - 2*par at dot
        double half = have_local ? hr : theta;
        double step = 1.5 * half;
        double a = dot - step, ha = h_of(a);
        for (int k = 0; k < 60 && par * ha >= 0.0; ++k) {
          step *= 2.0;
          a = dot - step;
          ha = h_of(a);
        }
        step = 1.5 * half;
        double b = dot + step, hb = h_of(b);
        for (int k = 0; k < 60 && par * hb >= 0.0; ++k) {
          step *= 2.0;
          b = dot + step;
          hb = h_of(b);
        }
        Bracket left{a, dot, ha, e_rf};
        Bracket right{dot, b, e_rf, hb};
        pp.lo = newton_bracketed(q, tol, RootFn::delta, -2.0 * par, left, dot - half, nullptr);
        pp.hi = newton_bracketed(q, tol, RootFn::delta, -2.0 * par, right, dot + half, nullptr);
      } else {
        // below direct resolution: the critical point is the
        // translation-invariant centre; the local model contributes only the
        // half-width
        pp.near_degenerate = true;
        pp.lo = dot - hr;
        pp.hi = dot + hr;
      }
      out.pairs[i] = pp;
    });

    // lambda_0: Delta = 2 below the first critical point
    double lam_lo = s.lam.front();
    auto delta_of = [&](double x) {
      FundamentalSolution f = integrate_fundamental(q, x, tol);
      return (f.y1 + f.dy2).real() - 2.0;
    };
    double flo = delta_of(lam_lo);
    for (int k = 0; k < 40 && flo <= 0.0; ++k) {
      lam_lo -= 2.0 * (k + 1);
      flo = delta_of(lam_lo);
    }
    double dot1 = 0.5 * (crit[0].lo + crit[0].hi);
    // at the first gap, Delta <= -2 < 2
    Bracket b0{lam_lo, dot1, flo, delta_of(dot1)};
    if (!(b0.flo > 0.0 && b0.fhi < 0.0))
      throw SolverError("periodic: failed to bracket the lowest eigenvalue");
    out.lambda0 = newton_bracketed(q, tol, RootFn::delta, -2.0, b0, 0.0, nullptr);
    return out;
  }
  throw SolverError("periodic: could not isolate the expected number of gap centers");
}

PeriodicSpectrum periodic_eigs_complex(const Potential& q, int n_max, double tol) {
  PeriodicSpectrum base = periodic_eigs_real(real_part(q), n_max, tol);
  PeriodicSpectrum out;
  out.pairs.resize(n_max);

  auto delta_and_d = [&](cplx x) {
    FundamentalDerivatives fd = dlambda(q, x, tol);
    return std::pair<cplx, cplx>{fd.base.y1 + fd.base.dy2, fd.d_y1 + fd.d_dy2};
  };

  parallel_for_index(n_max, [&](int i) {
    int n = i + 1;
    double par = (n % 2 == 0) ? 1.0 : -1.0;
    // critical point of Delta' via Newton with finite-difference curvature
    cplx dot = 0.5 * (base.pairs[i].lo + base.pairs[i].hi);
    for (int it = 0; it < 30; ++it) {
      auto [d, dp] = delta_and_d(dot);
      (void)d;
      double h = std::max(1e-5, 1e-8 * std::abs(dot));
      auto [d2, dp2] = delta_and_d(dot + h);
      (void)d2;
      cplx step = -dp / ((dp2 - dp) / h);
      dot += step;
      if (std::abs(step) <= 0.5 * tol * std::max(1.0, std::abs(dot))) break;
    }
    double theta = split_threshold(tol, std::abs(dot));
    // half-width from the same local factorisation as in the real branch;
    // the split decision follows it rather than a noise-prone curvature fit
    cplx hr(0.0);
    bool have_local = false;
    try {
      cplx dmu(0.0), deta(0.0);
      cplx mu = newton_complex(q, tol, RootFn::dirichlet, 0.0, dot, &dmu);
      cplx eta = newton_complex(q, tol, RootFn::neumann, 0.0, dot, &deta);
      FundamentalDerivatives fdd = dlambda(q, dot, tol);
      cplx dd = fdd.base.y1 - fdd.base.dy2;
      cplx dhalf = 0.5 * (mu - eta);
      hr = std::sqrt(dhalf * dhalf - dd * dd / (4.0 * dmu * deta));
      have_local = true;
    } catch (const SolverError&) {
    }
    PeriodicPair pp{};
    if (!have_local || std::abs(hr) > theta) {
      pp.near_degenerate = false;
      cplx seed = have_local ? hr : cplx(theta);
      cplx r1 = dot + seed, r2 = dot - seed;
      // deflated Newton corrections, each root repelled by the other
      for (int it = 0; it < 6; ++it) {
        auto [f1, df1] = delta_and_d(r1);
        cplx g1 = par * f1 - 2.0;
        r1 -= g1 / (par * df1 - g1 / (r1 - r2));
        auto [f2, df2] = delta_and_d(r2);
        cplx g2 = par * f2 - 2.0;
        r2 -= g2 / (par * df2 - g2 / (r2 - r1));
      }
      pp.lo = lex_less(r1, r2) ? r1 : r2;
      pp.hi = lex_less(r1, r2) ? r2 : r1;
    } else {
      pp.near_degenerate = true;
      pp.lo = dot - hr;
      pp.hi = dot + hr;
      if (lex_less(pp.hi, pp.lo)) std::swap(pp.lo, pp.hi);
    }
    out.pairs[i] = pp;
  });

  out.lambda0 = newton_complex(q, tol, RootFn::delta, -2.0, base.lambda0);
  return out;
}

}  // namespace

PeriodicSpectrum periodic_eigs(const Potential& q, int n_max, double tol) {
  if (n_max < 1) throw std::invalid_argument("periodic_eigs: n_max must be >= 1");
  return q.is_real() ? periodic_eigs_real(q, n_max, tol) : periodic_eigs_complex(q, n_max, tol);
}

std::vector<FloquetEntry> floquet_exponents(const Potential& q, const std::vector<cplx>& mu,
                                            double tol) {
  std::vector<FloquetEntry> out(mu.size());
  bool real_q = q.is_real();
  parallel_for_index(static_cast<int>(mu.size()), [&](int i) {
    int n = i + 1;
    double par = (n % 2 == 0) ? 1.0 : -1.0;
    FundamentalSolution f = integrate_fundamental(q, mu[i], tol);
    cplx c1 = par * f.dy2;
    cplx c2 = par * f.y1;
    if (real_q && c1.real() <= 0.0)
      throw SolverError("floquet: (-1)^n y2'(1, mu_n) must be positive for real q");
    FloquetEntry e{};
    e.kappa = std::log(c1);
    e.mismatch = std::abs(e.kappa + std::log(c2));
    if (e.mismatch > 1e-8)
      throw SolverError("floquet: the two exponent expressions disagree (mismatch " +
                        std::to_string(e.mismatch) + ")");
    out[i] = e;
  });
  return out;
}

// ------------------------------------------------------------- galerkin

namespace {

// C(m) = int_0^1 q(x) cos(m pi x) dx for integer m >= 0.
cplx cos_integral(const Potential& q, int m) {
  if (m % 2 == 0) {
    int l = m / 2;
    if (l == 0) return 0.0;
    return 0.5 * (q.coeff(l) + q.coeff(-l));
  }
  cplx s = 0.0;
  for (const auto& [n, v] : q.coeffs())
    s += v * (1.0 / (2.0 * n + m) + 1.0 / (2.0 * n - m));
  return cplx(0.0, 1.0 / kPi) * s;
}

std::vector<cplx> eigs_of(const Eigen::MatrixXcd& H, bool hermitian, int count) {
  std::vector<cplx> ev;
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw SolverError("galerkin: eigensolver failed");
    for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i]);
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw SolverError("galerkin: eigensolver failed");
    for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i]);
    std::sort(ev.begin(), ev.end(), lex_less);
  }
  if (count > static_cast<int>(ev.size()))
    throw SolverError("galerkin: not enough modes for the requested count");
  ev.resize(count);
  return ev;
}

}  // namespace

std::vector<cplx> galerkin_oracle(const Potential& q, GalerkinBasis basis, int modes, int count) {
  if (modes < 4 || count < 1) throw std::invalid_argument("galerkin_oracle: bad sizes");
  bool herm = q.is_real();
  switch (basis) {
    case GalerkinBasis::dirichlet_sine: {
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(modes, modes);
      for (int j = 1; j <= modes; ++j)
        for (int k = 1; k <= modes; ++k) {
          cplx v = cos_integral(q, std::abs(j - k)) - cos_integral(q, j + k);
          if (j == k) v += sq(k * kPi);
          H(j - 1, k - 1) = v;
        }
      return eigs_of(H, herm, count);
    }
    case GalerkinBasis::neumann_cosine: {
      int dim = modes + 1;
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
      for (int k = 1; k <= modes; ++k) {
        cplx v = std::sqrt(2.0) * cos_integral(q, k);
        H(0, k) = v;
        H(k, 0) = v;
      }
      for (int j = 1; j <= modes; ++j)
        for (int k = 1; k <= modes; ++k) {
          cplx v = cos_integral(q, std::abs(j - k)) + cos_integral(q, j + k);
          if (j == k) v += sq(k * kPi);
          H(j, k) = v;
        }
      return eigs_of(H, herm, count);
    }
    case GalerkinBasis::periodic_exp: {
      int dim = 2 * modes + 1;
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
      for (int j = -modes; j <= modes; ++j)
        for (int k = -modes; k <= modes; ++k) {
          cplx v = q.coeff(j - k);
          if (j == k) v += sq(2.0 * kPi * k);
          H(j + modes, k + modes) = v;
        }
      return eigs_of(H, herm, count);
    }
    default: {  // antiperiodic_exp: waves e^{i pi (2k+1) x}, k = -modes..modes-1
      int dim = 2 * modes;
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
      for (int j = -modes; j < modes; ++j)
        for (int k = -modes; k < modes; ++k) {
          cplx v = q.coeff(j - k);
          if (j == k) v += sq(kPi * (2 * k + 1));
          H(j + modes, k + modes) = v;
        }
      return eigs_of(H, herm, count);
    }
  }
}

// ------------------------------------------------------------- assembly

SpectralTable build_table(const Potential& q, int n_max, double tol) {
  if (n_max < 1 || n_max > 256) throw std::invalid_argument("build_table: n_max outside [1, 256]");
  SpectralTable t;
  t.tol = tol;
  t.lexicographic = !q.is_real();

  std::vector<cplx> mu = dirichlet_eigs(q, n_max, tol);
  std::vector<cplx> eta = neumann_eigs(q, n_max, tol);
  PeriodicSpectrum per = periodic_eigs(q, n_max, tol);
  std::vector<FloquetEntry> kap = floquet_exponents(q, mu, tol);

  t.lambda0 = per.lambda0;
  t.eta0 = eta[0];
  t.rows.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    SpectralRow& r = t.rows[n - 1];
    r.n = n;
    r.lambda_lo = per.pairs[n - 1].lo;
    r.lambda_hi = per.pairs[n - 1].hi;
    r.mu = mu[n - 1];
    r.eta = eta[n];
    r.kappa = kap[n - 1].kappa;
    r.kappa_mismatch = kap[n - 1].mismatch;
    r.tau = 0.5 * (r.lambda_lo + r.lambda_hi);
    r.gap = r.lambda_hi - r.lambda_lo;
    r.near_degenerate = per.pairs[n - 1].near_degenerate;
  }

  if (q.is_real()) {
    // interlacing certificates, with slack for root tolerances
    auto slack = [&](cplx v) { return 1e3 * tol * std::max(1.0, std::abs(v)); };
    if (t.eta0.real() > t.lambda0.real() + slack(t.lambda0))
      throw SolverError("table: eta_0 <= lambda_0 violated");
    double prev_hi = t.lambda0.real();
    for (const SpectralRow& r : t.rows) {
      double lo = r.lambda_lo.real(), hi = r.lambda_hi.real();
      double eps = slack(r.lambda_hi);
      if (!(prev_hi < lo + eps) || !(lo <= hi + eps))
        throw SolverError("table: periodic eigenvalues out of order at n = " +
                          std::to_string(r.n));
      if (r.mu.real() < lo - eps || r.mu.real() > hi + eps)
        throw SolverError("table: mu_n outside its gap at n = " + std::to_string(r.n));
      if (r.eta.real() < lo - eps || r.eta.real() > hi + eps)
        throw SolverError("table: eta_n outside its gap at n = " + std::to_string(r.n));
      prev_hi = hi;
    }
  }
  return t;
}

std::string SpectralTable::to_csv() const {
  std::string s =
      "n,lambda_lo_re,lambda_lo_im,lambda_hi_re,lambda_hi_im,mu_re,mu_im,eta_re,eta_im,"
      "kappa_re,kappa_im,tau_re,tau_im,gap_re,gap_im\n";
  auto row = [&](int n, cplx lo, cplx hi, cplx mu, cplx eta, cplx kp, cplx tau, cplx gap) {
    s += std::to_string(n);
    for (cplx v : {lo, hi, mu, eta, kp, tau, gap}) {
      s += "," + fmt(v.real()) + "," + fmt(v.imag());
    }
    s += "\n";
  };
  // row 0 carries the two unpaired low eigenvalues
  row(0, lambda0, lambda0, cplx(0.0), eta0, cplx(0.0), cplx(0.0), cplx(0.0));
  for (const SpectralRow& r : rows)
    row(r.n, r.lambda_lo, r.lambda_hi, r.mu, r.eta, r.kappa, r.tau, r.gap);
  return s;
}

std::string SpectralTable::to_json(const Potential& q) const {
  nlohmann::ordered_json j;
  j["potential"] = nlohmann::ordered_json::parse(q.to_json());
  j["tol"] = tol;
  j["lexicographic"] = lexicographic;
  j["lambda0"] = {lambda0.real(), lambda0.imag()};
  j["eta0"] = {eta0.real(), eta0.imag()};
  j["rows"] = nlohmann::ordered_json::array();
  for (const SpectralRow& r : rows) {
    nlohmann::ordered_json e;
    e["n"] = r.n;
    e["lambda_lo"] = {r.lambda_lo.real(), r.lambda_lo.imag()};
    e["lambda_hi"] = {r.lambda_hi.real(), r.lambda_hi.imag()};
    e["mu"] = {r.mu.real(), r.mu.imag()};
    e["eta"] = {r.eta.real(), r.eta.imag()};
    e["kappa"] = {r.kappa.real(), r.kappa.imag()};
    e["tau"] = {r.tau.real(), r.tau.imag()};
    e["gap"] = {r.gap.real(), r.gap.imag()};
    e["near_degenerate"] = r.near_degenerate;
    e["kappa_mismatch"] = r.kappa_mismatch;
    j["rows"].push_back(e);
  }
  return j.dump(2);
}

}  // namespace hill
