#pragma once

// Test-only oracles, deliberately independent of the library's integration
// route: a fixed-step 4th-order Magnus propagator built on closed-form 2x2
// traceless exponentials, and a plain bisection for Dirichlet roots.

#include "hill/odecore.hpp"
#include "hill/potential.hpp"

#include <cmath>
#include <complex>

namespace testor {

using hill::cplx;

struct Mat2 {
  cplx a, b, c, d;  // [[a, b], [c, d]]
  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend Mat2 operator+(const Mat2& m, const Mat2& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
  }
  friend Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
};

// exp(M) for traceless M: M^2 = Delta I with Delta = -det M.
inline Mat2 exp_traceless(const Mat2& m) {
  cplx delta = m.a * m.a + m.b * m.c;  // = -det for traceless m
  cplx w = std::sqrt(delta);
  cplx ch, shw;  // cosh(w), sinh(w)/w
  if (std::abs(w) < 1e-8) {
    ch = 1.0 + delta / 2.0;
    shw = 1.0 + delta / 6.0;
  } else {
    ch = std::cosh(w);
    shw = std::sinh(w) / w;
  }
  return {ch + shw * m.a, shw * m.b, shw * m.c, ch + shw * m.d};
}

// Monodromy-style propagation of (y, y') over [0, 1] for -y'' + qy = lambda y
// with a 4th-order two-point Magnus scheme.
inline Mat2 magnus_fundamental(const hill::Potential& q, cplx lambda, int steps = 4000) {
  Mat2 u{1.0, 0.0, 0.0, 1.0};
  double h = 1.0 / steps;
  const double g = std::sqrt(3.0) / 6.0;
  for (int i = 0; i < steps; ++i) {
    double x = i * h;
    cplx w1 = q.evaluate(x + (0.5 - g) * h) - lambda;
    cplx w2 = q.evaluate(x + (0.5 + g) * h) - lambda;
    Mat2 a1{0.0, 1.0, w1, 0.0}, a2{0.0, 1.0, w2, 0.0};
    Mat2 omega = (h / 2.0) * (a1 + a2);
    // commutator correction: -(sqrt(3)/12) h^2 [a1, a2]
    Mat2 comm = a1 * a2 + cplx(-1.0) * (a2 * a1);
    omega = omega + cplx(-std::sqrt(3.0) / 12.0 * h * h) * comm;
    u = exp_traceless(omega) * u;
  }
  return u;  // columns: (y1, y1'), (y2, y2')
}

// Bisection for the n-th Dirichlet eigenvalue, assuming |q| small enough that
// mu_n lies within +-(l1 norm + 1) of n^2 pi^2.
inline double dirichlet_bisect(const hill::Potential& q, int n, double tol = 1e-13) {
  double pad = q.l1_norm() + 1.0;
  double lo = n * n * M_PI * M_PI - pad, hi = n * n * M_PI * M_PI + pad;
  auto f = [&](double lam) { return hill::integrate_fundamental(q, lam, 1e-13).y2.real(); };
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace testor
