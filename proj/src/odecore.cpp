#include "hill/odecore.hpp"

#include "hill/diffpoly.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

namespace hill {

namespace {

namespace ode = boost::numeric::odeint;

template <typename C, std::size_t K, typename Sys>
void drive(Sys&& sys, std::array<C, K>& y, double x1, double tol) {
  using state = std::array<C, K>;
  using real = typename C::value_type;
  using stepper = ode::runge_kutta_fehlberg78<state, real, state, real>;
  auto ctrl = ode::make_controlled<stepper>(tol, tol);
  real x = 0.0;
  real dx = 0.05;
  int rejects = 0;
  while (x < x1) {
    real h = std::min<real>(dx, x1 - x);
    auto res = ctrl.try_step(sys, y, x, h);
    if (res == ode::success) {
      dx = h;
      rejects = 0;
    } else {
      dx = h;
      if (++rejects > 80 || h < 1e-14) throw IntegrationError((double)x);
    }
  }
}

bool use_phase_form(cplx lambda) {
  if (lambda.real() <= kRescaleLambda) return false;
  cplx nu = std::sqrt(lambda);
  return std::abs(nu.imag()) < 5.0;
}

// Direct (y, y') integration of the pair, optionally with the variational
// (d/dlambda) block attached.  Returns the Wronskian defect of the pair.
template <bool WithDeriv>
double integrate_direct(const Potential& q, cplx lambda, double tol,
                        std::array<cplx, WithDeriv ? 8 : 4>& out) {
  auto sys = [&q, lambda](const auto& u, auto& du, double x) {
    cplx w = q.evaluate(x) - lambda;
    du[0] = u[1];
    du[1] = w * u[0];
    du[2] = u[3];
    du[3] = w * u[2];
    if constexpr (WithDeriv) {
      du[4] = u[5];
      du[5] = w * u[4] - u[0];
      du[6] = u[7];
      du[7] = w * u[6] - u[2];
    }
  };
  out.fill(cplx(0.0));
  out[0] = 1.0;
  out[3] = 1.0;
  drive(sys, out, 1.0, tol);
  return std::abs(out[0] * out[3] - out[1] * out[2] - 1.0);
}

// Phase-modulated form: y = c(x) cos(nu x) + s(x) sin(nu x)/nu with slowly
// varying (c, s); removes the lambda-scale stiffness for large real lambda.
// State layout per solution: (a, b) with (y, y') = Phi(x) (a, b),
// Phi = [[cos, sin/nu], [-nu sin, cos]].  det Phi = 1, so the Wronskian
// defect is read off the phase variables before mapping back.
// Internals run in long double: the accumulated phase ~ sqrt(lambda) amplifies
// relative rounding into absolute endpoint error, which double cannot hold
// below the eigenvalue certificates at the top of the lambda range.
template <bool WithDeriv>
double integrate_phase(const Potential& q, cplx lambda, double tol,
                       std::array<cplx, WithDeriv ? 8 : 4>& out) {
  using lcplx = std::complex<long double>;
  const lcplx nu = std::sqrt(lcplx(lambda.real(), lambda.imag()));
  // the map back to (y, y') amplifies (a, b) error by |nu|; compensate in the
  // controller target, floored well above long double roundoff
  tol = std::max(tol / (double)std::abs(nu), 1e-17);
  auto sys = [&q, nu](const auto& u, auto& du, long double x) {
    cplx qd = q.evaluate((double)x);
    lcplx qx(qd.real(), qd.imag());
    lcplx s = std::sin(nu * x), c = std::cos(nu * x);
    lcplx m11 = -qx * s * c / nu;
    lcplx m12 = -qx * s * s / (nu * nu);
    lcplx m21 = qx * c * c;
    lcplx m22 = qx * s * c / nu;
    du[0] = m11 * u[0] + m12 * u[1];
    du[1] = m21 * u[0] + m22 * u[1];
    du[2] = m11 * u[2] + m12 * u[3];
    du[3] = m21 * u[2] + m22 * u[3];
    if constexpr (WithDeriv) {
      lcplx ya = c * u[0] + s / nu * u[1];
      lcplx yb = c * u[2] + s / nu * u[3];
      du[4] = m11 * u[4] + m12 * u[5] + s / nu * ya;
      du[5] = m21 * u[4] + m22 * u[5] - c * ya;
      du[6] = m11 * u[6] + m12 * u[7] + s / nu * yb;
      du[7] = m21 * u[6] + m22 * u[7] - c * yb;
    }
  };
  std::array<lcplx, WithDeriv ? 8 : 4> w;
  w.fill(lcplx(0.0));
  w[0] = 1.0;
  w[3] = 1.0;
  drive(sys, w, 1.0, tol);
  double defect = (double)std::abs(w[0] * w[3] - w[1] * w[2] - (long double)1.0);
  // map back to (y, y') at x = 1
  lcplx s = std::sin(nu), c = std::cos(nu);
  auto to_phys = [&](lcplx a, lcplx b, cplx& y, cplx& dy) {
    lcplx yv = c * a + s / nu * b;
    lcplx dyv = -nu * s * a + c * b;
    y = cplx((double)yv.real(), (double)yv.imag());
    dy = cplx((double)dyv.real(), (double)dyv.imag());
  };
  to_phys(w[0], w[1], out[0], out[1]);
  to_phys(w[2], w[3], out[2], out[3]);
  if constexpr (WithDeriv) {
    to_phys(w[4], w[5], out[4], out[5]);
    to_phys(w[6], w[7], out[6], out[7]);
  }
  return defect;
}

double check_tol(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6))
    throw std::invalid_argument("integration tolerance outside [1e-14, 1e-6]");
  return tol;
}

// Requested tolerances are met with headroom; the controller runs tighter.
double internal_tol(double tol) { return std::max(tol * 1e-2, 1e-16); }

}  // namespace

FundamentalSolution integrate_fundamental(const Potential& q, cplx lambda, double tol) {
  check_tol(tol);
  FundamentalSolution f{};
  f.tol = tol;
  f.rescaled = use_phase_form(lambda);
  std::array<cplx, 4> u;
  double defect = f.rescaled ? integrate_phase<false>(q, lambda, internal_tol(tol), u)
                             : integrate_direct<false>(q, lambda, internal_tol(tol), u);
  f.y1 = u[0];
  f.dy1 = u[1];
  f.y2 = u[2];
  f.dy2 = u[3];
  f.wronskian_defect = defect;
  return f;
}

cplx discriminant(const Potential& q, cplx lambda, double tol) {
  FundamentalSolution f = integrate_fundamental(q, lambda, tol);
  return f.y1 + f.dy2;
}

FundamentalDerivatives dlambda(const Potential& q, cplx lambda, double tol) {
  check_tol(tol);
  FundamentalDerivatives d{};
  d.base.tol = tol;
  d.base.rescaled = use_phase_form(lambda);
  std::array<cplx, 8> u;
  double defect = d.base.rescaled ? integrate_phase<true>(q, lambda, internal_tol(tol), u)
                                  : integrate_direct<true>(q, lambda, internal_tol(tol), u);
  d.base.y1 = u[0];
  d.base.dy1 = u[1];
  d.base.y2 = u[2];
  d.base.dy2 = u[3];
  d.base.wronskian_defect = defect;
  d.d_y1 = u[4];
  d.d_dy1 = u[5];
  d.d_y2 = u[6];
  d.d_dy2 = u[7];
  return d;
}

InhomSolution integrate_inhomogeneous(const Potential& q, cplx lambda,
                                      const std::function<cplx(double)>& g, double tol) {
  check_tol(tol);
  std::array<cplx, 2> u{cplx(0.0), cplx(0.0)};
  auto sys = [&](const auto& v, auto& dv, double x) {
    dv[0] = v[1];
    dv[1] = (q.evaluate(x) - lambda) * v[0] - g(x);
  };
  drive(sys, u, 1.0, internal_tol(tol));
  return {u[0], u[1]};
}

WkbSolution wkb(const Potential& q, int N, cplx nu, double tol) {
  if (N < 0) throw std::invalid_argument("wkb: order must be >= 0");
  if (nu == cplx(0.0)) throw std::invalid_argument("wkb: nu must be nonzero");
  check_tol(tol);

  cplx lambda = nu * nu;
  FundamentalSolution f = integrate_fundamental(q, lambda, tol);

  cplx two_i_nu = 2.0 * cplx(0.0, 1.0) * nu;
  cplx alpha0 = cplx(0.0, 1.0) * nu;
  cplx phase = cplx(0.0, 1.0) * nu;  // int_0^1 alpha_N = i nu + sum a_k / (2 i nu)^k
  cplx p = 1.0;
  for (int k = 1; k <= N; ++k) {
    p /= two_i_nu;
    auto dens = eval_density(sk(k), q);
    cplx sk0 = 0.0;
    for (const auto& [m, v] : dens) sk0 += v;
    alpha0 += sk0 * p;
    auto it = dens.find(0);
    if (it != dens.end()) phase += it->second * p;
  }

  WkbSolution w{};
  w.N = N;
  w.nu = nu;
  w.z_1 = f.y1 + alpha0 * f.y2;
  w.dz_1 = f.dy1 + alpha0 * f.dy2;
  w.w_1 = std::exp(phase);
  cplx scale = std::pow(two_i_nu, N + 1);
  w.r_1 = scale * (w.z_1 - w.w_1);
  w.dr_1 = scale * (w.dz_1 - alpha0 * w.w_1);
  return w;
}

RemainderCheck remainder_asymptotics_check(const Potential& q, int N, int sign,
                                           const std::map<int, double>& mu, double tol) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("remainder_asymptotics_check: sign must be +-1");
  cplx aN1 = a_k(N + 1, q);
  cplx aN2 = a_k(N + 2, q);
  RemainderCheck out;
  for (const auto& [n, mun] : mu) {
    if (n < 1 || mun <= 0.0)
      throw std::invalid_argument("remainder_asymptotics_check: need n >= 1 and mu_n > 0");
    double nu_n = std::sqrt(mun);
    WkbSolution w = wkb(q, N, double(sign) * nu_n, tol);
    double par = (n % 2 == 0) ? 1.0 : -1.0;
    cplx i2npi = cplx(0.0, sign * 2.0 * M_PI * n);
    // int_0^1 q e^{ s 2 pi i n x } dx picks the Fourier coefficient at -s n
    cplx qint = q.coeff(-sign * n);
    cplx pred_r = par * aN1 - par * std::pow(i2npi, N) * qint + double(sign) * par * aN2 / (cplx(0.0, 2.0 * M_PI * n));
    cplx inpi = cplx(0.0, sign * M_PI * n);
    cplx pred_dr = inpi * par * (aN1 + std::pow(i2npi, N) * qint) + par * 0.5 * aN2;
    out.r[n] = w.r_1;
    out.r_pred[n] = pred_r;
    out.dr[n] = w.dr_1;
    out.dr_pred[n] = pred_dr;
    out.r_dev[n] = n * std::abs(w.r_1 - pred_r);
    out.dr_dev[n] = std::abs(w.dr_1 - pred_dr);
  }
  return out;
}

}  // namespace hill
