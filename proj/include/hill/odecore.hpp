#pragma once

#include "hill/potential.hpp"

#include <functional>
#include <map>
#include <vector>

namespace hill {

struct IntegrationError : std::runtime_error {
  double x;
  explicit IntegrationError(double where)
      : std::runtime_error("integration step size underflow at x = " + std::to_string(where)),
        x(where) {}
};

// Fundamental pair of -y'' + q y = lambda y at x = 1:
// y1(0) = 1, y1'(0) = 0;  y2(0) = 0, y2'(0) = 1.
struct FundamentalSolution {
  cplx y1, dy1, y2, dy2;
  double wronskian_defect;  // |y1 dy2 - dy1 y2 - 1|
  double tol;
  bool rescaled;  // integrated in the trigonometric-phase variables
};

// Threshold above which the phase-modulated (variation-of-constants around
// the free cos/sin pair) formulation is used.
inline constexpr double kRescaleLambda = 1e4;

FundamentalSolution integrate_fundamental(const Potential& q, cplx lambda, double tol = 1e-12);

// Delta(lambda) = y1(1) + y2'(1)
cplx discriminant(const Potential& q, cplx lambda, double tol = 1e-12);

// Fundamental pair together with lambda-derivatives (variational system).
struct FundamentalDerivatives {
  FundamentalSolution base;
  cplx d_y1, d_dy1, d_y2, d_dy2;
};
FundamentalDerivatives dlambda(const Potential& q, cplx lambda, double tol = 1e-12);

// x = 1 values of  -r'' + q r - lambda r = g,  r(0) = r'(0) = 0.
struct InhomSolution {
  cplx r, dr;
};
InhomSolution integrate_inhomogeneous(const Potential& q, cplx lambda,
                                      const std::function<cplx(double)>& g, double tol = 1e-12);

// Formal phase alpha_N(x, nu) = i nu + sum_{k=1}^N s_k(x) / (2 i nu)^k and the
// induced comparison pair: z_N matches w_N = exp(int_0^x alpha_N) to order
// (2 i nu)^{-(N+1)}; r_N is the rescaled defect.
struct WkbSolution {
  int N;
  cplx nu;
  cplx z_1, dz_1;  // z_N(1), z_N'(1)
  cplx w_1;        // w_N(1); w_N'(1) = alpha_N(0) w_N(1) by periodicity
  cplx r_1, dr_1;
};
WkbSolution wkb(const Potential& q, int N, cplx nu, double tol = 1e-12);

// Large-n predictions for r_N(1, s nu_n) and r_N'(1, s nu_n) at nu_n =
// sqrt(mu_n), s = +-1, and the scaled deviations of the computed values.
struct RemainderCheck {
  std::map<int, cplx> r, r_pred;     // r_N(1, s nu_n) and its prediction
  std::map<int, cplx> dr, dr_pred;
  std::map<int, double> r_dev;   // n * |r_N(1, s nu_n) - prediction|
  std::map<int, double> dr_dev;  // |r_N'(1, s nu_n) - prediction|
};
RemainderCheck remainder_asymptotics_check(const Potential& q, int N, int sign,
                                           const std::map<int, double>& mu,
                                           double tol = 1e-12);

}  // namespace hill
