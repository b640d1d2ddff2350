#pragma once

#include "hill/asymptotics.hpp"
#include "hill/potential.hpp"
#include "hill/spectra.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hill {

struct VerifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One scaled-residual stream per spectral quantity.
//   kappa         |2 pi n kappa_n - <q, sin>|            scaled by n^{N+1}
//   mu, eta, tau  |quantity - truncated expansion|       scaled by n^{N+1}
//   tau_minus_mu  |(tau - mu) - <q, cos>|                scaled by n^{N+1}
//   gap           |gap - 2 sqrt(qhat_n qhat_{-n})|       scaled by n^{N+1}
//   pair_real     worst edge vs m -+ |qhat_n| (real q)   scaled by n^{N+1}
//   pair_complex  |(lo - m)(hi - m) + qhat_n qhat_{-n}|  scaled by n^{2N+1}
enum class Check { kappa, mu, eta, tau, tau_minus_mu, gap, pair_real, pair_complex };

const char* check_name(Check c);

struct ResidualRow {
  int n;
  cplx computed;   // for pair_real the upper edge; for pair_complex the edge product
  cplx predicted;
  double residual;  // raw, before scaling
  double scaled;
  double floor;  // per-row numeric floor used for the at_floor flag
  bool at_floor;
};

struct ResidualReport {
  enum class Status { pass, fail, inconclusive };

  Check check;
  int N = 0;
  std::string potential;
  double tol = 0.0;
  int n_lo = 0, n_hi = 0;
  std::vector<ResidualRow> rows;

  double slope = 0.0;     // NaN when fewer than 3 points survive the floor
  int fit_points = 0;
  double max_scaled = 0.0;  // over rows above the floor
  double l2_scaled = 0.0;
  double cap = 0.0;
  double slope_gate = 0.0;
  bool floor_limited = false;  // every row sat below the numeric floor
  // With 1 or 2 resolvable rows followed only by at-floor rows, the drop from
  // the last resolvable residual to twice the next row's floor still bounds
  // the decay rate; slope then holds that certified bound instead of a fit.
  bool slope_certified = false;
  Status status = Status::inconclusive;

  std::string to_csv() const;
  std::string summary_json() const;
};

// Runs one residual stream over n in [n_lo, n_hi].  cap = 0 selects
// 10 * max(1, ||q||^2).  A precomputed table may be supplied to share the
// eigenvalue work across checks; it must cover n_hi at the same tolerance.
ResidualReport verify_check(const Potential& q, Check check, int N, int n_lo, int n_hi,
                            double tol = 1e-12, double cap = 0.0,
                            const SpectralTable* table = nullptr);

struct ScanResult {
  double max_scaled = 0.0;
  std::vector<ResidualReport> reports;
};

// Worst scaled residual across a family of potentials.
ScanResult uniformity_scan(const std::vector<Potential>& family, Check check, int N, int n_lo,
                           int n_hi, double tol = 1e-12, double cap = 0.0);

struct EvenSuiteRow {
  int n;
  double edge_dist;  // Hausdorff distance of {mu_n, eta_n} to the periodic pair
  double kappa_abs;
};

struct EvenSuiteReport {
  std::vector<EvenSuiteRow> rows;
  double max_edge_dist = 0.0;
  double max_kappa = 0.0;
  std::string to_csv() const;
};

// For even real potentials the Dirichlet and Neumann values exhaust the
// periodic pairs and the exponents vanish.
EvenSuiteReport even_potential_suite(const Potential& q, int n_max, double tol = 1e-12);

}  // namespace hill
