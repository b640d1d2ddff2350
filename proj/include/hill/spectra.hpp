#pragma once

#include "hill/odecore.hpp"
#include "hill/potential.hpp"

#include <string>
#include <vector>

namespace hill {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dirichlet eigenvalues mu_1 .. mu_n_max (roots of y2(1, .)).
std::vector<cplx> dirichlet_eigs(const Potential& q, int n_max, double tol = 1e-12);

// Neumann eigenvalues eta_0 .. eta_n_max (roots of y1'(1, .)).
std::vector<cplx> neumann_eigs(const Potential& q, int n_max, double tol = 1e-12);

struct PeriodicPair {
  cplx lo, hi;
  bool near_degenerate;  // reported from the local quadratic model of Delta -+ 2
};
struct PeriodicSpectrum {
  cplx lambda0;
  std::vector<PeriodicPair> pairs;  // index n-1 holds {lambda_{2n-1}, lambda_{2n}}
};
// Periodic (Delta = 2, n even) and antiperiodic (Delta = -2, n odd) pairs.
PeriodicSpectrum periodic_eigs(const Potential& q, int n_max, double tol = 1e-12);

struct FloquetEntry {
  cplx kappa;
  double mismatch;  // two-expression consistency |kappa + log((-1)^n y1(1, mu_n))|
};
// kappa_n = log((-1)^n y2'(1, mu_n)), principal branch; mu as labeled input.
std::vector<FloquetEntry> floquet_exponents(const Potential& q, const std::vector<cplx>& mu,
                                            double tol = 1e-12);

enum class GalerkinBasis { dirichlet_sine, neumann_cosine, periodic_exp, antiperiodic_exp };

// Dense matrix eigenvalues in the requested basis, sorted ascending (real q)
// or lexicographically (complex q); the first `count` are returned.
std::vector<cplx> galerkin_oracle(const Potential& q, GalerkinBasis basis, int modes, int count);

struct SpectralRow {
  int n;
  cplx lambda_lo, lambda_hi;
  cplx mu, eta;
  cplx kappa;
  cplx tau, gap;
  bool near_degenerate;
  double kappa_mismatch;
};

struct SpectralTable {
  cplx lambda0;
  cplx eta0;
  std::vector<SpectralRow> rows;
  double tol = 0.0;
  bool lexicographic = false;  // complex labeling order was used

  std::string to_csv() const;
  std::string to_json(const Potential& q) const;
};

SpectralTable build_table(const Potential& q, int n_max, double tol = 1e-12);

}  // namespace hill
