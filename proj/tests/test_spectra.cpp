#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hill/potential.hpp"
#include "hill/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace hill;

namespace {

constexpr double kPi = M_PI;

double lat(int n) { return n * n * kPi * kPi; }

double rel(cplx got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// greatest pairing distance between two 2-point sets
double set_dist2(cplx a1, cplx a2, cplx b1, cplx b2) {
  double direct = std::max(std::abs(a1 - b1), std::abs(a2 - b2));
  double crossed = std::max(std::abs(a1 - b2), std::abs(a2 - b1));
  return std::min(direct, crossed);
}

}  // namespace

TEST_CASE("zero potential: all spectra sit on the lattice n^2 pi^2") {
  Potential q = parse_potential("0");
  const int K = 12;

  auto mu = dirichlet_eigs(q, K);
  auto eta = neumann_eigs(q, K);
  auto per = periodic_eigs(q, K);

  REQUIRE(mu.size() == K);
  REQUIRE(eta.size() == K + 1);
  REQUIRE(per.pairs.size() == K);

  CHECK(std::abs(per.lambda0) <= 1e-9);
  CHECK(std::abs(eta[0]) <= 1e-9);
  for (int n = 1; n <= K; ++n) {
    CHECK(rel(mu[n - 1], lat(n)) <= 1e-10);
    CHECK(rel(eta[n], lat(n)) <= 1e-10);
    CHECK(rel(per.pairs[n - 1].lo, lat(n)) <= 1e-10);
    CHECK(rel(per.pairs[n - 1].hi, lat(n)) <= 1e-10);
    CHECK(per.pairs[n - 1].near_degenerate);
    CHECK(mu[n - 1].imag() == 0.0);
  }

  auto kap = floquet_exponents(q, mu);
  for (const auto& e : kap) {
    CHECK(std::abs(e.kappa) <= 1e-8);
    CHECK(e.mismatch <= 1e-8);
  }
}

TEST_CASE("dense-matrix oracle agrees on all four boundary conditions") {
  Potential q = parse_potential("2*cos(2*pi*x)");
  const int K = 8;

  auto mu = dirichlet_eigs(q, K);
  auto mu_o = galerkin_oracle(q, GalerkinBasis::dirichlet_sine, 64, K);
  for (int i = 0; i < K; ++i)
    CHECK(std::abs(mu[i] - mu_o[i]) <= 1e-7 * std::max(1.0, std::abs(mu_o[i])));

  auto eta = neumann_eigs(q, K);
  auto eta_o = galerkin_oracle(q, GalerkinBasis::neumann_cosine, 64, K + 1);
  for (int i = 0; i <= K; ++i)
    CHECK(std::abs(eta[i] - eta_o[i]) <= 1e-7 * std::max(1.0, std::abs(eta_o[i])));

  auto per = periodic_eigs(q, K);
  std::vector<cplx> even = {per.lambda0};
  std::vector<cplx> odd;
  for (int n = 1; n <= K; ++n) {
    auto& p = per.pairs[n - 1];
    (n % 2 == 0 ? even : odd).insert((n % 2 == 0 ? even : odd).end(), {p.lo, p.hi});
  }
  auto even_o = galerkin_oracle(q, GalerkinBasis::periodic_exp, 64, static_cast<int>(even.size()));
  auto odd_o =
      galerkin_oracle(q, GalerkinBasis::antiperiodic_exp, 64, static_cast<int>(odd.size()));
  for (std::size_t i = 0; i < even.size(); ++i)
    CHECK(std::abs(even[i] - even_o[i]) <= 1e-7 * std::max(1.0, std::abs(even_o[i])));
  for (std::size_t i = 0; i < odd.size(); ++i)
    CHECK(std::abs(odd[i] - odd_o[i]) <= 1e-7 * std::max(1.0, std::abs(odd_o[i])));
}

TEST_CASE("oracle self-convergence in the basis size") {
  Potential q = parse_potential("cos(2*pi*x) + 0.3*cos(4*pi*x)");
  auto a = galerkin_oracle(q, GalerkinBasis::periodic_exp, 48, 9);
  auto b = galerkin_oracle(q, GalerkinBasis::periodic_exp, 96, 9);
  for (int i = 0; i < 9; ++i)
    CHECK(std::abs(a[i] - b[i]) <= 1e-9 * std::max(1.0, std::abs(b[i])));
}

TEST_CASE("even potential: gap edges coincide with Dirichlet and Neumann values") {
  Potential q = parse_potential("2*cos(2*pi*x)");
  const int K = 6;
  auto mu = dirichlet_eigs(q, K);
  auto eta = neumann_eigs(q, K);
  auto per = periodic_eigs(q, K);
  for (int n = 1; n <= K; ++n) {
    double scale = std::max(1.0, std::abs(per.pairs[n - 1].hi));
    CHECK(set_dist2(per.pairs[n - 1].lo, per.pairs[n - 1].hi, mu[n - 1], eta[n]) <=
          1e-9 * scale);
  }
  // low gaps are genuinely open and resolved directly
  CHECK_FALSE(per.pairs[0].near_degenerate);
  CHECK_FALSE(per.pairs[1].near_degenerate);
  CHECK(std::abs(per.pairs[0].hi - per.pairs[0].lo) > 1.0);
}

TEST_CASE("periodic spectrum is invariant under translation, Dirichlet is not") {
  Potential q = parse_potential("cos(2*pi*x) + 0.5*sin(4*pi*x)");
  Potential qt = q.translate(0.3);
  const int K = 6;
  auto pa = periodic_eigs(q, K);
  auto pb = periodic_eigs(qt, K);
  CHECK(std::abs(pa.lambda0 - pb.lambda0) <= 1e-9 * std::max(1.0, std::abs(pa.lambda0)));
  for (int n = 1; n <= K; ++n) {
    double scale = std::max(1.0, std::abs(pa.pairs[n - 1].hi));
    CHECK(std::abs(pa.pairs[n - 1].lo - pb.pairs[n - 1].lo) <= 1e-9 * scale);
    CHECK(std::abs(pa.pairs[n - 1].hi - pb.pairs[n - 1].hi) <= 1e-9 * scale);
  }
  auto ma = dirichlet_eigs(q, 2);
  auto mb = dirichlet_eigs(qt, 2);
  CHECK(std::abs(ma[1] - mb[1]) > 1e-4);
}

TEST_CASE("assembled table: interlacing holds and certificates are recorded") {
  Potential q = parse_potential("cos(2*pi*x) + 0.5*sin(4*pi*x)");
  SpectralTable t = build_table(q, 8);
  REQUIRE(t.rows.size() == 8);
  CHECK_FALSE(t.lexicographic);
  CHECK(t.eta0.real() <= t.lambda0.real() + 1e-9);
  double prev = t.lambda0.real();
  for (const auto& r : t.rows) {
    CHECK(r.kappa_mismatch <= 1e-8);
    CHECK(std::abs(r.kappa.imag()) <= 1e-8);
    CHECK(r.lambda_lo.real() >= prev - 1e-7);
    CHECK(r.tau == 0.5 * (r.lambda_lo + r.lambda_hi));
    CHECK(r.gap == r.lambda_hi - r.lambda_lo);
    prev = r.lambda_hi.real();
  }
  // high harmonics collapse below the direct splitting resolution
  CHECK(t.rows[7].near_degenerate);
}

TEST_CASE("complex potential: continuation tracks the dense oracle") {
  Potential q = parse_potential("2*cos(2*pi*x) + (0,0.05)*sin(2*pi*x)");
  REQUIRE_FALSE(q.is_real());
  const int K = 5;

  auto mu = dirichlet_eigs(q, K);
  auto mu_o = galerkin_oracle(q, GalerkinBasis::dirichlet_sine, 48, K);
  for (int i = 0; i < K; ++i)
    CHECK(std::abs(mu[i] - mu_o[i]) <= 1e-7 * std::max(1.0, std::abs(mu_o[i])));

  auto per = periodic_eigs(q, 4);
  std::vector<cplx> even = {per.lambda0, per.pairs[1].lo, per.pairs[1].hi, per.pairs[3].lo,
                            per.pairs[3].hi};
  std::vector<cplx> odd = {per.pairs[0].lo, per.pairs[0].hi, per.pairs[2].lo, per.pairs[2].hi};
  auto even_o = galerkin_oracle(q, GalerkinBasis::periodic_exp, 48, 5);
  auto odd_o = galerkin_oracle(q, GalerkinBasis::antiperiodic_exp, 48, 4);
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(even[i] - even_o[i]) <= 1e-6 * std::max(1.0, std::abs(even_o[i])));
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(odd[i] - odd_o[i]) <= 1e-6 * std::max(1.0, std::abs(odd_o[i])));

  SpectralTable t = build_table(q, 4);
  CHECK(t.lexicographic);
}

TEST_CASE("table serialisation is deterministic and carries the unpaired row") {
  Potential q = parse_potential("cos(2*pi*x) + 0.5*sin(4*pi*x)");
  SpectralTable t1 = build_table(q, 5);
  SpectralTable t2 = build_table(q, 5);
  std::string csv1 = t1.to_csv();
  CHECK(csv1 == t2.to_csv());
  CHECK(t1.to_json(q) == t2.to_json(q));

  // header plus the n = 0 row plus five harmonic rows
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 7);
  CHECK(csv1.rfind("n,lambda_lo_re,", 0) == 0);
  std::size_t p = csv1.find('\n') + 1;
  CHECK(csv1.compare(p, 2, "0,") == 0);

  auto j = t1.to_json(q);
  CHECK(j.find("\"near_degenerate\"") != std::string::npos);
  CHECK(j.find("\"rows\"") != std::string::npos);
}

TEST_CASE("argument validation") {
  Potential q = parse_potential("cos(2*pi*x)");
  CHECK_THROWS_AS(dirichlet_eigs(q, 0), std::invalid_argument);
  CHECK_THROWS_AS(neumann_eigs(q, -1), std::invalid_argument);
  CHECK_THROWS_AS(periodic_eigs(q, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_table(q, 300), std::invalid_argument);
  CHECK_THROWS_AS(galerkin_oracle(q, GalerkinBasis::dirichlet_sine, 2, 1), std::invalid_argument);
}
