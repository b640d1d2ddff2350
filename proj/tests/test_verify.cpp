#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hill/verify.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace hill;

namespace {

constexpr double kPi = M_PI;

const std::vector<Check> kAllChecks = {Check::kappa,        Check::mu,       Check::eta,
                                       Check::tau,          Check::tau_minus_mu,
                                       Check::gap,          Check::pair_real,
                                       Check::pair_complex};

}  // namespace

TEST_CASE("zero potential: every stream resolves at the numeric floor") {
  Potential q = parse_potential("0");
  SpectralTable t = build_table(q, 16);
  for (Check c : kAllChecks) {
    ResidualReport rep = verify_check(q, c, 0, 6, 16, 1e-12, 0.0, &t);
    CHECK(rep.status == ResidualReport::Status::pass);
    CHECK(rep.floor_limited);
    CHECK(rep.max_scaled == 0.0);
    for (const auto& r : rep.rows) CHECK(r.at_floor);
  }
}

TEST_CASE("exponent stream decays fast for a band-limited potential") {
  Potential q = parse_potential("sin(2*pi*x) + 0.5*sin(4*pi*x)");
  SpectralTable t = build_table(q, 40);
  for (int N : {0, 1, 2}) {
    ResidualReport rep = verify_check(q, Check::kappa, N, 6, 40, 1e-12, 0.0, &t);
    CHECK(rep.status != ResidualReport::Status::fail);
    CHECK(rep.max_scaled <= rep.cap);
    if (rep.fit_points >= 3) CHECK(rep.slope <= -1.5);
  }
}

TEST_CASE("Dirichlet and Neumann streams against the truncated expansion") {
  Potential q = parse_potential("2*cos(2*pi*x)");
  SpectralTable t = build_table(q, 32);
  for (int N : {0, 1, 2}) {
    for (Check c : {Check::mu, Check::eta, Check::tau, Check::tau_minus_mu}) {
      ResidualReport rep = verify_check(q, c, N, 6, 32, 1e-12, 0.0, &t);
      CHECK(rep.status != ResidualReport::Status::fail);
      if (rep.fit_points >= 3) CHECK(rep.slope <= rep.slope_gate);
    }
  }

  // center correction shows up in the data: (mu_n + eta_n)/2 - n^2 pi^2 ~ c_2/n^2
  AsymptoticModel model(q, 2);
  const SpectralRow& r16 = t.rows[15];
  double got = (0.5 * (r16.mu + r16.eta)).real() - 256.0 * kPi * kPi;
  double want = model.c(2).real() / 256.0;
  CHECK(std::abs(got - want) <= 0.10 * std::abs(want));
}

TEST_CASE("pair streams: real edge form and complex product form") {
  Potential qr = parse_potential("2*cos(2*pi*x)");
  SpectralTable tr = build_table(qr, 32);
  for (int N : {0, 1}) {
    ResidualReport rep = verify_check(qr, Check::pair_real, N, 6, 32, 1e-12, 0.0, &tr);
    CHECK(rep.status != ResidualReport::Status::fail);
    ResidualReport gap = verify_check(qr, Check::gap, N, 6, 32, 1e-12, 0.0, &tr);
    CHECK(gap.status != ResidualReport::Status::fail);
  }

  Potential qc = parse_potential("2*cos(2*pi*x) + (0,0.05)*sin(2*pi*x)");
  SpectralTable tc = build_table(qc, 16);
  ResidualReport rep = verify_check(qc, Check::pair_complex, 0, 6, 16, 1e-12, 0.0, &tc);
  CHECK(rep.status != ResidualReport::Status::fail);
  if (rep.fit_points >= 3) CHECK(rep.slope <= rep.slope_gate);

  CHECK_THROWS_AS(verify_check(qc, Check::pair_real, 0, 6, 16, 1e-12, 0.0, &tc), VerifyError);
}

TEST_CASE("midpoint identity ties the three first-order streams together") {
  Potential q = parse_potential("cos(2*pi*x) + 0.5*sin(4*pi*x)");
  SpectralTable t = build_table(q, 20);
  AsymptoticModel model(q, 1);
  for (const SpectralRow& r : t.rows) {
    if (r.n < 6) continue;
    cplx lhs = (r.tau - r.mu) - q.pair_cos(r.n);
    cplx rhs = (r.tau - model.m(r.n)) - (r.mu - model.predict_mu(r.n));
    CHECK(std::abs(lhs - rhs) <= 1e-10);
    CHECK(r.tau == 0.5 * (r.lambda_lo + r.lambda_hi));
  }
}

TEST_CASE("uniformity scan over a scaled family") {
  std::vector<Potential> family;
  for (int k = 1; k <= 5; ++k) {
    double tscale = 0.2 * k;
    family.push_back(tscale * parse_potential("sin(2*pi*x)"));
  }
  ScanResult sc = uniformity_scan(family, Check::kappa, 0, 6, 16);
  REQUIRE(sc.reports.size() == 5);
  for (const auto& rep : sc.reports) {
    CHECK(rep.status != ResidualReport::Status::fail);
    CHECK(rep.max_scaled <= rep.cap);
  }
  CHECK(sc.max_scaled <= 10.0);
  CHECK_THROWS_AS(uniformity_scan({}, Check::kappa, 0, 6, 16), VerifyError);
}

TEST_CASE("even suite accepts even potentials and rejects the rest") {
  EvenSuiteReport rep = even_potential_suite(parse_potential("2*cos(2*pi*x)"), 16);
  CHECK(rep.max_edge_dist <= 1e-7);
  CHECK(rep.max_kappa <= 1e-9);
  CHECK(rep.rows.size() == 16);

  EvenSuiteReport rep2 =
      even_potential_suite(parse_potential("cos(2*pi*x) + 0.3*cos(4*pi*x)"), 16);
  CHECK(rep2.max_edge_dist <= 1e-9);
  CHECK(rep2.max_kappa <= 1e-9);

  CHECK_THROWS_AS(even_potential_suite(parse_potential("sin(2*pi*x)"), 8), VerifyError);
  CHECK_THROWS_AS(even_potential_suite(parse_potential("(0,0.1)*sin(2*pi*x)"), 8), VerifyError);

  std::string csv = rep.to_csv();
  CHECK(csv.rfind("n,edge_dist,kappa_abs\n", 0) == 0);
}

TEST_CASE("reports are deterministic and serializable") {
  Potential q = parse_potential("2*cos(2*pi*x)");
  ResidualReport a = verify_check(q, Check::mu, 1, 6, 12);
  ResidualReport b = verify_check(q, Check::mu, 1, 6, 12);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.summary_json() == b.summary_json());
  CHECK(a.to_csv().rfind("n,computed_re,", 0) == 0);
  CHECK(a.summary_json().find("\"check\": \"mu\"") != std::string::npos);
  CHECK(a.summary_json().find("\"status\"") != std::string::npos);
}

TEST_CASE("window and table validation") {
  Potential q = parse_potential("cos(2*pi*x)");
  CHECK_THROWS_AS(verify_check(q, Check::mu, 0, 0, 8), VerifyError);
  CHECK_THROWS_AS(verify_check(q, Check::mu, 0, 8, 6), VerifyError);
  SpectralTable t = build_table(q, 8);
  CHECK_THROWS_AS(verify_check(q, Check::mu, 0, 6, 12, 1e-12, 0.0, &t), VerifyError);
  CHECK_THROWS_AS(verify_check(q, Check::mu, 0, 6, 8, 1e-10, 0.0, &t), VerifyError);
}
