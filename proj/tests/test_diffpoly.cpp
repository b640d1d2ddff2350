#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hill/diffpoly.hpp"

#include <cmath>

using namespace hill;

namespace {

ExactFourier exact_two_cos() {
  return {{1, ExactComplex(1)}, {-1, ExactComplex(1)}};
}
ExactFourier exact_cos_mix() {
  // cos(2 pi x) + 3/10 cos(4 pi x)
  ExactComplex h(BigRational(1, 2));
  ExactComplex t(BigRational(3, 20));
  return {{1, h}, {-1, h}, {2, t}, {-2, t}};
}
ExactFourier exact_sin() {
  return {{1, ExactComplex(0, BigRational(-1, 2))}, {-1, ExactComplex(0, BigRational(1, 2))}};
}

}  // namespace

TEST_CASE("first members of the recursion") {
  CHECK(sk(1) == DiffPolynomial::monomial(1, {0}));
  CHECK(sk(2) == DiffPolynomial::monomial(-1, {1}));
  DiffPolynomial s3 = DiffPolynomial::monomial(1, {2}) - DiffPolynomial::monomial(1, {0, 0});
  CHECK(sk(3) == s3);
  DiffPolynomial s4 = DiffPolynomial::monomial(-1, {3}) + DiffPolynomial::monomial(4, {0, 1});
  CHECK(sk(4) == s4);
}

TEST_CASE("pretty printer golden lines") {
  CHECK(sk_pretty(1) == "s_1 = q");
  CHECK(sk_pretty(2) == "s_2 = -q'");
  CHECK(sk_pretty(3) == "s_3 = q'' - q^2");
  CHECK(sk_pretty(4) == "s_4 = -q''' + 4*q*q'");
  CHECK(sk_pretty(5) == "s_5 = q^(4) - 6*q*q'' - 5*q'^2 + 2*q^3");
  CHECK(sk_pretty(6) == "s_6 = -q^(5) + 8*q*q''' + 18*q'*q'' - 16*q^2*q'");
}

TEST_CASE("isobaric homogeneity across the table") {
  // q has weight 1 and each x-derivative adds 1/2: s_k is homogeneous of
  // weight 1 + (k-1)/2, i.e. doubled weight k+1.
  for (int k = 1; k <= 12; ++k) {
    auto d = isobaric_degree_x2(sk(k));
    REQUIRE(d.has_value());
    CHECK(*d == k + 1);
  }
  DiffPolynomial mixed = DiffPolynomial::monomial(1, {0}) + DiffPolynomial::monomial(1, {1});
  CHECK_FALSE(isobaric_degree_x2(mixed).has_value());
}

TEST_CASE("leading split structure") {
  for (int k = 2; k <= 12; ++k) {
    LeadingSplit ls = leading_split(k);
    CHECK(ls.leading.orders == std::vector<int>{k - 1});
    CHECK(ls.leading.coeff == BigRational((k % 2 == 1) ? 1 : -1));
    for (const auto& m : ls.rest.terms()) {
      CHECK(m.orders.size() >= 2);
      for (int o : m.orders) CHECK(o <= k - 3);
    }
    // split reassembles the original polynomial
    DiffPolynomial whole = ls.rest + DiffPolynomial::monomial(ls.leading.coeff, ls.leading.orders);
    CHECK(whole == sk(k));
  }
}

TEST_CASE("depth limit") {
  CHECK_THROWS_AS(sk(13), DiffPolyError);
  CHECK_THROWS_AS(sk(0), DiffPolyError);
  CHECK(isobaric_degree_x2(sk(13, 16)).value() == 14);
}

TEST_CASE("density evaluation on 2cos(2pix)") {
  Potential q = parse_potential("2*cos(2*pi*x)");
  auto d1 = eval_density(sk(1), q);
  CHECK(d1.at(1) == cplx(1.0));
  CHECK(d1.at(-1) == cplx(1.0));
  CHECK(d1.count(0) == 0);

  // s_3 density = q'' - q^2 has coefficients -4pi^2 at +-1,
  // -1 at +-2 and -2 at 0.
  auto d3 = eval_density(sk(3), q);
  CHECK(d3.at(1).real() == doctest::Approx(-4.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(d3.at(2).real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(d3.at(0).real() == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(std::abs(d3.at(0).imag()) < 1e-16);
}

TEST_CASE("a_k values and parity") {
  Potential q = parse_potential("2*cos(2*pi*x)");
  CHECK(a_k(1, q) == cplx(0.0));  // zero mean
  CHECK(std::abs(a_k(2, q)) < 1e-16);
  CHECK(a_k(3, q).real() == doctest::Approx(-2.0).epsilon(1e-14));
  // a_5 = mean of q'^2 + 2 q^3 = 8 pi^2 for this potential
  CHECK(a_k(5, q).real() == doctest::Approx(8.0 * M_PI * M_PI).epsilon(1e-13));
  for (int even = 2; even <= 12; even += 2) CHECK(std::abs(a_k(even, q)) < 1e-10);
}

TEST_CASE("even a_k vanish in exact arithmetic") {
  for (const auto& qhat : {exact_two_cos(), exact_cos_mix(), exact_sin()}) {
    for (int even = 2; even <= 12; even += 2) {
      CAPTURE(even);
      CHECK(a_k_exact(even, qhat).is_zero());
    }
  }
  // complex (non-real) potential: still zero
  ExactFourier cx{{1, ExactComplex(1, BigRational(1, 3))}, {-2, ExactComplex(BigRational(2, 7))}};
  for (int even = 2; even <= 12; even += 2) CHECK(a_k_exact(even, cx).is_zero());
}

TEST_CASE("a_3 equals minus the mean of q^2, exactly") {
  // For each rational potential, a_3 = -sum qhat_n qhat_{-n}.
  {
    PiPoly v = a_k_exact(3, exact_two_cos());
    CHECK(v == PiPoly(0, ExactComplex(-2)));
  }
  {
    PiPoly v = a_k_exact(3, exact_cos_mix());
    CHECK(v == PiPoly(0, ExactComplex(BigRational(-109, 200))));
  }
  {
    PiPoly v = a_k_exact(3, exact_sin());
    CHECK(v == PiPoly(0, ExactComplex(BigRational(-1, 2))));
  }
  // exact a_5 for 2cos: 8 pi^2
  CHECK(a_k_exact(5, exact_two_cos()) == PiPoly(2, ExactComplex(8)));
}

TEST_CASE("a_k are translation invariant") {
  Potential q = parse_potential("sin(2*pi*x) + 0.3*cos(2*pi*2*x)");
  Potential t = q.translate(0.3);
  for (int k : {3, 5, 7, 9}) {
    cplx a = a_k(k, q), b = a_k(k, t);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("mean of a pure derivative monomial vanishes") {
  Potential q = parse_potential("sin(2*pi*x) + 0.5*sin(2*pi*2*x)");
  for (int o = 1; o <= 4; ++o) {
    auto d = eval_density(DiffPolynomial::monomial(1, {o}), q);
    CHECK(d.count(0) == 0);
  }
}

TEST_CASE("algebra consistency of dx and products") {
  // d/dx(q * q') = q'^2 + q * q''
  DiffPolynomial p = DiffPolynomial::monomial(1, {0, 1}).dx();
  DiffPolynomial expect = DiffPolynomial::monomial(1, {1, 1}) + DiffPolynomial::monomial(1, {0, 2});
  CHECK(p == expect);
  // density of a product is the convolution of densities: check on the mean
  Potential q = parse_potential("2*cos(2*pi*x)");
  auto d = eval_density(DiffPolynomial::monomial(1, {0}) * DiffPolynomial::monomial(1, {0}), q);
  CHECK(d.at(0).real() == doctest::Approx(2.0).epsilon(1e-15));
}
