#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsp4lab/whittaker.hpp"

using namespace gsp4lab;

TEST_CASE("casselman-shalika values") {
  long p = 3;
  CHECK(cs_value(0, p) == lp_one(p));
  CHECK(cs_value(-1, p).is_zero());
  // n = 2: Q^2 (A^2 + 1 + A^{-2})
  LaurentExpr expect =
      LaurentExpr::monomial(Sym::A, 2, p, Rat::of(1, 3)) + lp_rat(Rat::of(1, 3), p) +
      LaurentExpr::monomial(Sym::A, -2, p, Rat::of(1, 3));
  CHECK(cs_value(2, p) == expect);
}

TEST_CASE("hecke three-term recursion as exact laurent identities") {
  // s_{n+1} = s_1 s_n - (1/p) s_{n-1}; the 1/p carries the Q^2 from
  // Q^{n+1} = Q^2 Q^{n-1}.
  for (long p : {2L, 3L, 5L}) {
    for (long n = 1; n <= 8; ++n) {
      LaurentExpr lhs = cs_value(n + 1, p);
      LaurentExpr rhs = cs_value(1, p) * cs_value(n, p) -
                        lp_rat(Rat(BigInt(1), BigInt(p)), p) * cs_value(n - 1, p);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("tempered bound |cs_n| <= (n+1) p^{-n/2}") {
  long p = 5;
  for (long n = 0; n <= 8; ++n) {
    for (int k = 0; k < 40; ++k) {
      double t = k * M_PI / 39.0;
      std::complex<double> v = cs_value_num(n, std::polar(1.0, t), p);
      CHECK(std::abs(v) <= (n + 1) * std::pow(p, -n / 2.0) + 1e-12);
    }
  }
}

TEST_CASE("spherical substitution table") {
  long p = 3;
  CHECK(spherical_substitution(LaurentExpr::monomial(Sym::Ww, 1, p)) == lp_one(p));
  CHECK(spherical_substitution(LaurentExpr::monomial(Sym::W1, 1, p)) == lp_one(p));
  CHECK(spherical_substitution(LaurentExpr::monomial(Sym::Wp, 1, p)) == cs_value(1, p));
  CHECK(spherical_substitution(LaurentExpr::monomial(Sym::Wp2, 1, p)) == cs_value(2, p));
  CHECK(spherical_substitution(LaurentExpr::monomial(Sym::Wpm1w, 1, p)).is_zero());
}

TEST_CASE("sp4 characters") {
  for (int i = 0; i < 20; ++i) {
    double t1 = 0.1 + i * 0.14, t2 = t1 + 0.3;
    CHECK(sp4_character(0, 0, t1, t2) == doctest::Approx(1.0).epsilon(1e-9));
    // defining 4-dim representation: eigenvalue sum
    CHECK(sp4_character(1, 0, t1, t2) ==
          doctest::Approx(2 * std::cos(t1) + 2 * std::cos(t2)).epsilon(1e-9));
  }
  CHECK(sp4_dimension(0, 0) == 1);
  CHECK(sp4_dimension(1, 0) == 4);
  CHECK(sp4_dimension(1, 1) == 5);
  CHECK(sp4_dimension(2, 0) == 10);
  for (long l1 = 0; l1 <= 3; ++l1)
    for (long l2 = 0; l2 <= l1; ++l2)
      CHECK(sp4_character(l1, l2, 0, 0) ==
            doctest::Approx(static_cast<double>(sp4_dimension(l1, l2))).epsilon(1e-4));
}

TEST_CASE("satake canonicalization") {
  double t1 = 2.8, t2 = 0.4;
  canonicalize_angles(t1, t2);
  CHECK(t1 <= t2);
  CHECK(t1 >= 0);
  CHECK(t2 <= M_PI);
  double u1 = -0.4, u2 = 2 * M_PI - 2.8;
  canonicalize_angles(u1, u2);
  CHECK(u1 == doctest::Approx(0.4));
  CHECK(u2 == doctest::Approx(2.8));
}

TEST_CASE("g_abc basics") {
  long p = 3;
  SatakePoint s = SatakePoint::tempered(0.7, 1.9);
  CHECK(std::abs(g_abc(0, 0, 0, s, p) - std::complex<double>(1, 0)) < 1e-12);
  // non-dominant coweight (b < c - b) vanishes
  CHECK(std::abs(g_abc(1, 0, 1, s, p)) == 0.0);
  CHECK(std::abs(g_abc(0, 0, 1, s, p)) == 0.0);
  CHECK_THROWS(g_abc(0, 1, 0, s, p));
  // (1,0,0) at alpha = beta = 1: dimension times the p-power p^{-2}
  SatakePoint triv = SatakePoint::tempered(0, 0);
  CHECK(std::abs(g_abc(1, 0, 0, triv, p) - std::complex<double>(4 * std::pow(3.0, -2.0), 0)) <
        1e-3);
  // Weyl invariance through canonicalization
  SatakePoint a = SatakePoint::tempered(1.1, 2.0);
  SatakePoint b = SatakePoint::tempered(2.0, 1.1);
  SatakePoint c = SatakePoint::tempered(1.1, -2.0);
  CHECK(std::abs(g_abc(2, 1, 0, a, p) - g_abc(2, 1, 0, b, p)) < 1e-12);
  CHECK(std::abs(g_abc(2, 1, 0, a, p) - g_abc(2, 1, 0, c, p)) < 1e-12);
}
