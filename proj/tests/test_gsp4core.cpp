#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsp4lab/fp.hpp"
#include "gsp4lab/gmat.hpp"
#include "gsp4lab/iwasawa.hpp"

using namespace gsp4lab;

namespace {

Rat rnd_rat(std::mt19937_64& rng) {
  long n = static_cast<long>(rng() % 41) - 20;
  long d = static_cast<long>(rng() % 9) + 1;
  return Rat(BigInt(n), BigInt(d));
}

Rat rnd_int(std::mt19937_64& rng, long lo, long hi) {
  return Rat(lo + static_cast<long>(rng() % (hi - lo + 1)));
}

Rat rnd_unit(std::mt19937_64& rng, long p) {
  long u;
  do
    u = static_cast<long>(rng() % 50) + 1;
  while (u % p == 0);
  return Rat(u);
}

// Random element of GSp4(Z_p): product of integral generators.
QMat rnd_k(std::mt19937_64& rng, long p) {
  QMat g = QMat::identity();
  for (int i = 0; i < 8; ++i) {
    switch (rng() % 7) {
      case 0: g = g * gen_s1(); break;
      case 1: g = g * gen_s2(); break;
      case 2: {
        QMat m = QMat::identity();
        m(0, 1) = rnd_int(rng, -4, 4);
        m(3, 2) = -m(0, 1);
        g = g * m;
        break;
      }
      case 3: {
        QMat m = QMat::identity();
        m(1, 3) = rnd_int(rng, -4, 4);
        g = g * m;
        break;
      }
      case 4: {
        QMat m = QMat::identity();
        m(0, 3) = rnd_int(rng, -4, 4);
        m(1, 2) = m(0, 3);
        g = g * m;
        break;
      }
      case 5: {
        QMat m = QMat::identity();
        m(1, 0) = rnd_int(rng, -4, 4);
        m(2, 3) = -m(1, 0);
        g = g * m;
        break;
      }
      default: {
        QMat m;
        m(0, 0) = rnd_unit(rng, p);
        m(1, 1) = rnd_unit(rng, p);
        Rat a3 = rnd_unit(rng, p);
        m(2, 2) = a3 / m(0, 0);
        m(3, 3) = a3 / m(1, 1);
        g = g * m;
        break;
      }
    }
  }
  return g;
}

QMat rnd_torus(std::mt19937_64& rng, long p) {
  long e1 = static_cast<long>(rng() % 7) - 3;
  long e2 = static_cast<long>(rng() % 7) - 3;
  long e3 = static_cast<long>(rng() % 7) - 3;
  QMat m;
  m(0, 0) = rnd_unit(rng, p) * Rat(BigInt(p)).pow(e1);
  m(1, 1) = rnd_unit(rng, p) * Rat(BigInt(p)).pow(e2);
  Rat a3 = rnd_unit(rng, p) * Rat(BigInt(p)).pow(e3);
  m(2, 2) = a3 / m(0, 0);
  m(3, 3) = a3 / m(1, 1);
  return m;
}

Rat rnd_padic(std::mt19937_64& rng, long p) {
  long k = static_cast<long>(rng() % 9) - 4;
  long u = static_cast<long>(rng() % 60) + 1;
  return Rat(u) * Rat(BigInt(p)).pow(k);
}

}  // namespace

TEST_CASE("multiplier") {
  CHECK(multiplier(QMat::identity()) == Rat(1));
  CHECK(multiplier(form_J()) == Rat(1));
  QMat t;
  t(0, 0) = Rat(2);
  t(1, 1) = Rat::of(3, 5);
  Rat a3 = Rat::of(7, 2);
  t(2, 2) = a3 / t(0, 0);
  t(3, 3) = a3 / t(1, 1);
  CHECK(multiplier(t) == a3);
  QMat bad = QMat::identity();
  bad(0, 1) = Rat(1);  // not symplectic: breaks the pairing
  bad(1, 0) = Rat(1);
  CHECK_THROWS(multiplier(bad));
}

TEST_CASE("weyl group structure") {
  CHECK(weyl_mul(WeylWord::S1, WeylWord::S1) == WeylWord::E);
  CHECK(weyl_matrix(WeylWord::S1) * weyl_matrix(WeylWord::S1) == QMat::identity());
  CHECK(weyl_matrix(WeylWord::J) == form_J());
  // all 8 matrices pairwise distinct
  for (int a = 0; a < kNumWeyl; ++a)
    for (int b = a + 1; b < kNumWeyl; ++b)
      CHECK(!(weyl_matrix(static_cast<WeylWord>(a)) == weyl_matrix(static_cast<WeylWord>(b))));
  // every rep is a symplectic similitude with unit multiplier
  for (int a = 0; a < kNumWeyl; ++a)
    CHECK(multiplier(weyl_matrix(static_cast<WeylWord>(a))) == Rat(1));
  CHECK(weyl_length(WeylWord::J) == 4);
  CHECK(weyl_length(WeylWord::S1S2) == 2);
}

TEST_CASE("unipotent coordinates are symplectic") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    QMat u = borel_u(rnd_rat(rng), rnd_rat(rng), rnd_rat(rng), rnd_rat(rng));
    CHECK(multiplier(u) == Rat(1));
    QMat n = klingen_n(rnd_rat(rng), rnd_rat(rng), rnd_rat(rng));
    CHECK(multiplier(n) == Rat(1));
    QMat s = siegel_n(rnd_rat(rng), rnd_rat(rng), rnd_rat(rng));
    CHECK(multiplier(s) == Rat(1));
  }
}

TEST_CASE("iwasawa on integral elements and recomposition") {
  std::mt19937_64 rng(43);
  for (long p : {2L, 3L, 5L}) {
    for (int it = 0; it < 60; ++it) {
      QMat k = rnd_k(rng, p);
      CHECK(subgroup_membership(k, SubgroupKind::MaximalCompact, p));
      IwasawaData d = iwasawa(k, Parabolic::Borel, p);
      CHECK(d.n * d.m * d.k == k);
      // integral element: torus part has unit valuations
      CHECK(val_lo(d.m(0, 0), p) == 0);
      CHECK(val_lo(d.m(1, 1), p) == 0);
    }
  }
}

TEST_CASE("iwasawa klingen example: J n(0,0,z) with v(z) = -1") {
  for (long p : {2L, 3L, 5L}) {
    Rat z = Rat(BigInt(1), BigInt(p));
    QMat g = weyl_matrix(WeylWord::J) * klingen_n(Rat(0), Rat(0), z);
    IwasawaData d = iwasawa(g, Parabolic::Klingen, p);
    CHECK(d.n * d.m * d.k == g);
    CHECK(subgroup_membership(d.k, SubgroupKind::MaximalCompact, p));
    // m1-part is a unit multiple of z^{-1}
    Rat m1 = d.m(0, 0);
    CHECK(vp(m1 * z, p) == Valuation(0));
  }
}

TEST_CASE("iwasawa recompose-and-check from N M K samples") {
  std::mt19937_64 rng(47);
  for (long p : {2L, 3L, 5L}) {
    for (Parabolic P : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
      for (int it = 0; it < 40; ++it) {
        QMat n;
        switch (P) {
          case Parabolic::Borel:
            n = borel_u(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p),
                        rnd_padic(rng, p));
            break;
          case Parabolic::Siegel:
            n = siegel_n(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p));
            break;
          case Parabolic::Klingen:
            n = klingen_n(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p));
            break;
        }
        QMat g = n * rnd_torus(rng, p) * rnd_k(rng, p);
        IwasawaData d = iwasawa(g, P, p);
        CHECK(d.n * d.m * d.k == g);
        CHECK(subgroup_membership(d.k, SubgroupKind::MaximalCompact, p));
        // n lands in the right radical shape
        if (P == Parabolic::Siegel) {
          CHECK(d.n(0, 1).is_zero());
          CHECK(d.n(1, 0).is_zero());
          CHECK(d.n(0, 2) == d.n(1, 3) * Rat(0) + d.n(0, 2));  // tautology; shape below
          CHECK(d.n(1, 2) == d.n(0, 3));
        }
        if (P == Parabolic::Klingen) CHECK(d.n(1, 3).is_zero());
        // m lands in the Levi
        if (P == Parabolic::Siegel) {
          CHECK(d.m(0, 2).is_zero());
          CHECK(d.m(0, 3).is_zero());
          CHECK(d.m(1, 2).is_zero());
          CHECK(d.m(1, 3).is_zero());
        }
        if (P == Parabolic::Klingen) {
          CHECK(d.m(0, 1).is_zero());
          CHECK(d.m(0, 2).is_zero());
          CHECK(d.m(0, 3).is_zero());
          CHECK(d.m(1, 2).is_zero());
        }
      }
    }
  }
}

TEST_CASE("torus valuations: elimination vs minor content") {
  std::mt19937_64 rng(53);
  for (long p : {2L, 3L, 5L}) {
    for (int it = 0; it < 200; ++it) {
      QMat g = borel_u(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p),
                       rnd_padic(rng, p)) *
               rnd_torus(rng, p) * rnd_k(rng, p);
      TorusValuations a = torus_valuations(g, p);
      TorusValuations b = torus_valuations_via_minors(g, p);
      CHECK(a.v1 == b.v1);
      CHECK(a.v2 == b.v2);
      CHECK(a.vmu == b.vmu);
    }
  }
}

TEST_CASE("power function: trivial on P cap K, invariances, factorization") {
  std::mt19937_64 rng(59);
  long p = 3;
  // P cap K elements give 1
  for (int it = 0; it < 30; ++it) {
    QMat k = rnd_k(rng, p);
    IwasawaData d = iwasawa(k, Parabolic::Borel, p);
    (void)d;
    double v = power_function(k, Parabolic::Borel, 0.7, 0.3, p);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int it = 0; it < 100; ++it) {
    QMat g = rnd_torus(rng, p) * rnd_k(rng, p);
    QMat gk = g * rnd_k(rng, p);
    double nu1 = 1.3, nu2 = 0.4;
    // right K-invariance
    for (Parabolic P : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen})
      CHECK(power_function(g, P, nu1, nu2, p) ==
            doctest::Approx(power_function(gk, P, nu1, nu2, p)).epsilon(1e-10));
    // left N_P-invariance
    QMat nb = borel_u(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p), Rat(0));
    (void)nb;
    QMat nk = klingen_n(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p));
    CHECK(power_function(nk * g, Parabolic::Klingen, nu1, 0, p) ==
          doctest::Approx(power_function(g, Parabolic::Klingen, nu1, 0, p)).epsilon(1e-10));
    QMat ns = siegel_n(rnd_padic(rng, p), rnd_padic(rng, p), rnd_padic(rng, p));
    CHECK(power_function(ns * g, Parabolic::Siegel, nu1, 0, p) ==
          doctest::Approx(power_function(g, Parabolic::Siegel, nu1, 0, p)).epsilon(1e-10));
    // I_{B,nu} = I_{Pk,nu1-nu2} I_{Ps,nu2}
    double lhs = power_function(g, Parabolic::Borel, nu1, nu2, p);
    double rhs = power_function(g, Parabolic::Klingen, nu1 - nu2, 0, p) *
                 power_function(g, Parabolic::Siegel, nu2, 0, p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("klingen power value on the label-1 region") {
  long p = 3;
  std::mt19937_64 rng(61);
  double nu = 1.7;
  for (int it = 0; it < 50; ++it) {
    // points with v(z) < min{0, v(x), v(y)}
    long kz = -(static_cast<long>(rng() % 4) + 1);
    long kx = kz + 1 + static_cast<long>(rng() % 4);
    long ky = kz + 1 + static_cast<long>(rng() % 4);
    Rat x = Rat(1 + static_cast<long>(rng() % 8)) * Rat(BigInt(p)).pow(kx);
    Rat y = Rat(1 + static_cast<long>(rng() % 8)) * Rat(BigInt(p)).pow(ky);
    long uz;
    do
      uz = 1 + static_cast<long>(rng() % 8);
    while (uz % p == 0);
    Rat z = Rat(uz) * Rat(BigInt(p)).pow(kz);
    QMat g = weyl_matrix(sigma_P(Parabolic::Klingen)) * klingen_n(x, y, z);
    double val = power_function(g, Parabolic::Klingen, 2 + nu, 0, p);
    double expect = std::pow(std::pow(static_cast<double>(p), -kz), -(2 + nu));
    CHECK(val == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("bruhat cells over F_2: partition and sizes") {
  const auto& all = gsp4_fp_elements(2);
  CHECK(all.size() == 720);
  long counts[kNumWeyl] = {0};
  for (const FpMat& g : all) counts[static_cast<int>(bruhat_cell(g))]++;
  long borel_order = 1 * 1 * 1 * 16;  // (p-1)^3 p^4 at p=2
  long total = 0;
  for (int w = 0; w < kNumWeyl; ++w) {
    long expected = borel_order * (1L << weyl_length(static_cast<WeylWord>(w)));
    CHECK(counts[w] == expected);
    total += counts[w];
  }
  CHECK(total == 720);
  // representatives sit in their own cells
  for (int w = 0; w < kNumWeyl; ++w) {
    FpMat m = reduce_mod_p(weyl_matrix(static_cast<WeylWord>(w)), 2);
    CHECK(bruhat_cell(m) == static_cast<WeylWord>(w));
  }
  CHECK(bruhat_cell(FpMat::identity(2)) == WeylWord::E);
}

TEST_CASE("group order over F_3") {
  CHECK(gsp4_fp_elements(3).size() == 103680);
}

TEST_CASE("subgroup membership") {
  long p = 3;
  CHECK(subgroup_membership(QMat::identity(), SubgroupKind::MaximalCompact, p));
  CHECK(subgroup_membership(QMat::identity(), SubgroupKind::BorelCongruence, p));
  CHECK(subgroup_membership(QMat::identity(), SubgroupKind::Paramodular, p));
  CHECK(subgroup_membership(gen_s2(), SubgroupKind::Paramodular, p));
  QMat x13 = QMat::identity();
  x13(0, 2) = Rat(BigInt(1), BigInt(p));
  CHECK(subgroup_membership(x13, SubgroupKind::Paramodular, p));
  CHECK(!subgroup_membership(x13, SubgroupKind::MaximalCompact, p));
  CHECK(gl2_gamma0_membership(Rat(1), Rat(2), Rat(3), Rat(1), 3));
  CHECK(!gl2_gamma0_membership(Rat(1), Rat(2), Rat(1), Rat(1), 3));
}

TEST_CASE("kloosterman entry identities") {
  std::mt19937_64 rng(67);
  for (int it = 0; it < 5; ++it) {
    Rat d1 = rnd_rat(rng), d2 = rnd_rat(rng), d3 = rnd_rat(rng);
    if (d1.is_zero()) d1 = Rat(1);
    if (d2.is_zero()) d2 = Rat(2);
    if (d3.is_zero()) d3 = Rat(3);
    CHECK(kloosterman_entry_identity(WeylWord::J, d1, d2, d3, 50, 99 + it).pass);
    CHECK(kloosterman_entry_identity(WeylWord::S1S2S1, d1, d2, d3, 50, 199 + it).pass);
    CHECK(kloosterman_entry_identity(WeylWord::S2S1S2, d1, d2, d3, 50, 299 + it).pass);
    CHECK(kloosterman_entry_identity(WeylWord::E, d1, d2, d3, 1, 1).trivially_true);
  }
}
