#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsp4lab/closed_forms.hpp"
#include "gsp4lab/membership.hpp"
#include "gsp4lab/oracle.hpp"

using namespace gsp4lab;

namespace {

Rat rnd_coord(std::mt19937_64& rng, long p) {
  // random valuation in [-5, 3] or exact zero, random unit part
  long sel = static_cast<long>(rng() % 10);
  if (sel == 9) return Rat(0);
  long k = static_cast<long>(rng() % 9) - 5;
  long u;
  do
    u = 1 + static_cast<long>(rng() % 400);
  while (u % p == 0);
  return Rat(u) * Rat(BigInt(p)).pow(k);
}

}  // namespace

TEST_CASE("membership examples") {
  long p = 3;
  RegionPoint pt{Parabolic::Klingen, Rat(0), Rat(0), Rat::of(1, 3), Rat(0)};
  CHECK(membership(Parabolic::Klingen, WeylWord::E, pt, p));
  pt.z = Rat(1);
  CHECK(!membership(Parabolic::Klingen, WeylWord::E, pt, p));
  CHECK(membership(Parabolic::Klingen, WeylWord::S1S2S1, pt, p));
  // Siegel s2s1s2: integral Y
  RegionPoint sg{Parabolic::Siegel, Rat(2), Rat(1), Rat(5), Rat(0)};
  CHECK(membership(Parabolic::Siegel, WeylWord::S2S1S2, sg, p));
  sg.y = Rat::of(1, 3);
  CHECK(!membership(Parabolic::Siegel, WeylWord::S2S1S2, sg, p));
}

TEST_CASE("membership equals the iwasawa-classify oracle") {
  std::mt19937_64 rng(101);
  for (long p : {2L, 3L, 5L}) {
    for (Parabolic P : {Parabolic::Klingen, Parabolic::Siegel, Parabolic::Borel}) {
      int checked = 0;
      while (checked < 800) {
        RegionPoint pt;
        pt.parabolic = P;
        pt.x = rnd_coord(rng, p);
        pt.y = rnd_coord(rng, p);
        pt.z = rnd_coord(rng, p);
        pt.c = (P == Parabolic::Borel) ? rnd_coord(rng, p) : Rat(0);
        WeylWord direct_label = WeylWord::E;
        int hits = 0;
        for (WeylWord w : coset_reps(P)) {
          if (membership(P, w, pt, p)) {
            direct_label = w;
            ++hits;
          }
        }
        if (hits != 1) {
          // measure-zero proviso points (Siegel s2/s2s1 exceptional loci):
          // the closed conditions may overlap or miss there; skip them the
          // same way the integrals do.
          bool degenerate =
              pt.x.is_zero() || pt.y.is_zero() || pt.z.is_zero() ||
              (P != Parabolic::Borel && (pt.x * pt.z - pt.y * pt.y).is_zero()) ||
              (P == Parabolic::Borel && (pt.y * pt.c - pt.z * pt.z).is_zero());
          INFO("x=" << pt.x.str() << " y=" << pt.y.str() << " z=" << pt.z.str()
                    << " c=" << pt.c.str() << " hits=" << hits << " p=" << p);
          CHECK(degenerate);
          continue;
        }
        WeylWord oracle_label = membership_oracle_label(P, pt, p);
        INFO(parabolic_name(P) << " p=" << p << " x=" << pt.x.str() << " y=" << pt.y.str()
                               << " z=" << pt.z.str() << " c=" << pt.c.str());
        CHECK(oracle_label == direct_label);
        ++checked;
      }
    }
  }
}

TEST_CASE("membership oracle levi data on lemma examples") {
  // Klingen label 1 at (0,0,z), v(z) = -1: the m2-class is represented by
  // diag(-1+xy/z, 1+xy/z)-type data; at x=y=0 the Whittaker argument is a
  // unit diagonal, i.e. the cs-exponent vanishes.
  long p = 5;
  RegionPoint pt{Parabolic::Klingen, Rat(0), Rat(0), Rat::of(1, 5), Rat(0)};
  QMat g = weyl_matrix(sigma_P(Parabolic::Klingen)) * region_matrix(pt);
  BorelSplit<Rat> s = borel_split<Rat>(g, p);
  long v2 = val_lo(s.b(1, 1), p);
  CHECK(2 * v2 == 0);
}

TEST_CASE("region dissection lemmas") {
  // full acceptance runs window [-6,2] with p^9 residues; keep the unit test
  // fast with a smaller window and precision
  std::mt19937_64 seed_rng(7);
  for (long p : {2L, 3L}) {
    for (const RegionLemma& lemma : region_lemmas()) {
      RegionCheckResult res =
          check_region_lemma(lemma, p, -4, 1, 6, 2, static_cast<unsigned>(seed_rng()));
      INFO(lemma.name << " at p=" << p << ": " << res.witness);
      CHECK(res.pass);
    }
  }
}

TEST_CASE("closed form transcription spot checks") {
  long p = 7;
  CHECK(closed_form(Parabolic::Borel, WeylWord::J, p).expr == lp_one(p));
  CHECK(closed_form(Parabolic::Klingen, WeylWord::S1S2S1, p).expr ==
        LaurentExpr::monomial(Sym::W1, 1, p));
  // Borel s2s1s2 = -p^{-1-nu1+nu2}
  LaurentExpr e = closed_form(Parabolic::Borel, WeylWord::S2S1S2, p).expr;
  ExpVec v{};
  v[static_cast<int>(Sym::T1)] = 1;
  v[static_cast<int>(Sym::T2)] = -1;
  LaurentExpr expect(p);
  expect.add_term(v, Rat::of(-1, 7));
  CHECK(e == expect);
}

TEST_CASE("sanity identities for all parabolics and primes") {
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    for (Parabolic P : {Parabolic::Klingen, Parabolic::Siegel, Parabolic::Borel}) {
      SanityResult r = sanity_identity(P, p);
      INFO(parabolic_name(P) << " p=" << p << " diff=" << r.difference.str());
      CHECK(r.pass);
    }
  }
}

TEST_CASE("quadrature oracle on the trivial regions is exact") {
  // Klingen s1s2s1: region Z_p^3, integrand == 1.
  OracleSpec spec;
  spec.parabolic = Parabolic::Klingen;
  spec.label = WeylWord::S1S2S1;
  spec.nu1 = 2.5;
  spec.p = 3;
  spec.cutoff = 4;
  OracleResult r = quadrature_oracle(spec);
  CHECK(!r.capped);
  CHECK(std::abs(r.value - std::complex<double>(1, 0)) < 1e-12);

  // Borel J
  spec.parabolic = Parabolic::Borel;
  spec.label = WeylWord::J;
  spec.nu1 = 3;
  spec.nu2 = 2;
  OracleResult rb = quadrature_oracle(spec);
  CHECK(!rb.capped);
  CHECK(std::abs(rb.value - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("quadrature oracle matches a closed form (Klingen s1s2, p=3)") {
  OracleSpec spec;
  spec.parabolic = Parabolic::Klingen;
  spec.label = WeylWord::S1S2;
  spec.nu1 = 2;
  spec.p = 3;
  spec.cutoff = 7;
  OracleResult r = quadrature_oracle(spec);
  CHECK(!r.capped);
  std::complex<double> expect = closed_form_value(Parabolic::Klingen, WeylWord::S1S2, 2, 0, 1.0, 3);
  CHECK(std::abs(r.value - expect) / std::abs(expect) < 1e-3);
}
