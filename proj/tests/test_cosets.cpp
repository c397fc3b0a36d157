#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsp4lab/cosets.hpp"
#include "gsp4lab/iwasawa.hpp"

using namespace gsp4lab;

namespace {

Rat rnd_int(std::mt19937_64& rng, long lo, long hi) {
  return Rat(lo + static_cast<long>(rng() % (hi - lo + 1)));
}

Rat rnd_unit(std::mt19937_64& rng, long p) {
  long u;
  do
    u = static_cast<long>(rng() % 60) + 1;
  while (u % p == 0);
  return Rat(u);
}

// Random element of P cap K_p as an exact matrix: N_P(Z_p)-part times an
// integral Levi part with unit determinant data.
QMat rnd_pk(std::mt19937_64& rng, Parabolic P, long p) {
  QMat n;
  QMat m;
  Rat t = rnd_unit(rng, p);
  // GL2(Z_p) with unit det: elementary products
  Rat r = rnd_int(rng, -6, 6), s = rnd_int(rng, -6, 6);
  Rat u1 = rnd_unit(rng, p), u2 = rnd_unit(rng, p);
  Rat a = u1, b = u1 * r, c = s * u1, d = s * u1 * r + u2;
  switch (P) {
    case Parabolic::Borel: {
      n = borel_u(rnd_int(rng, -9, 9), rnd_int(rng, -9, 9), rnd_int(rng, -9, 9),
                  rnd_int(rng, -9, 9));
      m = QMat{};
      m(0, 0) = rnd_unit(rng, p);
      m(1, 1) = rnd_unit(rng, p);
      Rat a3 = rnd_unit(rng, p);
      m(2, 2) = a3 / m(0, 0);
      m(3, 3) = a3 / m(1, 1);
      return n * m;
    }
    case Parabolic::Siegel: {
      n = siegel_n(rnd_int(rng, -9, 9), rnd_int(rng, -9, 9), rnd_int(rng, -9, 9));
      m = QMat{};
      Rat det = a * d - b * c;
      m(0, 0) = a;
      m(0, 1) = b;
      m(1, 0) = c;
      m(1, 1) = d;
      m(2, 2) = t * d / det;
      m(2, 3) = -t * c / det;
      m(3, 2) = -t * b / det;
      m(3, 3) = t * a / det;
      return n * m;
    }
    case Parabolic::Klingen: {
      n = klingen_n(rnd_int(rng, -9, 9), rnd_int(rng, -9, 9), rnd_int(rng, -9, 9));
      m = QMat{};
      m(0, 0) = t;
      m(1, 1) = a;
      m(1, 3) = b;
      m(3, 1) = c;
      m(3, 3) = d;
      m(2, 2) = (a * d - b * c) / t;
      return n * m;
    }
  }
  throw std::logic_error("rnd_pk");
}

// The stabilizer-lemma patterns for P_x: Levi part in the Gamma_0(p)-type
// shape and radical coordinates with the per-label p-divisibility.
bool lemma_pattern(Parabolic P, WeylWord label, const QMat& g, long p) {
  switch (P) {
    case Parabolic::Borel: {
      QMat m;
      for (int i = 0; i < 4; ++i) m(i, i) = g(i, i);
      QMat n = g * qmat_inverse(m);
      Rat x = n(0, 1), bb = n(1, 2), cc = n(1, 3);
      Rat aa = n(0, 2) - bb * x;
      // U_sigma(p): coordinates whose root is flipped by sigma^{-1} lie in p.
      // Roots: x ~ e1-e2, a ~ 2e1, b ~ e1+e2, c ~ 2e2. Conjugating the torus
      // by sigma evaluates (sigma^{-1} alpha) at the chosen exponents.
      auto needs_p = [&](int root) {
        const QMat& w = weyl_matrix(label);
        QMat tt;
        Rat p5 = Rat(BigInt(p)).pow(5), p1 = Rat(p);
        tt(0, 0) = p5;
        tt(1, 1) = p1;
        tt(2, 2) = p5.inverse();
        tt(3, 3) = p1.inverse();
        QMat conj = w * tt * qmat_inverse(w);
        long m1 = val_lo(conj(0, 0), p), m2 = val_lo(conj(1, 1), p);
        long vals[4] = {m1 - m2, 2 * m1, m1 + m2, 2 * m2};
        return vals[root] < 0;
      };
      bool ok = true;
      if (needs_p(0)) ok = ok && vp(x, p) >= Valuation(1);
      if (needs_p(1)) ok = ok && vp(aa, p) >= Valuation(1);
      if (needs_p(2)) ok = ok && vp(bb, p) >= Valuation(1);
      if (needs_p(3)) ok = ok && vp(cc, p) >= Valuation(1);
      return ok;
    }
    case Parabolic::Siegel: {
      if (!gl2_gamma0_membership(g(0, 0), g(0, 1), g(1, 0), g(1, 1), p)) return false;
      QMat D;
      Rat det = g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2);
      Rat B11 = g(0, 2), B12 = g(0, 3), B21 = g(1, 2), B22 = g(1, 3);
      Rat Y11 = (B11 * g(3, 3) - B12 * g(3, 2)) / det;
      Rat Y12 = (-B11 * g(2, 3) + B12 * g(2, 2)) / det;
      Rat Y22 = (-B21 * g(2, 3) + B22 * g(2, 2)) / det;
      Valuation vx = vp(Y11, p), vy = vp(Y12, p), vz = vp(Y22, p);
      switch (label) {
        case WeylWord::E: return vx >= Valuation(0) && vy >= Valuation(0) && vz >= Valuation(0);
        case WeylWord::S2:
          return vx >= Valuation(0) && vy >= Valuation(0) && vz >= Valuation(1);
        case WeylWord::S2S1:
          return vx >= Valuation(0) && vy >= Valuation(1) && vz >= Valuation(1);
        case WeylWord::S2S1S2:
          return vx >= Valuation(1) && vy >= Valuation(1) && vz >= Valuation(1);
        default: return false;
      }
    }
    case Parabolic::Klingen: {
      if (!gl2_gamma0_membership(g(1, 1), g(1, 3), g(3, 1), g(3, 3), p)) return false;
      QMat m2;
      m2(0, 0) = g(0, 0);
      m2(1, 1) = g(1, 1);
      m2(1, 3) = g(1, 3);
      m2(3, 1) = g(3, 1);
      m2(3, 3) = g(3, 3);
      m2(2, 2) = (g(1, 1) * g(3, 3) - g(1, 3) * g(3, 1)) / g(0, 0);
      QMat n = g * qmat_inverse(m2);
      Rat x = n(0, 1), y = n(0, 3), z = n(0, 2);
      Valuation vx = vp(x, p), vy = vp(y, p), vz = vp(z, p);
      switch (label) {
        case WeylWord::E: return vx >= Valuation(0) && vy >= Valuation(0) && vz >= Valuation(0);
        case WeylWord::S1:
          return vx >= Valuation(1) && vy >= Valuation(0) && vz >= Valuation(0);
        case WeylWord::S1S2:
          return vx >= Valuation(1) && vy >= Valuation(0) && vz >= Valuation(1);
        case WeylWord::S1S2S1:
          return vx >= Valuation(1) && vy >= Valuation(1) && vz >= Valuation(1);
        default: return false;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("classify basics") {
  for (long p : {2L, 3L}) {
    CHECK(classify(FpMat::identity(p), Parabolic::Borel) == WeylWord::E);
    CHECK(classify(FpMat::identity(p), Parabolic::Siegel) == WeylWord::E);
    CHECK(classify(FpMat::identity(p), Parabolic::Klingen) == WeylWord::E);
    // s1 lies in the Siegel Levi, so its Siegel label is trivial
    CHECK(classify(reduce_mod_p(gen_s1(), p), Parabolic::Siegel) == WeylWord::E);
    CHECK(classify(reduce_mod_p(gen_s2(), p), Parabolic::Klingen) == WeylWord::E);
  }
}

TEST_CASE("classify is bi-invariant under (P cap K) and B(p)") {
  std::mt19937_64 rng(71);
  for (long p : {2L, 3L}) {
    const auto& all = gsp4_fp_elements(p);
    for (Parabolic P : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
      for (int it = 0; it < 200; ++it) {
        const FpMat& g = all[rng() % all.size()];
        WeylWord w = classify(g, P);
        const FpMat* lp = nullptr;
        const FpMat* rb = nullptr;
        while (!lp) {
          const FpMat& c = all[rng() % all.size()];
          if (fp_in_parabolic(c, P)) lp = &c;
        }
        while (!rb) {
          const FpMat& c = all[rng() % all.size()];
          if (fp_in_borel(c)) rb = &c;
        }
        CHECK(classify(*lp * g * *rb, P) == w);
      }
    }
  }
}

TEST_CASE("exhaustive census: 8/4/4 labels, Borel sizes p^l") {
  for (long p : {2L, 3L}) {
    CosetCensus c = coset_census(p);
    long borel_order = (p - 1) * (p - 1) * (p - 1) * p * p * p * p;
    long total = 0;
    for (int w = 0; w < kNumWeyl; ++w) {
      CHECK(c.borel_counts[w] > 0);
      total += c.borel_counts[w];
      long expect = borel_order;
      for (int i = 0; i < weyl_length(static_cast<WeylWord>(w)); ++i) expect *= p;
      CHECK(c.borel_counts[w] == expect);
    }
    CHECK(total == c.group_order);
    long stotal = 0, ktotal = 0;
    for (long n : c.siegel_counts) {
      CHECK(n > 0);
      stotal += n;
    }
    for (long n : c.klingen_counts) {
      CHECK(n > 0);
      ktotal += n;
    }
    CHECK(stotal == c.group_order);
    CHECK(ktotal == c.group_order);
  }
}

TEST_CASE("stabilizer indices: Borel p^l and the product identity") {
  for (long p : {2L, 3L}) {
    for (WeylWord w : coset_reps(Parabolic::Borel)) {
      StabilizerReport r = stabilizer_indices(Parabolic::Borel, w, p);
      long expect = 1;
      for (int i = 0; i < weyl_length(w); ++i) expect *= p;
      CHECK(r.index_P == expect);
      CHECK(r.index_P == r.index_N * r.index_M);
    }
    for (Parabolic P : {Parabolic::Siegel, Parabolic::Klingen}) {
      long expect_n = 1;
      for (WeylWord x : coset_reps(P)) {
        StabilizerReport r = stabilizer_indices(P, x, p);
        CHECK(r.index_P == r.index_N * r.index_M);
        CHECK(r.index_M == p + 1);  // [GL2(Z_p) : Gamma_0(p)]
        CHECK(r.index_N == expect_n);
        expect_n *= p;
      }
    }
  }
}

TEST_CASE("stabilizer patterns reproduce the conjugation test") {
  std::mt19937_64 rng(73);
  for (long p : {2L, 3L, 5L}) {
    for (Parabolic P : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
      for (WeylWord label : coset_reps(P)) {
        QMat x = weyl_matrix(label);
        QMat xinv = qmat_inverse(x);
        for (int it = 0; it < 60; ++it) {
          QMat g = rnd_pk(rng, P, p);
          bool conj_member = subgroup_membership(xinv * g * x, SubgroupKind::BorelCongruence, p);
          bool pattern = lemma_pattern(P, label, g, p);
          INFO(parabolic_name(P) << "/" << weyl_name(label) << " at p=" << p);
          CHECK(conj_member == pattern);
        }
      }
    }
  }
}

TEST_CASE("group lemmas") {
  for (long p : {2L, 3L}) {
    GroupLemmasReport r = verify_group_lemmas(p, 200, 1234);
    INFO(r.witness);
    CHECK(r.grouptheoretic_ok);
    CHECK(r.increasing_ok);
    CHECK(r.congruence_ok);
    CHECK(r.bruhat_factorization_ok);
  }
}

TEST_CASE("paramodular normalizer") {
  for (long p : {2L, 3L, 5L}) CHECK(paramodular_normalizer_check(p, 200, 555));
}

TEST_CASE("exponent ledger inequalities") {
  for (long p : {2L, 3L}) {
    auto rows = exponent_ledger(p);
    CHECK(rows.size() == 16);
    for (const auto& r : rows) {
      INFO(parabolic_name(r.parabolic) << "/" << weyl_name(r.label));
      CHECK(r.ok);
    }
    for (const auto& r : rows) {
      if (r.parabolic == Parabolic::Borel && r.label == WeylWord::J) {
        CHECK(r.alpha == 0);
        CHECK(r.ell_or_logN == 4);
      }
      if (r.parabolic == Parabolic::Siegel && r.label == WeylWord::E) CHECK(r.alpha == 1.5);
      if (r.parabolic == Parabolic::Klingen && r.label == WeylWord::S1S2S1) {
        CHECK(r.alpha == 0);
        CHECK(r.ell_or_logN >= 2);
      }
    }
  }
}
