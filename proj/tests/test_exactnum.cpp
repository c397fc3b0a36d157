#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsp4lab/padic.hpp"

using namespace gsp4lab;

namespace {

Rat random_rat(std::mt19937_64& rng) {
  long n = static_cast<long>(rng() % 2001) - 1000;
  long d = static_cast<long>(rng() % 999) + 1;
  return Rat(BigInt(n), BigInt(d));
}

}  // namespace

TEST_CASE("valuation basics") {
  CHECK(vp(Rat(0), 5).is_infinity());
  CHECK(vp(Rat::of(3, 4), 2) == Valuation(-2));
  CHECK(vp(Rat(12), 2) == Valuation(2));
  CHECK(vp(Rat::of(1, 9), 3) == Valuation(-2));
}

TEST_CASE("valuation of constructed p^k u") {
  std::mt19937_64 rng(7);
  for (long p : {2L, 3L, 5L}) {
    for (int it = 0; it < 200; ++it) {
      long k = static_cast<long>(rng() % 17) - 8;
      // unit: numerator and denominator coprime to p
      long un, ud;
      do
        un = static_cast<long>(rng() % 500) + 1;
      while (un % p == 0);
      do
        ud = static_cast<long>(rng() % 500) + 1;
      while (ud % p == 0);
      Rat u = Rat(BigInt(un), BigInt(ud));
      CHECK(vp(u * Rat(BigInt(p)).pow(k), p) == Valuation(k));
    }
  }
}

TEST_CASE("valuation is additive and ultrametric") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 10000; ++it) {
    long p = (it % 3 == 0) ? 2 : (it % 3 == 1 ? 3 : 5);
    Rat r = random_rat(rng), s = random_rat(rng);
    Valuation vr = vp(r, p), vs = vp(s, p);
    CHECK(vp(r * s, p) == vr + vs);
    CHECK(vp(r + s, p) >= min(vr, vs));
  }
}

TEST_CASE("frac_part") {
  CHECK(frac_part(Rat::of(7, 4), 2) == Rat::of(3, 4));
  CHECK(frac_part(Rat(3), 5) == Rat(0));
  // 1/6 at p=3: the unique k/3 with 1/6 - k/3 in Z_3, found by search
  Rat f = frac_part(Rat::of(1, 6), 3);
  bool found = false;
  for (long k = 0; k < 3; ++k) {
    Rat cand = Rat::of(k, 3);
    if (vp(Rat::of(1, 6) - cand, 3) >= Valuation(0)) {
      found = true;
      CHECK(f == cand);
    }
  }
  CHECK(found);
  // general contract: r - frac in Z_p, denominator a p-power
  std::mt19937_64 rng(3);
  for (int it = 0; it < 2000; ++it) {
    long p = (it % 2) ? 3 : 5;
    Rat r = random_rat(rng);
    Rat f2 = frac_part(r, p);
    CHECK(vp(r - f2, p) >= Valuation(0));
    CHECK(!(f2 < Rat(0)));
    CHECK(f2 < Rat(1));
    CHECK(vp_int(f2.den(), p).value() >= 0);
    BigInt d = f2.den();
    while (d % p == 0) d /= p;
    CHECK(d == 1);
  }
}

TEST_CASE("theta is trivial on integers and a character") {
  CHECK(std::abs(theta(Rat(17), 5) - Complex(1, 0)) < 1e-12);
  // primitive p-th root at 1/p
  Complex z = theta(Rat::of(1, 3), 3);
  CHECK(std::abs(z - std::polar(1.0, 2 * M_PI / 3)) < 1e-12);
  // sum over k/p vanishes
  for (long p : {2L, 3L, 5L, 7L}) {
    Complex s = 0;
    for (long k = 0; k < p; ++k) s += theta(Rat::of(k, p), p);
    CHECK(std::abs(s) < 1e-12);
  }
  // homomorphism on rationals
  std::mt19937_64 rng(5);
  for (int it = 0; it < 1000; ++it) {
    Rat a = random_rat(rng), b = random_rat(rng);
    CHECK(std::abs(theta(a + b, 3) - theta(a, 3) * theta(b, 3)) < 1e-12);
  }
}

TEST_CASE("gauss_average cases and finite character sums") {
  CHECK(gauss_average(Rat(3), 5) == Rat(1));
  CHECK(gauss_average(Rat::of(1, 5), 5) == Rat::of(-1, 4));
  CHECK(gauss_average(Rat::of(1, 25), 5) == Rat(0));

  std::mt19937_64 rng(13);
  for (long p : {2L, 3L, 5L}) {
    for (int it = 0; it < 100; ++it) {
      long k = static_cast<long>(rng() % 9) - 4;
      long un;
      do
        un = static_cast<long>(rng() % 200) + 1;
      while (un % p == 0);
      Rat a = Rat(un) * Rat(BigInt(p)).pow(k);
      long depth = std::max(1L, -k) + 1;
      BigInt pm = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(depth));
      Complex sum = 0;
      long count = 0;
      for (BigInt l = 1; l < pm; ++l) {
        if (l % p == 0) continue;
        sum += theta(Rat(l) * a, p);
        ++count;
      }
      Complex avg = sum / static_cast<double>(count);
      CHECK(std::abs(avg.imag()) < 1e-10);
      CHECK(std::abs(avg.real() - gauss_average(a, p).to_double()) < 1e-10);
    }
  }
}

TEST_CASE("region cells partition shells exactly") {
  // shell v=0, p=3, m=1: 2 cells of measure 1/3
  auto cells = enumerate_region(0, 0, 1, 3);
  CHECK(cells.size() == 2);
  Rat total(0);
  for (auto& c : cells) {
    CHECK(c.measure == Rat::of(1, 3));
    total += c.measure;
  }
  CHECK(total == Rat::of(2, 3));

  // shell v=-2, p=2, m=1: total measure 2
  cells = enumerate_region(-2, -2, 1, 2);
  total = Rat(0);
  for (auto& c : cells) total += c.measure;
  CHECK(total == Rat(2));

  // window [0, m]: shells sum to 1 - p^{-(m+1)}
  for (long p : {2L, 3L, 5L}) {
    int m = 4;
    cells = enumerate_region(0, m, 2, p);
    total = Rat(0);
    for (auto& c : cells) total += c.measure;
    CHECK(total == Rat(1) - Rat(BigInt(p)).pow(-(m + 1)));
  }
}

TEST_CASE("ball arithmetic valuation intervals") {
  // exact balls
  PBall a = PBall::exact(Rat::of(3, 4), 2);
  CHECK(a.vinterval().lo == Valuation(-2));
  CHECK(a.vinterval().exact());
  // wide ball around 0
  PBall b(Rat(0), -3, 2);
  CHECK(b.vinterval().lo == Valuation(-3));
  CHECK(!b.vinterval().exact());
  // center dominates radius
  PBall c(Rat::of(1, 8), -1, 2);
  CHECK(c.vinterval().exact());
  CHECK(c.vinterval().lo == Valuation(-3));
  // arithmetic soundness on sampled points
  std::mt19937_64 rng(17);
  for (int it = 0; it < 2000; ++it) {
    long p = 3;
    Rat c1 = random_rat(rng), c2 = random_rat(rng);
    long r1 = static_cast<long>(rng() % 7) - 3, r2 = static_cast<long>(rng() % 7) - 3;
    PBall x(c1, r1, p), y(c2, r2, p);
    // pick points inside each ball
    Rat dx = Rat(static_cast<long>(rng() % 5)) * Rat(BigInt(p)).pow(r1);
    Rat dy = Rat(static_cast<long>(rng() % 5)) * Rat(BigInt(p)).pow(r2);
    Rat px = c1 + dx, py = c2 + dy;
    PBall s = x * y;
    Rat truth = px * py;
    // truth must lie inside the product ball
    CHECK(vp(truth - s.c, p) >= Valuation(s.r));
  }
}
