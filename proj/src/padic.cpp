#include "gsp4lab/padic.hpp"

#include <cmath>

namespace gsp4lab {

Valuation vp_int(const BigInt& n, long p) {
  if (n == 0) return Valuation::infinity();
  BigInt m = n < 0 ? BigInt(-n) : n;
  long v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return Valuation(v);
}

Valuation vp(const Rat& r, long p) {
  if (r.is_zero()) return Valuation::infinity();
  return Valuation(vp_int(r.num(), p).value() - vp_int(r.den(), p).value());
}

namespace {

BigInt mod_pow(BigInt base, BigInt exp, const BigInt& mod) {
  BigInt acc = 1;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp % 2 == 1) acc = acc * base % mod;
    base = base * base % mod;
    exp /= 2;
  }
  return acc;
}

// Inverse of a mod p^m (a coprime to p), via Euler.
BigInt mod_inv(const BigInt& a, long p, long m) {
  BigInt mod = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m));
  BigInt phi = mod - mod / p;
  return mod_pow(a, phi - 1, mod);
}

}  // namespace

Rat frac_part(const Rat& r, long p) {
  if (r.is_zero()) return Rat(0);
  Valuation v = vp(r, p);
  if (!(v < Valuation(0))) return Rat(0);
  long m = -v.value();
  BigInt pm = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m));
  // r = num / (p^m * d') with d' coprime to p. f = (num * inv(d') mod p^m) / p^m.
  BigInt d = r.den();
  long dv = vp_int(d, p).value();
  BigInt dprime = d / boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(dv));
  // numerator relative to denominator p^m: r = (num * p^{m - dv... }) handled via
  // num/d = num * inv(d') / p^dv; scale so denominator is exactly p^m = p^dv here.
  // v(r) = v(num) - dv = -m so dv = m + v(num) >= m; with num's p-part folded in:
  BigInt num = r.num();
  long nv = vp_int(num, p).value();
  BigInt nprime = num / boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(nv));
  // r = p^{nv - dv} * nprime / dprime, nv - dv = -m.
  BigInt c = nprime % pm * (mod_inv(dprime, p, m) % pm) % pm;
  if (c < 0) c += pm;
  return Rat(c, pm);
}

Complex theta(const Rat& r, long p) {
  Rat f = frac_part(r, p);
  double x = f.to_double();
  return Complex(std::cos(2 * M_PI * x), std::sin(2 * M_PI * x));
}

Rat gauss_average(const Rat& a, long p) {
  Valuation v = vp(a, p);
  if (!(v < Valuation(0))) return Rat(1);
  if (v == Valuation(-1)) return Rat(BigInt(-1), BigInt(p - 1));
  return Rat(0);
}

std::vector<RegionCell> enumerate_region(long v_min, long v_max, int m, long p) {
  std::vector<RegionCell> cells;
  if (v_min > v_max || m < 1) return cells;
  for (long k = v_min; k <= v_max; ++k) {
    // Shell v(x) = k: representatives p^k * u, u unit mod p^m.
    BigInt pm = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m));
    Rat scale = Rat(BigInt(p)).pow(k);
    Rat cell_measure = rat_pow_of(p, -(k + m));
    for (BigInt u = 1; u < pm; ++u) {
      if (u % p == 0) continue;
      cells.push_back(RegionCell{Rat(u) * scale, cell_measure, static_cast<int>(k + m)});
    }
  }
  return cells;
}

PBall ball_add(const PBall& a, const PBall& b) {
  return PBall(a.c + b.c, std::min(a.r, b.r), ball_prime(a, b));
}
PBall ball_sub(const PBall& a, const PBall& b) {
  return PBall(a.c - b.c, std::min(a.r, b.r), ball_prime(a, b));
}
PBall ball_neg(const PBall& a) { return PBall(-a.c, a.r, a.p); }

PBall ball_mul(const PBall& a, const PBall& b) {
  // (c1 + p^r1 Z)(c2 + p^r2 Z) = c1 c2 + p^{min(v1+r2, v2+r1, r1+r2)} Z.
  long p = ball_prime(a, b);
  Rat c = a.c * b.c;
  if (a.is_exact() && b.is_exact()) return PBall::exact(c, p);
  long r = kRadiusExact;
  auto acc = [&](const Rat& center, long rr) {
    if (rr >= kRadiusExact) return;  // exact factor contributes through the v-terms only
    Valuation v = vp(center, p);
    long lo = v.is_infinity() ? kRadiusExact : v.value() + rr;
    r = std::min(r, lo);
  };
  acc(a.c, b.r);
  acc(b.c, a.r);
  if (!a.is_exact() && !b.is_exact()) r = std::min(r, a.r + b.r);
  return PBall(c, r, p);
}

PBall ball_inv(const PBall& a) {
  if (a.is_exact()) {
    if (a.c.is_zero()) throw std::domain_error("ball_inv: exact zero");
    return PBall::exact(a.c.inverse(), a.p);
  }
  VInterval vi = a.vinterval();
  if (!vi.exact()) throw SplitRequest{1};
  long v = vi.lo.value();
  // 1/(c + p^r Z) = 1/c + p^{r - 2v} Z.
  return PBall(a.c.inverse(), a.r - 2 * v, a.p);
}

PBall ball_div(const PBall& a, const PBall& b) { return ball_mul(a, ball_inv(b)); }

PJet jet_const(const Rat& r, long p) {
  PJet j;
  j.v = PBall::exact(r, p);
  return j;
}

PJet jet_coord(int axis, const PBall& range, long p) {
  PJet j;
  j.v = range;
  j.d[axis] = PBall::exact(Rat(1), p);
  return j;
}

PJet jet_add(const PJet& a, const PJet& b) {
  PJet r;
  r.v = ball_add(a.v, b.v);
  for (int i = 0; i < 4; ++i) r.d[i] = ball_add(a.d[i], b.d[i]);
  return r;
}

PJet jet_sub(const PJet& a, const PJet& b) {
  PJet r;
  r.v = ball_sub(a.v, b.v);
  for (int i = 0; i < 4; ++i) r.d[i] = ball_sub(a.d[i], b.d[i]);
  return r;
}

PJet jet_neg(const PJet& a) {
  PJet r;
  r.v = ball_neg(a.v);
  for (int i = 0; i < 4; ++i) r.d[i] = ball_neg(a.d[i]);
  return r;
}

PJet jet_mul(const PJet& a, const PJet& b) {
  PJet r;
  r.v = ball_mul(a.v, b.v);
  long p = ball_prime(a.v, b.v);
  PBall b0 = PBall::exact(b.v.c, p);
  for (int i = 0; i < 4; ++i)
    r.d[i] = ball_add(ball_mul(a.v, b.d[i]), ball_mul(b0, a.d[i]));
  return r;
}

PJet jet_inv(const PJet& a) {
  PJet r;
  r.v = ball_inv(a.v);  // certifies v(a) along the way
  long p = a.v.p;
  PBall denom = ball_mul(a.v, PBall::exact(a.v.c, p));
  PBall dinv = ball_inv(denom);
  for (int i = 0; i < 4; ++i) r.d[i] = ball_neg(ball_mul(a.d[i], dinv));
  return r;
}

PJet jet_div(const PJet& a, const PJet& b) { return jet_mul(a, jet_inv(b)); }

}  // namespace gsp4lab
