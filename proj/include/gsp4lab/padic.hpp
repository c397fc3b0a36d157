#pragma once

// p-adic plumbing on exact rationals: valuations, the standard additive
// character of Q_p/Z_p, Gauss averages over units, measured region cells,
// and ball arithmetic used by the quadrature engine.
//
// Conventions: Haar measure with Vol(Z_p) = 1, |p| = p^{-1}.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "gsp4lab/rational.hpp"

namespace gsp4lab {

using Complex = std::complex<double>;

Valuation vp(const Rat& r, long p);
Valuation vp_int(const BigInt& n, long p);

// Fractional part: f in [0,1) with denominator a power of p and r - f in Z_p
// localized at p (denominator of r - f coprime to p).
Rat frac_part(const Rat& r, long p);

// theta_p(r) = e^{2 pi i frac_part(r, p)}.
Complex theta(const Rat& r, long p);

// Average of theta(lambda a) over units lambda in Z_p^x:
//   1 if v(a) >= 0, -1/(p-1) if v(a) = -1, 0 if v(a) <= -2.
Rat gauss_average(const Rat& a, long p);

// One cell of a measured partition of a p-adic coordinate window.
struct RegionCell {
  Rat representative;
  Rat measure;
  int precision_exponent;  // cell = rep + p^{precision_exponent} Z_p
};

// Partition of {x : v_min <= v(x)} intersected with the shells
// v(x) = v_min .. v_max, at residue precision m >= 1 relative to each shell,
// plus nothing beyond v_max (callers append their own deep cells if needed).
// The shell v(x) = k splits into p^{m-1}(p-1) cells of measure p^{-(k+m)}.
std::vector<RegionCell> enumerate_region(long v_min, long v_max, int m, long p);

// ---------------------------------------------------------------------------
// Ball arithmetic: x = center + p^r Z_p (radius exponent r; r = +inf means
// the exact point). Non-archimedean interval arithmetic, used to certify
// local constancy of integrands on product cells.
// ---------------------------------------------------------------------------

constexpr long kRadiusExact = std::numeric_limits<long>::max() / 4;

// Certified valuation interval [lo, hi] (hi may be infinite).
struct VInterval {
  Valuation lo;
  Valuation hi;
  bool exact() const { return lo == hi; }
};

struct PBall {
  Rat c;
  long r = kRadiusExact;  // ball = c + p^r Z_p
  long p = 0;             // 0 = prime context not yet attached

  PBall() = default;
  PBall(long v) : c(v) {}  // NOLINT: scalar-concept constant, context-free
  PBall(Rat center, long radius_exp, long prime) : c(std::move(center)), r(radius_exp), p(prime) {}
  static PBall exact(Rat v, long prime) { return PBall(std::move(v), kRadiusExact, prime); }

  bool is_exact() const { return r >= kRadiusExact; }
  bool is_zero() const { return is_exact() && c.is_zero(); }

  VInterval vinterval() const {
    Valuation vc = vp(c, p);
    if (is_exact()) return {vc, vc};
    if (vc < Valuation(r)) return {vc, vc};
    return {Valuation(r), Valuation::infinity()};
  }
  // Certified exact valuation, or throws SplitRequest via caller checks.
  bool v_certain() const { return vinterval().exact(); }
  bool contains_zero_possibly() const { return !v_certain(); }
};

// Raised by ball computations that cannot certify a result at the current
// cell width; the caller splits the cell and retries. The site code is a
// diagnostic hint (0 unknown, 1 ball_inv, 2 pivot, 3 value-cert, 4 u-cert).
struct SplitRequest {
  int site = 0;
};

inline long ball_prime(const PBall& a, const PBall& b) { return a.p ? a.p : b.p; }

PBall ball_add(const PBall& a, const PBall& b);
PBall ball_sub(const PBall& a, const PBall& b);
PBall ball_neg(const PBall& a);
PBall ball_mul(const PBall& a, const PBall& b);
PBall ball_inv(const PBall& a);  // requires certified v(a); throws SplitRequest otherwise
PBall ball_div(const PBall& a, const PBall& b);

inline PBall operator+(const PBall& a, const PBall& b) { return ball_add(a, b); }
inline PBall operator-(const PBall& a, const PBall& b) { return ball_sub(a, b); }
inline PBall operator*(const PBall& a, const PBall& b) { return ball_mul(a, b); }
inline PBall& operator+=(PBall& a, const PBall& b) { return a = a + b; }

// ---------------------------------------------------------------------------
// First-order difference jets over a product cell: the exact pointwise
// identity f(q) - f(center) = sum_i d_i(q) (q_i - center_i) with the
// coefficient functions d_i enclosed in balls. Rational operations preserve
// the identity with no remainder:
//   (fg): d_i = f(q) dg_i + g(center) df_i
//   1/f:  d_i = -df_i / (f(q) f(center)).
// The value component v is the plain range ball; v.c is the center value.
// ---------------------------------------------------------------------------

struct PJet {
  PBall v;
  std::array<PBall, 4> d{};

  PJet() = default;
  PJet(long k) : v(k) {}  // NOLINT: scalar-concept constant
  bool is_zero() const {
    if (!v.is_zero()) return false;
    for (const PBall& g : d)
      if (!g.is_zero()) return false;
    return true;
  }
};

PJet jet_const(const Rat& r, long p);
PJet jet_coord(int axis, const PBall& range, long p);
PJet jet_add(const PJet& a, const PJet& b);
PJet jet_sub(const PJet& a, const PJet& b);
PJet jet_neg(const PJet& a);
PJet jet_mul(const PJet& a, const PJet& b);
PJet jet_inv(const PJet& a);  // throws SplitRequest when v is not certified
PJet jet_div(const PJet& a, const PJet& b);

inline PJet operator+(const PJet& a, const PJet& b) { return jet_add(a, b); }
inline PJet operator-(const PJet& a, const PJet& b) { return jet_sub(a, b); }
inline PJet operator*(const PJet& a, const PJet& b) { return jet_mul(a, b); }
inline PJet& operator+=(PJet& a, const PJet& b) { return a = a + b; }

}  // namespace gsp4lab
