#pragma once

// Iwasawa decomposition g = n m k over Q_p by constrained column elimination:
// right multiplication by GSp4(Z_p) generators (root unipotents with Z_p
// parameters, Weyl representatives), pivoting on minimal-valuation entries.
// Works in the column-permuted coordinates (3<->4) where the Borel is upper
// triangular; the symplectic relations make rows 1-2 reduce for free once
// rows 4 and 3 are cleared.
//
// The same elimination runs on exact rationals and on p-adic balls; the ball
// instantiation certifies that the decomposition data (coset label, torus
// valuations, Levi fraction) is constant on a product cell, and requests a
// split when it cannot.

#include "gsp4lab/gmat.hpp"
#include "gsp4lab/laurent.hpp"
#include "gsp4lab/padic.hpp"

namespace gsp4lab {

constexpr long kValInf = std::numeric_limits<long>::max() / 8;

// Scalar adapters for the templated elimination.
inline long val_lo(const Rat& a, long p) {
  Valuation v = vp(a, p);
  return v.is_infinity() ? kValInf : v.value();
}
inline long val_hi(const Rat& a, long p) { return val_lo(a, p); }
inline Rat scal_div(const Rat& a, const Rat& b, long) { return a / b; }

inline long val_lo(const PBall& a, long) {
  VInterval v = a.vinterval();
  return v.lo.is_infinity() ? kValInf : v.lo.value();
}
inline long val_hi(const PBall& a, long) {
  VInterval v = a.vinterval();
  return v.hi.is_infinity() ? kValInf : v.hi.value();
}
inline PBall scal_div(const PBall& a, const PBall& b, long) { return ball_div(a, b); }

inline long val_lo(const PJet& a, long p) { return val_lo(a.v, p); }
inline long val_hi(const PJet& a, long p) { return val_hi(a.v, p); }
inline PJet scal_div(const PJet& a, const PJet& b, long) { return jet_div(a, b); }

template <class S>
S scal_from(const Rat& r, long p);
template <>
inline Rat scal_from<Rat>(const Rat& r, long) {
  return r;
}
template <>
inline PBall scal_from<PBall>(const Rat& r, long p) {
  return PBall::exact(r, p);
}
template <>
inline PJet scal_from<PJet>(const Rat& r, long p) {
  return jet_const(r, p);
}

struct IwasawaData {
  QMat n;  // in N_P(Q_p)
  QMat m;  // in M_P(Q_p)
  QMat k;  // in GSp4(Z_p)
};

// Core split g = b k with b in the Borel shape, k in GSp4(Z_p).
template <class S>
struct BorelSplit {
  Mat4<S> b;
  Mat4<S> k;
};

template <class S>
BorelSplit<S> borel_split(const Mat4<S>& g, long p);

// Full decomposition for a parabolic (exact scalars).
IwasawaData iwasawa(const QMat& g, Parabolic P, long p);

// Power function I_{P,nu}(g) for real nu, computed through the Iwasawa
// decomposition. nu = (nu1, nu2) for Borel, (nu1, ignored) otherwise.
double power_function(const QMat& g, Parabolic P, double nu1, double nu2, long p);

// Symbolic variant: monomial in H1 = p^{-nu1/2}, H2 = p^{-nu2/2}.
LaurentExpr power_function_symbolic(const QMat& g, Parabolic P, long p);

// Borel torus valuations (v(a1), v(a2), v(mu)) read from the split.
struct TorusValuations {
  long v1, v2, vmu;
};
TorusValuations torus_valuations(const QMat& g, long p);
// Independent route: bottom-row gcd and bottom 2x2 minor content close the
// system together with v(mu).
TorusValuations torus_valuations_via_minors(const QMat& g, long p);

}  // namespace gsp4lab
