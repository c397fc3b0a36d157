#pragma once

// Unramified Whittaker values: the GL2 Casselman-Shalika values (the formal
// substitution table used by the local-factor identities), Sp(4) characters
// via the Weyl character formula, and the GSp4 torus test values g_{a,b,c}.

#include <complex>

#include "gsp4lab/laurent.hpp"

namespace gsp4lab {

// W(diag(p^n, 1)) for the spherical GL2 vector with Satake parameter A:
//   Q^n (A^{n+1} - A^{-(n+1)})/(A - A^{-1})  for n >= 0,  0 for n < 0,
// expanded as the geometric sum Q^n sum_{j=0..n} A^{n-2j}.
LaurentExpr cs_value(long n, long p);
std::complex<double> cs_value_num(long n, std::complex<double> alpha, long p);

// Spherical substitution of the formal Whittaker symbols:
//   W(1) -> 1, W(w) -> 1, W(p) -> cs(1), W(p2) -> cs(2), W(p^-1 w) -> 0.
LaurentExpr spherical_substitution(const LaurentExpr& e);

// Weyl-orbit canonical form of a tempered Satake pair: angles
// 0 <= theta1 <= theta2 <= pi.
struct SatakePoint {
  std::complex<double> alpha, beta;
  static SatakePoint tempered(double theta1, double theta2);
};
void canonicalize_angles(double& t1, double& t2);

// Character of the irreducible Sp(4) representation with highest weight
// (l1 >= l2 >= 0) at eigenvalue angles; Weyl-denominator walls are resolved
// by perturbation and Richardson extrapolation.
double sp4_character(long l1, long l2, double theta1, double theta2);
long sp4_dimension(long l1, long l2);

// Unramified GSp4 Whittaker value at diag(p^a, p^b, p^{c-a}, p^{c-b}) for a
// tempered trivial-central-character Satake point: zero unless the coweight
// is dominant (a >= b >= c - b), else
//   p^{-(2a + b - 3c/2)} * chi_{(a,b)}^{Sp4}(theta1, theta2).
// The p-power is the half-sum modulus factor, pinned so that g_{0,0,0} = 1.
std::complex<double> g_abc(long a, long b, long c, const SatakePoint& s, long p);

}  // namespace gsp4lab
