#pragma once

// The sixteen closed-form local integrals J_p(phi, nu) for the coset-supported
// sections, one per (P, label), as exact Laurent expressions in
//   T1 = p^{-nu1}, T2 = p^{-nu2} (T1 doubles as T = p^{-nu}),
//   Q = p^{-1/2}, and the formal Whittaker symbols,
// together with the three spherical local-factor identities.

#include <complex>

#include "gsp4lab/gmat.hpp"
#include "gsp4lab/laurent.hpp"

namespace gsp4lab {

struct ClosedForm {
  Parabolic parabolic;
  WeylWord label;
  LaurentExpr expr;
};

ClosedForm closed_form(Parabolic P, WeylWord label, long p);

// Numeric evaluation of the closed form under the spherical substitution at
// real nu and Satake parameter alpha (|alpha| = 1 or alpha = 1).
std::complex<double> closed_form_value(Parabolic P, WeylWord label, double nu1, double nu2,
                                       std::complex<double> alpha, long p);

// The inverse local L-factor each spherical-substituted sum must equal:
//   Klingen: (1 - A^2 p^{-1} T)(1 - p^{-1} T)(1 - A^{-2} p^{-1} T)
//   Siegel:  (1 - p^{-1} T^2)(1 - p^{-1} T (A + A^{-1}) + p^{-2} T^2)
//   Borel:   prod of zeta_p^{-1}(1+nu1), (1+nu2), (1+nu1+nu2), (1+nu1-nu2).
LaurentExpr sanity_target(Parabolic P, long p);

struct SanityResult {
  bool pass;
  LaurentExpr difference;
};
SanityResult sanity_identity(Parabolic P, long p);

}  // namespace gsp4lab
