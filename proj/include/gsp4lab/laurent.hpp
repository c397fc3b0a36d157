#pragma once

// Exact multivariate Laurent algebra over Q in the formal symbols
//   Q  = p^{-1/2}      (reduced by Q^2 -> 1/p; the prime is a fixed context)
//   H1 = p^{-nu1/2}, H2 = p^{-nu2/2}   (reduced by Hi^2 -> Ti)
//   T1 = p^{-nu1},  T2 = p^{-nu2}      (T1 doubles as T = p^{-nu} for the
//                                       maximal-parabolic single parameter)
//   A  = GL2 Satake parameter
//   W(label) = formal Whittaker values W(1), W(w), W(diag(p,1)),
//              W(diag(p^2,1)), W(diag(p^-1,1)w)
//
// All closed-form local integrals and local L-factor identities live here;
// equality is decided by canonical normal form.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "gsp4lab/rational.hpp"

namespace gsp4lab {

enum class Sym : int { Q = 0, H1, H2, T1, T2, A, W1, Ww, Wp, Wp2, Wpm1w, kCount };
constexpr int kNumSyms = static_cast<int>(Sym::kCount);

const char* sym_name(Sym s);

using ExpVec = std::array<int, kNumSyms>;

class LaurentExpr {
 public:
  explicit LaurentExpr(long p) : p_(p) {}
  static LaurentExpr constant(const Rat& c, long p);
  static LaurentExpr monomial(Sym s, int exp, long p, const Rat& coeff = Rat(1));

  long prime() const { return p_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ExpVec, Rat>& terms() const { return terms_; }

  LaurentExpr& add_term(ExpVec e, Rat c);  // applies Q/H reduction, drops zeros

  friend LaurentExpr operator+(const LaurentExpr& a, const LaurentExpr& b);
  friend LaurentExpr operator-(const LaurentExpr& a, const LaurentExpr& b);
  friend LaurentExpr operator*(const LaurentExpr& a, const LaurentExpr& b);
  LaurentExpr operator-() const;
  friend bool operator==(const LaurentExpr& a, const LaurentExpr& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }

  // Substitute a symbol by a Laurent expression. Negative exponents require
  // the binding to be an invertible monomial.
  LaurentExpr substitute(Sym s, const LaurentExpr& value) const;

  // Full numeric evaluation; every symbol with a nonzero exponent must be
  // bound (Q is implicitly p^{-1/2}, H-syms resolve through the T bindings
  // only when their exponent is zero after reduction, so bind them if used).
  std::complex<double> eval(const std::map<Sym, std::complex<double>>& bindings) const;

  std::string str() const;  // canonical text form: sorted monomials, exact coefficients

 private:
  void reduce(ExpVec& e, Rat& c) const;
  long p_;
  std::map<ExpVec, Rat> terms_;
};

// Convenience builders (context prime p).
LaurentExpr lp_one(long p);
LaurentExpr lp_rat(const Rat& c, long p);
// p^{-k/2} as a monomial: even k folds into the coefficient, odd k keeps one Q.
LaurentExpr lp_halfpow(long k_half, long p);
// zeta_p(c0 + c1*nu1 + c2*nu2)^{-1} = 1 - p^{-c0} T1^{c1} T2^{c2}.
LaurentExpr zeta_p_inverse(long c0, long c1, long c2, long p);

}  // namespace gsp4lab
