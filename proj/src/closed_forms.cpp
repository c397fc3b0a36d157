#include "gsp4lab/closed_forms.hpp"

#include <stdexcept>

#include "gsp4lab/whittaker.hpp"

namespace gsp4lab {

namespace {

// Monomial c * Q^q * T1^{t1} * T2^{t2} * W.
LaurentExpr mono(long p, const Rat& c, int q, int t1, int t2, Sym w = Sym::kCount) {
  ExpVec e{};
  e[static_cast<int>(Sym::Q)] = q;
  e[static_cast<int>(Sym::T1)] = t1;
  e[static_cast<int>(Sym::T2)] = t2;
  if (w != Sym::kCount) e[static_cast<int>(w)] = 1;
  LaurentExpr r(p);
  r.add_term(e, c);
  return r;
}

Rat pi(long p) { return Rat(BigInt(1), BigInt(p)); }

}  // namespace

ClosedForm closed_form(Parabolic P, WeylWord label, long p) {
  Rat q1 = Rat(1) - pi(p);  // (1 - p^{-1})
  LaurentExpr e(p);
  if (P == Parabolic::Klingen) {
    switch (label) {
      case WeylWord::E:
        // W(1)[(1-p^{-1})(p^{-1-nu} + p^{-1-2nu}) - p^{-3-3nu}]
        //   - W(w) p^{-1-2nu}(1-p^{-1})
        e = mono(p, q1 * pi(p), 0, 1, 0, Sym::W1) + mono(p, q1 * pi(p), 0, 2, 0, Sym::W1) -
            mono(p, pi(p).pow(3), 0, 3, 0, Sym::W1) - mono(p, q1 * pi(p), 0, 2, 0, Sym::Ww);
        break;
      case WeylWord::S1:
        // p^{-1-2nu} W(p^2) - (1-p^{-1}) p^{-1-nu} W(1)
        e = mono(p, pi(p), 0, 2, 0, Sym::Wp2) - mono(p, q1 * pi(p), 0, 1, 0, Sym::W1);
        break;
      case WeylWord::S1S2:
        e = -mono(p, Rat(1), 0, 1, 0, Sym::Wp2);  // -p^{-nu} W(p^2)
        break;
      case WeylWord::S1S2S1:
        e = mono(p, Rat(1), 0, 0, 0, Sym::W1);
        break;
      default: throw std::invalid_argument("closed_form: bad Klingen label");
    }
  } else if (P == Parabolic::Siegel) {
    switch (label) {
      case WeylWord::E:
        // -p^{-3-4nu} W(w) - (1-p^{-1}) p^{-3/2-3nu} W(p^{-1} w)
        e = -mono(p, pi(p).pow(3), 0, 4, 0, Sym::Ww) - mono(p, q1 * pi(p), 1, 3, 0, Sym::Wpm1w);
        break;
      case WeylWord::S2:
        // p^{-1/2-nu}(1-p^{-1}) W(p^{-1} w) - p^{-1-2nu}(1-p^{-1}) W(1)
        //   + p^{-3/2-3nu} W(p)
        e = mono(p, q1, 1, 1, 0, Sym::Wpm1w) - mono(p, q1 * pi(p), 0, 2, 0, Sym::W1) +
            mono(p, pi(p), 1, 3, 0, Sym::Wp);
        break;
      case WeylWord::S2S1:
        e = -mono(p, Rat(1), 1, 1, 0, Sym::Wp);  // -p^{-1/2-nu} W(p)
        break;
      case WeylWord::S2S1S2:
        e = mono(p, Rat(1), 0, 0, 0, Sym::W1);
        break;
      default: throw std::invalid_argument("closed_form: bad Siegel label");
    }
  } else {
    switch (label) {
      case WeylWord::E:
        e = -mono(p, q1 * pi(p).pow(2), 0, 1, 1) - mono(p, q1 * pi(p).pow(2), 0, 2, 0) -
            mono(p, q1 * pi(p).pow(2), 0, 2, 1) + mono(p, pi(p).pow(4), 0, 3, 1);
        break;
      case WeylWord::S1:
        e = mono(p, q1 * pi(p).pow(2), 0, 1, 1) + mono(p, q1 * pi(p).pow(2), 0, 2, 1) +
            mono(p, q1 * pi(p).pow(2), 0, 2, 0) - mono(p, pi(p).pow(3), 0, 2, 2);
        break;
      case WeylWord::S2:
        e = mono(p, q1 * pi(p), 0, 1, 0) + mono(p, q1 * pi(p).pow(2), 0, 2, 0) +
            mono(p, q1 * pi(p).pow(2), 0, 2, 1) - mono(p, pi(p).pow(3), 0, 3, 0);
        break;
      case WeylWord::S1S2:
        e = mono(p, pi(p).pow(2), 0, 1, 2) - mono(p, q1 * pi(p), 0, 1, 0) -
            mono(p, q1 * pi(p), 0, 1, 1);
        break;
      case WeylWord::S2S1:
        e = mono(p, pi(p).pow(2), 0, 2, -1) - mono(p, q1 * pi(p), 0, 1, 0);
        break;
      case WeylWord::S1S2S1:
        e = -mono(p, pi(p), 0, 0, 1);
        break;
      case WeylWord::S2S1S2:
        e = -mono(p, pi(p), 0, 1, -1);
        break;
      case WeylWord::J:
        e = lp_one(p);
        break;
      default: throw std::invalid_argument("closed_form: bad Borel label");
    }
  }
  return ClosedForm{P, label, e};
}

std::complex<double> closed_form_value(Parabolic P, WeylWord label, double nu1, double nu2,
                                       std::complex<double> alpha, long p) {
  LaurentExpr s = spherical_substitution(closed_form(P, label, p).expr);
  std::map<Sym, std::complex<double>> b;
  b[Sym::A] = alpha;
  b[Sym::T1] = std::pow(static_cast<double>(p), -nu1);
  b[Sym::T2] = std::pow(static_cast<double>(p), -nu2);
  b[Sym::H1] = std::pow(static_cast<double>(p), -nu1 / 2);
  b[Sym::H2] = std::pow(static_cast<double>(p), -nu2 / 2);
  return s.eval(b);
}

LaurentExpr sanity_target(Parabolic P, long p) {
  Rat ip = Rat(BigInt(1), BigInt(p));
  switch (P) {
    case Parabolic::Klingen: {
      // (1 - A^2 p^{-1}T)(1 - p^{-1}T)(1 - A^{-2} p^{-1}T)
      auto factor = [&](int apow) {
        ExpVec e{};
        e[static_cast<int>(Sym::T1)] = 1;
        e[static_cast<int>(Sym::A)] = apow;
        LaurentExpr m(p);
        m.add_term(e, ip);
        return lp_one(p) - m;
      };
      return factor(2) * factor(0) * factor(-2);
    }
    case Parabolic::Siegel: {
      // (1 - p^{-1}T^2)(1 - p^{-1}T(A + A^{-1}) + p^{-2}T^2)
      LaurentExpr f1(p);
      {
        ExpVec e{};
        e[static_cast<int>(Sym::T1)] = 2;
        f1 = lp_one(p);
        LaurentExpr m(p);
        m.add_term(e, ip);
        f1 = f1 - m;
      }
      LaurentExpr f2 = lp_one(p);
      for (int apow : {1, -1}) {
        ExpVec e{};
        e[static_cast<int>(Sym::T1)] = 1;
        e[static_cast<int>(Sym::A)] = apow;
        LaurentExpr m(p);
        m.add_term(e, ip);
        f2 = f2 - m;
      }
      {
        ExpVec e{};
        e[static_cast<int>(Sym::T1)] = 2;
        LaurentExpr m(p);
        m.add_term(e, ip * ip);
        f2 = f2 + m;
      }
      return f1 * f2;
    }
    case Parabolic::Borel:
      return zeta_p_inverse(1, 1, 0, p) * zeta_p_inverse(1, 0, 1, p) *
             zeta_p_inverse(1, 1, 1, p) * zeta_p_inverse(1, 1, -1, p);
  }
  throw std::logic_error("sanity_target");
}

SanityResult sanity_identity(Parabolic P, long p) {
  LaurentExpr sum(p);
  for (WeylWord w : coset_reps(P)) sum = sum + closed_form(P, w, p).expr;
  LaurentExpr diff = spherical_substitution(sum) - sanity_target(P, p);
  return SanityResult{diff.is_zero(), diff};
}

}  // namespace gsp4lab
