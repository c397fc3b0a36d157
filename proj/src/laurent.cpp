#include "gsp4lab/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace gsp4lab {

const char* sym_name(Sym s) {
  switch (s) {
    case Sym::Q: return "Q";
    case Sym::H1: return "H1";
    case Sym::H2: return "H2";
    case Sym::T1: return "T1";
    case Sym::T2: return "T2";
    case Sym::A: return "A";
    case Sym::W1: return "W(1)";
    case Sym::Ww: return "W(w)";
    case Sym::Wp: return "W(p)";
    case Sym::Wp2: return "W(p2)";
    case Sym::Wpm1w: return "W(p-1w)";
    default: return "?";
  }
}

LaurentExpr LaurentExpr::constant(const Rat& c, long p) {
  LaurentExpr e(p);
  ExpVec z{};
  e.add_term(z, c);
  return e;
}

LaurentExpr LaurentExpr::monomial(Sym s, int exp, long p, const Rat& coeff) {
  LaurentExpr e(p);
  ExpVec v{};
  v[static_cast<int>(s)] = exp;
  e.add_term(v, coeff);
  return e;
}

void LaurentExpr::reduce(ExpVec& e, Rat& c) const {
  // Q^2 = 1/p, and Q^{-1} = p Q. Normalize Q-exponent to {0,1}.
  int& q = e[static_cast<int>(Sym::Q)];
  if (q >= 2 || q < 0) {
    long k = (q >= 0) ? q / 2 : -((-q + 1) / 2);
    // Q^{2k + r} with r in {0,1}: multiply coefficient by p^{-k}.
    q -= 2 * static_cast<int>(k);
    c = c * Rat(BigInt(p_)).pow(-k);
  }
  // Hi^2 = Ti, Hi^{-1} = Hi Ti^{-1}. Normalize H-exponents to {0,1}.
  auto fold = [&](Sym h, Sym t) {
    int& hv = e[static_cast<int>(h)];
    if (hv >= 2 || hv < 0) {
      long k = (hv >= 0) ? hv / 2 : -((-hv + 1) / 2);
      hv -= 2 * static_cast<int>(k);
      e[static_cast<int>(t)] += static_cast<int>(k);
    }
  };
  fold(Sym::H1, Sym::T1);
  fold(Sym::H2, Sym::T2);
}

LaurentExpr& LaurentExpr::add_term(ExpVec e, Rat c) {
  if (c.is_zero()) return *this;
  reduce(e, c);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

LaurentExpr operator+(const LaurentExpr& a, const LaurentExpr& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("LaurentExpr: mixed prime contexts");
  LaurentExpr r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

LaurentExpr operator-(const LaurentExpr& a, const LaurentExpr& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("LaurentExpr: mixed prime contexts");
  LaurentExpr r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

LaurentExpr LaurentExpr::operator-() const {
  LaurentExpr r(p_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentExpr operator*(const LaurentExpr& a, const LaurentExpr& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("LaurentExpr: mixed prime contexts");
  LaurentExpr r(a.p_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      ExpVec e;
      for (int i = 0; i < kNumSyms; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentExpr LaurentExpr::substitute(Sym s, const LaurentExpr& value) const {
  int si = static_cast<int>(s);
  LaurentExpr r(p_);
  // Precompute inverse if needed (monomial only).
  std::optional<LaurentExpr> inv;
  for (const auto& [e, c] : terms_) {
    if (e[si] >= 0) continue;
    if (value.terms_.size() != 1) throw std::domain_error("substitute: negative power of non-monomial binding");
    const auto& [me, mc] = *value.terms_.begin();
    ExpVec ie;
    for (int i = 0; i < kNumSyms; ++i) ie[i] = -me[i];
    LaurentExpr m(p_);
    m.add_term(ie, mc.inverse());
    inv = m;
    break;
  }
  for (const auto& [e, c] : terms_) {
    LaurentExpr term(p_);
    ExpVec rest = e;
    int k = rest[si];
    rest[si] = 0;
    term.add_term(rest, c);
    const LaurentExpr& base = k >= 0 ? value : *inv;
    for (int i = 0; i < std::abs(k); ++i) term = term * base;
    r = r + term;
  }
  return r;
}

std::complex<double> LaurentExpr::eval(const std::map<Sym, std::complex<double>>& bindings) const {
  std::complex<double> total = 0;
  double sq = 1.0 / std::sqrt(static_cast<double>(p_));
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_double();
    for (int i = 0; i < kNumSyms; ++i) {
      if (e[i] == 0) continue;
      Sym s = static_cast<Sym>(i);
      std::complex<double> base;
      if (s == Sym::Q) {
        base = sq;
      } else {
        auto it = bindings.find(s);
        if (it == bindings.end()) throw std::domain_error(std::string("eval: unbound symbol ") + sym_name(s));
        base = it->second;
      }
      t *= std::pow(base, e[i]);
    }
    total += t;
  }
  return total;
}

std::string LaurentExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < kNumSyms; ++i) {
      if (e[i] == 0) continue;
      os << "*" << sym_name(static_cast<Sym>(i));
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

LaurentExpr lp_one(long p) { return LaurentExpr::constant(Rat(1), p); }
LaurentExpr lp_rat(const Rat& c, long p) { return LaurentExpr::constant(c, p); }

LaurentExpr lp_halfpow(long k_half, long p) {
  // p^{-k/2} = Q^k.
  return LaurentExpr::monomial(Sym::Q, static_cast<int>(k_half), p);
}

LaurentExpr zeta_p_inverse(long c0, long c1, long c2, long p) {
  LaurentExpr e = lp_one(p);
  ExpVec v{};
  v[static_cast<int>(Sym::T1)] = static_cast<int>(c1);
  v[static_cast<int>(Sym::T2)] = static_cast<int>(c2);
  LaurentExpr m(p);
  m.add_term(v, Rat(BigInt(p)).pow(-c0));
  return e - m;
}

}  // namespace gsp4lab
