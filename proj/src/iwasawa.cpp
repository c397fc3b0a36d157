#include "gsp4lab/iwasawa.hpp"

#include <cmath>
#include <stdexcept>

namespace gsp4lab {

namespace {

inline int primed(int i) { return i == 2 ? 3 : (i == 3 ? 2 : i); }

template <class S>
Mat4<S> to_primed(const Mat4<S>& g) {
  Mat4<S> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = g(primed(i), primed(j));
  return r;
}

// Elimination state in primed coordinates. Column ops act on g; the matching
// inverse row ops accumulate k (so that g_orig = g_current * k at all times
// ... precisely: g_current = g_orig * E, k = E^{-1}).
template <class S>
struct Elim {
  Mat4<S> g;
  Mat4<S> k;
  long p;

  // col jd += t * col js ; inverse row op: row js -= t * row jd
  void colop(int js, int jd, const S& t) {
    for (int i = 0; i < 4; ++i) g(i, jd) = g(i, jd) + t * g(i, js);
    for (int j = 0; j < 4; ++j) k(js, j) = k(js, j) - t * k(jd, j);
  }
  // Paired root ops (primed coordinates; all with Z_p parameters):
  //   u21_43(t): col0 += t col1, col2 -= t col3   [negative alpha1]
  //   u31_42(t): col0 += t col2, col1 += t col3   [negative e1+e2]
  //   u41(t):    col0 += t col3                   [negative 2e1]
  //   u32(t):    col1 += t col2                   [negative 2e2]
  void u21_43(const S& t) {
    colop(1, 0, t);
    colop(3, 2, S(0) - t);
  }
  void u31_42(const S& t) {
    colop(2, 0, t);
    colop(3, 1, t);
  }
  void u41(const S& t) { colop(3, 0, t); }
  void u32(const S& t) { colop(2, 1, t); }

  void weyl(const QMat& w) {
    // g := g * w'; k := w'^{-1} * k = w'^T * k  (signed permutation).
    QMat wp;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) wp(i, j) = w(primed(i), primed(j));
    Mat4<S> gw;
    Mat4<S> kw;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        S accg = scal_from<S>(Rat(0), p);
        S acck = scal_from<S>(Rat(0), p);
        for (int l = 0; l < 4; ++l) {
          if (!wp(l, j).is_zero()) accg = accg + g(i, l) * scal_from<S>(wp(l, j), p);
          if (!wp(l, i).is_zero()) acck = acck + scal_from<S>(wp(l, i), p) * k(l, j);
        }
        gw(i, j) = accg;
        kw(i, j) = acck;
      }
    g = gw;
    k = kw;
  }
};

// Weyl rep moving primed column j into primed column 3 (pivot position).
// Right multiplication by w places old column perm'(3) at position 3, so the
// table is indexed by perm'(3).
const QMat& weyl_to_col3(int j) {
  static const std::array<QMat, 4> table = [] {
    std::array<QMat, 4> t;
    bool found[4] = {false, false, false, false};
    for (int w = 0; w < kNumWeyl; ++w) {
      const QMat& m = weyl_matrix(static_cast<WeylWord>(w));
      int src = -1;  // primed column landing at primed position 3
      for (int i = 0; i < 4; ++i)
        if (!m(primed(i), primed(3)).is_zero()) src = i;
      if (src >= 0 && !found[src]) {
        found[src] = true;
        t[src] = m;
      }
    }
    for (int j2 = 0; j2 < 4; ++j2)
      if (!found[j2]) throw std::logic_error("weyl_to_col3: incomplete table");
    return t;
  }();
  return table[j];
}

template <class S>
int pick_pivot(const Elim<S>& e, int row, const int* cols, int ncols) {
  // Prefer the last listed column on ties (keeps the pivot in place when
  // already minimal); certification is v_hi(pivot) <= v_lo(others).
  int best = -1;
  long best_hi = kValInf + 1;
  for (int idx = ncols - 1; idx >= 0; --idx) {
    long hi = val_hi(e.g(row, cols[idx]), e.p);
    if (hi < best_hi) {
      best_hi = hi;
      best = idx;
    }
  }
  if (best < 0 || best_hi >= kValInf) {
    // No entry with a certified finite valuation. A genuinely zero row is
    // impossible (the matrix is invertible); with balls it means every entry
    // might vanish at the current width, so the cell must be refined.
    for (int idx = 0; idx < ncols; ++idx)
      if (val_lo(e.g(row, cols[idx]), e.p) < kValInf) throw SplitRequest{2};
    throw std::logic_error("pick_pivot: zero row");
  }
  for (int idx = 0; idx < ncols; ++idx) {
    if (idx == best) continue;
    if (!(best_hi <= val_lo(e.g(row, cols[idx]), e.p))) throw SplitRequest{2};
  }
  return cols[best];
}


// The entries forced below vanish identically (pointwise, by the cleared
// column operations and the symplectic pairings against the reduced bottom
// rows); assert that on the exact path before overwriting.
inline void assert_forced_zero(const Rat& v) {
  if (!v.is_zero()) throw std::logic_error("borel_split: forced entry not zero");
}
inline void assert_forced_zero(const PBall& v) {
  if (!v.c.is_zero()) throw std::logic_error("borel_split: forced entry center not zero");
}
inline void assert_forced_zero(const PJet& v) {
  if (!v.v.c.is_zero()) throw std::logic_error("borel_split: forced entry center not zero");
}
}  // namespace

template <class S>
BorelSplit<S> borel_split(const Mat4<S>& g_in, long p) {
  Elim<S> e;
  e.g = to_primed(g_in);
  for (int i = 0; i < 16; ++i) e.k.e[i] = scal_from<S>(i % 5 == 0 ? Rat(1) : Rat(0), p);
  e.p = p;

  // Row 4 (primed): clear (4,1), (4,2), (4,3), pivot at (4,4).
  {
    const int cols[4] = {0, 1, 2, 3};
    int piv = pick_pivot(e, 3, cols, 4);
    if (piv != 3) e.weyl(weyl_to_col3(piv));
    // clear (4,3): col2 -= t col3 with t = g43/g44 -> u21_43(t)
    if (!e.g(3, 2).is_zero()) e.u21_43(scal_div(e.g(3, 2), e.g(3, 3), p));
    // clear (4,2): col1 += t col3 with t = -g42/g44 -> u31_42(t)
    if (!e.g(3, 1).is_zero()) e.u31_42(S(0) - scal_div(e.g(3, 1), e.g(3, 3), p));
    // clear (4,1)
    if (!e.g(3, 0).is_zero()) e.u41(S(0) - scal_div(e.g(3, 0), e.g(3, 3), p));
    assert_forced_zero(e.g(3, 0));
    assert_forced_zero(e.g(3, 1));
    assert_forced_zero(e.g(3, 2));
    e.g(3, 0) = scal_from<S>(Rat(0), p);
    e.g(3, 1) = scal_from<S>(Rat(0), p);
    e.g(3, 2) = scal_from<S>(Rat(0), p);
  }
  // Row 3: (3,1) vanishes by the symplectic pairing with row 4; pivot among
  // (3,2), (3,3).
  {
    assert_forced_zero(e.g(2, 0));
    e.g(2, 0) = scal_from<S>(Rat(0), p);
    const int cols[2] = {1, 2};
    int piv = pick_pivot(e, 2, cols, 2);
    if (piv != 2) e.weyl(gen_s2());  // primed column swap 1<->2
    if (!e.g(2, 1).is_zero()) e.u32(S(0) - scal_div(e.g(2, 1), e.g(2, 2), p));
    assert_forced_zero(e.g(2, 1));
    e.g(2, 1) = scal_from<S>(Rat(0), p);
  }
  // Row 2: (2,1) vanishes by the pairing with row 4.
  assert_forced_zero(e.g(1, 0));
  e.g(1, 0) = scal_from<S>(Rat(0), p);

  BorelSplit<S> out;
  out.b = to_primed(e.g);  // back to original coordinates
  out.k = to_primed(e.k);
  return out;
}

template BorelSplit<Rat> borel_split<Rat>(const Mat4<Rat>&, long);
template BorelSplit<PBall> borel_split<PBall>(const Mat4<PBall>&, long);
template BorelSplit<PJet> borel_split<PJet>(const Mat4<PJet>&, long);

IwasawaData iwasawa(const QMat& g, Parabolic P, long p) {
  BorelSplit<Rat> s = borel_split<Rat>(g, p);
  const QMat& b = s.b;
  // b = u * a with u in U, a the diagonal torus.
  QMat a;
  for (int i = 0; i < 4; ++i) a(i, i) = b(i, i);
  QMat u = b * qmat_inverse(a);
  IwasawaData d;
  d.k = s.k;
  switch (P) {
    case Parabolic::Borel:
      d.n = u;
      d.m = a;
      break;
    case Parabolic::Siegel: {
      // u = n_S * m_x with m_x the M-unipotent carrying x = u(0,1).
      QMat mx = QMat::identity();
      mx(0, 1) = u(0, 1);
      mx(3, 2) = -u(0, 1);
      d.n = u * qmat_inverse(mx);
      d.m = mx * a;
      break;
    }
    case Parabolic::Klingen: {
      QMat mc = QMat::identity();
      mc(1, 3) = u(1, 3);
      d.n = u * qmat_inverse(mc);
      d.m = mc * a;
      break;
    }
  }
  return d;
}

TorusValuations torus_valuations(const QMat& g, long p) {
  BorelSplit<Rat> s = borel_split<Rat>(g, p);
  TorusValuations t;
  t.v1 = val_lo(s.b(0, 0), p);
  t.v2 = val_lo(s.b(1, 1), p);
  t.vmu = val_lo(multiplier(g), p);
  return t;
}

TorusValuations torus_valuations_via_minors(const QMat& g, long p) {
  // In primed coordinates b' is upper triangular with diagonal
  // (a1, a2, a3/a2, a3/a1); k' has unimodular rows, so:
  //   v(a3/a1)          = min valuation of primed row 4,
  //   v(a3/a2 * a3/a1)  = min valuation of the 2x2 minors of primed rows 3,4.
  QMat gp;
  auto pr = [](int i) { return i == 2 ? 3 : (i == 3 ? 2 : i); };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gp(i, j) = g(pr(i), pr(j));
  long r4 = kValInf;
  for (int j = 0; j < 4; ++j) r4 = std::min(r4, val_lo(gp(3, j), p));
  long m2 = kValInf;
  for (int j1 = 0; j1 < 4; ++j1)
    for (int j2 = j1 + 1; j2 < 4; ++j2) {
      Rat minor = gp(2, j1) * gp(3, j2) - gp(2, j2) * gp(3, j1);
      m2 = std::min(m2, val_lo(minor, p));
    }
  TorusValuations t;
  t.vmu = val_lo(multiplier(g), p);
  t.v1 = t.vmu - r4;
  t.v2 = 2 * t.vmu - m2 - t.v1;
  return t;
}

double power_function(const QMat& g, Parabolic P, double nu1, double nu2, long p) {
  BorelSplit<Rat> s = borel_split<Rat>(g, p);
  long v1 = val_lo(s.b(0, 0), p);
  long v2 = val_lo(s.b(1, 1), p);
  long vmu = val_lo(multiplier(g), p);
  double lp = std::log(static_cast<double>(p));
  switch (P) {
    case Parabolic::Borel:
      // |a1|^{nu1} |a2|^{nu2} |a3|^{-(nu1+nu2)/2}
      return std::exp(-lp * (v1 * nu1 + v2 * nu2 - vmu * (nu1 + nu2) / 2));
    case Parabolic::Siegel: {
      // |det m2|^{nu} |t|^{-nu}, det m2 = a1 a2, t = mu
      long vdet = v1 + v2;
      return std::exp(-lp * nu1 * (vdet - vmu));
    }
    case Parabolic::Klingen: {
      // |t|^{nu} |det m2|^{-nu/2}, t = a1, det m2 = a2 * a3/a2 = a3 = mu... as
      // valuations: v(det m2) = v(b22) + v(b44) = v2 + (vmu - v2) = vmu.
      return std::exp(-lp * nu1 * (v1 - vmu / 2.0));
    }
  }
  throw std::logic_error("power_function");
}

LaurentExpr power_function_symbolic(const QMat& g, Parabolic P, long p) {
  BorelSplit<Rat> s = borel_split<Rat>(g, p);
  long v1 = val_lo(s.b(0, 0), p);
  long v2 = val_lo(s.b(1, 1), p);
  long vmu = val_lo(multiplier(g), p);
  LaurentExpr e = lp_one(p);
  ExpVec exp{};
  switch (P) {
    case Parabolic::Borel:
      exp[static_cast<int>(Sym::H1)] = static_cast<int>(2 * v1 - vmu);
      exp[static_cast<int>(Sym::H2)] = static_cast<int>(2 * v2 - vmu);
      break;
    case Parabolic::Siegel:
      exp[static_cast<int>(Sym::T1)] = static_cast<int>(v1 + v2 - vmu);
      break;
    case Parabolic::Klingen:
      exp[static_cast<int>(Sym::H1)] = static_cast<int>(2 * v1 - vmu);
      break;
  }
  LaurentExpr r(p);
  r.add_term(exp, Rat(1));
  return r;
}

}  // namespace gsp4lab
