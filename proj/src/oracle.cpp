#include "gsp4lab/oracle.hpp"

#include <cmath>

#include "gsp4lab/cosets.hpp"
#include "gsp4lab/fp.hpp"
#include "gsp4lab/whittaker.hpp"

namespace gsp4lab {

namespace {

int dimension_of(Parabolic P) { return P == Parabolic::Borel ? 4 : 3; }

// psi-bar coordinates: the ambient character is theta(-x) (Klingen),
// theta(-z) (Siegel), theta(-x-c) (Borel).
std::vector<int> psi_coords(Parabolic P) {
  switch (P) {
    case Parabolic::Klingen: return {0};
    case Parabolic::Siegel: return {2};
    case Parabolic::Borel: return {0, 3};
  }
  throw std::logic_error("psi_coords");
}

template <class S>
Mat4<S> radical_matrix(Parabolic P, const std::vector<S>& q) {
  switch (P) {
    case Parabolic::Borel: return borel_u_t<S>(q[0], q[1], q[2], q[3]);
    case Parabolic::Klingen: {
      // n(x,y,z) = u(x, z - xy, y, 0)
      S zero = q[0] - q[0];
      return borel_u_t<S>(q[0], q[2] - q[0] * q[1], q[1], zero);
    }
    case Parabolic::Siegel: {
      Mat4<S> m;
      for (int i = 0; i < 4; ++i) m(i, i) = S(1);
      m(0, 2) = q[0];
      m(0, 3) = q[1];
      m(1, 2) = q[1];
      m(1, 3) = q[2];
      return m;
    }
  }
  throw std::logic_error("radical_matrix");
}

struct CellData {
  enum class Kind { Value, Zero, Skip } kind = Kind::Value;
  double bound = 0;     // for Kind::Skip: certified |contribution| bound
  long iexp_v1 = 0;     // I-exponent data (per parabolic, see cell_value)
  long iexp_v2 = 0;
  long cs_exp = 0;      // Whittaker diagonal exponent (Klingen/Siegel)
  Rat u_frac;           // fractional part of the Levi u-coordinate at center
  // Whittaker phase linearization: u(q) - u(center) = sum phase[i] Delta_i
  // with each coefficient determined mod Z_p across the cell.
  std::array<Rat, 4> phase{};
  bool has_phase = false;
};

struct VRange {
  long lo, hi;
};

VRange vrange(const PBall& b, long p) {
  VInterval v = b.vinterval();
  return {v.lo.is_infinity() ? kValInf : v.lo.value(),
          v.hi.is_infinity() ? kValInf : v.hi.value()};
}

// Certified Levi data on a cell already known to lie inside the coset
// region. The I-exponent data must be constant; the diagonal Whittaker
// exponent may instead be certified negative (spherical support kills the
// cell) and the u-coordinate only needs per-coordinate linear phases pinned
// mod Z_p. Cells whose certified contribution bound is below the skip
// threshold are dropped into the reported tail.
CellData pipeline_jet(const OracleSpec& spec, const std::vector<PBall>& q, double cell_measure) {
  long p = spec.p;
  std::vector<PJet> qc(q.size());
  for (size_t i = 0; i < q.size(); ++i) qc[i] = jet_coord(static_cast<int>(i), q[i], p);
  Mat4<PJet> n = radical_matrix<PJet>(spec.parabolic, qc);
  Mat4<PJet> g;
  const QMat& sig = weyl_matrix(sigma_P(spec.parabolic));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      PJet acc = jet_const(Rat(0), p);
      for (int k = 0; k < 4; ++k)
        if (!sig(i, k).is_zero()) acc = acc + jet_const(sig(i, k), p) * n(k, j);
      g(i, j) = acc;
    }
  BorelSplit<PJet> bs = borel_split<PJet>(g, p);

  CellData out;
  double lp = std::log(static_cast<double>(spec.p));

  // Whittaker exponent as an interval; negative-certified cells vanish.
  VRange csr{0, 0};
  if (spec.parabolic == Parabolic::Klingen) {
    VRange v2 = vrange(bs.b(1, 1).v, p);
    csr = {2 * v2.lo, v2.hi >= kValInf ? kValInf : 2 * v2.hi};
  } else if (spec.parabolic == Parabolic::Siegel) {
    csr = vrange(ball_div(bs.b(0, 0).v, bs.b(1, 1).v), p);
  }
  if (spec.parabolic != Parabolic::Borel && csr.hi < 0) {
    out.kind = CellData::Kind::Zero;
    return out;
  }

  // I-exponent intervals and the skip bound.
  VRange i1{0, 0}, i2{0, 0};
  double nu_i1 = 0, nu_i2 = 0;
  switch (spec.parabolic) {
    case Parabolic::Klingen:
      i1 = vrange(bs.b(0, 0).v, p);
      nu_i1 = 2.0 + spec.nu1;
      break;
    case Parabolic::Siegel:
      i1 = vrange(ball_mul(bs.b(0, 0).v, bs.b(1, 1).v), p);  // det m2
      nu_i1 = 1.5 + spec.nu1;
      break;
    case Parabolic::Borel:
      i1 = vrange(bs.b(0, 0).v, p);
      i2 = vrange(bs.b(1, 1).v, p);
      nu_i1 = 2.0 + spec.nu1;
      nu_i2 = 1.0 + spec.nu2;
      break;
  }
  {
    // sup of I over the interval ends; sup of |cs| over nonnegative n
    double isup = std::exp(-lp * (nu_i1 * i1.lo + nu_i2 * i2.lo));
    double cssup = 1.0;
    if (spec.parabolic != Parabolic::Borel) {
      long n0 = std::max(0L, csr.lo);
      cssup = (n0 + 1) * std::exp(-lp * n0 / 2.0);
    }
    out.bound = cell_measure * isup * cssup;
    if (out.bound < spec.skip_threshold) {
      out.kind = CellData::Kind::Skip;
      return out;
    }
  }

  auto cert = [&](VRange r) {
    if (r.lo != r.hi) throw SplitRequest{3};
    return r.lo;
  };
  out.iexp_v1 = cert(i1);
  if (spec.parabolic == Parabolic::Borel) out.iexp_v2 = cert(i2);

  if (spec.parabolic != Parabolic::Borel) {
    out.cs_exp = cert(csr);
    if (out.cs_exp < 0) {
      out.kind = CellData::Kind::Zero;
      return out;
    }
    PJet num = spec.parabolic == Parabolic::Klingen ? bs.b(1, 3) : bs.b(0, 1);
    PJet den = spec.parabolic == Parabolic::Klingen ? bs.b(3, 3) : bs.b(1, 1);
    PJet u = jet_div(num, den);
    // Each difference coefficient must be pinned mod Z_p at the cell width.
    for (size_t i = 0; i < q.size(); ++i) {
      const PBall& di = u.d[i];
      long width = q[i].r;
      if (!di.is_exact() && di.r + width < 0) throw SplitRequest{4};
    }
    out.u_frac = frac_part(u.v.c, p);
    for (size_t i = 0; i < q.size(); ++i) out.phase[i] = u.d[i].c;
    out.has_phase = true;
  }
  return out;
}

CellData pipeline_exact(const OracleSpec& spec, const std::vector<Rat>& q) {
  long p = spec.p;
  QMat n;
  switch (spec.parabolic) {
    case Parabolic::Borel: n = borel_u(q[0], q[1], q[2], q[3]); break;
    case Parabolic::Klingen: n = klingen_n(q[0], q[1], q[2]); break;
    case Parabolic::Siegel: n = siegel_n(q[0], q[1], q[2]); break;
  }
  QMat g = weyl_matrix(sigma_P(spec.parabolic)) * n;
  BorelSplit<Rat> bs = borel_split<Rat>(g, p);
  CellData out;
  long v1 = val_lo(bs.b(0, 0), p);
  long v2 = val_lo(bs.b(1, 1), p);
  switch (spec.parabolic) {
    case Parabolic::Klingen: out.iexp_v1 = v1; break;
    case Parabolic::Siegel: out.iexp_v1 = v1 + v2; break;
    case Parabolic::Borel:
      out.iexp_v1 = v1;
      out.iexp_v2 = v2;
      break;
  }
  if (spec.parabolic != Parabolic::Borel) {
    Rat num = spec.parabolic == Parabolic::Klingen ? bs.b(1, 3) : bs.b(0, 1);
    Rat den = spec.parabolic == Parabolic::Klingen ? bs.b(3, 3) : bs.b(1, 1);
    out.u_frac = frac_part(num / den, p);
    out.cs_exp = spec.parabolic == Parabolic::Klingen ? 2 * v2 : v1 - v2;
  }
  return out;
}

std::complex<double> cell_value(const OracleSpec& spec, const CellData& d) {
  double lp = std::log(static_cast<double>(spec.p));
  double iexp = 0;
  switch (spec.parabolic) {
    case Parabolic::Klingen: iexp = (2.0 + spec.nu1) * d.iexp_v1; break;
    case Parabolic::Siegel: iexp = (1.5 + spec.nu1) * d.iexp_v1; break;
    case Parabolic::Borel:
      iexp = (2.0 + spec.nu1) * d.iexp_v1 + (1.0 + spec.nu2) * d.iexp_v2;
      break;
  }
  std::complex<double> val = std::exp(-lp * iexp);
  if (spec.parabolic != Parabolic::Borel) {
    if (d.cs_exp < 0) return 0.0;
    val *= theta(d.u_frac, spec.p) * cs_value_num(d.cs_exp, spec.alpha, spec.p);
  }
  return val;
}

struct Walker {
  const OracleSpec& spec;
  int dim;
  std::vector<int> psi;
  OracleResult res;

  explicit Walker(const OracleSpec& s)
      : spec(s), dim(dimension_of(s.parabolic)), psi(psi_coords(s.parabolic)) {}

  bool is_psi(int i) const {
    for (int j : psi)
      if (j == i) return true;
    return false;
  }

  // Cell lies inside one right-N_P(Z_p) coset of its center: the pipeline
  // data is then constant for structural reasons (integral translations are
  // absorbed into B(p) on the right). The nonabelian cross terms demand the
  // later coordinates be refined once the earlier ones are deep.
  bool structural(const std::vector<PBall>& q) const {
    auto vlo_clamped = [&](const PBall& b) {
      VInterval vi = b.vinterval();
      long lo = vi.lo.is_infinity() ? 0 : std::min(vi.lo.value(), 0L);
      return lo;  // min(v, 0), certified lower bound
    };
    for (int i = 0; i < dim; ++i)
      if (q[i].r < 0) return false;
    switch (spec.parabolic) {
      case Parabolic::Siegel: return true;  // abelian radical
      case Parabolic::Klingen:
        // z' = z - z0 - x0 (y - y0) must stay integral.
        return vlo_clamped(q[0]) + q[1].r >= 0;
      case Parabolic::Borel: {
        long vc = vlo_clamped(q[3]);
        long vb2 = vlo_clamped(q[2]) + (spec.p == 2 ? 1 : 0);  // v(2b)
        return vc + q[0].r >= 0 && vb2 + q[0].r >= 0 && vc + 2 * q[0].r >= 0;
      }
    }
    return false;
  }

  // Character-and-measure factor: product over coordinates of the exact ball
  // integral of the psi-bar part (theta(-t) for psi coordinates).
  std::complex<double> chi_factor(const std::vector<PBall>& q) const {
    std::complex<double> f = 1.0;
    double lp = std::log(static_cast<double>(spec.p));
    for (int i = 0; i < dim; ++i) {
      if (is_psi(i)) {
        if (q[i].r < 0) return 0.0;
        f *= theta(-q[i].c, spec.p);
      }
      f *= std::exp(-lp * static_cast<double>(q[i].r));
    }
    return f;
  }

  long outer_shell(const std::vector<PBall>& q) const {
    long s = 0;
    for (int i = 0; i < dim; ++i) {
      VInterval vi = q[i].vinterval();
      long lo = vi.lo.is_infinity() ? 0 : vi.lo.value();
      s = std::max(s, lo < 0 ? -lo : 0);
    }
    return s;
  }

  void add(const std::vector<PBall>& q, std::complex<double> v) {
    if (res.diagnose) {
      std::array<long, 4> key{q[0].r, q.size() > 1 ? q[1].r : 0, q.size() > 2 ? q[2].r : 0,
                              q.size() > 3 ? q[3].r : 0};
      res.leaf_radii[key]++;
    }
    if (v == std::complex<double>(0.0)) return;
    res.value += v;
    res.shell_absmass[outer_shell(q)] += std::abs(v);
  }

  void walk(std::vector<PBall>& q) {
    if (res.capped) return;
    if (++res.cells > spec.max_cells) {
      res.capped = true;
      return;
    }
    // Region indicator first: certified-off cells vanish, certified-on cells
    // proceed to the Levi data, undecided cells split.
    TriState in = tri_membership(spec.parabolic, spec.label, q, spec.p);
    if (in == TriState::False) return;
    if (in == TriState::Unknown) {
      ++res.split_membership;
      split(q);
      return;
    }
    if (spec.filter) {
      Tri t = spec.filter(q, spec.p);
      if (t == Tri::False) return;
      if (t == Tri::Unknown) {
        ++res.split_filter;
        split(q);
        return;
      }
    }
    if (structural(q)) {
      // Constant integrand for coset reasons: evaluate at the exact center.
      std::vector<Rat> centers(dim);
      for (int i = 0; i < dim; ++i) centers[i] = q[i].c;
      CellData d = pipeline_exact(spec, centers);
      add(q, cell_value(spec, d) * chi_factor(q));
      return;
    }
    try {
      double lp = std::log(static_cast<double>(spec.p));
      double measure = 0;
      for (int i = 0; i < dim; ++i) measure -= static_cast<double>(q[i].r);
      measure = std::exp(lp * measure);
      CellData d = pipeline_jet(spec, q, measure);
      if (d.kind == CellData::Kind::Zero) return;
      if (d.kind == CellData::Kind::Skip) {
        res.skipped_bound += d.bound;
        ++res.skipped_cells;
        return;
      }
      add(q, jet_cell_value(d, q));
    } catch (const SplitRequest& sr) {
      ++res.split_pipeline;
      res.split_site[sr.site]++;
      split(q);
    }
  }

  // Contribution of a jet-certified cell: center value times the exact
  // per-coordinate character integrals of the linearized phases.
  std::complex<double> jet_cell_value(const CellData& d, const std::vector<PBall>& q) const {
    std::complex<double> base = cell_value(spec, d);
    if (base == std::complex<double>(0.0)) return 0.0;
    double lp = std::log(static_cast<double>(spec.p));
    for (int i = 0; i < dim; ++i) {
      Rat phi = d.has_phase ? d.phase[i] : Rat(0);
      if (is_psi(i)) {
        phi -= Rat(1);
        base *= theta(-q[i].c, spec.p);
      }
      // integral over Delta in p^{W} Z_p of theta(phi * Delta)
      Valuation vphi = vp(phi, spec.p);
      bool trivial = vphi.is_infinity() || vphi.value() + q[i].r >= 0;
      if (!trivial) return 0.0;
      base *= std::exp(-lp * static_cast<double>(q[i].r));
    }
    return base;
  }

  void split(std::vector<PBall>& q) {
    // widest coordinate first
    int widest = 0;
    for (int i = 1; i < dim; ++i)
      if (q[i].r < q[widest].r) widest = i;
    ++res.splits;
    PBall saved = q[widest];
    Rat step = Rat(BigInt(spec.p)).pow(saved.r);
    for (long j = 0; j < spec.p; ++j) {
      q[widest] = PBall(saved.c + Rat(j) * step, saved.r + 1, spec.p);
      walk(q);
      if (res.capped) break;
    }
    q[widest] = saved;
  }
};

}  // namespace

OracleResult quadrature_oracle(const OracleSpec& spec) {
  if (spec.nu1 < 2 || (spec.parabolic == Parabolic::Borel &&
                       (spec.nu2 < 2 || spec.nu1 <= spec.nu2)))
    throw std::invalid_argument("quadrature_oracle: nu outside the convergent range");
  Walker w(spec);
  w.res.diagnose = spec.diagnose;
  std::vector<PBall> q(w.dim, PBall(Rat(0), -spec.cutoff, spec.p));
  w.walk(q);

  // Geometric tail estimate from the outermost shells inside the window.
  double aM = 0, aM1 = 0;
  auto it = w.res.shell_absmass.find(spec.cutoff);
  if (it != w.res.shell_absmass.end()) aM = it->second;
  it = w.res.shell_absmass.find(spec.cutoff - 1);
  if (it != w.res.shell_absmass.end()) aM1 = it->second;
  double qq = aM1 > 0 ? std::min(0.9, aM / aM1) : 1.0 / static_cast<double>(spec.p);
  w.res.tail_bound = aM * qq / (1 - qq) + w.res.skipped_bound;
  return w.res;
}

namespace {

Tri tri_vless(const PBall& a, const PBall& b, long p) {
  long ahi = val_hi(a, p), alo = val_lo(a, p);
  long bhi = val_hi(b, p), blo = val_lo(b, p);
  if (ahi < blo) return Tri::True;
  if (alo >= bhi) return Tri::False;
  return Tri::Unknown;
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

Tri tri_vge_const(const PBall& a, long k, long p) {
  if (val_lo(a, p) >= k) return Tri::True;
  if (val_hi(a, p) < k) return Tri::False;
  return Tri::Unknown;
}

}  // namespace

BallFilter klingen1_R1_filter() {
  // v(z + xy) < v(x^2)
  return [](const std::vector<PBall>& q, long p) {
    return tri_vless(q[2] + q[0] * q[1], q[0] * q[0], p);
  };
}

BallFilter klingen1_R1prime_filter() {
  // R1 and v(x) >= -1 and v(y^2) >= v(z+xy) - 1
  return [](const std::vector<PBall>& q, long p) {
    Tri r1 = tri_vless(q[2] + q[0] * q[1], q[0] * q[0], p);
    Tri a = tri_vge_const(q[0], -1, p);
    PBall shift = q[2] + q[0] * q[1];
    // v(y^2) >= v(z+xy) - 1  <=>  not( v(y^2) < v(z+xy) - 1 )... compare
    // y^2 p^{-1} against shift: v(y^2) + 1 >= v(shift).
    Tri b;
    {
      long lhs_lo = val_lo(q[1] * q[1], p), lhs_hi = val_hi(q[1] * q[1], p);
      long r_lo = val_lo(shift, p), r_hi = val_hi(shift, p);
      if (lhs_lo == kValInf) lhs_lo = kValInf - 2;
      if (lhs_hi == kValInf) lhs_hi = kValInf - 2;
      if (lhs_lo + 1 >= r_hi) b = Tri::True;
      else if (lhs_hi + 1 < r_lo) b = Tri::False;
      else b = Tri::Unknown;
    }
    return tri_and(r1, tri_and(a, b));
  };
}

BallFilter siegel1_R1_filter() {
  // v(y) < v(z)
  return [](const std::vector<PBall>& q, long p) { return tri_vless(q[1], q[2], p); };
}

BallFilter siegel1_R1prime_filter() {
  // R1 and v(x) >= v(y) - 1 and v(z) >= -1
  return [](const std::vector<PBall>& q, long p) {
    Tri r1 = tri_vless(q[1], q[2], p);
    Tri zc = tri_vge_const(q[2], -1, p);
    Tri xc;
    {
      long xlo = val_lo(q[0], p), xhi = val_hi(q[0], p);
      long ylo = val_lo(q[1], p), yhi = val_hi(q[1], p);
      if (xlo + 1 >= yhi) xc = Tri::True;
      else if (xhi + 1 < ylo) xc = Tri::False;
      else xc = Tri::Unknown;
    }
    return tri_and(r1, tri_and(zc, xc));
  };
}

GaussReductionResult gauss_reduction_check(Parabolic P, double nu, long p, double tol) {
  OracleSpec spec;
  spec.parabolic = P;
  spec.label = WeylWord::E;
  spec.nu1 = nu;
  spec.p = p;
  spec.cutoff = 6;
  OracleSpec full = spec, reduced = spec;
  if (P == Parabolic::Klingen) {
    full.filter = klingen1_R1_filter();
    reduced.filter = klingen1_R1prime_filter();
  } else if (P == Parabolic::Siegel) {
    full.filter = siegel1_R1_filter();
    reduced.filter = siegel1_R1prime_filter();
  }
  OracleResult a = quadrature_oracle(full);
  OracleResult b = quadrature_oracle(reduced);
  GaussReductionResult r;
  r.full = a.value;
  r.reduced = b.value;
  double scale = std::max(std::abs(a.value), 1e-12);
  r.rel_error = std::abs(a.value - b.value) / scale;
  r.pass = !a.capped && !b.capped && r.rel_error < tol;
  return r;
}

}  // namespace gsp4lab
