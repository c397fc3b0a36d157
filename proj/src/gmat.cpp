#include "gsp4lab/gmat.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace gsp4lab {

Rat qmat_det(const QMat& m) {
  // Laplace along the first row; 4x4 exact.
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
           m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
           m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
  };
  Rat d(0);
  int sign = 1;
  const int cols[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  for (int j = 0; j < 4; ++j) {
    Rat minor = det3(1, 2, 3, cols[j][0], cols[j][1], cols[j][2]);
    d += Rat(sign) * m(0, j) * minor;
    sign = -sign;
  }
  return d;
}

QMat qmat_inverse(const QMat& m) {
  // Gauss-Jordan with exact pivoting.
  QMat a = m;
  QMat inv = QMat::identity();
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("qmat_inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < 4; ++j) {
        std::swap(a.e[4 * piv + j], a.e[4 * col + j]);
        std::swap(inv.e[4 * piv + j], inv.e[4 * col + j]);
      }
    Rat d = a(col, col).inverse();
    for (int j = 0; j < 4; ++j) {
      a(col, j) *= d;
      inv(col, j) *= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Rat f = a(r, col);
      for (int j = 0; j < 4; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::string qmat_str(const QMat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 4; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < 4; ++j) os << (j ? " " : "") << m(i, j).str();
  }
  os << "]";
  return os.str();
}

const QMat& form_J() {
  static const QMat J = [] {
    QMat m;
    m(0, 2) = Rat(1);
    m(1, 3) = Rat(1);
    m(2, 0) = Rat(-1);
    m(3, 1) = Rat(-1);
    return m;
  }();
  return J;
}

const QMat& gen_s1() {
  static const QMat m = [] {
    QMat s;
    s(0, 1) = Rat(1);
    s(1, 0) = Rat(1);
    s(2, 3) = Rat(1);
    s(3, 2) = Rat(1);
    return s;
  }();
  return m;
}

const QMat& gen_s2() {
  static const QMat m = [] {
    QMat s;
    s(0, 0) = Rat(1);
    s(1, 3) = Rat(1);
    s(2, 2) = Rat(1);
    s(3, 1) = Rat(-1);
    return s;
  }();
  return m;
}

bool is_similitude(const QMat& g) {
  const QMat& J = form_J();
  QMat gt = g.transpose();
  QMat lhs = gt * J * g;
  // lhs must equal mu*J for some nonzero mu: read mu at (0,2).
  Rat mu = lhs(0, 2);
  if (mu.is_zero()) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (lhs(i, j) != mu * J(i, j)) return false;
  return true;
}

Rat multiplier(const QMat& g) {
  const QMat& J = form_J();
  QMat lhs = g.transpose() * J * g;
  Rat mu = lhs(0, 2);
  if (mu.is_zero()) throw std::domain_error("multiplier: not a symplectic similitude");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (lhs(i, j) != mu * J(i, j)) throw std::domain_error("multiplier: not a symplectic similitude");
  return mu;
}

namespace {

struct WeylTable {
  std::array<QMat, kNumWeyl> mat;
  std::array<int, kNumWeyl> len;
  std::array<const char*, kNumWeyl> name;
  // support permutation: perm[w][j] = the row index of the nonzero entry in column j
  std::array<std::array<int, 4>, kNumWeyl> perm;
  std::array<std::array<int, kNumWeyl>, kNumWeyl> mul;
  std::array<int, kNumWeyl> inv;

  WeylTable() {
    const QMat& s1 = gen_s1();
    const QMat& s2 = gen_s2();
    mat[0] = QMat::identity();
    mat[1] = s1;
    mat[2] = s2;
    mat[3] = s1 * s2;
    mat[4] = s2 * s1;
    mat[5] = s1 * s2 * s1;
    mat[6] = s2 * s1 * s2;
    mat[7] = s1 * s2 * s1 * s2;
    len = {0, 1, 1, 2, 2, 3, 3, 4};
    name = {"1", "s1", "s2", "s1s2", "s2s1", "s1s2s1", "s2s1s2", "J"};
    for (int w = 0; w < kNumWeyl; ++w) {
      for (int j = 0; j < 4; ++j) {
        perm[w][j] = -1;
        for (int i = 0; i < 4; ++i)
          if (!mat[w](i, j).is_zero()) perm[w][j] = i;
      }
    }
    auto find_by_support = [&](const QMat& m) {
      std::array<int, 4> pp{};
      for (int j = 0; j < 4; ++j) {
        pp[j] = -1;
        for (int i = 0; i < 4; ++i)
          if (!m(i, j).is_zero()) {
            if (pp[j] >= 0) return -1;
            pp[j] = i;
          }
      }
      for (int w = 0; w < kNumWeyl; ++w)
        if (perm[w] == pp) return w;
      return -1;
    };
    for (int a = 0; a < kNumWeyl; ++a)
      for (int b = 0; b < kNumWeyl; ++b) {
        int w = find_by_support(mat[a] * mat[b]);
        if (w < 0) throw std::logic_error("Weyl multiplication table");
        mul[a][b] = w;
      }
    for (int a = 0; a < kNumWeyl; ++a)
      for (int b = 0; b < kNumWeyl; ++b)
        if (mul[a][b] == 0) inv[a] = b;
  }
};

const WeylTable& weyl_table() {
  static const WeylTable t;
  return t;
}

}  // namespace

const char* weyl_name(WeylWord w) { return weyl_table().name[static_cast<int>(w)]; }
int weyl_length(WeylWord w) { return weyl_table().len[static_cast<int>(w)]; }
const QMat& weyl_matrix(WeylWord w) { return weyl_table().mat[static_cast<int>(w)]; }
WeylWord weyl_mul(WeylWord a, WeylWord b) {
  return static_cast<WeylWord>(weyl_table().mul[static_cast<int>(a)][static_cast<int>(b)]);
}
WeylWord weyl_inverse(WeylWord w) { return static_cast<WeylWord>(weyl_table().inv[static_cast<int>(w)]); }

std::optional<WeylWord> weyl_from_support(const QMat& m) {
  const auto& t = weyl_table();
  std::array<int, 4> pp{};
  for (int j = 0; j < 4; ++j) {
    pp[j] = -1;
    for (int i = 0; i < 4; ++i)
      if (!m(i, j).is_zero()) {
        if (pp[j] >= 0) return std::nullopt;
        pp[j] = i;
      }
  }
  for (int w = 0; w < kNumWeyl; ++w)
    if (t.perm[w] == pp) return static_cast<WeylWord>(w);
  return std::nullopt;
}

const char* parabolic_name(Parabolic P) {
  switch (P) {
    case Parabolic::Borel: return "Borel";
    case Parabolic::Siegel: return "Siegel";
    case Parabolic::Klingen: return "Klingen";
  }
  return "?";
}

WeylWord sigma_P(Parabolic P) {
  switch (P) {
    case Parabolic::Borel: return WeylWord::J;
    case Parabolic::Siegel: return WeylWord::S2S1S2;
    case Parabolic::Klingen: return WeylWord::S1S2S1;
  }
  throw std::logic_error("sigma_P");
}

const std::vector<WeylWord>& coset_reps(Parabolic P) {
  static const std::vector<WeylWord> borel = {WeylWord::E,    WeylWord::S1,     WeylWord::S2,
                                              WeylWord::S1S2, WeylWord::S2S1,   WeylWord::S1S2S1,
                                              WeylWord::S2S1S2, WeylWord::J};
  static const std::vector<WeylWord> siegel = {WeylWord::E, WeylWord::S2, WeylWord::S2S1,
                                               WeylWord::S2S1S2};
  static const std::vector<WeylWord> klingen = {WeylWord::E, WeylWord::S1, WeylWord::S1S2,
                                                WeylWord::S1S2S1};
  switch (P) {
    case Parabolic::Borel: return borel;
    case Parabolic::Siegel: return siegel;
    case Parabolic::Klingen: return klingen;
  }
  throw std::logic_error("coset_reps");
}

WeylWord coset_label_of_cell(Parabolic P, WeylWord bruhat) {
  if (P == Parabolic::Borel) return bruhat;
  WeylWord gen = (P == Parabolic::Siegel) ? WeylWord::S1 : WeylWord::S2;
  WeylWord other = weyl_mul(gen, bruhat);
  const auto& reps = coset_reps(P);
  for (WeylWord r : reps)
    if (r == bruhat || r == other) return r;
  throw std::logic_error("coset_label_of_cell: no representative");
}

QMat borel_u(const Rat& x, const Rat& a, const Rat& b, const Rat& c) {
  return borel_u_t<Rat>(x, a, b, c);
}

QMat klingen_n(const Rat& x, const Rat& y, const Rat& z) {
  return borel_u(x, z - x * y, y, Rat(0));
}

QMat siegel_n(const Rat& x, const Rat& y, const Rat& z) {
  QMat m = QMat::identity();
  m(0, 2) = x;
  m(0, 3) = y;
  m(1, 2) = y;
  m(1, 3) = z;
  return m;
}

namespace {
bool is_p_integral(const Rat& r, long p) { return !(vp(r, p) < Valuation(0)); }
bool is_unit(const Rat& r, long p) { return vp(r, p) == Valuation(0); }
}  // namespace

bool in_borel_shape(const QMat& g) {
  const int zeros[6][2] = {{1, 0}, {2, 0}, {2, 1}, {2, 3}, {3, 0}, {3, 1}};
  for (auto& z : zeros)
    if (!g(z[0], z[1]).is_zero()) return false;
  return !g(0, 0).is_zero() && !g(1, 1).is_zero() && !g(2, 2).is_zero() && !g(3, 3).is_zero();
}

bool subgroup_membership(const QMat& g, SubgroupKind which, long p) {
  if (!is_similitude(g)) return false;
  Rat mu = multiplier(g);
  switch (which) {
    case SubgroupKind::MaximalCompact: {
      for (const Rat& r : g.e)
        if (!is_p_integral(r, p)) return false;
      return is_unit(mu, p);
    }
    case SubgroupKind::BorelCongruence: {
      if (!subgroup_membership(g, SubgroupKind::MaximalCompact, p)) return false;
      const int zeros[6][2] = {{1, 0}, {2, 0}, {2, 1}, {2, 3}, {3, 0}, {3, 1}};
      for (auto& z : zeros)
        if (!(vp(g(z[0], z[1]), p) >= Valuation(1))) return false;
      return true;
    }
    case SubgroupKind::Paramodular: {
      // Valuation floor per entry; (1,3) may have a single p in the denominator.
      static const int floor[4][4] = {{0, 0, -1, 0}, {1, 0, 0, 0}, {1, 1, 0, 1}, {1, 0, 0, 0}};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (vp(g(i, j), p) < Valuation(floor[i][j])) return false;
      return is_unit(mu, p);
    }
  }
  return false;
}

bool gl2_gamma0_membership(const Rat& a, const Rat& b, const Rat& c, const Rat& d, long p) {
  if (!is_p_integral(a, p) || !is_p_integral(b, p) || !is_p_integral(c, p) || !is_p_integral(d, p))
    return false;
  if (!(vp(c, p) >= Valuation(1))) return false;
  return is_unit(a * d - b * c, p);
}

KloostermanReport kloosterman_entry_identity(WeylWord sigma, const Rat& d1, const Rat& d2,
                                             const Rat& d3, int samples, unsigned seed) {
  KloostermanReport rep;
  if (sigma != WeylWord::J && sigma != WeylWord::S1S2S1 && sigma != WeylWord::S2S1S2) {
    rep.trivially_true = true;
    return rep;
  }
  if (d1.is_zero() || d2.is_zero() || d3.is_zero()) throw std::invalid_argument("kloosterman: torus entries must be nonzero");
  QMat delta;
  delta(0, 0) = d1;
  delta(1, 1) = d2;
  delta(2, 2) = d3 / d1;
  delta(3, 3) = d3 / d2;
  QMat core = weyl_matrix(sigma) * delta;

  std::mt19937_64 rng(seed);
  auto rnd = [&]() {
    long n = static_cast<long>(rng() % 41) - 20;
    long d = static_cast<long>(rng() % 7) + 1;
    return Rat(BigInt(n), BigInt(d));
  };
  for (int it = 0; it < samples; ++it) {
    QMat u1 = borel_u(rnd(), rnd(), rnd(), rnd());
    Rat x2 = rnd(), a2 = rnd(), b2 = rnd(), c2 = rnd();
    // Ubar_sigma: J keeps all four coordinates, s1s2s1 drops c, s2s1s2 drops x.
    if (sigma == WeylWord::S1S2S1) c2 = Rat(0);
    if (sigma == WeylWord::S2S1S2) x2 = Rat(0);
    QMat u2 = borel_u(x2, a2, b2, c2);
    QMat g = u1 * core * u2;
    if (sigma == WeylWord::S2S1S2) {
      if (!(g(2, 0).is_zero() && g(2, 1) == -d2 && g(3, 0) == -d1)) {
        rep.pass = false;
        rep.detail = "s2s1s2 entry pattern failed: " + qmat_str(g);
        return rep;
      }
    } else {
      if (!(g(2, 0) == -d1)) {
        rep.pass = false;
        rep.detail = std::string(weyl_name(sigma)) + " C11 != -d1: " + qmat_str(g);
        return rep;
      }
    }
  }
  rep.detail = "C-entry convention: C11 = -d1 (J, s1s2s1); C11 = 0, C12 = -d2, C21 = -d1 (s2s1s2)";
  return rep;
}

}  // namespace gsp4lab
