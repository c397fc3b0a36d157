#include "gsp4lab/fp.hpp"

#include <stdexcept>
#include <unordered_set>

namespace gsp4lab {

FpMat FpMat::identity(long p) {
  FpMat m;
  m.p = p;
  for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
  return m;
}

FpMat operator*(const FpMat& a, const FpMat& b) {
  FpMat r;
  r.p = a.p;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      unsigned acc = 0;
      for (int k = 0; k < 4; ++k) acc += static_cast<unsigned>(a.at(i, k)) * b.at(k, j);
      r.at(i, j) = static_cast<uint8_t>(acc % a.p);
    }
  return r;
}

uint64_t FpMat::code() const {
  uint64_t c = 0;
  for (int i = 15; i >= 0; --i) c = c * static_cast<uint64_t>(p) + e[i];
  return c;
}

FpMat FpMat::from_code(uint64_t code, long p) {
  FpMat m;
  m.p = p;
  for (int i = 0; i < 16; ++i) {
    m.e[i] = static_cast<uint8_t>(code % static_cast<uint64_t>(p));
    code /= static_cast<uint64_t>(p);
  }
  return m;
}

namespace {

long mod_inv_p(long a, long p) {
  long r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

uint8_t rat_mod_p(const Rat& r, long p) {
  if (vp(r, p) < Valuation(0)) throw std::domain_error("rat_mod_p: not p-integral");
  long n = static_cast<long>(r.num() % p);
  long d = static_cast<long>(r.den() % p);
  if (n < 0) n += p;
  long v = n * mod_inv_p(d, p) % p;
  return static_cast<uint8_t>(v);
}

}  // namespace

FpMat reduce_mod_p(const QMat& g, long p) {
  FpMat m;
  m.p = p;
  for (int i = 0; i < 16; ++i) m.e[i] = rat_mod_p(g.e[i], p);
  return m;
}

FpMat reduce_mod_p(const Mat4<int64_t>& g, long p) {
  FpMat m;
  m.p = p;
  for (int i = 0; i < 16; ++i) {
    int64_t v = g.e[i] % p;
    if (v < 0) v += p;
    m.e[i] = static_cast<uint8_t>(v);
  }
  return m;
}

std::optional<uint8_t> fp_multiplier(const FpMat& g) {
  long p = g.p;
  // J mod p.
  auto J = [&](int i, int j) -> long {
    if (i == 0 && j == 2) return 1;
    if (i == 1 && j == 3) return 1;
    if (i == 2 && j == 0) return p - 1;
    if (i == 3 && j == 1) return p - 1;
    return 0;
  };
  long mu = -1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      long acc = 0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) acc += g.at(k, i) * J(k, l) % p * g.at(l, j) % p;
      acc %= p;
      long target = J(i, j);
      if (target == 0) {
        if (acc % p != 0) return std::nullopt;
      } else {
        long v = acc * mod_inv_p(target, p) % p;
        if (mu < 0)
          mu = v;
        else if (mu != v)
          return std::nullopt;
      }
    }
  if (mu <= 0) return std::nullopt;
  return static_cast<uint8_t>(mu);
}

bool fp_is_similitude(const FpMat& g) { return fp_multiplier(g).has_value(); }

const std::vector<FpMat>& gsp4_fp_elements(long p) {
  static std::vector<FpMat> cache2, cache3;
  std::vector<FpMat>* cache = nullptr;
  if (p == 2)
    cache = &cache2;
  else if (p == 3)
    cache = &cache3;
  else
    throw std::invalid_argument("gsp4_fp_elements: only p in {2,3} supported");
  if (!cache->empty()) return *cache;

  std::vector<FpMat> gens;
  auto add_q = [&](const QMat& m) { gens.push_back(reduce_mod_p(m, p)); };
  add_q(gen_s1());
  add_q(gen_s2());
  // Positive root elements with parameter 1.
  {
    QMat m = QMat::identity();
    m(0, 1) = Rat(1);
    m(3, 2) = Rat(-1);
    add_q(m);  // alpha1
  }
  {
    QMat m = QMat::identity();
    m(1, 3) = Rat(1);
    add_q(m);  // 2e2
  }
  {
    QMat m = QMat::identity();
    m(0, 3) = Rat(1);
    m(1, 2) = Rat(1);
    add_q(m);  // e1+e2
  }
  {
    QMat m = QMat::identity();
    m(0, 2) = Rat(1);
    add_q(m);  // 2e1
  }
  // Torus generators (a1, a2, a3) in {(g,1,1), (1,g,1), (1,1,g)} for g a unit generator.
  long gunit = (p == 2) ? 1 : 2;
  auto torus = [&](long a1, long a2, long a3) {
    QMat m;
    m(0, 0) = Rat(a1);
    m(1, 1) = Rat(a2);
    m(2, 2) = Rat(BigInt(a3), BigInt(a1));
    m(3, 3) = Rat(BigInt(a3), BigInt(a2));
    add_q(m);
  };
  if (p > 2) {
    torus(gunit, 1, 1);
    torus(1, gunit, 1);
    torus(1, 1, gunit);
  }

  std::unordered_set<uint64_t> seen;
  std::vector<FpMat> frontier;
  FpMat id = FpMat::identity(p);
  seen.insert(id.code());
  frontier.push_back(id);
  cache->push_back(id);
  while (!frontier.empty()) {
    std::vector<FpMat> next;
    for (const FpMat& m : frontier) {
      for (const FpMat& g : gens) {
        FpMat prod = m * g;
        if (seen.insert(prod.code()).second) {
          cache->push_back(prod);
          next.push_back(prod);
        }
      }
    }
    frontier = std::move(next);
  }
  return *cache;
}

namespace {

// Column-permuted coordinates (swap indices 2 and 3, 0-based) turn our Borel
// into the upper-triangular subgroup of GL4; corner ranks there classify the
// Bruhat cell.
int primed(int i) { return i == 2 ? 3 : (i == 3 ? 2 : i); }

int corner_rank(const FpMat& g, int i0, int j1, long p) {
  // rank of the submatrix rows i0..3, cols 0..j1 of the primed matrix
  int rows = 4 - i0, cols = j1 + 1;
  long a[4][4];
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = g.at(primed(i0 + i), primed(j));
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    long inv = mod_inv_p((a[rank][col] % p + p) % p, p);
    for (int r = rank + 1; r < rows; ++r) {
      long f = (a[r][col] % p + p) % p * inv % p;
      for (int j = col; j < cols; ++j) a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

struct BruhatRef {
  // ranks[w][i0][j1] for the 8 Weyl permutation matrices (primed coordinates)
  int ranks[kNumWeyl][4][4];
  BruhatRef() {
    for (int w = 0; w < kNumWeyl; ++w) {
      const QMat& m = weyl_matrix(static_cast<WeylWord>(w));
      int perm[4];  // primed row of the nonzero entry in primed column j
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
          if (!m(primed(i), primed(j)).is_zero()) perm[j] = i;
      for (int i0 = 0; i0 < 4; ++i0)
        for (int j1 = 0; j1 < 4; ++j1) {
          int c = 0;
          for (int j = 0; j <= j1; ++j)
            if (perm[j] >= i0) ++c;
          ranks[w][i0][j1] = c;
        }
    }
  }
};

}  // namespace

WeylWord bruhat_cell(const FpMat& g) {
  if (!fp_is_similitude(g)) throw std::domain_error("bruhat_cell: not in GSp4(F_p)");
  static const BruhatRef ref;
  int r[4][4];
  for (int i0 = 0; i0 < 4; ++i0)
    for (int j1 = 0; j1 < 4; ++j1) r[i0][j1] = corner_rank(g, i0, j1, g.p);
  int found = -1;
  for (int w = 0; w < kNumWeyl; ++w) {
    bool ok = true;
    for (int i0 = 0; i0 < 4 && ok; ++i0)
      for (int j1 = 0; j1 < 4 && ok; ++j1) ok = (r[i0][j1] == ref.ranks[w][i0][j1]);
    if (ok) {
      if (found >= 0) throw std::logic_error("bruhat_cell: ambiguous rank pattern");
      found = w;
    }
  }
  if (found < 0) throw std::logic_error("bruhat_cell: no matching cell");
  return static_cast<WeylWord>(found);
}

bool fp_in_borel(const FpMat& g) {
  const int zeros[6][2] = {{1, 0}, {2, 0}, {2, 1}, {2, 3}, {3, 0}, {3, 1}};
  for (auto& z : zeros)
    if (g.at(z[0], z[1]) != 0) return false;
  return true;
}

bool fp_in_parabolic(const FpMat& g, Parabolic P) {
  switch (P) {
    case Parabolic::Borel: return fp_in_borel(g);
    case Parabolic::Siegel: {
      const int zeros[4][2] = {{2, 0}, {2, 1}, {3, 0}, {3, 1}};
      for (auto& z : zeros)
        if (g.at(z[0], z[1]) != 0) return false;
      return true;
    }
    case Parabolic::Klingen: {
      const int zeros[5][2] = {{1, 0}, {2, 0}, {2, 1}, {2, 3}, {3, 0}};
      for (auto& z : zeros)
        if (g.at(z[0], z[1]) != 0) return false;
      return true;
    }
  }
  return false;
}

bool fp_in_unipotent(const FpMat& g) {
  if (!fp_in_borel(g)) return false;
  long p = g.p;
  for (int i = 0; i < 4; ++i)
    if (g.at(i, i) != 1) return false;
  long x = g.at(0, 1), b = g.at(1, 2), c = g.at(1, 3);
  if (g.at(3, 2) != (p - x) % p) return false;
  if (g.at(0, 3) != (b + c * x) % p) return false;
  return true;
}

FpMat fp_levi_projection(const FpMat& g, Parabolic P) {
  if (!fp_in_parabolic(g, P)) throw std::domain_error("fp_levi_projection: not in P");
  FpMat m;
  m.p = g.p;
  switch (P) {
    case Parabolic::Borel:
      for (int i = 0; i < 4; ++i) m.at(i, i) = g.at(i, i);
      return m;
    case Parabolic::Siegel:
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          m.at(i, j) = g.at(i, j);
          m.at(2 + i, 2 + j) = g.at(2 + i, 2 + j);
        }
      return m;
    case Parabolic::Klingen:
      m.at(0, 0) = g.at(0, 0);
      m.at(2, 2) = g.at(2, 2);
      m.at(1, 1) = g.at(1, 1);
      m.at(1, 3) = g.at(1, 3);
      m.at(3, 1) = g.at(3, 1);
      m.at(3, 3) = g.at(3, 3);
      return m;
  }
  throw std::logic_error("fp_levi_projection");
}

}  // namespace gsp4lab
