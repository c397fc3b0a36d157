#pragma once

// GSp(4) over Q: the similitude form, Weyl group, parabolic data, unipotent
// coordinates, and congruence-subgroup membership.
//
// Conventions follow the antisymmetric form
//     J = [ .  .  1  . ;  .  .  .  1 ; -1  .  .  . ;  . -1  .  . ]
// with Borel B of shape [*,*,*,*; 0,*,*,*; 0,0,*,0; 0,0,*,*], Weyl group
// generated by
//     s1 = perm(1<->2, 3<->4),   s2 = [1;  e4; e3; -e2]-columns,
// torus diag(a1, a2, a3/a1, a3/a2) (multiplier a3).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gsp4lab/padic.hpp"
#include "gsp4lab/rational.hpp"

namespace gsp4lab {

template <class S>
struct Mat4 {
  std::array<S, 16> e{};
  S& operator()(int i, int j) { return e[4 * i + j]; }
  const S& operator()(int i, int j) const { return e[4 * i + j]; }

  static Mat4 zero() { return Mat4{}; }
  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = S(1);
    return m;
  }
  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        S acc = a(i, 0) * b(0, j);
        for (int k = 1; k < 4; ++k) acc += a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    return r;
  }
  friend bool operator==(const Mat4& a, const Mat4& b) { return a.e == b.e; }
  Mat4 transpose() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
};

using QMat = Mat4<Rat>;

QMat qmat_inverse(const QMat& m);
Rat qmat_det(const QMat& m);
std::string qmat_str(const QMat& m);

// The fixed form J and the Weyl generators as exact matrices.
const QMat& form_J();
const QMat& gen_s1();
const QMat& gen_s2();

// Similitude multiplier: the scalar mu with g^T J g = mu J; throws if g is
// not a symplectic similitude.
Rat multiplier(const QMat& g);
bool is_similitude(const QMat& g);

// ---------------------------------------------------------------------------
// Weyl group: the eight elements as reduced words in {s1, s2}.
// ---------------------------------------------------------------------------

enum class WeylWord : int { E = 0, S1, S2, S1S2, S2S1, S1S2S1, S2S1S2, J };
constexpr int kNumWeyl = 8;

const char* weyl_name(WeylWord w);
int weyl_length(WeylWord w);
const QMat& weyl_matrix(WeylWord w);
WeylWord weyl_mul(WeylWord a, WeylWord b);
WeylWord weyl_inverse(WeylWord w);
// Identify the Weyl class of a signed permutation matrix by its support.
std::optional<WeylWord> weyl_from_support(const QMat& m);

// ---------------------------------------------------------------------------
// Parabolic subgroups.
// ---------------------------------------------------------------------------

enum class Parabolic : int { Borel = 0, Siegel = 1, Klingen = 2 };
const char* parabolic_name(Parabolic P);

// sigma_P: the element of (W cap M) J normalizing U cap M (Borel: J,
// Siegel: s2s1s2, Klingen: s1s2s1).
WeylWord sigma_P(Parabolic P);

// Coset representative lists X_P(p).
const std::vector<WeylWord>& coset_reps(Parabolic P);

// Reduce a Weyl word to its (P cap K)\K/B(p)-representative (left W_M-orbit).
WeylWord coset_label_of_cell(Parabolic P, WeylWord bruhat);

// Unipotent-radical points.
// Borel: u(x,a,b,c) = [1 x a+bx b+cx; 0 1 b c; 0 0 1 0; 0 0 -x 1].
QMat borel_u(const Rat& x, const Rat& a, const Rat& b, const Rat& c);
// Klingen n(x,y,z) = u(x, z - xy, y, 0) = [1 x z y; 0 1 y 0; 0 0 1 0; 0 0 -x 1].
QMat klingen_n(const Rat& x, const Rat& y, const Rat& z);
// Siegel n(Y) with Y = [x y; y z].
QMat siegel_n(const Rat& x, const Rat& y, const Rat& z);

template <class S>
Mat4<S> borel_u_t(const S& x, const S& a, const S& b, const S& c) {
  Mat4<S> m = Mat4<S>::identity();
  m(0, 1) = x;
  m(0, 2) = a + b * x;
  m(0, 3) = b + c * x;
  m(1, 2) = b;
  m(1, 3) = c;
  m(3, 2) = S(0) - x;
  return m;
}

// ---------------------------------------------------------------------------
// Congruence subgroups (exact valuation-pattern tests).
// ---------------------------------------------------------------------------

enum class SubgroupKind { MaximalCompact, BorelCongruence, Paramodular };

bool subgroup_membership(const QMat& g, SubgroupKind which, long p);
// Hecke congruence subgroup of GL2(Z_p): integral, unit determinant, c in p.
bool gl2_gamma0_membership(const Rat& a, const Rat& b, const Rat& c, const Rat& d, long p);

// Exact membership in B(Q_p) (Borel shape with nonzero diagonal).
bool in_borel_shape(const QMat& g);

// ---------------------------------------------------------------------------
// Kloosterman-set entry identities: for g = u1 (sigma delta) u2 with u1 in U,
// u2 in Ubar_sigma and delta = diag(d1, d2, d3/d1, d3/d2), the lower-left
// block C has entries independent of the unipotent coordinates:
//   sigma in {J, s1s2s1}:  C11 = -d1
//   sigma = s2s1s2:        C11 = 0, C12 = -d2, C21 = -d1.
// (The signs and the d1/d2 placement are as computed from the conventions
// above; they are fixed here once and asserted exactly.)
// ---------------------------------------------------------------------------

struct KloostermanReport {
  bool pass = true;
  bool trivially_true = false;  // sigma outside the three relevant elements
  std::string detail;
};

KloostermanReport kloosterman_entry_identity(WeylWord sigma, const Rat& d1, const Rat& d2,
                                             const Rat& d3, int samples, unsigned seed);

}  // namespace gsp4lab
