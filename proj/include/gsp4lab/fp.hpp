#pragma once

// Lightweight GSp4(F_p) arithmetic for the exhaustive coset enumerations:
// packed 4x4 matrices mod p, full group enumeration by closure, and the
// Bruhat cell of an element via corner-rank patterns.

#include <cstdint>
#include <optional>
#include <vector>

#include "gsp4lab/gmat.hpp"

namespace gsp4lab {

struct FpMat {
  std::array<uint8_t, 16> e{};
  long p = 0;

  uint8_t& at(int i, int j) { return e[4 * i + j]; }
  uint8_t at(int i, int j) const { return e[4 * i + j]; }

  static FpMat identity(long p);
  friend FpMat operator*(const FpMat& a, const FpMat& b);
  friend bool operator==(const FpMat& a, const FpMat& b) { return a.e == b.e && a.p == b.p; }
  uint64_t code() const;  // packed encoding (p <= 13)
  static FpMat from_code(uint64_t code, long p);
};

// Reduction mod p of an exact matrix with p-integral entries.
FpMat reduce_mod_p(const QMat& g, long p);
FpMat reduce_mod_p(const Mat4<int64_t>& g, long p);

bool fp_is_similitude(const FpMat& g);
std::optional<uint8_t> fp_multiplier(const FpMat& g);

// The full group GSp4(F_p) by closure from generators (p in {2,3} intended;
// |GSp4(F_2)| = 720, |GSp4(F_3)| = 103680).
const std::vector<FpMat>& gsp4_fp_elements(long p);

// Bruhat cell: the unique s in W with g in B(F_p) s B(F_p); computed via
// lower-left corner ranks in the coordinates where B is upper triangular.
// Throws if g is not a symplectic similitude mod p.
WeylWord bruhat_cell(const FpMat& g);

// Predicates mod p.
bool fp_in_borel(const FpMat& g);       // upper-Borel shape mod p
bool fp_in_parabolic(const FpMat& g, Parabolic P);
bool fp_in_unipotent(const FpMat& g);   // full unipotent radical U mod p

// Levi projection of a parabolic-shaped element (exact mod-p formulas).
FpMat fp_levi_projection(const FpMat& g, Parabolic P);

}  // namespace gsp4lab
