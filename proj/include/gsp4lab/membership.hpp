#pragma once

// Region membership for the ramified local integrals: the per-coset
// valuation/congruence conditions on unipotent coordinates, the independent
// Iwasawa-based oracle, and the region-dissection identities used in the
// closed-form evaluations.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsp4lab/cosets.hpp"
#include "gsp4lab/gmat.hpp"
#include "gsp4lab/iwasawa.hpp"

namespace gsp4lab {

struct RegionPoint {
  Parabolic parabolic;
  // Klingen (x,y,z); Siegel (x,y,z) meaning Y = [x y; y z]; Borel (x,a,b,c).
  Rat x, y, z, c;
};

QMat region_matrix(const RegionPoint& pt);

// Membership in the coset region for (P, label), by the closed conditions.
// Siegel s2/s2s1 carry measure-zero provisos; points on those loci may
// disagree with the oracle.
bool membership(Parabolic P, WeylWord label, const RegionPoint& pt, long p);

// Independent route: build sigma_P n, split off the P-part by the Iwasawa
// elimination, classify the integral part.
bool membership_oracle(Parabolic P, WeylWord label, const RegionPoint& pt, long p);
WeylWord membership_oracle_label(Parabolic P, const RegionPoint& pt, long p);

// Tri-state membership on a product of balls (for the quadrature engine):
// True/False only when the answer is uniform over the whole cell.
enum class TriState { False, True, Unknown };
TriState tri_membership(Parabolic P, WeylWord label, const std::vector<PBall>& q, long p);

// ---------------------------------------------------------------------------
// Region-dissection identities. Each named lemma provides a left set and a
// right set (with optional disjointness constraint); the checker samples the
// valuation window exhaustively with random residues plus boundary probes.
// ---------------------------------------------------------------------------

struct RegionLemma {
  std::string name;
  int arity;  // 3 (x,y,z) or 4 (x,a,b,c)
  // lhs(pt) must equal rhs(pt) for all points.
  std::function<bool(const std::vector<Rat>&, long)> lhs, rhs;
  // Optional: two parts that must be disjoint (for decompositions written
  // as disjoint unions).
  std::function<bool(const std::vector<Rat>&, long)> part1, part2;
  // Extra targeted points exercising each congruence boundary.
  std::function<std::vector<std::vector<Rat>>(long)> probes;
};

const std::vector<RegionLemma>& region_lemmas();

struct RegionCheckResult {
  bool pass = true;
  long points_checked = 0;
  std::string witness;
};

RegionCheckResult check_region_lemma(const RegionLemma& lemma, long p, long v_min, long v_max,
                                     int residue_precision, int samples_per_profile,
                                     unsigned seed);

}  // namespace gsp4lab
