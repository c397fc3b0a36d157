#pragma once

// Double cosets (P cap K_p)\K_p/B_p(p): classification, stabilizer indices
// by finite enumeration, the finite group-theoretic lemmas, and the
// alpha/length exponent ledger used to bound the continuous spectrum.

#include <string>
#include <vector>

#include "gsp4lab/fp.hpp"
#include "gsp4lab/gmat.hpp"

namespace gsp4lab {

// The unique x in X_P(p) with k in (P cap K_p) x B_p(p).
WeylWord classify(const FpMat& k, Parabolic P);
WeylWord classify(const QMat& k, Parabolic P, long p);

struct StabilizerReport {
  Parabolic parabolic;
  WeylWord label;
  long p;
  long index_P;  // [P cap K : P_x]
  long index_N;  // [N cap K : N_x]
  long index_M;  // [M cap K : M(x)]
};

StabilizerReport stabilizer_indices(Parabolic P, WeylWord label, long p);

// Exhaustive classification counts over GSp4(F_p).
struct CosetCensus {
  long p;
  std::vector<long> borel_counts;    // per Weyl word, |B x B|
  std::vector<long> siegel_counts;   // per X_Ps label
  std::vector<long> klingen_counts;  // per X_Pk label
  long group_order;
};
CosetCensus coset_census(long p);

struct GroupLemmasReport {
  bool grouptheoretic_ok = true;   // [P:P_x] = [N:N_x][M:M(x)] for all 16 labels
  bool increasing_ok = true;       // [U:U cap H] <= [K:H] on sampled pairs
  bool congruence_ok = true;       // mod-p shadow of the three-pattern lemma
  bool bruhat_factorization_ok = true;  // G(F_p) = B W U constructively
  std::string witness;
};
GroupLemmasReport verify_group_lemmas(long p, int congruence_trials, unsigned seed);

// Conjugation of paramodular elements by diag(1,p,p,1) s1 stays paramodular.
bool paramodular_normalizer_check(long p, int trials, unsigned seed);

// Exponent tables from the continuous-spectrum bounds.
double borel_alpha(WeylWord w);
double maxpar_alpha(Parabolic P, WeylWord label);  // Siegel/Klingen only

struct LedgerRow {
  Parabolic parabolic;
  WeylWord label;
  double alpha;
  long ell_or_logN;  // Borel: length; maximal: log_p [N cap K : N_x]
  double lhs;        // 2*alpha + ell  (resp. 2*alpha + log_p index_N)
  double bound;      // 3 (resp. 2)
  bool ok;
};
std::vector<LedgerRow> exponent_ledger(long p);

}  // namespace gsp4lab
