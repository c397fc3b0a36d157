#pragma once

// Brute-force p-adic quadrature of the local integrals
//   J_p = int_{N_P} I_{P,rho+nu}(sigma_P n) W(Levi data) conj(psi(n)) dn
// over the coset region of a given label, by adaptive cell decomposition:
//
//  * cells are products of p-adic balls; the integrand data (coset label,
//    torus valuations, Levi fraction) is evaluated through the Iwasawa
//    elimination in ball arithmetic;
//  * a cell on which that data is certified constant contributes
//    (value) x (exact character integral); wide cells whose character
//    integral vanishes contribute exactly zero -- this realizes the unit
//    averaging cancellation without the closed-form case analysis;
//  * cells that cannot be certified are split; once a cell lies inside a
//    single right-N_P(Z_p) coset the data is constant for structural
//    reasons and the cell is evaluated exactly at its center.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "gsp4lab/gmat.hpp"
#include "gsp4lab/iwasawa.hpp"
#include "gsp4lab/membership.hpp"

namespace gsp4lab {

enum class Tri { False, True, Unknown };

using BallFilter = std::function<Tri(const std::vector<PBall>&, long)>;

struct OracleSpec {
  Parabolic parabolic;
  WeylWord label;
  double nu1 = 2;
  double nu2 = 2;  // Borel only
  std::complex<double> alpha = 1.0;
  long p = 3;
  long cutoff = 8;           // valuation window [-cutoff, infty)
  size_t max_cells = 80'000'000;
  BallFilter filter;         // optional extra region restriction
  bool diagnose = false;
  // Cells with certified |contribution| below this are dropped and their
  // bound reported in the tail.
  double skip_threshold = 1e-16;
};

struct OracleResult {
  std::complex<double> value;
  double tail_bound = 0;   // geometric estimate for the mass beyond the window
  size_t cells = 0;        // certified cells evaluated
  size_t splits = 0;
  bool capped = false;     // cell budget exhausted (result unreliable)
  std::map<long, double> shell_absmass;
  // split diagnostics (which stage requested refinement)
  size_t split_membership = 0, split_filter = 0, split_pipeline = 0;
  std::map<int, long> split_site;
  double skipped_bound = 0;
  size_t skipped_cells = 0;
  std::map<std::array<long, 4>, long> leaf_radii;  // populated when diagnose
  bool diagnose = false;
};

OracleResult quadrature_oracle(const OracleSpec& spec);

// Region filters for the Gauss-average reduction checks (Klingen/Siegel s=1).
BallFilter klingen1_R1_filter();
BallFilter klingen1_R1prime_filter();
BallFilter siegel1_R1_filter();
BallFilter siegel1_R1prime_filter();

struct GaussReductionResult {
  std::complex<double> full, reduced;
  double rel_error;
  bool pass;
};
GaussReductionResult gauss_reduction_check(Parabolic P, double nu, long p, double tol);

}  // namespace gsp4lab
