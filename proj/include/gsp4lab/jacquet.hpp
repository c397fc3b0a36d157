#pragma once

// The Archimedean Jacquet-integral identities: the 2D integral
// representation on the positive torus, its one-dimensional three-Bessel
// reduction, the Gradshteyn-Ryzhik 6.653.2 collapse it rests on, the
// normalized J with its Gamma factors, and the spectral-growth monitor.

#include <complex>
#include <vector>

namespace gsp4lab {

struct SpectralPoint {
  std::complex<double> mu1, mu2;  // mu1 = (nu1+nu2)/2, mu2 = (nu1-nu2)/2
};

struct TorusPointR {
  double y1 = 1, y2 = 1;
};

// 2D representation:
//   I_nu(g) = int int K_{mu2}(2 pi t1/t2) K_{mu1}(2 pi t1 t2)
//             exp(-pi(y1^2 y2/t1^2 + t1^2/y2 + y2/t2^2 + y2 t2^2)) dt1/t1 dt2/t2.
double jacquet_2d(const SpectralPoint& pt, const TorusPointR& g, double tol = 1e-8);

// 1D three-Bessel reduction (returned without any prefactor):
//   int_0^infty K_{mu2}(2 pi y1 t) K_{mu1}(2 pi y1 sqrt(1+t^2))
//               K_{mu1}(2 pi y2 sqrt(1+t^{-2})) dt/t.
double jacquet_1d(const SpectralPoint& pt, const TorusPointR& g, double tol = 1e-8);

// The empirically determined prefactor relating the two (expected +4; the
// written reduction carries -4, which contradicts positivity of the 2D form
// for real mu).
double jacquet_prefactor(const SpectralPoint& pt, const TorusPointR& g);

// int_0^infty K_nu(zw/x) exp(-x/2 - (z^2+w^2)/(2x)) dx/x  ==  2 K_nu(z) K_nu(w)
struct GrCollapse {
  std::complex<double> lhs, rhs;
  double abs_error;
  bool pass;
};
GrCollapse gr_collapse_check(std::complex<double> nu, double z, double w, double tol);

// J_nu(g) = 16 pi^2 y1^2 y2^{3/2} I_nu(g) /
//           [Gamma((mu2+mu1+1)/2) Gamma((mu2-mu1+1)/2) Gamma(mu2+1/2) Gamma(mu1+1/2)]
std::complex<double> normalized_jacquet(const SpectralPoint& pt, const TorusPointR& g);

std::complex<double> lgamma_complex(std::complex<double> z);
std::complex<double> gamma_complex(std::complex<double> z);

struct BoundMonitorRow {
  double im1, im2;
  double ratio;  // |J| / [(1+|im1|)^{0.6} (1+|im2|)^{0.6} (1+|im1|+|im2|)]
};
struct BoundMonitorReport {
  std::vector<BoundMonitorRow> rows;
  double max_ratio;
  bool finite;
};
BoundMonitorReport bound_monitor(const std::vector<double>& im_grid, double re_mu,
                                 const TorusPointR& g);

}  // namespace gsp4lab
