#include "gsp4lab/jacquet.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gsp4lab/bessel.hpp"

namespace gsp4lab {

namespace {

// Integrate f over (0, infty) in logarithmic coordinates with symmetric
// cutoff chosen by the caller-supplied decay extent.
double integrate_log(const std::function<double(double)>& f, double ulo, double uhi, double tol) {
  auto g = [&](double u) {
    double t = std::exp(u);
    return f(t) * t;  // dt = t du
  };
  return integrate_gl(g, ulo, uhi, tol) / 1.0;
}

}  // namespace

double jacquet_2d(const SpectralPoint& pt, const TorusPointR& g, double tol) {
  if (std::abs(pt.mu1.imag()) > 1e-12 || std::abs(pt.mu2.imag()) > 1e-12)
    throw std::invalid_argument("jacquet_2d: real spectral parameters only on this path");
  double m1 = pt.mu1.real(), m2 = pt.mu2.real();
  double y1 = g.y1, y2 = g.y2;
  // Exponential factor confines t1, t2 to moderate log windows.
  auto inner = [&](double t2) {
    auto f1 = [&](double t1) {
      double e = -M_PI * (y1 * y1 * y2 / (t1 * t1) + t1 * t1 / y2 + y2 / (t2 * t2) + y2 * t2 * t2);
      if (e < -700) return 0.0;
      double k1 = bessel_k(m2, 2 * M_PI * t1 / t2, 1e-13).real();
      double k2 = bessel_k(m1, 2 * M_PI * t1 * t2, 1e-13).real();
      return k1 * k2 * std::exp(e) / t1;
    };
    return integrate_log(f1, -3.0, 3.0, tol / 10);
  };
  auto outer = [&](double t2) { return inner(t2) / t2; };
  return integrate_log(outer, -3.0, 3.0, tol);
}

double jacquet_1d(const SpectralPoint& pt, const TorusPointR& g, double tol) {
  double m1 = pt.mu1.real(), m2 = pt.mu2.real();
  double y1 = g.y1, y2 = g.y2;
  auto f = [&](double t) {
    double a1 = 2 * M_PI * y1 * t;
    double a2 = 2 * M_PI * y1 * std::sqrt(1 + t * t);
    double a3 = 2 * M_PI * y2 * std::sqrt(1 + 1 / (t * t));
    if (a2 + a3 > 1400) return 0.0;
    return bessel_k(m2, a1, 1e-13).real() * bessel_k(m1, a2, 1e-13).real() *
           bessel_k(m1, a3, 1e-13).real() / t;
  };
  return integrate_log(f, -6.0, 6.0, tol);
}

double jacquet_prefactor(const SpectralPoint& pt, const TorusPointR& g) {
  double two = jacquet_2d(pt, g, 1e-9);
  double one = jacquet_1d(pt, g, 1e-9);
  return two / one;
}

GrCollapse gr_collapse_check(std::complex<double> nu, double z, double w, double tol) {
  auto f = [&](double x) -> std::complex<double> {
    double e = -x / 2 - (z * z + w * w) / (2 * x);
    if (e < -700) return 0.0;
    return bessel_k(nu, z * w / x, 1e-13) * std::exp(e) / x;
  };
  // log substitution on (0, infty)
  auto fr = [&](double u) { return (f(std::exp(u)) * std::exp(u)).real(); };
  auto fi = [&](double u) { return (f(std::exp(u)) * std::exp(u)).imag(); };
  double re = integrate_gl(fr, -8.0, 8.0, tol / 10);
  double im = integrate_gl(fi, -8.0, 8.0, tol / 10);
  GrCollapse r;
  r.lhs = std::complex<double>(re, im);
  r.rhs = 2.0 * bessel_k(nu, z, 1e-13) * bessel_k(nu, w, 1e-13);
  r.abs_error = std::abs(r.lhs - r.rhs);
  r.pass = r.abs_error < tol;
  return r;
}

std::complex<double> lgamma_complex(std::complex<double> z) {
  // Lanczos approximation (g = 7, 9 coefficients).
  static const double c[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059, 12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(M_PI / std::sin(M_PI * z)) - lgamma_complex(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> gamma_complex(std::complex<double> z) { return std::exp(lgamma_complex(z)); }

std::complex<double> normalized_jacquet(const SpectralPoint& pt, const TorusPointR& g) {
  double I = jacquet_2d(pt, g, 1e-9);
  std::complex<double> m1 = pt.mu1, m2 = pt.mu2;
  std::complex<double> gamma = gamma_complex((m2 + m1 + 1.0) / 2.0) *
                               gamma_complex((m2 - m1 + 1.0) / 2.0) * gamma_complex(m2 + 0.5) *
                               gamma_complex(m1 + 0.5);
  double pref = 16 * M_PI * M_PI * std::pow(g.y1, 2.0) * std::pow(g.y2, 1.5);
  return pref * I / gamma;
}

BoundMonitorReport bound_monitor(const std::vector<double>& im_grid, double re_mu,
                                 const TorusPointR& g) {
  BoundMonitorReport rep;
  rep.max_ratio = 0;
  rep.finite = true;
  for (double a : im_grid)
    for (double b : im_grid) {
      // Complex spectral parameters require the complex-order path through
      // the 1D reduction (positivity no longer applies).
      SpectralPoint pt;
      pt.mu1 = std::complex<double>(re_mu, a);
      pt.mu2 = std::complex<double>(re_mu, b);
      double y1 = g.y1, y2 = g.y2;
      auto f = [&](double t) -> std::complex<double> {
        double a1 = 2 * M_PI * y1 * t;
        double a2 = 2 * M_PI * y1 * std::sqrt(1 + t * t);
        double a3 = 2 * M_PI * y2 * std::sqrt(1 + 1 / (t * t));
        if (a2 + a3 > 1400) return 0.0;
        return bessel_k(pt.mu2, a1, 1e-11) * bessel_k(pt.mu1, a2, 1e-11) *
               bessel_k(pt.mu1, a3, 1e-11) / t;
      };
      auto fr = [&](double u) { return (f(std::exp(u)) * std::exp(u)).real(); };
      auto fi = [&](double u) { return (f(std::exp(u)) * std::exp(u)).imag(); };
      std::complex<double> I(integrate_gl(fr, -5.0, 5.0, 1e-8),
                             integrate_gl(fi, -5.0, 5.0, 1e-8));
      I *= 4.0;  // empirical prefactor of the reduction
      std::complex<double> gamma = gamma_complex((pt.mu2 + pt.mu1 + 1.0) / 2.0) *
                                   gamma_complex((pt.mu2 - pt.mu1 + 1.0) / 2.0) *
                                   gamma_complex(pt.mu2 + 0.5) * gamma_complex(pt.mu1 + 0.5);
      double pref = 16 * M_PI * M_PI * std::pow(g.y1, 2.0) * std::pow(g.y2, 1.5);
      std::complex<double> J = pref * I / gamma;
      double denom = std::pow(1 + std::abs(a), 0.6) * std::pow(1 + std::abs(b), 0.6) *
                     (1 + std::abs(a) + std::abs(b));
      BoundMonitorRow row{a, b, std::abs(J) / denom};
      if (!std::isfinite(row.ratio)) rep.finite = false;
      rep.max_ratio = std::max(rep.max_ratio, row.ratio);
      rep.rows.push_back(row);
    }
  return rep;
}

}  // namespace gsp4lab
