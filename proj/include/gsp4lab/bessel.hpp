#pragma once

// Modified Bessel K of complex order by direct quadrature of
//   K_s(x) = int_0^infty exp(-x cosh t) cosh(s t) dt,   x > 0,
// with panel doubling until two refinement levels agree.

#include <complex>
#include <functional>

namespace gsp4lab {

std::complex<double> bessel_k(std::complex<double> s, double x, double tol = 1e-12);

// Adaptive Gauss-Legendre on [a, b] with interval doubling.
double integrate_gl(const std::function<double(double)>& f, double a, double b, double tol,
                    int max_level = 14);

}  // namespace gsp4lab
