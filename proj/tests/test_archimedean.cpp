#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsp4lab/bessel.hpp"
#include "gsp4lab/jacquet.hpp"

using namespace gsp4lab;

TEST_CASE("bessel K at half-integer order has a closed form") {
  for (double x : {0.5, 1.0, 5.0}) {
    double expect = std::sqrt(M_PI / (2 * x)) * std::exp(-x);
    CHECK(std::abs(bessel_k(0.5, x).real() - expect) < 1e-10);
  }
}

TEST_CASE("bessel K is even in the order") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    double sr = (static_cast<double>(rng() % 200) / 100.0 - 1.0);
    double si = (static_cast<double>(rng() % 400) / 100.0 - 2.0);
    double x = 0.3 + static_cast<double>(rng() % 500) / 100.0;
    std::complex<double> s(sr, si);
    CHECK(std::abs(bessel_k(s, x) - bessel_k(-s, x)) < 1e-12);
  }
}

TEST_CASE("bessel envelope at large argument") {
  // |K_s(x)| <= C exp(-x) x^{-1/2} for x > 1 + pi |Im s| / 2, with small C
  double worst = 0;
  for (double im : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    std::complex<double> s(0, im);
    for (double x = 1.2 + M_PI * im / 2; x < 25 + M_PI * im / 2; x += 3.1) {
      double ratio = std::abs(bessel_k(s, x)) / (std::exp(-x) / std::sqrt(x));
      worst = std::max(worst, ratio);
    }
  }
  CHECK(worst <= 2.0);
}

TEST_CASE("gr 6.653.2 collapse") {
  GrCollapse a = gr_collapse_check(0.5, 1.0, 1.0, 1e-8);
  CHECK(a.pass);
  GrCollapse b = gr_collapse_check(std::complex<double>(0, 0.3), 1.0, 2.0, 1e-7);
  CHECK(b.pass);
  // z <-> w symmetry of the left side
  GrCollapse c1 = gr_collapse_check(0.25, 0.8, 1.7, 1e-7);
  GrCollapse c2 = gr_collapse_check(0.25, 1.7, 0.8, 1e-7);
  CHECK(std::abs(c1.lhs - c2.lhs) < 1e-9);
}

TEST_CASE("jacquet 2d vs 4 x 1d") {
  SpectralPoint pt{std::complex<double>(0.1, 0), std::complex<double>(0.2, 0)};
  TorusPointR g{1, 1};
  double two = jacquet_2d(pt, g, 1e-9);
  double one = jacquet_1d(pt, g, 1e-9);
  CHECK(two > 0);
  CHECK(one > 0);
  CHECK(std::abs(std::abs(two) - 4 * std::abs(one)) / std::abs(two) < 1e-5);
}

TEST_CASE("jacquet decay in the torus variable") {
  SpectralPoint pt{std::complex<double>(0.1, 0), std::complex<double>(0.2, 0)};
  double near = jacquet_2d(pt, TorusPointR{1, 1}, 1e-9);
  double far = jacquet_2d(pt, TorusPointR{4, 4}, 1e-9);
  CHECK(near > 10 * far);
  double d1 = jacquet_1d(pt, TorusPointR{1, 1}, 1e-9);
  double d2 = jacquet_1d(pt, TorusPointR{2, 1}, 1e-9);
  CHECK(d1 > d2);
}

TEST_CASE("mu1 = mu2 = 0 runs without singularity") {
  SpectralPoint pt{0.0, 0.0};
  double v = jacquet_1d(pt, TorusPointR{1, 1}, 1e-8);
  CHECK(std::isfinite(v));
  CHECK(v > 0);
}

TEST_CASE("complex gamma") {
  CHECK(std::abs(gamma_complex(std::complex<double>(4, 0)) - std::complex<double>(6, 0)) < 1e-10);
  CHECK(std::abs(gamma_complex(std::complex<double>(0.5, 0)) -
                 std::complex<double>(std::sqrt(M_PI), 0)) < 1e-10);
  // reflection zone
  std::complex<double> z(-0.3, 0.4);
  std::complex<double> lhs = gamma_complex(z) * gamma_complex(1.0 - z);
  std::complex<double> rhs = M_PI / std::sin(M_PI * z);
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("normalized jacquet finite and conjugation-symmetric") {
  SpectralPoint pt{std::complex<double>(0.1, 0), std::complex<double>(0.25, 0)};
  std::complex<double> J = normalized_jacquet(pt, TorusPointR{1, 1});
  CHECK(std::isfinite(std::abs(J)));
  CHECK(std::abs(J) > 0);
}

TEST_CASE("bound monitor on a small grid") {
  BoundMonitorReport rep = bound_monitor({0.0, 1.0, 2.5, 5.0}, 0.0, TorusPointR{1, 1});
  CHECK(rep.finite);
  CHECK(rep.max_ratio > 0);
}
