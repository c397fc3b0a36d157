#pragma once

// The GSp4 Sato-Tate measure on ordered tempered angle pairs
// 0 <= theta1 <= theta2 <= pi:
//   d mu = (16/pi^2) (cos t1 - cos t2)^2 sin^2 t1 sin^2 t2 dt1 dt2.
// The constant is the probability normalization of the Weyl measure (the
// commonly quoted 4/pi^2 integrates to 1/4 on this domain).

#include <complex>
#include <functional>
#include <vector>

#include "gsp4lab/whittaker.hpp"

namespace gsp4lab {

struct AnglePoint {
  double theta1, theta2;
};

double st_density(const AnglePoint& pt);

// Quadrature of f against the measure over the triangle (tensor
// Gauss-Legendre grid mapped to theta1 <= theta2; nodes^2 points).
double st_integrate(const std::function<double(const AnglePoint&)>& f, int nodes = 200);

// Moments of the torus test values g_{a,b,c} at tempered points.
std::complex<double> st_moment(long a, long b, long c, long p, int nodes = 200);

// Gram matrix of Sp(4) characters with lambda1 <= lmax under the measure.
std::vector<std::vector<double>> character_gram(long lmax, int nodes = 200);
std::vector<std::pair<long, long>> dominant_weights(long lmax);

// Rejection sampler (seeded counter RNG for reproducibility).
std::vector<AnglePoint> st_sample(uint64_t seed, size_t n);

// Kolmogorov-Smirnov statistic of the sampled theta1-marginal against the
// quadrature CDF.
double st_sampler_ks(const std::vector<AnglePoint>& samples, int nodes = 400);

}  // namespace gsp4lab
