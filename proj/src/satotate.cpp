#include "gsp4lab/satotate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsp4lab {

namespace {

// Gauss-Legendre nodes on [0,1] by Newton iteration on Legendre polynomials.
void gl_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = (1 - t) / 2;
    // weight on [-1,1] is 2/((1-t^2) P_n'(t)^2); halved for the unit interval
    w[i] = 1 / ((1 - t * t) * [&] {
             double p0 = 1, p1 = t;
             for (int k = 2; k <= n; ++k) {
               double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
               p0 = p1;
               p1 = p2;
             }
             double dp = n * (t * p1 - p0) / (t * t - 1);
             return dp * dp;
           }());
  }
}

// splitmix64: counter-based, reproducible.
uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double unit_double(uint64_t v) { return (v >> 11) * 0x1.0p-53; }

}  // namespace

double st_density(const AnglePoint& pt) {
  double c = std::cos(pt.theta1) - std::cos(pt.theta2);
  double s1 = std::sin(pt.theta1), s2 = std::sin(pt.theta2);
  return 16.0 / (M_PI * M_PI) * c * c * s1 * s1 * s2 * s2;
}

double st_integrate(const std::function<double(const AnglePoint&)>& f, int nodes) {
  std::vector<double> x, w;
  gl_nodes(nodes, x, w);
  double total = 0;
  for (int i = 0; i < nodes; ++i) {
    double t1 = M_PI * x[i];
    double w1 = M_PI * w[i];
    double len = M_PI - t1;
    double inner = 0;
    for (int j = 0; j < nodes; ++j) {
      AnglePoint pt{t1, t1 + len * x[j]};
      inner += w[j] * st_density(pt) * f(pt);
    }
    total += w1 * inner * len;
  }
  return total;
}

std::complex<double> st_moment(long a, long b, long c, long p, int nodes) {
  double re = st_integrate(
      [&](const AnglePoint& pt) {
        SatakePoint s = SatakePoint::tempered(pt.theta1, pt.theta2);
        return g_abc(a, b, c, s, p).real();
      },
      nodes);
  return re;
}

std::vector<std::pair<long, long>> dominant_weights(long lmax) {
  std::vector<std::pair<long, long>> v;
  for (long l1 = 0; l1 <= lmax; ++l1)
    for (long l2 = 0; l2 <= l1; ++l2) v.emplace_back(l1, l2);
  return v;
}

std::vector<std::vector<double>> character_gram(long lmax, int nodes) {
  auto weights = dominant_weights(lmax);
  size_t n = weights.size();
  std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0));
  // One quadrature pass: cache character values per node.
  std::vector<double> x, w;
  gl_nodes(nodes, x, w);
  std::vector<double> chi(n);
  for (int i = 0; i < nodes; ++i) {
    double t1 = M_PI * x[i];
    double len = M_PI - t1;
    for (int j = 0; j < nodes; ++j) {
      AnglePoint pt{t1, t1 + len * x[j]};
      double weight = M_PI * w[i] * len * w[j] * st_density(pt);
      for (size_t k = 0; k < n; ++k)
        chi[k] = sp4_character(weights[k].first, weights[k].second, pt.theta1, pt.theta2);
      for (size_t r = 0; r < n; ++r)
        for (size_t s = r; s < n; ++s) gram[r][s] += weight * chi[r] * chi[s];
    }
  }
  for (size_t r = 0; r < n; ++r)
    for (size_t s = 0; s < r; ++s) gram[r][s] = gram[s][r];
  return gram;
}

std::vector<AnglePoint> st_sample(uint64_t seed, size_t n) {
  // Envelope scan for rejection sampling.
  double fmax = 0;
  for (int i = 0; i <= 400; ++i)
    for (int j = i; j <= 400; ++j) {
      AnglePoint pt{M_PI * i / 400.0, M_PI * j / 400.0};
      fmax = std::max(fmax, st_density(pt));
    }
  fmax *= 1.02;
  std::vector<AnglePoint> out;
  out.reserve(n);
  uint64_t state = seed;
  while (out.size() < n) {
    double t1 = M_PI * unit_double(splitmix64(state));
    double t2 = M_PI * unit_double(splitmix64(state));
    if (t1 > t2) std::swap(t1, t2);
    double u = fmax * unit_double(splitmix64(state));
    if (u < st_density(AnglePoint{t1, t2})) out.push_back(AnglePoint{t1, t2});
  }
  return out;
}

double st_sampler_ks(const std::vector<AnglePoint>& samples, int nodes) {
  // CDF of the theta1 marginal on a grid by quadrature.
  int grid = 200;
  std::vector<double> cdf(grid + 1, 0);
  // density of theta1: integrate density over theta2 in [theta1, pi]
  std::vector<double> x, w;
  gl_nodes(nodes, x, w);
  std::vector<double> pdf(grid + 1, 0);
  for (int i = 0; i <= grid; ++i) {
    double t1 = M_PI * i / grid;
    double len = M_PI - t1;
    double acc = 0;
    for (int j = 0; j < nodes; ++j) acc += w[j] * st_density(AnglePoint{t1, t1 + len * x[j]});
    pdf[i] = acc * len;
  }
  for (int i = 1; i <= grid; ++i) cdf[i] = cdf[i - 1] + (pdf[i - 1] + pdf[i]) / 2 * (M_PI / grid);
  double total = cdf[grid];
  for (double& v : cdf) v /= total;

  std::vector<double> t1s;
  t1s.reserve(samples.size());
  for (const auto& s : samples) t1s.push_back(s.theta1);
  std::sort(t1s.begin(), t1s.end());
  double dmax = 0;
  for (size_t k = 0; k < t1s.size(); ++k) {
    double pos = t1s[k] / M_PI * grid;
    int lo = std::min(static_cast<int>(pos), grid - 1);
    double frac = pos - lo;
    double F = cdf[lo] * (1 - frac) + cdf[lo + 1] * frac;
    double emp_hi = static_cast<double>(k + 1) / t1s.size();
    double emp_lo = static_cast<double>(k) / t1s.size();
    dmax = std::max(dmax, std::max(std::abs(F - emp_hi), std::abs(F - emp_lo)));
  }
  return dmax;
}

}  // namespace gsp4lab
