#include "gsp4lab/whittaker.hpp"

#include <cmath>
#include <stdexcept>

namespace gsp4lab {

LaurentExpr cs_value(long n, long p) {
  LaurentExpr e(p);
  if (n < 0) return e;
  for (long j = 0; j <= n; ++j) {
    ExpVec v{};
    v[static_cast<int>(Sym::Q)] = static_cast<int>(n);
    v[static_cast<int>(Sym::A)] = static_cast<int>(n - 2 * j);
    e.add_term(v, Rat(1));
  }
  return e;
}

std::complex<double> cs_value_num(long n, std::complex<double> alpha, long p) {
  if (n < 0) return 0;
  std::complex<double> s = 0;
  for (long j = 0; j <= n; ++j) s += std::pow(alpha, static_cast<double>(n - 2 * j));
  return s * std::pow(static_cast<double>(p), -static_cast<double>(n) / 2.0);
}

LaurentExpr spherical_substitution(const LaurentExpr& e) {
  long p = e.prime();
  LaurentExpr r = e;
  r = r.substitute(Sym::W1, lp_one(p));
  r = r.substitute(Sym::Ww, lp_one(p));
  r = r.substitute(Sym::Wp, cs_value(1, p));
  r = r.substitute(Sym::Wp2, cs_value(2, p));
  r = r.substitute(Sym::Wpm1w, LaurentExpr(p));
  return r;
}

void canonicalize_angles(double& t1, double& t2) {
  auto wrap = [](double t) {
    t = std::fmod(t, 2 * M_PI);
    if (t < 0) t += 2 * M_PI;
    if (t > M_PI) t = 2 * M_PI - t;  // theta ~ -theta
    return t;
  };
  t1 = wrap(t1);
  t2 = wrap(t2);
  if (t1 > t2) std::swap(t1, t2);
}

SatakePoint SatakePoint::tempered(double theta1, double theta2) {
  canonicalize_angles(theta1, theta2);
  SatakePoint s;
  s.alpha = std::polar(1.0, theta1);
  s.beta = std::polar(1.0, theta2);
  return s;
}

namespace {

double sp4_char_raw(long l1, long l2, double t1, double t2) {
  // Weyl character formula for Sp(4): l = (l1+2, l2+1),
  //   chi = det[sin(l_j t_i)] / det[sin((3-j) t_i)].
  double a1 = static_cast<double>(l1 + 2), a2 = static_cast<double>(l2 + 1);
  double num = std::sin(a1 * t1) * std::sin(a2 * t2) - std::sin(a2 * t1) * std::sin(a1 * t2);
  double den = std::sin(2 * t1) * std::sin(t2) - std::sin(t1) * std::sin(2 * t2);
  return num / den;
}

bool near_wall(double t1, double t2) {
  double d = 1e-4;
  return std::abs(t1) < d || std::abs(t2) < d || std::abs(t1 - M_PI) < d ||
         std::abs(t2 - M_PI) < d || std::abs(t1 - t2) < d || std::abs(t1 + t2 - 2 * M_PI) < d;
}

}  // namespace

long sp4_dimension(long l1, long l2) {
  // (1/6)(l1 - l2 + 1)(l2 + 1)(l1 + 2)(l1 + l2 + 3)
  return (l1 - l2 + 1) * (l2 + 1) * (l1 + 2) * (l1 + l2 + 3) / 6;
}

double sp4_character(long l1, long l2, double theta1, double theta2) {
  if (l1 < l2 || l2 < 0) throw std::invalid_argument("sp4_character: non-dominant weight");
  if (!near_wall(theta1, theta2)) return sp4_char_raw(l1, l2, theta1, theta2);
  // Perturb off the wall along a generic direction and extrapolate to 0 by a
  // 3-node polynomial (the step stays large enough that the Weyl denominator
  // keeps ~9 digits).
  const double e0 = 5e-3;
  const double d1 = 1.0, d2 = std::sqrt(2.0);
  auto f = [&](double e) { return sp4_char_raw(l1, l2, theta1 + d1 * e, theta2 + d2 * e); };
  return f(e0) / 3.0 - 2.0 * f(e0 / 2) + (8.0 / 3.0) * f(e0 / 4);
}

std::complex<double> g_abc(long a, long b, long c, const SatakePoint& s, long p) {
  if (b > a) throw std::invalid_argument("g_abc: requires b <= a");
  if (c != 0 && c != 1) throw std::invalid_argument("g_abc: c in {0,1}");
  // Whittaker support: the coweight must be dominant, a >= b >= c - b.
  if (b < c - b) return 0.0;
  double t1 = std::arg(s.alpha), t2 = std::arg(s.beta);
  double chi = sp4_character(a, b, t1, t2);
  double expo = -(2.0 * a + b - 1.5 * c);
  return chi * std::pow(static_cast<double>(p), expo);
}

}  // namespace gsp4lab
