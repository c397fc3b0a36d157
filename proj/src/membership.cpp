#include "gsp4lab/membership.hpp"

#include <random>

namespace gsp4lab {

namespace {

using V = Valuation;

V v_(const Rat& r, long p) { return vp(r, p); }

// q in E (1 + p^k Z_p); false when E = 0 or q = 0.
bool in_unit_class(const Rat& q, const Rat& E, int k, long p) {
  if (E.is_zero() || q.is_zero()) return false;
  return vp(q / E - Rat(1), p) >= V(k);
}

// ---- Klingen conditions on (x, y, z), n = [1 x z y; 0 1 y 0; 0 0 1 0; 0 0 -x 1].
bool klingen_member(WeylWord label, const Rat& x, const Rat& y, const Rat& z, long p) {
  V vx = v_(x, p), vy = v_(y, p), vz = v_(z, p);
  switch (label) {
    case WeylWord::E: return vz < min(V(0), min(vx, vy));
    case WeylWord::S1: return vy < min(V(0), min(vx, vz + 1));
    case WeylWord::S1S2: return vx <= min(V(-1), min(vy, vz));
    case WeylWord::S1S2S1: return vx >= V(0) && vy >= V(0) && vz >= V(0);
    default: throw std::invalid_argument("klingen_member: label not in X_Pk");
  }
}

// ---- Siegel conditions on Y = [x y; y z].
bool siegel_member(WeylWord label, const Rat& x, const Rat& y, const Rat& z, long p) {
  V vx = v_(x, p), vy = v_(y, p), vz = v_(z, p);
  Rat det = x * z - y * y;
  V vdet = v_(det, p);
  switch (label) {
    case WeylWord::E: return vdet < min(vx, min(vy, vz));
    case WeylWord::S2: return vx <= min(V(-1), min(vy + (-1), vdet));
    case WeylWord::S2S1: return vz <= min(V(-1), min(vy, vdet));
    case WeylWord::S2S1S2: return vx >= V(0) && vy >= V(0) && vz >= V(0);
    default: throw std::invalid_argument("siegel_member: label not in X_Ps");
  }
}

}  // namespace

QMat region_matrix(const RegionPoint& pt) {
  switch (pt.parabolic) {
    case Parabolic::Borel: return borel_u(pt.x, pt.y, pt.z, pt.c);  // (x, a, b, c)
    case Parabolic::Siegel: return siegel_n(pt.x, pt.y, pt.z);
    case Parabolic::Klingen: return klingen_n(pt.x, pt.y, pt.z);
  }
  throw std::logic_error("region_matrix");
}

bool membership(Parabolic P, WeylWord label, const RegionPoint& pt, long p) {
  switch (P) {
    case Parabolic::Klingen: return klingen_member(label, pt.x, pt.y, pt.z, p);
    case Parabolic::Siegel: return siegel_member(label, pt.x, pt.y, pt.z, p);
    case Parabolic::Borel: {
      // J u lands in the Siegel cell of Y = [a b; b c] and the Klingen cell of
      // (x, b + cx, a + bx); the pair pins the Borel cell.
      const Rat& x = pt.x;
      const Rat& a = pt.y;
      const Rat& b = pt.z;
      const Rat& c = pt.c;
      WeylWord sp = coset_label_of_cell(Parabolic::Siegel, label);
      WeylWord kp = coset_label_of_cell(Parabolic::Klingen, label);
      return siegel_member(sp, a, b, c, p) && klingen_member(kp, x, b + c * x, a + b * x, p);
    }
  }
  throw std::logic_error("membership");
}

WeylWord membership_oracle_label(Parabolic P, const RegionPoint& pt, long p) {
  QMat g = weyl_matrix(sigma_P(P)) * region_matrix(pt);
  BorelSplit<Rat> s = borel_split<Rat>(g, p);
  return classify(s.k, P, p);
}

bool membership_oracle(Parabolic P, WeylWord label, const RegionPoint& pt, long p) {
  return membership_oracle_label(P, pt, p) == label;
}

// ---------------------------------------------------------------------------
// Tri-state membership on ball cells.
// ---------------------------------------------------------------------------

namespace {

struct VIv {
  long lo, hi;  // possible point valuations; kValInf encodes +infinity
};

VIv viv(const PBall& b, long p) {
  VInterval v = b.vinterval();
  return {v.lo.is_infinity() ? kValInf : v.lo.value(),
          v.hi.is_infinity() ? kValInf : v.hi.value()};
}
VIv viv_const(long k) { return {k, k}; }
VIv viv_min(VIv a, VIv b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }
VIv viv_shift(VIv a, long k) {
  return {a.lo >= kValInf ? kValInf : a.lo + k, a.hi >= kValInf ? kValInf : a.hi + k};
}

TriState tri_lt(VIv a, VIv b) {
  if (a.hi < b.lo) return TriState::True;
  if (a.lo >= b.hi) return TriState::False;
  return TriState::Unknown;
}
TriState tri_le(VIv a, VIv b) {
  if (a.hi <= b.lo) return TriState::True;
  if (a.lo > b.hi) return TriState::False;
  return TriState::Unknown;
}
TriState tri_all(TriState a, TriState b) {
  if (a == TriState::False || b == TriState::False) return TriState::False;
  if (a == TriState::Unknown || b == TriState::Unknown) return TriState::Unknown;
  return TriState::True;
}
TriState tri_all(TriState a, TriState b, TriState c) { return tri_all(tri_all(a, b), c); }

TriState tri_klingen(WeylWord label, const PBall& x, const PBall& y, const PBall& z, long p) {
  VIv vx = viv(x, p), vy = viv(y, p), vz = viv(z, p);
  switch (label) {
    case WeylWord::E: return tri_lt(vz, viv_min(viv_const(0), viv_min(vx, vy)));
    case WeylWord::S1: return tri_lt(vy, viv_min(viv_const(0), viv_min(vx, viv_shift(vz, 1))));
    case WeylWord::S1S2: return tri_le(vx, viv_min(viv_const(-1), viv_min(vy, vz)));
    case WeylWord::S1S2S1:
      return tri_all(tri_le(viv_const(0), vx), tri_le(viv_const(0), vy),
                     tri_le(viv_const(0), vz));
    default: throw std::invalid_argument("tri_klingen: bad label");
  }
}

TriState tri_siegel(WeylWord label, const PBall& x, const PBall& y, const PBall& z, long p) {
  VIv vx = viv(x, p), vy = viv(y, p), vz = viv(z, p);
  PBall det = ball_sub(ball_mul(x, z), ball_mul(y, y));
  VIv vd = viv(det, p);
  switch (label) {
    case WeylWord::E: return tri_lt(vd, viv_min(vx, viv_min(vy, vz)));
    case WeylWord::S2:
      return tri_le(vx, viv_min(viv_const(-1), viv_min(viv_shift(vy, -1), vd)));
    case WeylWord::S2S1: return tri_le(vz, viv_min(viv_const(-1), viv_min(vy, vd)));
    case WeylWord::S2S1S2:
      return tri_all(tri_le(viv_const(0), vx), tri_le(viv_const(0), vy),
                     tri_le(viv_const(0), vz));
    default: throw std::invalid_argument("tri_siegel: bad label");
  }
}

}  // namespace

TriState tri_membership(Parabolic P, WeylWord label, const std::vector<PBall>& q, long p) {
  switch (P) {
    case Parabolic::Klingen: return tri_klingen(label, q[0], q[1], q[2], p);
    case Parabolic::Siegel: return tri_siegel(label, q[0], q[1], q[2], p);
    case Parabolic::Borel: {
      const PBall &x = q[0], &a = q[1], &b = q[2], &c = q[3];
      PBall bcx = ball_add(b, ball_mul(c, x));
      PBall abx = ball_add(a, ball_mul(b, x));
      WeylWord sp = coset_label_of_cell(Parabolic::Siegel, label);
      WeylWord kp = coset_label_of_cell(Parabolic::Klingen, label);
      return tri_all(tri_siegel(sp, a, b, c, p), tri_klingen(kp, x, bcx, abx, p));
    }
  }
  throw std::logic_error("tri_membership");
}

// ---------------------------------------------------------------------------
// Region-dissection lemmas.
// ---------------------------------------------------------------------------

namespace {

using Pt = std::vector<Rat>;

struct K1Ranges {
  // Klingen s = 1 sub-ranges on (x, y, z).
  static bool R(const Pt& q, long p) { return klingen_member(WeylWord::E, q[0], q[1], q[2], p); }
  static bool R1(const Pt& q, long p) {
    return R(q, p) && v_(q[2] + q[0] * q[1], p) < v_(q[0] * q[0], p);
  }
  static bool R2(const Pt& q, long p) {
    return R(q, p) && v_(q[2] + q[0] * q[1], p) >= v_(q[0] * q[0], p);
  }
  static bool Rp1(const Pt& q, long p) {
    return R1(q, p) && v_(q[0], p) >= V(-1) &&
           v_(q[1] * q[1], p) >= v_(q[2] + q[0] * q[1], p) + (-1);
  }
  static bool Rp11(const Pt& q, long p) { return Rp1(q, p) && v_(q[2], p) < V(-1); }
  static bool Rp2(const Pt& q, long p) {
    return R2(q, p) && v_(q[0], p) >= V(-1) &&
           v_(q[2] - q[0] * q[1], p) >= v_(q[0] * q[0], p) + (-1) &&
           v_(q[2], p) >= v_(q[0] * q[0], p);
  }
};

// Siegel s = 1 sub-ranges on (x, y, z).
struct S1Ranges {
  static bool R(const Pt& q, long p) { return siegel_member(WeylWord::E, q[0], q[1], q[2], p); }
  static bool R1(const Pt& q, long p) { return R(q, p) && v_(q[1], p) < v_(q[2], p); }
  static bool R2(const Pt& q, long p) { return R(q, p) && v_(q[1], p) >= v_(q[2], p); }
  static bool Rp1(const Pt& q, long p) {
    return R1(q, p) && v_(q[0], p) >= v_(q[1], p) + (-1) && v_(q[2], p) >= V(-1);
  }
  static bool Rp11(const Pt& q, long p) { return Rp1(q, p) && v_(q[1], p) <= v_(q[0], p); }
  static bool Rp12(const Pt& q, long p) {
    return Rp1(q, p) && !v_(q[1], p).is_infinity() && !v_(q[0], p).is_infinity() &&
           v_(q[1], p) == v_(q[0], p) + 1;
  }
  static bool Rp2(const Pt& q, long p) { return R2(q, p) && v_(q[2], p) >= V(-1); }
  static bool Rp21(const Pt& q, long p) {
    return Rp2(q, p) && v_(q[0] * q[2], p) > v_(q[1] * q[1], p);
  }
  static bool Rp22(const Pt& q, long p) {
    return Rp2(q, p) && v_(q[0] * q[2], p) <= v_(q[1] * q[1], p);
  }
};

// Siegel s = s2 sub-ranges.
struct S2Ranges {
  static bool R(const Pt& q, long p) { return siegel_member(WeylWord::S2, q[0], q[1], q[2], p); }
  static bool Rp(const Pt& q, long p) { return R(q, p) && v_(q[2], p) >= V(-1); }
  static bool R2(const Pt& q, long p) { return Rp(q, p) && v_(q[1], p) < V(0); }
  static bool Rp2(const Pt& q, long p) {
    return R2(q, p) && v_(q[0], p) >= v_(q[1], p) + (-1) && v_(q[0], p) >= v_(q[1] * q[1], p);
  }
};

std::vector<std::vector<Rat>> no_probes(long) { return {}; }

Rat pw(long p, long k) { return Rat(BigInt(p)).pow(k); }

}  // namespace

const std::vector<RegionLemma>& region_lemmas() {
  static const std::vector<RegionLemma> lemmas = [] {
    std::vector<RegionLemma> L;

    // --- Klingen s=1: R'_11 = (C1 \ S1) ⊔ C2.
    {
      RegionLemma l;
      l.name = "dissect1";
      l.arity = 3;
      auto C1ok = [](const Pt& q, long p) {
        V vx = v_(q[0], p), vy = v_(q[1], p), vz = v_(q[2], p);
        V two_vx = v_(q[0] * q[0], p);
        V two_vy2 = v_(q[1] * q[1], p) + 2;
        return vz < min(min(V(-1), vx), min(two_vx, two_vy2)) && vx >= V(-1);
      };
      auto S1set = [C1ok](const Pt& q, long p) {
        return C1ok(q, p) && in_unit_class(q[0] * q[1], -q[2], 1, p);
      };
      auto C2 = [](const Pt& q, long p) {
        return K1Ranges::Rp11(q, p) && v_(q[2] + q[0] * q[1], p) > v_(q[2], p);
      };
      l.lhs = [](const Pt& q, long p) { return K1Ranges::Rp11(q, p); };
      l.rhs = [C1ok, S1set, C2](const Pt& q, long p) {
        return (C1ok(q, p) && !S1set(q, p)) || C2(q, p);
      };
      l.part1 = [C1ok, S1set](const Pt& q, long p) { return C1ok(q, p) && !S1set(q, p); };
      l.part2 = C2;
      l.probes = [](long p) {
        std::vector<Pt> pts;
        // boundary of the S1 congruence: xy = -z exactly, and off by a unit
        for (long k = 2; k <= 4; ++k) {
          Rat z = pw(p, -k), x = pw(p, -1);
          Rat y = -z / x;
          pts.push_back({x, y, z});                       // xy = -z exactly
          pts.push_back({x, y * (Rat(1) + pw(p, 1)), z}); // inside 1 + p
          pts.push_back({x, y * Rat(2), z});              // generic unit off
        }
        return pts;
      };
      L.push_back(l);
    }

    // --- Klingen s=1: R'_2 = p^{-1}Z^x x p^{-1}Z x p^{-2}Z^x.
    {
      RegionLemma l;
      l.name = "dissect2";
      l.arity = 3;
      l.lhs = [](const Pt& q, long p) { return K1Ranges::Rp2(q, p); };
      l.rhs = [](const Pt& q, long p) {
        return v_(q[0], p) == V(-1) && v_(q[1], p) >= V(-1) && v_(q[2], p) == V(-2);
      };
      l.probes = no_probes;
      L.push_back(l);
    }

    // --- Klingen s=s1: R'_1 = C1 ⊔ (C2 \ S1).
    {
      RegionLemma l;
      l.name = "dissect3";
      l.arity = 3;
      auto Rs1 = [](const Pt& q, long p) {
        return klingen_member(WeylWord::S1, q[0], q[1], q[2], p);
      };
      auto R1 = [Rs1](const Pt& q, long p) {
        return Rs1(q, p) && v_(q[2] + q[0] * q[1], p) < V(0);
      };
      auto Rp1 = [R1](const Pt& q, long p) {
        return R1(q, p) && v_(q[0], p) >= V(-1) &&
               v_(q[1] * q[1], p) >= v_(q[2] + q[0] * q[1], p) + (-1);
      };
      auto C1 = [](const Pt& q, long p) {
        return v_(q[0], p) == V(-1) && v_(q[1], p) == V(-2) && v_(q[2], p) >= V(-2);
      };
      auto C2 = [](const Pt& q, long p) {
        return v_(q[0], p) >= V(0) && v_(q[1], p) == V(-1) && v_(q[2], p) >= V(-1);
      };
      auto S1set = [C2](const Pt& q, long p) {
        return C2(q, p) && v_(q[2] + q[0] * q[1], p) >= V(0);
      };
      l.lhs = Rp1;
      l.rhs = [C1, C2, S1set](const Pt& q, long p) {
        return C1(q, p) || (C2(q, p) && !S1set(q, p));
      };
      l.part1 = C1;
      l.part2 = [C2, S1set](const Pt& q, long p) { return C2(q, p) && !S1set(q, p); };
      l.probes = [](long p) {
        std::vector<Pt> pts;
        Rat x(1), y = pw(p, -1);
        pts.push_back({x, y, -x * y});                        // z = -xy exactly
        pts.push_back({x, y, -x * y + Rat(1)});               // z + xy integral
        pts.push_back({x, y, -x * y + pw(p, -1)});            // off the class
        return pts;
      };
      L.push_back(l);
    }

    // --- Siegel s=1: R'_11 = C11 \ S11.
    {
      RegionLemma l;
      l.name = "R'11";
      l.arity = 3;
      auto C11 = [](const Pt& q, long p) {
        return v_(q[1], p) <= min(V(-1), v_(q[0], p)) && v_(q[2], p) >= V(-1);
      };
      auto S11 = [](const Pt& q, long p) {
        return v_(q[1], p) == V(-1) && v_(q[2], p) == V(-1) && v_(q[0], p) >= V(-1);
      };
      l.lhs = [](const Pt& q, long p) { return S1Ranges::Rp11(q, p); };
      l.rhs = [C11, S11](const Pt& q, long p) { return C11(q, p) && !S11(q, p); };
      l.probes = no_probes;
      L.push_back(l);
    }

    // --- Siegel s=1: R'_12 = C12 \ S12 (S12 carries the z = y^2/x congruence).
    {
      RegionLemma l;
      l.name = "R'12";
      l.arity = 3;
      auto C12 = [](const Pt& q, long p) {
        V vx = v_(q[0], p), vy = v_(q[1], p);
        if (vx.is_infinity() || vy.is_infinity()) return false;
        return vy == vx + 1 && vy < V(-1) && v_(q[2], p) >= V(-1);
      };
      // S12 carries the additive congruence z in y^2/x + Z_p on the
      // (-3,-2,-1) valuation pattern (as in the R22 lemma's S22).
      auto S12 = [](const Pt& q, long p) {
        return v_(q[0], p) == V(-3) && v_(q[1], p) == V(-2) && v_(q[2], p) == V(-1) &&
               vp(q[2] - q[1] * q[1] / q[0], p) >= V(0);
      };
      l.lhs = [](const Pt& q, long p) { return S1Ranges::Rp12(q, p); };
      l.rhs = [C12, S12](const Pt& q, long p) { return C12(q, p) && !S12(q, p); };
      l.probes = [](long p) {
        std::vector<Pt> pts;
        Rat x = pw(p, -3), y = pw(p, -2);
        Rat z0 = y * y / x;  // valuation -1
        pts.push_back({x, y, z0});
        pts.push_back({x, y, z0 + Rat(1)});
        pts.push_back({x, y, z0 + pw(p, -1)});
        pts.push_back({x, y, z0 * Rat(2)});
        return pts;
      };
      L.push_back(l);
    }

    // --- Siegel s=1: R'_21 explicit.
    {
      RegionLemma l;
      l.name = "R21";
      l.arity = 3;
      l.lhs = [](const Pt& q, long p) { return S1Ranges::Rp21(q, p); };
      l.rhs = [](const Pt& q, long p) {
        return v_(q[2], p) == V(-1) && v_(q[1], p) == V(-1) && v_(q[0], p) > V(-1);
      };
      l.probes = no_probes;
      L.push_back(l);
    }

    // --- Siegel s=1: R'_22 = C22 \ S22.
    {
      RegionLemma l;
      l.name = "R22";
      l.arity = 3;
      auto C22 = [](const Pt& q, long p) {
        return v_(q[0], p) <= V(-1) && v_(q[2], p) == V(-1) && v_(q[1], p) >= V(-1);
      };
      auto S22 = [](const Pt& q, long p) {
        if (!(v_(q[0], p) == V(-1) && v_(q[1], p) == V(-1))) return false;
        return vp(q[2] - q[1] * q[1] / q[0], p) >= V(0);
      };
      l.lhs = [](const Pt& q, long p) { return S1Ranges::Rp22(q, p); };
      l.rhs = [C22, S22](const Pt& q, long p) { return C22(q, p) && !S22(q, p); };
      l.probes = [](long p) {
        std::vector<Pt> pts;
        Rat x = pw(p, -1), y = pw(p, -1);
        Rat z0 = y * y / x;  // valuation -1
        pts.push_back({x, y, z0});
        pts.push_back({x, y, z0 + Rat(1)});
        pts.push_back({x, y, z0 + pw(p, -1)});
        return pts;
      };
      L.push_back(l);
    }

    // --- Siegel s=s2: R'_2 = C21 ∪ C22.
    {
      RegionLemma l;
      l.name = "R'2s1s2s1";
      l.arity = 3;
      auto C21 = [](const Pt& q, long p) {
        return v_(q[0], p) == V(-2) && v_(q[1], p) == V(-1) && v_(q[2], p) >= V(0);
      };
      auto C22 = [](const Pt& q, long p) {
        if (!(v_(q[0], p) == V(-3) && v_(q[1], p) == V(-2))) return false;
        return vp(q[2] - q[1] * q[1] / q[0], p) >= V(0);
      };
      l.lhs = [](const Pt& q, long p) { return S2Ranges::Rp2(q, p); };
      l.rhs = [C21, C22](const Pt& q, long p) { return C21(q, p) || C22(q, p); };
      l.probes = [](long p) {
        std::vector<Pt> pts;
        Rat x = pw(p, -3), y = pw(p, -2);
        Rat z0 = y * y / x;
        pts.push_back({x, y, z0});
        pts.push_back({x, y, z0 + Rat(1)});
        pts.push_back({x, y, z0 + pw(p, -1)});
        return pts;
      };
      L.push_back(l);
    }

    // --- Borel case lemmas. Coordinates (x, a, b, c); Y = [a b; b c].
    auto sg1 = [](const Pt& q, long p) {
      return siegel_member(WeylWord::E, q[1], q[2], q[3], p);
    };
    auto sgs2 = [](const Pt& q, long p) {
      return siegel_member(WeylWord::S2, q[1], q[2], q[3], p);
    };
    auto sgs2s1 = [](const Pt& q, long p) {
      return siegel_member(WeylWord::S2S1, q[1], q[2], q[3], p);
    };
    auto abx = [](const Pt& q) { return q[1] + q[2] * q[0]; };  // a + bx
    auto bcx = [](const Pt& q) { return q[2] + q[3] * q[0]; };  // b + cx

    auto borel_probe_points = [](long p) {
      std::vector<Pt> pts;
      // a = -bx boundary at several depths, plus ac = b^2 and x = -b/c walls.
      for (long kb = 1; kb <= 3; ++kb) {
        Rat b = pw(p, -kb), x = pw(p, -1);
        pts.push_back({x, -b * x, b, Rat(1)});
        pts.push_back({x, -b * x * (Rat(1) + pw(p, 1)), b, Rat(1)});
        pts.push_back({x, -b * x * (Rat(1) + pw(p, 2)), b, Rat(1)});
        pts.push_back({x, -b * x * Rat(2), b, Rat(1)});
      }
      Rat c = pw(p, -1);
      for (long kb = 0; kb <= 2; ++kb) {
        Rat b = pw(p, -kb);
        Rat a0 = b * b / c;
        pts.push_back({Rat(1), a0, b, c});
        pts.push_back({Rat(1), a0 * (Rat(1) + pw(p, 1)), b, c});
        pts.push_back({Rat(0), a0, b, c});
        pts.push_back({-b / c, a0, b, c});
        pts.push_back({-b / c * (Rat(1) + pw(p, 1)), a0 * (Rat(1) + pw(p, 1)), b, c});
      }
      return pts;
    };

    auto add_borel = [&](const char* name, auto lhs, auto rhs) {
      RegionLemma l;
      l.name = name;
      l.arity = 4;
      l.lhs = lhs;
      l.rhs = rhs;
      l.probes = borel_probe_points;
      L.push_back(l);
    };

    // 111
    add_borel(
        "borel-111",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) >= V(0) &&
                 v_(abx(q), p) < v_(bcx(q), p);
        },
        [](const Pt& q, long p) {
          V va = v_(q[1], p), vb = v_(q[2], p);
          return v_(q[2] * q[2], p) < va && va < vb && vb < V(0) && v_(q[0], p) >= V(0) &&
                 v_(q[3], p) >= V(0);
        });
    // 112
    add_borel(
        "borel-112",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) == V(-1) &&
                 v_(abx(q), p) < v_(bcx(q), p);
        },
        [](const Pt& q, long p) {
          if (!(v_(q[0], p) == V(-1) && v_(q[3], p) >= V(0))) return false;
          V va = v_(q[1], p), vb = v_(q[2], p);
          bool c1 = vb == V(-1) && va >= V(-1);
          bool c2 = vb <= V(-2) && va >= vb + (-1) && !in_unit_class(q[1], -q[2] * q[0], 1, p);
          bool c3 = !vb.is_infinity() && V(2 * vb.value() + 1) <= va && va <= vb + (-2);
          return c1 || c2 || c3;
        });
    // 121
    add_borel(
        "borel-121",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) &&
                 v_(abx(q), p) < v_(bcx(q), p);
        },
        [](const Pt& q, long p) {
          if (!(v_(q[3], p) == V(-1))) return false;
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          V vx = v_(x, p), va = v_(a, p), vb = v_(b, p);
          bool k1 = va < V(0) && vb >= V(0) && vx > V(0);
          bool k2 = va < V(-1) && vb >= V(0) && vx == V(0);
          bool k3 = !vb.is_infinity() && V(2 * vb.value() + 1) < va && va < vb && vb < V(-1) &&
                    vx >= V(0);
          bool k4 = !vb.is_infinity() && va < V(2 * vb.value() + 1) && V(2 * vb.value() + 1) <= V(-1) &&
                    vx >= V(0);
          bool k5 = !vb.is_infinity() && va == V(2 * vb.value() + 1) && va < V(-1) &&
                    !in_unit_class(a * c, b * b, 1, p) && vx >= V(0);
          // (6): x lies in the additive class -b/c + p Z_p.
          bool k6 = vb == V(-1) && va >= V(-1) && vp(x + b / c, p) >= V(1) &&
                    !in_unit_class(a * c, b * b, 1, p);
          return k1 || k2 || k3 || k4 || k5 || k6;
        });
    // 211
    add_borel(
        "borel-211",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) &&
                 v_(abx(q), p) < v_(bcx(q), p);
        },
        [](const Pt& q, long p) {
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          if (!(v_(x, p) == V(-1) && v_(c, p) == V(-1))) return false;
          if (in_unit_class(b * x, -a, 1, p)) return false;
          if (in_unit_class(b * b, a * c, 1, p)) return false;
          if (v_(b, p) >= V(-1) && !(v_(a, p) < V(-2))) return false;
          return true;
        });
    // B.s1.1
    add_borel(
        "borel-s1.1",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) >= V(0) &&
                 v_(bcx(q), p) <= v_(abx(q), p);
        },
        [](const Pt& q, long p) {
          return v_(q[2], p) <= min(V(-1), v_(q[1], p)) && v_(q[3], p) >= V(0) &&
                 v_(q[0], p) >= V(0);
        });
    // B.s1.2
    add_borel(
        "borel-s1.2",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) == V(-1) &&
                 v_(bcx(q), p) <= v_(abx(q), p);
        },
        [](const Pt& q, long p) {
          return v_(q[2], p) < V(-1) && v_(q[0], p) == V(-1) && v_(q[3], p) >= V(0) &&
                 in_unit_class(q[1], -q[2] * q[0], 1, p);
        });
    // B.s1.3
    add_borel(
        "borel-s1.3",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) &&
                 v_(bcx(q), p) <= v_(abx(q), p);
        },
        [](const Pt& q, long p) {
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          if (!(v_(c, p) == V(-1))) return false;
          bool k1 = v_(b, p) >= V(0) && v_(a, p) == V(-1) && v_(x, p) == V(0);
          bool k2 = v_(b, p) <= V(-1) && v_(x, p) >= V(0) && v_(a, p) >= v_(b, p) &&
                    !in_unit_class(x, -b / c, 1, p) && !in_unit_class(a, b * b / c, 1, p);
          return k1 || k2;
        });
    // B.s1.4
    add_borel(
        "borel-s1.4",
        [sg1, abx, bcx](const Pt& q, long p) {
          return sg1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) &&
                 v_(bcx(q), p) <= v_(abx(q), p);
        },
        [](const Pt& q, long p) {
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          if (!(v_(c, p) == V(-1) && v_(x, p) == V(-1))) return false;
          if (in_unit_class(a, b * b / c, 1, p)) return false;
          V va = v_(a, p), vb = v_(b, p);
          bool k1 = vb == V(-1) && va >= V(-2);
          bool k2 = vb >= V(0) && (va == V(-2) || va == V(-1));
          bool k3 = vb <= V(-2) && in_unit_class(a, -b * x, 1, p);
          return k1 || k2 || k3;
        });
    // B.s2.1
    add_borel(
        "borel-s2.1",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) >= V(0) &&
                 v_(abx(q), p) < v_(q[0], p);
        },
        [](const Pt& q, long p) {
          return v_(q[0], p) >= V(0) && v_(q[3], p) >= V(0) &&
                 v_(q[1], p) <= min(v_(q[2] * q[2], p), V(-1));
        });
    // B.s2.2
    add_borel(
        "borel-s2.2",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) &&
                 v_(abx(q), p) < v_(q[0], p);
        },
        [](const Pt& q, long p) {
          return v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) && v_(q[2], p) <= V(-2) &&
                 in_unit_class(q[1], q[2] * q[2] / q[3], 1, p);
        });
    // B.s2.3
    add_borel(
        "borel-s2.3",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) == V(-1) &&
                 v_(abx(q), p) < v_(q[0], p);
        },
        [](const Pt& q, long p) {
          return v_(q[0], p) == V(-1) && v_(q[3], p) >= V(0) &&
                 v_(q[1], p) <= min(v_(q[2] * q[2], p), V(-2)) &&
                 !in_unit_class(q[1], -q[2] * q[0], 1, p);
        });
    // B.s2.4
    add_borel(
        "borel-s2.4",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) &&
                 v_(abx(q), p) < v_(q[0], p);
        },
        [](const Pt& q, long p) {
          return v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) && v_(q[2], p) <= V(-2) &&
                 in_unit_class(q[1], q[2] * q[2] / q[3], 1, p) &&
                 !in_unit_class(q[1], -q[2] * q[0], 2, p);
        });
    // B.s1s2.1/2: implications (no x-deep case survives).
    add_borel(
        "borel-s1s2.1",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) >= V(0) &&
                 !(v_(abx(q), p) < v_(q[0], p));
        },
        [](const Pt&, long) { return false; });
    add_borel(
        "borel-s1s2.2",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) &&
                 !(v_(abx(q), p) < v_(q[0], p));
        },
        [](const Pt&, long) { return false; });
    // B.s1s2.3
    add_borel(
        "borel-s1s2.3",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) >= V(0) && v_(q[0], p) == V(-1) &&
                 v_(q[0], p) <= v_(abx(q), p);
        },
        [](const Pt& q, long p) {
          if (!(v_(q[0], p) == V(-1) && v_(q[3], p) >= V(0))) return false;
          bool k1 = v_(q[1], p) == V(-1) && v_(q[2], p) >= V(0);
          bool k2 = v_(q[2], p) == V(-1) && in_unit_class(q[1], -q[2] * q[0], 1, p);
          return k1 || k2;
        });
    // B.s1s2.4
    add_borel(
        "borel-s1s2.4",
        [sgs2, abx](const Pt& q, long p) {
          return sgs2(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) &&
                 v_(q[0], p) <= v_(abx(q), p);
        },
        [](const Pt& q, long p) {
          return v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) && v_(q[2], p) == V(-2) &&
                 in_unit_class(q[1], q[2] * q[2] / q[3], 1, p) &&
                 in_unit_class(q[1], -q[2] * q[0], 2, p);
        });
    // B.s2s1.1
    add_borel(
        "borel-s2s1.1",
        [sgs2s1, bcx](const Pt& q, long p) {
          return sgs2s1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) &&
                 v_(bcx(q), p) < V(0);
        },
        [](const Pt& q, long p) {
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          if (!(v_(c, p) == V(-1))) return false;
          bool k1 = v_(a, p) >= V(0) && v_(b, p) >= V(0) && v_(x, p) == V(0);
          bool k2 = v_(b, p) == V(-1) && in_unit_class(a, b * b / c, 1, p) && v_(x, p) >= V(0) &&
                    !in_unit_class(x, -b / c, 1, p);
          return k1 || k2;
        });
    // B.s2s1.2
    add_borel(
        "borel-s2s1.2",
        [sgs2s1, bcx](const Pt& q, long p) {
          return sgs2s1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) &&
                 v_(bcx(q), p) < V(0);
        },
        [](const Pt& q, long p) {
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          if (!(v_(c, p) == V(-1) && v_(x, p) == V(-1))) return false;
          bool k1 = v_(a, p) >= V(0) && v_(b, p) >= V(0);
          bool k2 = v_(b, p) == V(-1) && in_unit_class(a, b * b / c, 1, p);
          return k1 || k2;
        });
    // B.s1s2s1.1
    add_borel(
        "borel-s1s2s1.1",
        [sgs2s1, bcx](const Pt& q, long p) {
          return sgs2s1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) >= V(0) &&
                 v_(bcx(q), p) >= V(0);
        },
        [](const Pt& q, long p) {
          const Rat &x = q[0], &a = q[1], &b = q[2], &c = q[3];
          if (!(v_(c, p) == V(-1))) return false;
          bool k1 = v_(a, p) >= V(0) && v_(b, p) >= V(0) && v_(x, p) > V(0);
          bool k2 = v_(b, p) == V(-1) && in_unit_class(a, b * b / c, 1, p) &&
                    in_unit_class(x, -b / c, 1, p);
          return k1 || k2;
        });
    // B.s1s2s1.2: implication
    add_borel(
        "borel-s1s2s1.2",
        [sgs2s1, bcx](const Pt& q, long p) {
          return sgs2s1(q, p) && v_(q[3], p) == V(-1) && v_(q[0], p) == V(-1) &&
                 v_(bcx(q), p) >= V(0);
        },
        [](const Pt&, long) { return false; });

    return L;
  }();
  return lemmas;
}

RegionCheckResult check_region_lemma(const RegionLemma& lemma, long p, long v_min, long v_max,
                                     int residue_precision, int samples_per_profile,
                                     unsigned seed) {
  RegionCheckResult res;
  std::mt19937_64 rng(seed);
  BigInt pm = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(residue_precision));

  auto random_coord = [&](long k) {
    // valuation exactly k (unit residue mod p^m), or exact zero for k > v_max
    BigInt u;
    do {
      u = BigInt(rng()) % pm;
      if (u < 0) u += pm;
    } while (u % p == 0);
    return Rat(u) * Rat(BigInt(p)).pow(k);
  };

  auto run_point = [&](const std::vector<Rat>& q) {
    bool l = lemma.lhs(q, p);
    bool r = lemma.rhs(q, p);
    if (l != r) {
      res.pass = false;
      std::string w = lemma.name + " mismatch at (";
      for (const Rat& v : q) w += v.str() + ",";
      w += ") lhs=" + std::to_string(l) + " rhs=" + std::to_string(r);
      res.witness = w;
      return false;
    }
    if (lemma.part1 && lemma.part2 && lemma.part1(q, p) && lemma.part2(q, p)) {
      res.pass = false;
      res.witness = lemma.name + ": decomposition parts not disjoint";
      return false;
    }
    ++res.points_checked;
    return true;
  };

  // Exhaustive valuation profiles (including the exact-zero coordinate),
  // random residues at precision p^m.
  long nvals = v_max - v_min + 2;  // extra slot = exact zero
  long total = 1;
  for (int i = 0; i < lemma.arity; ++i) total *= nvals;
  for (long code = 0; code < total; ++code) {
    long c = code;
    std::vector<long> prof(lemma.arity);
    bool has_zero[4] = {false, false, false, false};
    for (int i = 0; i < lemma.arity; ++i) {
      long d = c % nvals;
      c /= nvals;
      if (d == nvals - 1) {
        has_zero[i] = true;
        prof[i] = 0;
      } else {
        prof[i] = v_min + d;
      }
    }
    for (int s = 0; s < samples_per_profile; ++s) {
      std::vector<Rat> q(lemma.arity);
      for (int i = 0; i < lemma.arity; ++i) q[i] = has_zero[i] ? Rat(0) : random_coord(prof[i]);
      if (!run_point(q)) return res;
    }
  }
  if (lemma.probes) {
    for (const auto& q : lemma.probes(p))
      if (!run_point(q)) return res;
  }
  return res;
}

}  // namespace gsp4lab
