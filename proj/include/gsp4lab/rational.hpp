#pragma once

// Exact rational scalar used everywhere: arbitrary-precision integers,
// canonical form (coprime, positive denominator), exact p-adic valuations.
// No floating point enters until the final summation step of an integral.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gsp4lab {

using BigInt = boost::multiprecision::cpp_int;

// p-adic valuation value; +infinity (for 0) is modeled explicitly so that
// predicates like v(z) < min{0, v(x), v(y)} evaluate correctly at 0.
class Valuation {
 public:
  constexpr Valuation() : v_(0), inf_(true) {}
  constexpr explicit Valuation(long v) : v_(v), inf_(false) {}
  static constexpr Valuation infinity() { return Valuation(); }

  bool is_infinity() const { return inf_; }
  long value() const {
    if (inf_) throw std::logic_error("Valuation: +infinity has no finite value");
    return v_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.inf_ || b.inf_) return infinity();
    return Valuation(a.v_ + b.v_);
  }
  friend Valuation operator+(const Valuation& a, long k) {
    if (a.inf_) return infinity();
    return Valuation(a.v_ + k);
  }
  friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    if (v.inf_) return os << "+inf";
    return os << v.v_;
  }

 private:
  long v_;
  bool inf_;
};

class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(BigInt n) : num_(std::move(n)), den_(1) {}
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    normalize();
  }
  static Rat of(long n, long d) { return Rat(BigInt(n), BigInt(d)); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

  Rat inverse() const {
    if (num_ == 0) throw std::domain_error("Rat: inverse of zero");
    return Rat(den_, num_);
  }

  // r^k for integer k (k < 0 requires r != 0).
  Rat pow(long k) const {
    if (k == 0) return Rat(1);
    Rat base = k > 0 ? *this : inverse();
    if (k < 0) k = -k;
    Rat acc(1);
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

  // Hash-friendly total order for canonical term sorting.
  friend int compare(const Rat& a, const Rat& b) {
    BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
    return l < r ? -1 : (l == r ? 0 : 1);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;  // > 0
};

inline Rat rat_pow_of(long base, long exp) { return Rat(BigInt(base)).pow(exp); }

}  // namespace gsp4lab
