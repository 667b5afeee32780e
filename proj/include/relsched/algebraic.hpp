// Exact arithmetic in the degree-t extension of the rationals generated by
// 2^{1/t}. A value is sum_{j=0}^{t-1} c_j * 2^{j/t}; the powers 2^{j/t} are
// linearly independent over Q, so the representation is unique and the zero
// test is a coefficient test. Sign of a nonzero value is decided by dyadic
// interval evaluation with doubling precision, which terminates because a
// nonzero value has nonzero magnitude.
#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "relsched/rational.hpp"

namespace relsched {

namespace detail {

// floor k-th root of x >= 0.
inline Int floor_kth_root(const Int& x, int k) {
  RELSCHED_CHECK(k >= 1, "root order must be >= 1");
  if (x <= 1 || k == 1) return x;
  auto pw = [&](Int b) {
    Int acc(1);
    int e = k;
    while (e > 0) {
      if (e & 1) acc *= b;
      b *= b;
      e >>= 1;
    }
    return acc;
  };
  long bits = bit_length(x);
  Int lo = Int(1) << static_cast<unsigned>((bits - 1) / k);
  Int hi = (Int(1) << static_cast<unsigned>(bits / k + 1));
  while (hi - lo > 1) {
    Int mid = (lo + hi) >> 1;
    if (pw(mid) <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

// floor(2^frac_bits * 2^{j/t}) for 0 <= j < t, cached per thread.
inline const Int& dyadic_root_floor(int t, int frac_bits, int j) {
  thread_local std::map<std::tuple<int, int, int>, Int> cache;
  auto key = std::make_tuple(t, frac_bits, j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Int pow = Int(1) << static_cast<unsigned>(static_cast<long>(frac_bits) * t + j);
  Int r = floor_kth_root(pow, t);
  return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace detail

class AlgebraicValue {
 public:
  explicit AlgebraicValue(int t) : t_(t), c_(static_cast<size_t>(t)) {
    RELSCHED_CHECK(t >= 1, "extension degree must be >= 1");
  }

  static AlgebraicValue from_rational(int t, Rational v) {
    AlgebraicValue a(t);
    a.c_[0] = std::move(v);
    return a;
  }

  // Exact representation of 2^{l/t}: write l = q*t + j with 0 <= j < t, the
  // coefficient of 2^{j/t} is 2^q.
  static AlgebraicValue from_power(long l, int t) {
    AlgebraicValue a(t);
    long q = l >= 0 ? l / t : -((-l + t - 1) / t);
    long j = l - q * t;
    a.c_[static_cast<size_t>(j)] = pow2(q);
    return a;
  }

  int degree() const { return t_; }
  const Rational& coeff(int j) const { return c_[static_cast<size_t>(j)]; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (c != 0) return false;
    return true;
  }

  AlgebraicValue& operator+=(const AlgebraicValue& o) {
    check_degree(o);
    for (int j = 0; j < t_; ++j) c_[j] += o.c_[j];
    return *this;
  }
  AlgebraicValue& operator-=(const AlgebraicValue& o) {
    check_degree(o);
    for (int j = 0; j < t_; ++j) c_[j] -= o.c_[j];
    return *this;
  }
  AlgebraicValue& operator*=(const Rational& r) {
    for (auto& c : c_) c *= r;
    return *this;
  }

  friend AlgebraicValue operator+(AlgebraicValue a, const AlgebraicValue& b) { return a += b; }
  friend AlgebraicValue operator-(AlgebraicValue a, const AlgebraicValue& b) { return a -= b; }
  friend AlgebraicValue operator-(AlgebraicValue a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend AlgebraicValue operator*(AlgebraicValue a, const Rational& r) { return a *= r; }
  friend AlgebraicValue operator*(const Rational& r, AlgebraicValue a) { return a *= r; }

  // Exponents reduce via 2^{t/t} = 2.
  friend AlgebraicValue operator*(const AlgebraicValue& a, const AlgebraicValue& b) {
    a.check_degree(b);
    AlgebraicValue out(a.t_);
    for (int i = 0; i < a.t_; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < a.t_; ++j) {
        if (b.c_[j] == 0) continue;
        int e = i + j;
        Rational term = a.c_[i] * b.c_[j];
        if (e >= a.t_) {
          e -= a.t_;
          term *= 2;
        }
        out.c_[static_cast<size_t>(e)] += term;
      }
    }
    return out;
  }

  friend bool operator==(const AlgebraicValue& a, const AlgebraicValue& b) {
    a.check_degree(b);
    return a.c_ == b.c_;
  }

  // -1 / 0 / +1. The zero case never reaches the interval loop.
  int sign() const {
    if (is_zero()) return 0;
    if (t_ == 1) return sgn(c_[0]);
    bool nonneg = true, nonpos = true;
    for (const auto& c : c_) {
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
    }
    if (nonneg) return 1;
    if (nonpos) return -1;
    for (int frac_bits = 64;; frac_bits *= 2) {
      Rational lo(0), hi(0);
      const Rational scale = pow2(-static_cast<long>(frac_bits));
      for (int j = 0; j < t_; ++j) {
        if (c_[j] == 0) continue;
        if (j == 0) {
          lo += c_[j];
          hi += c_[j];
          continue;
        }
        const Int& r = detail::dyadic_root_floor(t_, frac_bits, j);
        Rational lb = Rational(r) * scale;
        Rational ub = Rational(r + 1) * scale;
        if (c_[j] > 0) {
          lo += c_[j] * lb;
          hi += c_[j] * ub;
        } else {
          lo += c_[j] * ub;
          hi += c_[j] * lb;
        }
      }
      if (lo > 0) return 1;
      if (hi < 0) return -1;
      RELSCHED_CHECK(frac_bits < (1 << 24), "interval sign evaluation failed to separate");
    }
  }

  double approx() const {
    double acc = 0;
    for (int j = 0; j < t_; ++j) {
      if (c_[j] == 0) continue;
      acc += to_double(c_[j]) * std::exp2(static_cast<double>(j) / t_);
    }
    return acc;
  }

 private:
  void check_degree(const AlgebraicValue& o) const {
    RELSCHED_CHECK(t_ == o.t_, "extension degree mismatch");
  }

  int t_;
  std::vector<Rational> c_;
};

inline int alg_sign(const AlgebraicValue& a) { return a.sign(); }

inline int alg_compare(const AlgebraicValue& a, const AlgebraicValue& b) {
  return (a - b).sign();
}

inline int alg_compare(const AlgebraicValue& a, const Rational& b) {
  return alg_compare(a, AlgebraicValue::from_rational(a.degree(), b));
}

inline int alg_compare(const Rational& a, const AlgebraicValue& b) {
  return alg_compare(AlgebraicValue::from_rational(b.degree(), a), b);
}

}  // namespace relsched
