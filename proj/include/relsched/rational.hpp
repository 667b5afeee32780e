// Exact rational arithmetic: aliases over Boost.Multiprecision, power-of-two
// helpers, string (de)serialization in "p/q" form, and a makespan value type
// that orders +infinity above every rational.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relsched {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

#define RELSCHED_CHECK(cond, msg)                                         \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::relsched::InternalError(std::string("check failed: ") +     \
                                      (msg) + " [" + __FILE__ + ":" +     \
                                      std::to_string(__LINE__) + "]");    \
    }                                                                     \
  } while (0)

inline int sgn(const Rational& x) { return x.sign(); }

// 2^e for any integer e (negative exponents give 1/2^|e|).
inline Rational pow2(long e) {
  if (e >= 0) {
    Int n = Int(1) << static_cast<unsigned>(e);
    return Rational(n);
  }
  Int d = Int(1) << static_cast<unsigned>(-e);
  return Rational(1, d);
}

// base^e for integer e, base > 0.
inline Rational pow_rational(const Rational& base, long e) {
  RELSCHED_CHECK(base > 0, "pow_rational needs a positive base");
  Rational b = base;
  long k = e;
  if (k < 0) {
    b = Rational(denominator(base), numerator(base));
    k = -k;
  }
  Rational acc(1);
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

inline long bit_length(const Int& v) {
  if (v == 0) return 0;
  return static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

// Largest e with 2^e <= x, for x > 0. Exact.
inline long floor_log2(const Rational& x) {
  RELSCHED_CHECK(x > 0, "floor_log2 needs x > 0");
  const Int num = numerator(x);
  const Int den = denominator(x);
  long e = bit_length(num) - bit_length(den);
  // 2^e <= num/den  <=>  den * 2^e <= num
  auto le = [&](long k) {
    if (k >= 0) return (den << static_cast<unsigned>(k)) <= num;
    return (num << static_cast<unsigned>(-k)) >= den;
  };
  while (!le(e)) --e;
  while (le(e + 1)) ++e;
  return e;
}

// The unique z with 2^{z-1} < x <= 2^z, for x > 0 (the covering power of two).
inline long magnitude_exp(const Rational& x) {
  long e = floor_log2(x);
  return (pow2(e) == x) ? e : e + 1;
}

// Returns the exponent if x is an exact power of two.
inline std::optional<long> power_of_two_exp(const Rational& x) {
  if (x <= 0) return std::nullopt;
  long e = floor_log2(x);
  if (pow2(e) == x) return e;
  return std::nullopt;
}

inline Int floor_div(const Int& a, const Int& b) {
  RELSCHED_CHECK(b > 0, "floor_div needs b > 0");
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline Int floor_rational(const Rational& x) {
  return floor_div(numerator(x), denominator(x));
}

inline Int ceil_rational(const Rational& x) {
  return -floor_rational(-x);
}

// Rough log2 for search seeding only; every decision is re-made exactly.
inline double approx_log2(const Rational& x) {
  RELSCHED_CHECK(x > 0, "approx_log2 needs x > 0");
  const Int num = numerator(x);
  const Int den = denominator(x);
  long bn = bit_length(num), bd = bit_length(den);
  auto part = [](const Int& v, long bits) {
    long shift = bits - 53;
    Int t = shift > 0 ? Int(v >> static_cast<unsigned>(shift)) : v;
    return std::log2(t.convert_to<double>()) + static_cast<double>(shift > 0 ? shift : 0);
  };
  return part(num, bn) - part(den, bd);
}

inline double to_double(const Rational& x) {
  if (x == 0) return 0.0;
  double l = approx_log2(x < 0 ? Rational(-x) : x);
  if (l > 1020 || l < -1020) return (x < 0 ? -1.0 : 1.0) * std::exp2(l > 0 ? 1020.0 : -1020.0);
  return x.convert_to<double>();
}

inline std::string format_rational(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) {
    s += "/";
    s += denominator(x).str();
  }
  return s;
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw InputError("rational denominator must be positive: " + s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw InputError("malformed rational literal: " + s);
  }
}

// A makespan: either a rational or +infinity (speed-0 machine with work).
struct ExtRational {
  bool infinite = false;
  Rational value;

  ExtRational() = default;
  ExtRational(Rational v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static ExtRational inf() {
    ExtRational r;
    r.infinite = true;
    return r;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) {
    return a < b || a == b;
  }
  friend ExtRational max(const ExtRational& a, const ExtRational& b) {
    return a < b ? b : a;
  }
};

inline std::string format_ext(const ExtRational& x) {
  return x.infinite ? "inf" : format_rational(x.value);
}

}  // namespace relsched
