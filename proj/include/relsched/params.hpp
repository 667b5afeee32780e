// Solver parameters: the approximation precision epsilon, the rounding degree
// t (job sizes round up to powers of 2^{1/t}), delta = 2^{1/t} - 1, and the
// block granularity rho, the largest power of two at most delta/3.
#pragma once

#include "relsched/algebraic.hpp"
#include "relsched/rational.hpp"

namespace relsched {

// Largest 2^e <= delta/3; checked to also satisfy 2^e >= delta/6, so rho is
// the unique power of two in [delta/6, delta/3].
inline long choose_rho_exp(int t) {
  AlgebraicValue delta = AlgebraicValue::from_power(1, t) - AlgebraicValue::from_rational(t, 1);
  // delta <= 1, so start at e = -2 (2^-2 <= 1/3) and descend.
  long e = -2;
  auto fits = [&](long k) {
    // 2^k <= delta/3  <=>  3*2^k - delta <= 0
    AlgebraicValue probe = AlgebraicValue::from_rational(t, 3 * pow2(k)) - delta;
    return probe.sign() <= 0;
  };
  while (!fits(e)) --e;
  while (fits(e + 1)) ++e;
  // rho >= delta/6  <=>  6*2^e - delta >= 0
  AlgebraicValue lower = AlgebraicValue::from_rational(t, 6 * pow2(e)) - delta;
  RELSCHED_CHECK(lower.sign() >= 0, "no power of two lands in [delta/6, delta/3]");
  return e;
}

struct Params {
  Rational epsilon;
  int t = 1;
  long rho_exp = -2;  // rho = 2^{rho_exp}
  Rational rho;
  // Open switch for the tiny-recount divisor in scaling when no blocks exist
  // yet: the consistent choice divides by the *target* block size (default);
  // the literal alternative divides by the source block size.
  bool scale_tiny_divisor_target = true;

  static Params make(Rational eps, int t_deg) {
    if (eps <= 0 || eps > 1) throw InputError("epsilon must lie in (0, 1]");
    if (t_deg < 1) throw InputError("t must be a positive integer");
    Params p;
    p.epsilon = std::move(eps);
    p.t = t_deg;
    p.rho_exp = choose_rho_exp(t_deg);
    p.rho = pow2(p.rho_exp);
    return p;
  }

  AlgebraicValue delta() const {
    return AlgebraicValue::from_power(1, t) - AlgebraicValue::from_rational(t, 1);
  }

  // delta * w for rational w, as an extension element.
  AlgebraicValue delta_times(const Rational& w) const {
    AlgebraicValue a = AlgebraicValue::from_power(1, t);
    a *= w;
    a -= AlgebraicValue::from_rational(t, w);
    return a;
  }

  // Advisory margin 30*delta < epsilon; callers may warn when false.
  bool margin_ok() const {
    AlgebraicValue gap = AlgebraicValue::from_rational(t, epsilon) - delta() * Rational(30);
    return gap.sign() > 0;
  }

  // Rounded size of a class-l job: 2^{l/t}.
  AlgebraicValue class_size(long l) const { return AlgebraicValue::from_power(l, t); }
};

}  // namespace relsched
