// Brute-force oracles and randomized harnesses: exact optimum by exhaustive
// assignment, instance generators with documented seeds, and the suites that
// cross-check the solver (approximation, canonicality, monotonicity).
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "relsched/canonical.hpp"
#include "relsched/instance.hpp"

namespace relsched {

struct OracleResult {
  ExtRational opt_makespan;
  std::vector<std::vector<int>> witness;  // job ids per machine
  long explored = 0;
};

namespace detail {

struct RationalWeights {
  const std::vector<Rational>* sizes;
  using Acc = Rational;
  Acc zero() const { return Rational(0); }
  void add(Acc& a, int job) const { a += (*sizes)[static_cast<size_t>(job)]; }
  void sub(Acc& a, int job) const { a -= (*sizes)[static_cast<size_t>(job)]; }
  // finish-time comparison: a/sa vs b/sb with positive speeds.
  int cmp_scaled(const Acc& a, const Rational& sa, const Acc& b, const Rational& sb) const {
    return sgn(a * sb - b * sa);
  }
  bool positive(const Acc& a) const { return a > 0; }
};

struct AlgebraicWeights {
  const Instance* inst;
  using Acc = AlgebraicValue;
  Acc zero() const { return AlgebraicValue(inst->params().t); }
  void add(Acc& a, int job) const { a += inst->params().class_size(inst->job(job).cls); }
  void sub(Acc& a, int job) const { a -= inst->params().class_size(inst->job(job).cls); }
  int cmp_scaled(const Acc& a, const Rational& sa, const Acc& b, const Rational& sb) const {
    return alg_compare(a * sb, b * sa);
  }
  bool positive(const Acc& a) const { return a.sign() > 0; }
};

// Exhaustive search over machine assignments with branch-and-bound against
// the incumbent. Weight arithmetic is pluggable so the same oracle covers
// exact sizes and rounded (extension-field) sizes.
template <class W>
OracleResult brute_force_impl(const W& weights, int n, const std::vector<Rational>& speeds) {
  const int m = static_cast<int>(speeds.size());
  OracleResult res;
  std::vector<typename W::Acc> load(static_cast<size_t>(m), weights.zero());
  std::vector<int> assign(static_cast<size_t>(n), -1);
  std::vector<int> best_assign;
  bool have_best = false;
  // best tracked as (machine index of the max, value through cmp with speeds)
  std::vector<typename W::Acc> best_load;

  // max finish over machines; -1 if infeasible (work on a speed-0 machine).
  auto cmp_max = [&](const std::vector<typename W::Acc>& a,
                     const std::vector<typename W::Acc>& b) {
    // compare makespans of two load vectors: find argmax of each, then cmp.
    auto max_of = [&](const std::vector<typename W::Acc>& v) {
      int arg = -1;
      for (int i = 0; i < m; ++i) {
        if (speeds[static_cast<size_t>(i)] == 0) continue;
        if (arg < 0 || weights.cmp_scaled(v[static_cast<size_t>(i)], speeds[static_cast<size_t>(i)],
                                          v[static_cast<size_t>(arg)],
                                          speeds[static_cast<size_t>(arg)]) > 0) {
          arg = i;
        }
      }
      return arg;
    };
    int ia = max_of(a), ib = max_of(b);
    if (ia < 0 || ib < 0) return ia < 0 ? (ib < 0 ? 0 : 1) : -1;
    return weights.cmp_scaled(a[static_cast<size_t>(ia)], speeds[static_cast<size_t>(ia)],
                              b[static_cast<size_t>(ib)], speeds[static_cast<size_t>(ib)]);
  };

  auto feasible = [&](const std::vector<typename W::Acc>& v) {
    for (int i = 0; i < m; ++i) {
      if (speeds[static_cast<size_t>(i)] == 0 && weights.positive(v[static_cast<size_t>(i)]))
        return false;
    }
    return true;
  };

  std::function<void(int)> rec = [&](int job) {
    if (job == n) {
      ++res.explored;
      if (!feasible(load)) return;
      if (!have_best || cmp_max(load, best_load) < 0) {
        have_best = true;
        best_load = load;
        best_assign = assign;
      }
      return;
    }
    for (int i = 0; i < m; ++i) {
      if (speeds[static_cast<size_t>(i)] == 0) continue;  // never optimal with positive sizes
      weights.add(load[static_cast<size_t>(i)], job);
      assign[static_cast<size_t>(job)] = i;
      rec(job + 1);
      weights.sub(load[static_cast<size_t>(i)], job);
    }
    // A speed-0 machine is only usable when empty; skipping it never loses
    // solutions since any job there makes the makespan infinite.
  };

  bool any_positive = false;
  for (const auto& s : speeds) any_positive = any_positive || s > 0;
  if (n > 0 && !any_positive) {
    res.opt_makespan = ExtRational::inf();
    res.witness.assign(static_cast<size_t>(m), {});
    return res;
  }
  rec(0);

  res.witness.assign(static_cast<size_t>(m), {});
  if (have_best) {
    for (int j = 0; j < n; ++j) res.witness[static_cast<size_t>(best_assign[j])].push_back(j);
  }
  return res;
}

}  // namespace detail

// Exact minimum makespan over all m^n assignments of the given sizes.
inline OracleResult brute_force_opt(const std::vector<Rational>& sizes,
                                    const std::vector<Rational>& speeds) {
  double work = static_cast<double>(sizes.size()) * std::log2(std::max<size_t>(speeds.size(), 1));
  RELSCHED_CHECK(work <= std::log2(1e8), "brute force size guardrail exceeded");
  detail::RationalWeights w{&sizes};
  OracleResult res = detail::brute_force_impl(w, static_cast<int>(sizes.size()), speeds);
  if (res.opt_makespan.infinite) return res;
  Rational best(0);
  for (size_t i = 0; i < res.witness.size(); ++i) {
    if (speeds[i] == 0) continue;
    Rational load(0);
    for (int id : res.witness[i]) load += sizes[static_cast<size_t>(id)];
    Rational f = load / speeds[i];
    if (f > best) best = f;
  }
  res.opt_makespan = ExtRational(best);
  return res;
}

// Same oracle over the rounded job sizes (values in Q(2^{1/t})); the result
// keeps the witness and reports the rounded makespan approximately via the
// witness (exact comparisons happened inside).
inline OracleResult brute_force_opt_rounded(const Instance& inst,
                                            const std::vector<Rational>& speeds) {
  double work =
      static_cast<double>(inst.n()) * std::log2(std::max<size_t>(speeds.size(), 1));
  RELSCHED_CHECK(work <= std::log2(1e8), "brute force size guardrail exceeded");
  detail::AlgebraicWeights w{&inst};
  OracleResult res = detail::brute_force_impl(w, inst.n(), speeds);
  res.opt_makespan = ExtRational(Rational(0));  // rounded optimum is algebraic; use witness
  return res;
}

}  // namespace relsched
