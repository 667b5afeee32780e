// Canonical allocations: delta-divisions, cores, the recursive core-sorting
// construction, the canonical-allocation verifier, and the five-step
// canonicalization of an optimal rounded schedule. The canonicalization is a
// test oracle: it needs a brute-force optimum and is never called by the
// production solver.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "relsched/instance.hpp"

namespace relsched {

struct Allocation {
  std::vector<std::vector<int>> parts;  // job ids per machine, machine order
  // Optional divisions aligned with parts.
  std::vector<std::vector<int>> large;
  std::vector<std::vector<int>> small;
  bool has_divisions = false;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string what) {
    ok = false;
    violations.push_back(std::move(what));
  }
};

namespace detail {

// Jobs in non-increasing size order, ties by ascending id.
inline std::vector<int> sorted_desc(const Instance& inst, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const Job& ja = inst.job(a);
    const Job& jb = inst.job(b);
    if (ja.size != jb.size) return ja.size > jb.size;
    return ja.id < jb.id;
  });
  return ids;
}

}  // namespace detail

// Core of a job set: the maximal prefix (sizes non-increasing) before the
// first job whose rounded size is at most delta/(1+delta) times the prefix
// weight. With rounded_weights the prefix weight uses rounded sizes (the
// canonicalization pipeline runs on rounded jobs); otherwise exact sizes.
inline std::vector<int> core(const Instance& inst, const std::vector<int>& ids,
                             bool rounded_weights = false) {
  const Params& par = inst.params();
  std::vector<int> order = detail::sorted_desc(inst, ids);
  // Condition at j: p_bar_j <= (delta/(1+delta)) * W_{j-1}, i.e.
  // (1+delta) * p_bar_j <= delta * W_{j-1}.
  AlgebraicValue wr(par.t);
  Rational we(0);
  for (size_t j = 0; j < order.size(); ++j) {
    long cls = inst.job(order[j]).cls;
    AlgebraicValue lhs = par.class_size(cls + 1);  // (1+delta) * p_bar
    AlgebraicValue rhs = rounded_weights ? wr * par.delta() : par.delta_times(we);
    if (alg_compare(lhs, rhs) <= 0) {
      order.resize(j);
      return order;
    }
    if (rounded_weights) {
      wr += par.class_size(cls);
    } else {
      we += inst.job(order[j]).size;
    }
  }
  return order;
}

// (D1)-(D3) for a pair (L, S).
inline CheckReport check_delta_division(const Instance& inst, const std::vector<int>& L,
                                        const std::vector<int>& S) {
  const Params& par = inst.params();
  CheckReport rep;
  for (int a : L) {
    for (int b : S) {
      if (a == b) rep.fail("job " + std::to_string(a) + " appears in both sides");
    }
  }
  Rational wl = inst.weight_of(L);
  AlgebraicValue dl = par.delta_times(wl);
  for (int id : L) {
    // p_bar * (1+delta)^2 > delta * |L|
    if (alg_compare(par.class_size(inst.job(id).cls + 2), dl) <= 0) {
      rep.fail("large job " + std::to_string(id) + " too small for its set (D2)");
    }
  }
  for (int id : S) {
    // q_bar <= delta * |L|
    if (alg_compare(par.class_size(inst.job(id).cls), dl) > 0) {
      rep.fail("small job " + std::to_string(id) + " too large for its set (D3)");
    }
  }
  return rep;
}

struct CanonicalOptions {
  // Relax the last machine's division: its configuration carries the previous
  // machine's middle size, so the size-threshold clauses (D2)/(D3) cannot be
  // promised there; structure (partition, ordering discipline) still is.
  bool relax_last_machine = false;
};

// Full canonical-allocation check: every part delta-divided, large weights
// non-decreasing across machines (A1), and the per-class discipline (A2):
// in class order, large-allocated jobs form a prefix and small-allocated a
// suffix, with machine indices non-decreasing within each part.
inline CheckReport check_canonical(const Instance& inst, const Allocation& alloc,
                                   const CanonicalOptions& opts = {}) {
  CheckReport rep;
  if (!alloc.has_divisions) {
    rep.fail("allocation carries no divisions");
    return rep;
  }
  const int m = static_cast<int>(alloc.parts.size());
  for (int i = 0; i < m; ++i) {
    std::vector<int> both = alloc.large[i];
    both.insert(both.end(), alloc.small[i].begin(), alloc.small[i].end());
    std::vector<int> part = alloc.parts[i];
    std::sort(both.begin(), both.end());
    std::sort(part.begin(), part.end());
    if (both != part) {
      rep.fail("machine " + std::to_string(i) + ": division does not partition the part (D1)");
      continue;
    }
    if (opts.relax_last_machine && i == m - 1) continue;
    CheckReport dd = check_delta_division(inst, alloc.large[i], alloc.small[i]);
    for (auto& v : dd.violations) rep.fail("machine " + std::to_string(i) + ": " + v);
  }
  // (A1)
  Rational prev(0);
  for (int i = 0; i < m; ++i) {
    Rational wl = inst.weight_of(alloc.large[i]);
    if (i > 0 && wl < prev) {
      rep.fail("large-set weights decrease at machine " + std::to_string(i) + " (A1)");
    }
    prev = wl;
  }
  // (A2): machine and part per job, scanned in class order.
  std::vector<int> machine_of(static_cast<size_t>(inst.n()), -1);
  std::vector<int> part_of(static_cast<size_t>(inst.n()), -1);  // 0 large, 1 small
  for (int i = 0; i < m; ++i) {
    for (int id : alloc.large[i]) machine_of[id] = i, part_of[id] = 0;
    for (int id : alloc.small[i]) machine_of[id] = i, part_of[id] = 1;
  }
  for (long l : inst.classes().class_list()) {
    bool seen_small = false;
    int last_large_machine = -1, last_small_machine = -1;
    for (int id : inst.classes().ids(l)) {
      if (machine_of[id] < 0) continue;  // class may be partially allocated in sub-checks
      if (part_of[id] == 0) {
        if (seen_small) {
          rep.fail("class " + std::to_string(l) + ": large job " + std::to_string(id) +
                   " after a small one (A2a)");
        }
        if (machine_of[id] < last_large_machine) {
          rep.fail("class " + std::to_string(l) + ": large machine order breaks at job " +
                   std::to_string(id) + " (A2b)");
        }
        last_large_machine = machine_of[id];
      } else {
        seen_small = true;
        if (machine_of[id] < last_small_machine) {
          rep.fail("class " + std::to_string(l) + ": small machine order breaks at job " +
                   std::to_string(id) + " (A2c)");
        }
        last_small_machine = machine_of[id];
      }
    }
  }
  return rep;
}

// Replace the jobs of Q (a classwise sub-multiset of R) by the largest jobs
// of R in every class.
inline std::vector<int> maximize_set(const Instance& inst, const std::vector<int>& Q,
                                     const std::vector<int>& R) {
  std::map<long, int> need;
  for (int id : Q) need[inst.job(id).cls]++;
  std::map<long, std::vector<int>> pool;
  for (int id : R) pool[inst.job(id).cls].push_back(id);
  std::vector<int> out;
  for (auto& [l, cnt] : need) {
    auto it = pool.find(l);
    RELSCHED_CHECK(it != pool.end() && static_cast<int>(it->second.size()) >= cnt,
                   "maximize_set: multiplicity violation");
    // Pool in class order: take the last cnt.
    std::vector<int>& ids = it->second;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      const Job& ja = inst.job(a);
      const Job& jb = inst.job(b);
      if (ja.size != jb.size) return ja.size < jb.size;
      return ja.id < jb.id;
    });
    out.insert(out.end(), ids.end() - cnt, ids.end());
  }
  return out;
}

// The recursive large-set construction: given sets with non-decreasing
// rounded weights, produce a partition of the same jobs whose exact weights
// are non-decreasing, classwise indices follow machine order, and each
// |L_i| lies in ((1/(1+delta))|Q_i_bar|, |Q_i_bar|].
inline std::vector<std::vector<int>> sort_cores(const Instance& inst,
                                                const std::vector<std::vector<int>>& Q) {
  const Params& par = inst.params();
  const int m = static_cast<int>(Q.size());
  for (int i = 0; i + 1 < m; ++i) {
    RELSCHED_CHECK(alg_compare(inst.rounded_weight_of(Q[i]), inst.rounded_weight_of(Q[i + 1])) <= 0,
                   "sort_cores: rounded weights must be non-decreasing");
  }
  std::vector<int> pool;
  for (const auto& q : Q) pool.insert(pool.end(), q.begin(), q.end());
  std::vector<bool> taken(static_cast<size_t>(m), false);
  std::vector<std::vector<int>> L(static_cast<size_t>(m));
  for (int slot = m - 1; slot >= 0; --slot) {
    int best = -1;
    Rational best_w(0);
    std::vector<int> best_set;
    for (int i = 0; i < m; ++i) {
      if (taken[i]) continue;
      std::vector<int> cand = maximize_set(inst, Q[i], pool);
      Rational w = inst.weight_of(cand);
      if (best < 0 || w > best_w) {
        best = i;
        best_w = w;
        best_set = std::move(cand);
      }
    }
    RELSCHED_CHECK(best >= 0, "sort_cores: empty candidate set");
    taken[best] = true;
    for (int id : best_set) {
      auto it = std::find(pool.begin(), pool.end(), id);
      RELSCHED_CHECK(it != pool.end(), "sort_cores: job vanished from pool");
      pool.erase(it);
    }
    L[static_cast<size_t>(slot)] = std::move(best_set);
  }
  RELSCHED_CHECK(pool.empty(), "sort_cores: pool not exhausted");
  // Output contract re-checked on every call.
  for (int i = 0; i + 1 < m; ++i) {
    RELSCHED_CHECK(inst.weight_of(L[i]) <= inst.weight_of(L[i + 1]),
                   "sort_cores: weights not sorted");
  }
  for (int i = 0; i < m; ++i) {
    AlgebraicValue qb = inst.rounded_weight_of(Q[i]);
    Rational wl = inst.weight_of(L[i]);
    if (qb.is_zero()) {
      RELSCHED_CHECK(wl == 0, "sort_cores: empty slot paired with jobs");
      continue;
    }
    RELSCHED_CHECK(alg_compare(AlgebraicValue::from_rational(par.t, wl), qb) <= 0,
                   "sort_cores: upper weight bracket");
    AlgebraicValue scaled = AlgebraicValue::from_power(1, par.t) * wl;  // (1+delta)|L_i|
    RELSCHED_CHECK(alg_compare(scaled, qb) > 0, "sort_cores: lower weight bracket");
  }
  return L;
}

struct CanonicalizeResult {
  Allocation alloc;            // machine order = ascending raw speed
  std::vector<int> order;      // alloc position -> instance machine position
  std::vector<Rational> speeds;  // ascending raw speeds aligned with alloc
  ExtRational makespan;
};

// Five steps from an optimal schedule of the rounded jobs to a canonical
// allocation of the original jobs: core division, core sorting, permutation
// via sort_cores, fractional small-job fill below the rounded makespan, and
// integral reassignment of straddling jobs to the fastest machine touched.
inline CanonicalizeResult canonicalize(const Instance& inst,
                                       const std::vector<std::vector<int>>& rounded_opt) {
  const Params& par = inst.params();
  const int m = static_cast<int>(rounded_opt.size());
  RELSCHED_CHECK(m == inst.m(), "canonicalize: machine count mismatch");

  CanonicalizeResult res;
  res.order.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) res.order[i] = i;
  std::stable_sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    return inst.raw_speed(a) < inst.raw_speed(b);
  });
  for (int i = 0; i < m; ++i) res.speeds.push_back(inst.raw_speed(res.order[i]));

  // Step 1: rounded makespan and cores.
  AlgebraicValue makespan_r(par.t);
  bool first = true;
  for (int i = 0; i < m; ++i) {
    const auto& part = rounded_opt[static_cast<size_t>(i)];
    AlgebraicValue w = inst.rounded_weight_of(part);
    const Rational& s = inst.raw_speed(i);
    if (s == 0) {
      RELSCHED_CHECK(part.empty(), "canonicalize: work on a speed-0 machine");
      continue;
    }
    AlgebraicValue f = w * Rational(denominator(s), numerator(s));
    if (first || alg_compare(f, makespan_r) > 0) makespan_r = f;
    first = false;
  }

  struct CoreSet {
    std::vector<int> ids;
    AlgebraicValue w;
    int src;
  };
  std::vector<CoreSet> cores;
  for (int i = 0; i < m; ++i) {
    std::vector<int> cr = core(inst, rounded_opt[static_cast<size_t>(i)], /*rounded=*/true);
    cores.push_back(CoreSet{cr, inst.rounded_weight_of(cr), i});
  }

  // Step 2: sort cores by rounded weight, ties by source machine.
  std::stable_sort(cores.begin(), cores.end(), [&](const CoreSet& a, const CoreSet& b) {
    int c = alg_compare(a.w, b.w);
    if (c != 0) return c < 0;
    return a.src < b.src;
  });

  // Step 3: swap in the smallest original jobs per class, then sort_cores.
  std::map<long, int> class_slots;
  for (const CoreSet& c : cores) {
    for (int id : c.ids) class_slots[inst.job(id).cls]++;
  }
  std::map<long, std::vector<int>> class_pool;  // smallest jobs of each class
  std::map<long, size_t> cursor;
  for (auto& [l, k] : class_slots) {
    class_pool[l] = inst.classes().slice_ids(l, 0, k);
    cursor[l] = 0;
  }
  std::vector<std::vector<int>> Q(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int id : cores[static_cast<size_t>(i)].ids) {
      long l = inst.job(id).cls;
      Q[static_cast<size_t>(i)].push_back(class_pool[l][cursor[l]++]);
    }
  }
  std::vector<std::vector<int>> L = sort_cores(inst, Q);

  // Step 4: remaining jobs, filled fractionally from the fastest machine
  // down, cutting exactly at the rounded makespan level.
  std::vector<bool> in_large(static_cast<size_t>(inst.n()), false);
  for (const auto& li : L)
    for (int id : li) in_large[static_cast<size_t>(id)] = true;
  std::vector<int> smalls;
  for (const Job& j : inst.jobs())
    if (!in_large[static_cast<size_t>(j.id)]) smalls.push_back(j.id);
  std::sort(smalls.begin(), smalls.end(), [&](int a, int b) {
    const Job& ja = inst.job(a);
    const Job& jb = inst.job(b);
    if (ja.size != jb.size) return ja.size > jb.size;
    return ja.id < jb.id;
  });

  std::vector<std::vector<int>> S(static_cast<size_t>(m));
  // Exact volume bookkeeping: used_i counts large weight plus the small
  // volume (whole jobs and fragments) at machine i; a job that crosses the
  // level M spills its remainder onto slower machines but is assigned to the
  // fastest machine it touches.
  auto cap_of = [&](int i) { return makespan_r * res.speeds[static_cast<size_t>(i)]; };
  int mi = m - 1;
  AlgebraicValue used =
      AlgebraicValue::from_rational(par.t, inst.weight_of(L[static_cast<size_t>(mi)]));
  auto step_down = [&](void) {
    --mi;
    RELSCHED_CHECK(mi >= 0, "canonicalize: small jobs exceed total capacity");
    used = AlgebraicValue::from_rational(par.t, inst.weight_of(L[static_cast<size_t>(mi)]));
  };
  for (int id : smalls) {
    while (alg_compare(used, cap_of(mi)) >= 0) step_down();
    S[static_cast<size_t>(mi)].push_back(id);
    AlgebraicValue next = used + AlgebraicValue::from_rational(par.t, inst.job(id).size);
    if (alg_compare(next, cap_of(mi)) <= 0) {
      used = next;
      continue;
    }
    // Spill the remainder down, saturating intermediate machines.
    AlgebraicValue spill = next - cap_of(mi);
    for (;;) {
      step_down();
      AlgebraicValue filled = used + spill;
      if (alg_compare(filled, cap_of(mi)) <= 0) {
        used = filled;
        break;
      }
      spill = filled - cap_of(mi);
    }
  }

  res.alloc.large = L;
  res.alloc.small = S;
  res.alloc.parts.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    res.alloc.parts[i] = L[i];
    res.alloc.parts[i].insert(res.alloc.parts[i].end(), S[i].begin(), S[i].end());
  }
  res.alloc.has_divisions = true;

  ExtRational ms(Rational(0));
  for (int i = 0; i < m; ++i) {
    Rational w = inst.weight_of(res.alloc.parts[i]);
    const Rational& s = res.speeds[static_cast<size_t>(i)];
    if (s == 0) {
      if (w > 0) ms = ExtRational::inf();
      continue;
    }
    ms = max(ms, ExtRational(w / s));
  }
  res.makespan = ms;
  return res;
}

}  // namespace relsched
