// The input model: jobs plus raw and rounded machine speeds. Machines are
// ordered by (rounded speed, input position); raw speeds round up to powers
// of (1+epsilon); fewer than three machines are padded with speed-0 machines,
// which take no work in any finite-makespan schedule. Valid magnitudes are
// the powers of two 2^z such that some job lies in (2^{z-1}, 2^z].
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "relsched/jobs.hpp"
#include "relsched/params.hpp"

namespace relsched {

// 0 stays 0; a positive speed rounds up to the least power of (1+eps) >= it.
inline Rational round_speed(const Rational& sigma, const Rational& eps) {
  if (sigma < 0) throw InputError("machine speed must be non-negative");
  if (sigma == 0) return Rational(0);
  Rational base = 1 + eps;
  long j = std::lround(std::ceil(approx_log2(sigma) / approx_log2(base) - 0.5));
  Rational p = pow_rational(base, j);
  while (p < sigma) p *= base;
  while (true) {
    Rational down = p / base;
    if (down < sigma) break;
    p = down;
  }
  return p;
}

inline std::vector<long> valid_magnitude_exps(const std::vector<Job>& jobs) {
  std::vector<long> out;
  for (const Job& j : jobs) out.push_back(magnitude_exp(j.size));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_tiny(const Rational& p, const Rational& w, const Rational& rho) {
  return p <= rho * w;
}

class Instance {
 public:
  // Per-magnitude derived data. lambda/Lambda are class indices of the block
  // size rho*w and of w itself; tiny_weight is the total size of jobs of
  // class <= lambda.
  struct MagInfo {
    long w_exp = 0;
    long lambda = 0;
    long Lambda = 0;
    Rational w;
    Rational block;  // rho * w
    Rational tiny_weight;
    int block_cap = 0;    // ceil(tiny_weight/block) + 3
    int block_bound = 0;  // floor(tiny_weight/block) - 1, for interior vertices
  };

  static Instance make(const std::vector<Rational>& sizes,
                       const std::vector<Rational>& speeds, Params params) {
    Instance inst;
    inst.params_ = std::move(params);
    if (speeds.empty()) throw InputError("at least one machine is required");
    inst.jobs_.reserve(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) {
      if (sizes[i] <= 0) throw InputError("job sizes must be positive");
      inst.jobs_.push_back(Job{static_cast<int>(i), sizes[i],
                               job_class(sizes[i], inst.params_.t)});
    }
    inst.classes_ = ClassIndexing(inst.jobs_);

    // Machine order: (rounded speed, input position), padded to m >= 3.
    struct Slot {
      Rational raw, rounded;
      int input_pos;  // -1 for padding
    };
    std::vector<Slot> slots;
    for (size_t i = 0; i < speeds.size(); ++i) {
      slots.push_back(Slot{speeds[i], round_speed(speeds[i], inst.params_.epsilon),
                           static_cast<int>(i)});
    }
    while (slots.size() < 3) slots.insert(slots.begin(), Slot{Rational(0), Rational(0), -1});
    std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
      if (a.rounded != b.rounded) return a.rounded < b.rounded;
      return a.input_pos < b.input_pos;
    });
    for (const Slot& s : slots) {
      inst.raw_speeds_.push_back(s.raw);
      inst.rounded_speeds_.push_back(s.rounded);
      inst.machine_input_.push_back(s.input_pos);
    }

    for (long z : valid_magnitude_exps(inst.jobs_)) inst.add_magnitude(z);
    return inst;
  }

  const Params& params() const { return params_; }
  int n() const { return static_cast<int>(jobs_.size()); }
  int m() const { return static_cast<int>(raw_speeds_.size()); }
  int real_machines() const {
    int c = 0;
    for (int v : machine_input_) c += (v >= 0);
    return c;
  }

  const std::vector<Job>& jobs() const { return jobs_; }
  const Job& job(int id) const { return jobs_[static_cast<size_t>(id)]; }
  const ClassIndexing& classes() const { return classes_; }

  const Rational& raw_speed(int pos) const { return raw_speeds_[static_cast<size_t>(pos)]; }
  const Rational& rounded_speed(int pos) const { return rounded_speeds_[static_cast<size_t>(pos)]; }
  int machine_input(int pos) const { return machine_input_[static_cast<size_t>(pos)]; }

  const std::vector<long>& magnitude_exps() const { return mag_exps_; }
  bool has_jobs() const { return !jobs_.empty(); }
  long w_min_exp() const {
    RELSCHED_CHECK(!mag_exps_.empty(), "no valid magnitudes on an empty job set");
    return mag_exps_.front();
  }
  long w_max_exp() const {
    RELSCHED_CHECK(!mag_exps_.empty(), "no valid magnitudes on an empty job set");
    return mag_exps_.back();
  }

  const MagInfo& mag(long w_exp) const {
    auto it = mags_.find(w_exp);
    RELSCHED_CHECK(it != mags_.end(), "unknown magnitude");
    return it->second;
  }

  Rational total_weight() const {
    Rational s(0);
    for (const Job& j : jobs_) s += j.size;
    return s;
  }

  Rational weight_of(const std::vector<int>& ids) const {
    Rational s(0);
    for (int id : ids) s += job(id).size;
    return s;
  }

  AlgebraicValue rounded_weight_of(const std::vector<int>& ids) const {
    AlgebraicValue s(params_.t);
    for (int id : ids) s += params_.class_size(job(id).cls);
    return s;
  }

 private:
  void add_magnitude(long z) {
    MagInfo mi;
    mi.w_exp = z;
    mi.lambda = static_cast<long>(params_.t) * (z + params_.rho_exp);
    mi.Lambda = static_cast<long>(params_.t) * z;
    mi.w = pow2(z);
    mi.block = params_.rho * mi.w;
    Rational tiny(0);
    for (const Job& j : jobs_) {
      if (j.cls <= mi.lambda) tiny += j.size;
    }
    mi.tiny_weight = tiny;
    mi.block_cap = static_cast<int>(ceil_rational(tiny / mi.block)) + 3;
    mi.block_bound = static_cast<int>(floor_rational(tiny / mi.block)) - 1;
    mag_exps_.push_back(z);
    mags_.emplace(z, std::move(mi));
  }

  Params params_;
  std::vector<Job> jobs_;
  ClassIndexing classes_;
  std::vector<Rational> raw_speeds_;      // machine order
  std::vector<Rational> rounded_speeds_;  // machine order
  std::vector<int> machine_input_;        // machine order -> input position
  std::vector<long> mag_exps_;
  std::map<long, MagInfo> mags_;
};

}  // namespace relsched
