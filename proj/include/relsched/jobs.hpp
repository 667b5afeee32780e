// Jobs, job classes, and the per-class fixed ordering. A job of size p is in
// class l when 2^{(l-1)/t} < p <= 2^{l/t}; within a class jobs are ordered by
// size ascending, ties by input id ascending, and every slice/prefix in the
// solver refers to this one order.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "relsched/params.hpp"
#include "relsched/rational.hpp"

namespace relsched {

struct Job {
  int id = 0;  // stable input index
  Rational size;
  long cls = 0;
};

// Unique l with 2^{l-1} < size^t <= 2^l, decided exactly.
inline long job_class(const Rational& size, int t) {
  RELSCHED_CHECK(size > 0, "job size must be positive");
  return magnitude_exp(pow_rational(size, t));
}

class ClassIndexing {
 public:
  ClassIndexing() = default;

  explicit ClassIndexing(const std::vector<Job>& jobs) {
    for (const Job& j : jobs) classes_[j.cls].ids.push_back(j.id);
    for (auto& [l, info] : classes_) {
      std::sort(info.ids.begin(), info.ids.end(), [&](int a, int b) {
        const Job& ja = jobs[static_cast<size_t>(a)];
        const Job& jb = jobs[static_cast<size_t>(b)];
        if (ja.size != jb.size) return ja.size < jb.size;
        return ja.id < jb.id;
      });
      info.prefix_weight.reserve(info.ids.size() + 1);
      info.prefix_weight.push_back(Rational(0));
      for (int id : info.ids) {
        info.prefix_weight.push_back(info.prefix_weight.back() +
                                     jobs[static_cast<size_t>(id)].size);
      }
    }
  }

  int count(long l) const {
    auto it = classes_.find(l);
    return it == classes_.end() ? 0 : static_cast<int>(it->second.ids.size());
  }

  bool has(long l) const { return count(l) > 0; }

  // Weight of C_l(a, b), the slice [a, b) in class order.
  Rational slice_weight(long l, int a, int b) const {
    if (a == b) return Rational(0);
    auto it = classes_.find(l);
    RELSCHED_CHECK(it != classes_.end(), "slice on an absent class");
    RELSCHED_CHECK(0 <= a && a <= b && b <= static_cast<int>(it->second.ids.size()),
                   "class slice out of range");
    return it->second.prefix_weight[static_cast<size_t>(b)] -
           it->second.prefix_weight[static_cast<size_t>(a)];
  }

  // Ids of C_l(a, b).
  std::vector<int> slice_ids(long l, int a, int b) const {
    if (a == b) return {};
    auto it = classes_.find(l);
    RELSCHED_CHECK(it != classes_.end(), "slice on an absent class");
    RELSCHED_CHECK(0 <= a && a <= b && b <= static_cast<int>(it->second.ids.size()),
                   "class slice out of range");
    return std::vector<int>(it->second.ids.begin() + a, it->second.ids.begin() + b);
  }

  const std::vector<int>& ids(long l) const {
    static const std::vector<int> empty;
    auto it = classes_.find(l);
    return it == classes_.end() ? empty : it->second.ids;
  }

  // Position of a job inside its class order.
  int position(const std::vector<Job>& jobs, int id) const {
    long l = jobs[static_cast<size_t>(id)].cls;
    const auto& v = ids(l);
    auto it = std::find(v.begin(), v.end(), id);
    RELSCHED_CHECK(it != v.end(), "job missing from its class");
    return static_cast<int>(it - v.begin());
  }

  const std::map<long, std::vector<int>> class_ids_view() const {
    std::map<long, std::vector<int>> out;
    for (const auto& [l, info] : classes_) out[l] = info.ids;
    return out;
  }

  std::vector<long> class_list() const {
    std::vector<long> out;
    out.reserve(classes_.size());
    for (const auto& [l, info] : classes_) out.push_back(l);
    return out;
  }

 private:
  struct ClassInfo {
    std::vector<int> ids;  // class order
    std::vector<Rational> prefix_weight;
  };
  std::map<long, ClassInfo> classes_;
};

}  // namespace relsched
