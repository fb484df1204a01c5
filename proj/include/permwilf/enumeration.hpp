#ifndef PERMWILF_ENUMERATION_HPP
#define PERMWILF_ENUMERATION_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "permwilf/constructions.hpp"
#include "permwilf/containment.hpp"
#include "permwilf/numbers.hpp"
#include "permwilf/parallel.hpp"
#include "permwilf/permutation.hpp"

namespace permwilf {

struct EngineConfig {
  int ceiling_n = 12;            // counting
  int enumeration_ceiling = 8;   // materialized avoider streams
  int workers = default_workers();
  int shard_depth = 3;
  bool force = false;
};

/// Persistent or in-memory storage of finished counts, consulted before
/// computing (cache-aside). Implementations must be safe for one writer and
/// concurrent readers.
class CountStore {
public:
  virtual ~CountStore() = default;
  virtual std::optional<Count> lookup(const Permutation& q, int n) = 0;
  virtual void store(const Permutation& q, int n, const Count& count) = 0;
};

class MemoryCountStore : public CountStore {
public:
  std::optional<Count> lookup(const Permutation& q, int n) override {
    std::lock_guard lock(mutex_);
    const auto it = counts_.find({q, n});
    if (it == counts_.end()) return std::nullopt;
    return it->second;
  }
  void store(const Permutation& q, int n, const Count& count) override {
    std::lock_guard lock(mutex_);
    counts_.emplace(std::pair{q, n}, count);
  }
  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return counts_.size();
  }

private:
  mutable std::mutex mutex_;
  std::map<std::pair<Permutation, int>, Count> counts_;
};

/// Avoider counts of length n refined by number of left-to-right minima m.
struct StatDistribution {
  int n = 0;
  std::map<int, Count> per_m;

  Count total() const {
    Count s = 0;
    for (const auto& [m, c] : per_m) s += c;
    return s;
  }
};

namespace detail {

// Leaf counters per minima count, flushed into exact integers well before
// 64-bit overflow.
class MinimaTally {
public:
  explicit MinimaTally(int n) : small_(static_cast<std::size_t>(n + 1), 0), exact_(static_cast<std::size_t>(n + 1)) {}

  void add(int m) {
    auto& slot = small_[static_cast<std::size_t>(m)];
    if (++slot == kFlushAt) {
      exact_[static_cast<std::size_t>(m)] += slot;
      slot = 0;
    }
  }

  std::vector<Count> finish() {
    for (std::size_t i = 0; i < small_.size(); ++i) {
      exact_[i] += small_[i];
      small_[i] = 0;
    }
    return exact_;
  }

private:
  static constexpr std::uint64_t kFlushAt = std::uint64_t{1} << 62;
  std::vector<std::uint64_t> small_;
  std::vector<Count> exact_;
};

struct Prefix {
  std::vector<int> entries;  // flattened: a permutation of 1..len
  int minima = 0;
};

// Permutations are grown one position at a time by appending an entry with a
// chosen rank among the first len+1 values (entries at or above the rank shift
// up). Only occurrences through the new last entry can be new, so each child
// is checked with the incremental matcher and pruned on the first hit.
class RankAppendSearch {
public:
  RankAppendSearch(const PatternMatcher& matcher, int n)
      : matcher_(matcher), n_(n), levels_(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n))) {}

  template <class Visit>
  void children(std::span<const int> cur, int minima, Visit&& visit) {
    const int len = static_cast<int>(cur.size());
    auto& child = levels_[static_cast<std::size_t>(len + 1)];
    for (int v = 1; v <= len + 1; ++v) {
      for (int j = 0; j < len; ++j) {
        const int x = cur[static_cast<std::size_t>(j)];
        child[static_cast<std::size_t>(j)] = x >= v ? x + 1 : x;
      }
      child[static_cast<std::size_t>(len)] = v;
      const std::span<const int> view(child.data(), static_cast<std::size_t>(len + 1));
      if (matcher_.contains_ending_at_last(view)) continue;
      visit(view, minima + (v == 1 ? 1 : 0));
    }
  }

  void count_below(std::span<const int> cur, int minima, MinimaTally& tally) {
    if (static_cast<int>(cur.size()) == n_) {
      tally.add(minima);
      return;
    }
    children(cur, minima, [&](std::span<const int> child, int m) {
      if (static_cast<int>(child.size()) == n_)
        tally.add(m);
      else
        count_below(child, m, tally);
    });
  }

  void collect(std::span<const int> cur, int minima, int depth, std::vector<Prefix>& out) {
    if (static_cast<int>(cur.size()) == depth) {
      out.push_back({std::vector<int>(cur.begin(), cur.end()), minima});
      return;
    }
    children(cur, minima, [&](std::span<const int> child, int m) { collect(child, m, depth, out); });
  }

private:
  const PatternMatcher& matcher_;
  int n_;
  std::vector<std::vector<int>> levels_;
};

}  // namespace detail

/// Exact avoidance counting and enumeration under a resource ceiling.
class Engine {
public:
  static constexpr int kHardMaxN = 30;

  explicit Engine(EngineConfig config = {}, CountStore* store = nullptr)
      : config_(config), store_(store) {
    if (config_.ceiling_n < 1) throw ArgumentError("ceiling must be at least 1");
    if (config_.workers < 1) throw ArgumentError("workers must be at least 1");
    if (config_.shard_depth < 0) throw ArgumentError("shard depth must be nonnegative");
  }

  const EngineConfig& config() const noexcept { return config_; }
  CountStore* store() const noexcept { return store_; }

  /// S_n(q): the number of n-permutations avoiding q.
  Count count_avoiders(const Permutation& q, int n) const {
    check_request(q, n, config_.ceiling_n, "count");
    if (store_) {
      if (auto hit = store_->lookup(q, n)) return *hit;
    }
    Count total = 0;
    for (const auto& c : tally(q, n)) total += c;
    if (store_) store_->store(q, n, total);
    return total;
  }

  StatDistribution count_by_lr_minima(const Permutation& q, int n) const {
    if (n < 1) throw ArgumentError("count_by_lr_minima: n must be at least 1");
    check_request(q, n, config_.ceiling_n, "count");
    const auto per = tally(q, n);
    StatDistribution d;
    d.n = n;
    Count total = 0;
    for (int m = 1; m <= n; ++m) {
      const auto& c = per[static_cast<std::size_t>(m)];
      if (c != 0) d.per_m[m] = c;
      total += c;
    }
    if (store_ && !store_->lookup(q, n)) store_->store(q, n, total);
    return d;
  }

  /// Visits every q-avoiding n-permutation once, in lexicographic order. The
  /// visitor may return bool; false stops the stream.
  template <class Visit>
  void for_each_avoider(const Permutation& q, int n, Visit&& visit) const {
    check_request(q, n, config_.enumeration_ceiling, "enumeration");
    const PatternMatcher matcher(q);
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(n));
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    bool stop = false;
    auto emit = [&] {
      Permutation p(prefix);
      if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const Permutation&>, bool>) {
        if (!visit(static_cast<const Permutation&>(p))) stop = true;
      } else {
        visit(static_cast<const Permutation&>(p));
      }
    };
    if (n == 0) {
      emit();
      return;
    }
    auto rec = [&](auto&& self) -> void {
      for (int v = 1; v <= n && !stop; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        prefix.push_back(v);
        if (!matcher.contains_ending_at_last(prefix)) {
          used[static_cast<std::size_t>(v)] = true;
          if (static_cast<int>(prefix.size()) == n)
            emit();
          else
            self(self);
          used[static_cast<std::size_t>(v)] = false;
        }
        prefix.pop_back();
      }
    };
    rec(rec);
  }

  std::vector<Permutation> enumerate_avoiders(const Permutation& q, int n) const {
    std::vector<Permutation> out;
    for_each_avoider(q, n, [&](const Permutation& p) { out.push_back(p); });
    return out;
  }

private:
  void check_request(const Permutation& q, int n, int ceiling, const char* what) const {
    if (q.empty()) throw ArgumentError("pattern must be nonempty");
    if (n < 0) throw ArgumentError("n must be nonnegative");
    if (n > kHardMaxN) throw CeilingExceeded(std::string(what) + ": n exceeds hard limit", n, kHardMaxN);
    if (n > ceiling && !config_.force)
      throw CeilingExceeded(std::string(what) + ": n=" + std::to_string(n) + " exceeds ceiling " +
                                std::to_string(ceiling) + " (use force to override)",
                            n, ceiling);
  }

  // Avoider counts indexed by minima count 0..n.
  std::vector<Count> tally(const Permutation& q, int n) const {
    std::vector<Count> per(static_cast<std::size_t>(n + 1));
    if (n == 0) {
      per[0] = 1;
      return per;
    }
    const PatternMatcher matcher(q);
    const int depth = std::min(config_.shard_depth, n);
    std::vector<detail::Prefix> shards;
    {
      detail::RankAppendSearch search(matcher, n);
      search.collect({}, 0, depth, shards);
    }
    std::vector<std::vector<Count>> results(shards.size());
    parallel_for(shards.size(), config_.workers, [&](std::size_t i) {
      detail::RankAppendSearch search(matcher, n);
      detail::MinimaTally t(n);
      search.count_below(shards[i].entries, shards[i].minima, t);
      results[i] = t.finish();
    });
    for (const auto& r : results)
      for (std::size_t m = 0; m < r.size(); ++m) per[m] += r[m];
    return per;
  }

  EngineConfig config_;
  CountStore* store_;
};

/// A(n, m) = binom(n, m) binom(n, m+1) / n, evaluated exactly as printed.
/// Defined here for 0 <= m <= n, n >= 1.
inline Rational narayana_formula(int n, int m) {
  if (n < 1 || m < 0 || m > n) throw ArgumentError("narayana_formula: need n >= 1 and 0 <= m <= n");
  return Rational(binomial(n, m) * binomial(n, m + 1), Count(n));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

struct WilfComparison {
  bool agree = true;
  int checked_up_to = 0;
  // Populated on disagreement.
  int first_difference = -1;
  Count count_first = 0;
  Count count_second = 0;
};

inline WilfComparison wilf_equivalent_upto(const Engine& engine, const Permutation& q1,
                                           const Permutation& q2, int max_n) {
  WilfComparison result;
  for (int n = 0; n <= max_n; ++n) {
    const Count a = engine.count_avoiders(q1, n);
    const Count b = q1 == q2 ? a : engine.count_avoiders(q2, n);
    result.checked_up_to = n;
    if (a != b) {
      result.agree = false;
      result.first_difference = n;
      result.count_first = a;
      result.count_second = b;
      break;
    }
  }
  return result;
}

struct BwxReport {
  Permutation increasing_form;  // 12...r v
  Permutation decreasing_form;  // r...21 v
  std::vector<Count> increasing_counts;
  std::vector<Count> decreasing_counts;
  std::optional<int> counterexample_n;

  bool equal() const noexcept { return !counterexample_n; }
};

/// Compares S_n(12...r v) with S_n(r...21 v) for all n <= max_n.
inline BwxReport verify_bwx(const Engine& engine, int r, const Permutation& v, int max_n,
                            int max_pattern_length = 6) {
  if (r < 1) throw ArgumentError("verify_bwx: r must be at least 1");
  if (r + v.size() > max_pattern_length)
    throw ArgumentError("verify_bwx: r + |v| exceeds " + std::to_string(max_pattern_length));
  BwxReport rep{increasing_then(r, v), decreasing_then(r, v), {}, {}, std::nullopt};
  for (int n = 0; n <= max_n; ++n) {
    rep.increasing_counts.push_back(engine.count_avoiders(rep.increasing_form, n));
    rep.decreasing_counts.push_back(engine.count_avoiders(rep.decreasing_form, n));
    if (!rep.counterexample_n && rep.increasing_counts.back() != rep.decreasing_counts.back())
      rep.counterexample_n = n;
  }
  return rep;
}

}  // namespace permwilf

#endif
