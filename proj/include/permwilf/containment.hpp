#ifndef PERMWILF_CONTAINMENT_HPP
#define PERMWILF_CONTAINMENT_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "permwilf/permutation.hpp"

namespace permwilf {

/// Depth-first subsequence matcher for a fixed pattern.
///
/// Pattern entries are matched left to right. Two prunings apply at every
/// step: enough text positions must remain for the unmatched pattern entries,
/// and the candidate value must lie strictly between the text values already
/// bound to its nearest lower and upper pattern neighbours (by value). Those
/// neighbours are precomputed, so each candidate test is O(1).
///
/// The text may be any sequence of distinct integers; only relative order
/// matters.
class PatternMatcher {
public:
  static constexpr std::size_t kMaxPattern = 32;

  explicit PatternMatcher(const Permutation& pattern) : pattern_(pattern) {
    k_ = pattern.size();
    if (static_cast<std::size_t>(k_) > kMaxPattern)
      throw ArgumentError("pattern longer than " + std::to_string(kMaxPattern));
    full_ = neighbours(/*fix_last=*/false);
    tail_ = neighbours(/*fix_last=*/true);
  }

  const Permutation& pattern() const noexcept { return pattern_; }
  int length() const noexcept { return k_; }

  /// True iff some subsequence of text is order-isomorphic to the pattern.
  bool contains(std::span<const int> text) const {
    if (k_ == 0) return true;
    const int n = static_cast<int>(text.size());
    if (n < k_) return false;
    std::array<int, kMaxPattern> bound{};
    return search(text, full_, bound, 0, 0, n, k_);
  }

  /// True iff an occurrence exists whose last pattern entry is matched to the
  /// last text entry. This is the incremental check used when a prefix is
  /// extended by one entry: any new occurrence must use the new entry.
  bool contains_ending_at_last(std::span<const int> text) const {
    if (k_ == 0) return true;
    const int n = static_cast<int>(text.size());
    if (n < k_) return false;
    std::array<int, kMaxPattern> bound{};
    bound[static_cast<std::size_t>(k_ - 1)] = text[static_cast<std::size_t>(n - 1)];
    return search(text, tail_, bound, 0, 0, n - 1, k_ - 1);
  }

private:
  struct Bounds {
    // Pattern index whose bound text value must be below / above entry j; -1 if none.
    std::array<int, kMaxPattern> lower{};
    std::array<int, kMaxPattern> upper{};
  };

  Bounds neighbours(bool fix_last) const {
    Bounds b;
    for (int j = 0; j < k_; ++j) {
      int lo = -1, hi = -1;
      auto consider = [&](int i) {
        const int qi = pattern_[static_cast<std::size_t>(i)];
        const int qj = pattern_[static_cast<std::size_t>(j)];
        if (qi < qj && (lo < 0 || qi > pattern_[static_cast<std::size_t>(lo)])) lo = i;
        if (qi > qj && (hi < 0 || qi < pattern_[static_cast<std::size_t>(hi)])) hi = i;
      };
      for (int i = 0; i < j; ++i) consider(i);
      if (fix_last && j < k_ - 1) consider(k_ - 1);
      b.lower[static_cast<std::size_t>(j)] = lo;
      b.upper[static_cast<std::size_t>(j)] = hi;
    }
    return b;
  }

  // Binds pattern entries j..stop-1 to text positions in [start, end).
  static bool search(std::span<const int> text, const Bounds& nb,
                     std::array<int, kMaxPattern>& bound, int j, int start, int end, int stop) {
    if (j == stop) return true;
    const int lo = nb.lower[static_cast<std::size_t>(j)];
    const int hi = nb.upper[static_cast<std::size_t>(j)];
    const int lo_val = lo >= 0 ? bound[static_cast<std::size_t>(lo)] : 0;
    const bool has_lo = lo >= 0;
    const int hi_val = hi >= 0 ? bound[static_cast<std::size_t>(hi)] : 0;
    const bool has_hi = hi >= 0;
    const int last_start = end - (stop - j);
    for (int pos = start; pos <= last_start; ++pos) {
      const int v = text[static_cast<std::size_t>(pos)];
      if (has_lo && v <= lo_val) continue;
      if (has_hi && v >= hi_val) continue;
      bound[static_cast<std::size_t>(j)] = v;
      if (search(text, nb, bound, j + 1, pos + 1, end, stop)) return true;
    }
    return false;
  }

  Permutation pattern_;
  int k_ = 0;
  Bounds full_;
  Bounds tail_;
};

/// True iff some subsequence of p is order-isomorphic to q. Every p contains
/// the empty pattern.
inline bool contains(const Permutation& p, const Permutation& q) {
  return PatternMatcher(q).contains(p.entries());
}

inline bool avoids(const Permutation& p, const Permutation& q) { return !contains(p, q); }

}  // namespace permwilf

#endif
