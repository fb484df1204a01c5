#ifndef PERMWILF_STRUCTURE_HPP
#define PERMWILF_STRUCTURE_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "permwilf/permutation.hpp"

namespace permwilf {

/// Positions (1-based, increasing) and values of the left-to-right minima.
/// Values are listed in position order, hence strictly decreasing.
struct MinimaProfile {
  std::vector<int> positions;
  std::vector<int> values;
  int ambient_n = 0;

  int count() const noexcept { return static_cast<int>(positions.size()); }
  friend bool operator==(const MinimaProfile&, const MinimaProfile&) = default;
};

inline MinimaProfile left_to_right_minima(const Permutation& p) {
  if (p.empty()) throw ArgumentError("left_to_right_minima: empty permutation");
  MinimaProfile prof;
  prof.ambient_n = p.size();
  int current = p.size() + 1;
  for (int i = 0; i < p.size(); ++i) {
    const int v = p[static_cast<std::size_t>(i)];
    if (v < current) {
      prof.positions.push_back(i + 1);
      prof.values.push_back(v);
      current = v;
    }
  }
  return prof;
}

inline int count_lr_minima(std::span<const int> values) {
  int m = 0;
  int current = 0;
  bool first = true;
  for (int v : values) {
    if (first || v < current) {
      ++m;
      current = v;
      first = false;
    }
  }
  return m;
}

/// The entries that are not left-to-right minima.
struct RemainingString {
  std::vector<int> raw;     // original values, in position order
  Permutation flattened;    // the pattern they form
};

inline RemainingString remaining_string(const Permutation& p) {
  RemainingString out;
  int current = p.size() + 1;
  for (int v : p) {
    if (v < current)
      current = v;
    else
      out.raw.push_back(v);
  }
  out.flattened = Permutation::flatten(out.raw);
  return out;
}

/// Entry i of the result is k+1-q_{k+1-i}.
inline Permutation reverse_complement(const Permutation& q) {
  const int k = q.size();
  std::vector<int> e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = k + 1 - q[static_cast<std::size_t>(k - 1 - i)];
  return Permutation(std::move(e));
}

inline Permutation reverse(const Permutation& q) {
  std::vector<int> e(q.begin(), q.end());
  std::reverse(e.begin(), e.end());
  return Permutation(std::move(e));
}

/// Cuts c (1 <= c < k) where every entry left of the cut exceeds every entry
/// right of it. No cuts means indecomposable (skew-indecomposable).
struct Decomposition {
  std::vector<int> cuts;
  bool indecomposable() const noexcept { return cuts.empty(); }
};

namespace detail {

// Cuts c with pred(prefix extreme, suffix extreme) for prefix [0,c) and suffix [c,k).
template <class Pred>
std::vector<int> cuts_where(const Permutation& q, bool prefix_min, Pred pred) {
  const int k = q.size();
  std::vector<int> suffix_ext(static_cast<std::size_t>(k + 1));
  for (int i = k - 1; i >= 0; --i) {
    const int v = q[static_cast<std::size_t>(i)];
    if (i == k - 1)
      suffix_ext[static_cast<std::size_t>(i)] = v;
    else
      suffix_ext[static_cast<std::size_t>(i)] =
          prefix_min ? std::max(v, suffix_ext[static_cast<std::size_t>(i + 1)])
                     : std::min(v, suffix_ext[static_cast<std::size_t>(i + 1)]);
  }
  std::vector<int> cuts;
  int prefix_ext = 0;
  for (int c = 1; c < k; ++c) {
    const int v = q[static_cast<std::size_t>(c - 1)];
    prefix_ext = c == 1 ? v : (prefix_min ? std::min(prefix_ext, v) : std::max(prefix_ext, v));
    if (pred(prefix_ext, suffix_ext[static_cast<std::size_t>(c)])) cuts.push_back(c);
  }
  return cuts;
}

}  // namespace detail

inline Decomposition classify_decomposability(const Permutation& q) {
  if (q.empty()) throw ArgumentError("classify_decomposability: empty pattern");
  // min of the left part above max of the right part
  return {detail::cuts_where(q, true, [](int left_min, int right_max) { return left_min > right_max; })};
}

inline bool is_indecomposable(const Permutation& q) { return classify_decomposability(q).indecomposable(); }

/// Sum-indecomposable: no cut with every left entry below every right entry.
inline bool is_sum_indecomposable(const Permutation& q) {
  if (q.empty()) throw ArgumentError("is_sum_indecomposable: empty pattern");
  return detail::cuts_where(q, false, [](int left_max, int right_min) { return left_max < right_min; })
      .empty();
}

/// Layer lengths of a layered pattern, left to right.
struct LayerComposition {
  std::vector<int> lengths;

  int total() const noexcept {
    int s = 0;
    for (int l : lengths) s += l;
    return s;
  }
  friend bool operator==(const LayerComposition&, const LayerComposition&) = default;
};

inline Permutation layered_from_composition(const LayerComposition& c) {
  std::vector<int> e;
  int base = 0;
  for (int len : c.lengths) {
    if (len < 1) throw ArgumentError("layer length must be positive");
    for (int i = len; i >= 1; --i) e.push_back(base + i);
    base += len;
  }
  return Permutation(std::move(e));
}

/// The layer composition if q is layered. The empty pattern has the empty composition.
inline std::optional<LayerComposition> layers_of(const Permutation& q) {
  LayerComposition c;
  int i = 0;
  const int k = q.size();
  int base = 0;
  while (i < k) {
    // a layer starting at i must be base+len, base+len-1, ..., base+1
    const int top = q[static_cast<std::size_t>(i)];
    const int len = top - base;
    if (len < 1 || i + len > k) return std::nullopt;
    for (int j = 0; j < len; ++j)
      if (q[static_cast<std::size_t>(i + j)] != top - j) return std::nullopt;
    c.lengths.push_back(len);
    base = top;
    i += len;
  }
  return c;
}

}  // namespace permwilf

#endif
