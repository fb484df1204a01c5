#ifndef PERMWILF_CONSTRUCTIONS_HPP
#define PERMWILF_CONSTRUCTIONS_HPP

#include <vector>

#include "permwilf/permutation.hpp"

namespace permwilf {

/// q' : shift every entry of q up by one and prepend 1.
inline Permutation prepend_one(const Permutation& q) {
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(q.size() + 1));
  e.push_back(1);
  for (int v : q) e.push_back(v + 1);
  return Permutation(std::move(e));
}

/// q'' : prepend 1, shift q up by one, append k+2.
inline Permutation sandwich(const Permutation& q) {
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(q.size() + 2));
  e.push_back(1);
  for (int v : q) e.push_back(v + 1);
  e.push_back(q.size() + 2);
  return Permutation(std::move(e));
}

/// 1 2 ... (k-3) (k-1) k (k-2); the family starting 1342, 12453, 123564, ...
inline Permutation qk_family(int k) {
  if (k < 4) throw ArgumentError("qk_family: k must be at least 4, got " + std::to_string(k));
  std::vector<int> e;
  for (int i = 1; i <= k - 3; ++i) e.push_back(i);
  e.push_back(k - 1);
  e.push_back(k);
  e.push_back(k - 2);
  return Permutation(std::move(e));
}

/// Second operand placed after and above the first.
inline Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> e(a.begin(), a.end());
  for (int v : b) e.push_back(v + a.size());
  return Permutation(std::move(e));
}

/// Second operand placed after and below the first.
inline Permutation skew_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> e;
  for (int v : a) e.push_back(v + b.size());
  for (int v : b) e.push_back(v);
  return Permutation(std::move(e));
}

/// 12...r followed by v on the values {r+1, ..., r+|v|}.
inline Permutation increasing_then(int r, const Permutation& v) {
  return direct_sum(Permutation::identity(r), v);
}

/// r(r-1)...1 followed by v on the values {r+1, ..., r+|v|}.
inline Permutation decreasing_then(int r, const Permutation& v) {
  return direct_sum(Permutation::decreasing(r), v);
}

struct BlockSpec {
  std::vector<Permutation> blocks;

  int total_length() const noexcept {
    int s = 0;
    for (const auto& b : blocks) s += b.size();
    return s;
  }
};

/// Concatenates the blocks so that every block lies entirely below all blocks
/// to its left (a skew sum of the blocks).
inline Permutation block_structured(const BlockSpec& spec) {
  if (spec.blocks.empty()) throw ArgumentError("block_structured: at least one block required");
  std::vector<int> e;
  int top = spec.total_length();
  for (const auto& b : spec.blocks) {
    const int base = top - b.size();
    for (int v : b) e.push_back(base + v);
    top = base;
  }
  return Permutation(std::move(e));
}

}  // namespace permwilf

#endif
