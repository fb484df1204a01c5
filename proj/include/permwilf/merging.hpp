#ifndef PERMWILF_MERGING_HPP
#define PERMWILF_MERGING_HPP

#include <algorithm>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "permwilf/constructions.hpp"
#include "permwilf/containment.hpp"
#include "permwilf/enumeration.hpp"
#include "permwilf/structure.hpp"

namespace permwilf {

/// Candidate left-to-right minima (positions T, values Z) together with the
/// string S of remaining entries, all inside [n].
struct Triple {
  int n = 0;
  std::vector<int> positions;  // T
  std::vector<int> values;     // Z, any order
  std::vector<int> remaining;  // S, in order
};

namespace detail {

inline void validate_triple(const Triple& t) {
  if (t.n < 0) throw TripleError("triple: negative n");
  if (t.positions.size() != t.values.size())
    throw TripleError("triple: |T| != |Z|");
  if (t.n >= 1 && t.positions.empty()) throw TripleError("triple: T and Z must be nonempty");
  if (t.remaining.size() + t.values.size() != static_cast<std::size_t>(t.n))
    throw TripleError("triple: |S| != n - |Z|");
  std::vector<bool> pos_seen(static_cast<std::size_t>(t.n + 1), false);
  for (int p : t.positions) {
    if (p < 1 || p > t.n) throw TripleError("triple: position " + std::to_string(p) + " outside [n]");
    if (pos_seen[static_cast<std::size_t>(p)]) throw TripleError("triple: repeated position " + std::to_string(p));
    pos_seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<bool> val_seen(static_cast<std::size_t>(t.n + 1), false);
  auto mark = [&](int v, const char* which) {
    if (v < 1 || v > t.n) throw TripleError(std::string("triple: ") + which + " value " + std::to_string(v) + " outside [n]");
    if (val_seen[static_cast<std::size_t>(v)])
      throw TripleError("triple: value " + std::to_string(v) + " appears twice across Z and S");
    val_seen[static_cast<std::size_t>(v)] = true;
  };
  for (int v : t.values) mark(v, "Z");
  for (int v : t.remaining) mark(v, "S");
}

// Z in decreasing order at the sorted positions of T; S in order elsewhere.
inline std::vector<int> place(const Triple& t) {
  std::vector<int> pos(t.positions);
  std::sort(pos.begin(), pos.end());
  std::vector<int> vals(t.values);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  std::vector<int> out(static_cast<std::size_t>(t.n), 0);
  for (std::size_t i = 0; i < pos.size(); ++i) out[static_cast<std::size_t>(pos[i] - 1)] = vals[i];
  std::size_t s = 0;
  for (auto& slot : out)
    if (slot == 0) slot = t.remaining[s++];
  return out;
}

}  // namespace detail

/// The unique permutation with minima profile (T, Z) and remaining string S,
/// or nullopt when the triple is incompatible. Throws TripleError when the
/// triple is structurally malformed.
inline std::optional<Permutation> merge(const Triple& t) {
  detail::validate_triple(t);
  Permutation p(detail::place(t));
  if (p.empty()) return p;
  const auto prof = left_to_right_minima(p);
  std::vector<int> pos(t.positions);
  std::sort(pos.begin(), pos.end());
  std::vector<int> vals(t.values);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  if (prof.positions != pos || prof.values != vals) return std::nullopt;
  return p;
}

inline bool is_compatible(const Triple& t) { return merge(t).has_value(); }

/// The minima of p as a triple, with p's remaining entries as S.
inline Triple decompose(const Permutation& p) {
  const auto prof = left_to_right_minima(p);
  return {p.size(), prof.positions, prof.values, remaining_string(p).raw};
}

/// Pads a 123-avoiding p' (length n-N) to length n: the minima of p' keep
/// their original positions and values, and the remaining string becomes the
/// decreasing run on {n-N+1, ..., n} followed by the remaining string of p'.
/// Each remaining entry then sits at least N positions to the right of where
/// it was in p', which gives the strengthened compatibility checked below.
inline Permutation extend_with_buffer(const Permutation& base, int block_size) {
  if (block_size < 1) throw ArgumentError("extend_with_buffer: N must be positive");
  if (base.empty()) throw ArgumentError("extend_with_buffer: p' must be nonempty");
  static const Permutation kIncreasing3{1, 2, 3};
  if (contains(base, kIncreasing3)) throw ArgumentError("extend_with_buffer: p' contains 123");

  const int n = base.size() + block_size;
  const auto prof = left_to_right_minima(base);
  Triple t{n, prof.positions, prof.values, {}};
  for (int v = n; v > base.size(); --v) t.remaining.push_back(v);
  for (int v : remaining_string(base).raw) t.remaining.push_back(v);

  auto merged = merge(t);
  if (!merged) throw WitnessError("extend_with_buffer: buffered triple is incompatible");
  const Permutation& out = *merged;

  if (contains(out, kIncreasing3)) throw WitnessError("extend_with_buffer: result contains 123");
  const auto out_prof = left_to_right_minima(out);
  if (out_prof.positions != prof.positions || out_prof.values != prof.values)
    throw WitnessError("extend_with_buffer: minima not preserved");
  // remaining entry at position j exceeds the last minimum at or before j - N
  std::size_t mi = 0;
  for (int j = 1; j <= n; ++j) {
    if (mi < prof.positions.size() && prof.positions[mi] == j) {
      ++mi;
      continue;
    }
    const int anchor = j - block_size;
    int guard = 0;
    for (std::size_t i = 0; i < prof.positions.size() && prof.positions[i] <= anchor; ++i) guard = prof.values[i];
    if (guard != 0 && out.at(j) <= guard)
      throw WitnessError("extend_with_buffer: entry at position " + std::to_string(j) +
                         " not above the minimum preceding position j-N");
  }
  return out;
}

struct WitnessParams {
  Permutation base;    // p', 123-avoiding
  int block_size = 1;  // N
  BlockSpec blocks;    // each block 1342-avoiding
};

/// Block lengths used for a remaining string of length len: floor(len/N)
/// blocks of length N, the last absorbing the rest (length N..2N-1).
inline std::vector<int> block_lengths(int len, int block_size) {
  if (block_size < 1) throw ArgumentError("block size must be positive");
  if (len < block_size) throw ArgumentError("remaining string shorter than one block");
  const int count = len / block_size;
  std::vector<int> lengths(static_cast<std::size_t>(count), block_size);
  lengths.back() = len - block_size * (count - 1);
  return lengths;
}

struct WitnessAttempt {
  Permutation buffered;   // p''
  Permutation candidate;  // p'' with its remaining string replaced
  bool minima_preserved = false;
  bool avoids_target = false;

  bool sound() const noexcept { return minima_preserved && avoids_target; }
};

inline const Permutation& witness_target() {
  static const Permutation q{1, 2, 4, 5, 3};
  return q;
}

/// Builds the candidate witness and evaluates its postconditions without
/// throwing on a postcondition failure.
inline WitnessAttempt attempt_witness(const WitnessParams& w) {
  static const Permutation kBlockPattern{1, 3, 4, 2};
  WitnessAttempt a;
  a.buffered = extend_with_buffer(w.base, w.block_size);
  const auto prof = left_to_right_minima(a.buffered);
  const auto rest = remaining_string(a.buffered);
  const int len = static_cast<int>(rest.raw.size());

  const auto expected = block_lengths(len, w.block_size);
  if (w.blocks.blocks.size() != expected.size())
    throw ArgumentError("witness: expected " + std::to_string(expected.size()) + " blocks, got " +
                        std::to_string(w.blocks.blocks.size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (w.blocks.blocks[i].size() != expected[i])
      throw ArgumentError("witness: block " + std::to_string(i + 1) + " has length " +
                          std::to_string(w.blocks.blocks[i].size()) + ", expected " +
                          std::to_string(expected[i]));
    if (contains(w.blocks.blocks[i], kBlockPattern))
      throw ArgumentError("witness: block " + std::to_string(i + 1) + " contains 1342");
  }

  // realize the block-structured pattern on the remaining values, in place
  const auto shape = block_structured(w.blocks);
  std::vector<int> sorted_values(rest.raw);
  std::sort(sorted_values.begin(), sorted_values.end());
  std::vector<int> out(a.buffered.begin(), a.buffered.end());
  std::size_t mi = 0, si = 0;
  for (int j = 1; j <= a.buffered.size(); ++j) {
    if (mi < prof.positions.size() && prof.positions[mi] == j) {
      ++mi;
      continue;
    }
    out[static_cast<std::size_t>(j - 1)] = sorted_values[static_cast<std::size_t>(shape[si++] - 1)];
  }
  a.candidate = Permutation(std::move(out));
  a.minima_preserved = left_to_right_minima(a.candidate) == prof;
  a.avoids_target = avoids(a.candidate, witness_target());
  return a;
}

/// Throws WitnessError if the minima of p'' are disturbed or the result
/// contains 12453.
inline Permutation build_witness(const WitnessParams& w) {
  auto a = attempt_witness(w);
  if (!a.minima_preserved)
    throw WitnessError("build_witness: block replacement changed the left-to-right minima of " +
                       format_permutation(a.buffered) + " (candidate " + format_permutation(a.candidate) + ")");
  if (!a.avoids_target)
    throw WitnessError("build_witness: candidate " + format_permutation(a.candidate) + " contains 12453");
  return a.candidate;
}

struct WitnessCount {
  Count distinct = 0;   // sound witnesses after dedupe
  Count generated = 0;  // (p', blocks) combinations tried
  Count rejected = 0;   // combinations whose minima were disturbed
  bool collision = false;
};

struct WitnessLimits {
  int max_n = 10;
};

/// Enumerates every (p', blocks) with |p'| = n-N and m minima, builds each
/// witness, and counts the distinct sound ones. Every counted witness has been
/// checked 12453-avoiding. Witnesses from different p' have different minima
/// profiles, so deduplication is per p' and p' candidates run in parallel.
///
/// `visit`, if given, is called once for every distinct sound witness.
inline WitnessCount count_witnesses(const Engine& engine, int n, int block_size, int m,
                                    const std::function<void(const Permutation&)>& visit = {},
                                    WitnessLimits limits = {}) {
  if (n > limits.max_n && !engine.config().force)
    throw CeilingExceeded("count_witnesses: n=" + std::to_string(n) + " exceeds ceiling " +
                              std::to_string(limits.max_n),
                          n, limits.max_n);
  if (block_size < 1 || n - block_size < 1 || m < 1 || m > n - block_size) return {};

  EngineConfig enum_cfg = engine.config();
  enum_cfg.enumeration_ceiling = std::max(enum_cfg.enumeration_ceiling, n);
  const Engine enumerator(enum_cfg);

  std::vector<Permutation> bases;
  enumerator.for_each_avoider(Permutation{1, 2, 3}, n - block_size, [&](const Permutation& p) {
    if (left_to_right_minima(p).count() == m) bases.push_back(p);
  });

  std::map<int, std::vector<Permutation>> block_choices;
  const Permutation block_pattern{1, 3, 4, 2};
  auto choices_for = [&](int len) -> const std::vector<Permutation>& {
    auto it = block_choices.find(len);
    if (it == block_choices.end())
      it = block_choices.emplace(len, enumerator.enumerate_avoiders(block_pattern, len)).first;
    return it->second;
  };
  // remaining length is n - m for every base
  const auto lengths = block_lengths(n - m, block_size);
  std::vector<const std::vector<Permutation>*> per_block;
  for (int len : lengths) per_block.push_back(&choices_for(len));

  struct Partial {
    Count distinct = 0, generated = 0, rejected = 0;
    std::vector<Permutation> found;
  };
  std::vector<Partial> partials(bases.size());
  parallel_for(bases.size(), engine.config().workers, [&](std::size_t bi) {
    Partial& part = partials[bi];
    std::set<Permutation> seen;
    std::vector<std::size_t> idx(per_block.size(), 0);
    while (true) {
      WitnessParams w{bases[bi], block_size, {}};
      for (std::size_t b = 0; b < idx.size(); ++b) w.blocks.blocks.push_back((*per_block[b])[idx[b]]);
      auto a = attempt_witness(w);
      ++part.generated;
      if (!a.minima_preserved) {
        ++part.rejected;
      } else {
        if (!a.avoids_target)
          throw WitnessError("count_witnesses: sound-minima witness " + format_permutation(a.candidate) +
                             " contains 12453");
        if (seen.insert(a.candidate).second && visit) part.found.push_back(a.candidate);
      }
      std::size_t b = 0;
      while (b < idx.size() && ++idx[b] == per_block[b]->size()) idx[b++] = 0;
      if (b == idx.size()) break;
    }
    part.distinct = seen.size();
  });

  WitnessCount total;
  for (const auto& part : partials) {
    total.distinct += part.distinct;
    total.generated += part.generated;
    total.rejected += part.rejected;
    if (visit)
      for (const auto& p : part.found) visit(p);
  }
  total.collision = total.distinct != total.generated - total.rejected;
  return total;
}

}  // namespace permwilf

#endif
