#ifndef PERMWILF_VERIFY_HPP
#define PERMWILF_VERIFY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "permwilf/constructions.hpp"
#include "permwilf/containment.hpp"
#include "permwilf/enumeration.hpp"
#include "permwilf/limits.hpp"
#include "permwilf/merging.hpp"
#include "permwilf/structure.hpp"

namespace permwilf {

struct VerifyFailure {
  std::string pattern;
  int n = 0;
  std::string relation;  // the relation that was expected to hold
  std::string lhs;
  std::string rhs;
};

struct VerifyReport {
  std::string suite;
  int max_n = 0;
  long long checks = 0;
  std::vector<VerifyFailure> failures;
  std::vector<std::string> notes;

  bool passed() const noexcept { return failures.empty(); }
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"layered", "bwx", "recprop", "supermult", "witness", "narayana"};
  return names;
}

/// All permutations of length k in lexicographic order.
inline std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  std::vector<int> e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i + 1;
  do {
    out.emplace_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

/// Compositions of k, i.e. layer-length sequences of layered patterns of length k.
inline std::vector<LayerComposition> compositions(int k) {
  std::vector<LayerComposition> out;
  if (k < 1) return out;
  for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
    LayerComposition c;
    int len = 1;
    for (int i = 0; i < k - 1; ++i) {
      if (mask & (1u << i)) {
        c.lengths.push_back(len);
        len = 1;
      } else {
        ++len;
      }
    }
    c.lengths.push_back(len);
    out.push_back(std::move(c));
  }
  return out;
}

/// S_n(12...k) <= S_n(q) for every layered q of length k.
inline VerifyReport verify_layered(const Engine& engine, int max_n, int k = 4) {
  VerifyReport rep{"layered", max_n, 0, {}, {}};
  const auto mono = Permutation::identity(k);
  for (const auto& comp : compositions(k)) {
    const auto q = layered_from_composition(comp);
    for (int n = 0; n <= max_n; ++n) {
      const Count a = engine.count_avoiders(mono, n), b = engine.count_avoiders(q, n);
      ++rep.checks;
      if (a > b) rep.failures.push_back({format_permutation(q), n, "S_n(12..k) <= S_n(q)", a.str(), b.str()});
    }
  }
  return rep;
}

/// S_n(12...r v) = S_n(r...21 v) for every r >= 1 and v with r + |v| <= max_length.
inline VerifyReport verify_bwx_suite(const Engine& engine, int max_n, int max_length = 5) {
  VerifyReport rep{"bwx", max_n, 0, {}, {}};
  for (int k = 2; k <= max_length; ++k)
    for (int r = 2; r < k; ++r)
      for (const auto& v : all_permutations(k - r)) {
        const auto res = verify_bwx(engine, r, v, max_n, max_length);
        rep.checks += max_n + 1;
        if (res.counterexample_n) {
          const auto n = static_cast<std::size_t>(*res.counterexample_n);
          rep.failures.push_back({format_permutation(res.increasing_form) + " vs " +
                                      format_permutation(res.decreasing_form),
                                  *res.counterexample_n, "S_n(12..r v) = S_n(r..21 v)",
                                  res.increasing_counts[n].str(), res.decreasing_counts[n].str()});
        }
      }
  return rep;
}

/// Both parts of the remaining-string criterion, for every p of length <= max_n
/// and every q of length base_length: S avoids q => p avoids q'; and when q
/// starts with 1, p avoids q' <=> S avoids q.
inline VerifyReport verify_recprop(int max_n, int base_length = 3) {
  VerifyReport rep{"recprop", max_n, 0, {}, {}};
  struct Case {
    Permutation q;
    PatternMatcher base, lifted;
  };
  std::vector<Case> cases;
  for (const auto& q : all_permutations(base_length))
    cases.push_back({q, PatternMatcher(q), PatternMatcher(prepend_one(q))});
  for (int n = 1; n <= max_n; ++n)
    for (const auto& p : all_permutations(n)) {
      const auto rest = remaining_string(p).raw;
      for (const auto& c : cases) {
        const bool s_avoids = !c.base.contains(rest);
        const bool p_avoids = !c.lifted.contains(p.entries());
        ++rep.checks;
        if (s_avoids && !p_avoids)
          rep.failures.push_back({format_permutation(c.q), n, "S avoids q => p avoids q' (p=" + format_permutation(p) + ")",
                                  "S avoids", "p contains q'"});
        if (c.q[0] == 1) {
          ++rep.checks;
          if (s_avoids != p_avoids)
            rep.failures.push_back({format_permutation(c.q), n,
                                    "p avoids q' <=> S avoids q (p=" + format_permutation(p) + ")",
                                    s_avoids ? "S avoids" : "S contains", p_avoids ? "p avoids" : "p contains"});
        }
      }
    }
  return rep;
}

inline VerifyReport verify_supermult(const Engine& engine, int max_n, int max_length = 4) {
  VerifyReport rep{"supermult", max_n, 0, {}, {}};
  for (int k = 1; k <= max_length; ++k)
    for (const auto& q : all_permutations(k)) {
      const auto r = check_supermultiplicativity(engine, q, max_n, max_n);
      rep.checks += r.checks + r.compositions_checked;
      for (const auto& f : r.failures)
        rep.failures.push_back({format_permutation(q), f.a + f.b,
                                "S_{a+b} >= S_a*S_b (a=" + std::to_string(f.a) + ", b=" + std::to_string(f.b) +
                                    "): " + f.detail,
                                f.lhs.str(), f.rhs.str()});
    }
  return rep;
}

/// Every sound witness avoids 12453 (checked inside count_witnesses) and the
/// witness counts never exceed S_n(12453).
inline VerifyReport verify_witness(const Engine& engine, int max_n, std::vector<int> block_sizes = {1, 2, 3}) {
  VerifyReport rep{"witness", max_n, 0, {}, {}};
  const auto& target = witness_target();
  for (int n = 2; n <= max_n; ++n) {
    const Count bound = engine.count_avoiders(target, n);
    for (int block : block_sizes) {
      Count total = 0;
      for (int m = 1; m <= n - block; ++m) {
        const auto wc = count_witnesses(engine, n, block, m, [&](const Permutation& w) {
          ++rep.checks;
          if (contains(w, target))
            rep.failures.push_back({format_permutation(w), n, "witness avoids 12453", "contains", "avoids"});
        });
        ++rep.checks;
        if (wc.distinct > bound)
          rep.failures.push_back({"n=" + std::to_string(n) + " N=" + std::to_string(block) + " m=" + std::to_string(m),
                                  n, "count_witnesses <= S_n(12453)", wc.distinct.str(), bound.str()});
        if (wc.rejected > 0)
          rep.notes.push_back("n=" + std::to_string(n) + " N=" + std::to_string(block) + " m=" + std::to_string(m) +
                              ": " + wc.rejected.str() + " of " + wc.generated.str() +
                              " block choices disturb the minima and were rejected");
        if (wc.collision)
          rep.notes.push_back("n=" + std::to_string(n) + " N=" + std::to_string(block) + " m=" + std::to_string(m) +
                              ": distinct inputs produced the same witness");
        total += wc.distinct;
      }
      ++rep.checks;
      if (total > bound)
        rep.failures.push_back({"n=" + std::to_string(n) + " N=" + std::to_string(block), n,
                                "sum over m of count_witnesses <= S_n(12453)", total.str(), bound.str()});
    }
  }
  return rep;
}

/// Enumerated minima distribution of 123-avoiders against the printed
/// Narayana expression. Each must total catalan(n) under its own indexing
/// (enumeration over m = 1..n, formula over m = 0..n); where the two vectors
/// differ is recorded as a note, not a failure.
inline VerifyReport verify_narayana(const Engine& engine, int max_n) {
  VerifyReport rep{"narayana", max_n, 0, {}, {}};
  const Permutation q{1, 2, 3};
  for (int n = 1; n <= max_n; ++n) {
    const auto dist = engine.count_by_lr_minima(q, n);
    const Count cat = catalan(n);
    ++rep.checks;
    if (dist.total() != cat)
      rep.failures.push_back({"1,2,3", n, "sum_m enumerated = catalan(n)", dist.total().str(), cat.str()});
    Rational formula_total = 0;
    bool differs = false;
    for (int m = 0; m <= n; ++m) {
      const Rational a = narayana_formula(n, m);
      ++rep.checks;
      if (!is_integer(a))
        rep.failures.push_back({"1,2,3", n, "A(n,m) integral (m=" + std::to_string(m) + ")", a.str(), "integer"});
      formula_total += a;
      if (m >= 1) {
        const auto it = dist.per_m.find(m);
        const Count enumerated = it == dist.per_m.end() ? Count(0) : it->second;
        if (Rational(enumerated) != a) differs = true;
      }
    }
    ++rep.checks;
    if (formula_total != Rational(cat))
      rep.failures.push_back({"1,2,3", n, "sum_{m=0..n} A(n,m) = catalan(n)", formula_total.str(), cat.str()});
    if (differs)
      rep.notes.push_back("n=" + std::to_string(n) +
                          ": A(n,m) for m=1..n differs from the enumerated distribution (index offset by one)");
  }
  return rep;
}

inline VerifyReport run_verify_suite(const std::string& suite, const Engine& engine, int max_n) {
  if (suite == "layered") return verify_layered(engine, max_n);
  if (suite == "bwx") return verify_bwx_suite(engine, max_n);
  if (suite == "recprop") {
    const int ceiling = engine.config().enumeration_ceiling;
    if (max_n > ceiling && !engine.config().force)
      throw CeilingExceeded("recprop: n=" + std::to_string(max_n) + " exceeds enumeration ceiling " +
                                std::to_string(ceiling),
                            max_n, ceiling);
    return verify_recprop(max_n);
  }
  if (suite == "supermult") return verify_supermult(engine, max_n);
  if (suite == "witness") return verify_witness(engine, max_n);
  if (suite == "narayana") return verify_narayana(engine, max_n);
  throw ArgumentError("unknown verify suite '" + suite + "'");
}

}  // namespace permwilf

#endif
