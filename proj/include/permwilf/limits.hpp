#ifndef PERMWILF_LIMITS_HPP
#define PERMWILF_LIMITS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "permwilf/algebraic.hpp"
#include "permwilf/constructions.hpp"
#include "permwilf/enumeration.hpp"
#include "permwilf/structure.hpp"

namespace permwilf {

namespace detail {

inline bool is_monotone(const Permutation& q) {
  return q == Permutation::identity(q.size()) || q == Permutation::decreasing(q.size());
}

inline AlgebraicValue sqrt8() { return AlgebraicValue(Rational(0), Rational(1), Count(8)); }

// q with its first entry removed and the rest flattened.
inline Permutation strip_first(const Permutation& q) {
  return Permutation::flatten(q.entries().subspan(1));
}

}  // namespace detail

/// Exact Stanley-Wilf limit for the families with a known closed form:
/// length 3 (4), monotone of length k ((k-1)^2), 1 2 ... (k-3)(k-1)k(k-2)
/// and its reverse complement ((k-4+sqrt 8)^2, which is 8 for 1342).
inline std::optional<AlgebraicValue> closed_form_limit(const Permutation& q) {
  const int k = q.size();
  if (k == 0) return std::nullopt;
  if (detail::is_monotone(q)) return AlgebraicValue((k - 1) * (k - 1));
  if (k == 3) return AlgebraicValue(4);
  if (k >= 4) {
    const auto qk = qk_family(k);
    if (q == qk || q == reverse_complement(qk)) return (AlgebraicValue(k - 4) + detail::sqrt8()).square();
  }
  return std::nullopt;
}

/// (1 + sqrt L)^2 = 1 + L + 2 sqrt L.
inline double inter_limit_step(double limit) {
  if (limit < 0) throw ArgumentError("inter_limit_step: L must be nonnegative");
  return 1.0 + limit + 2.0 * std::sqrt(limit);
}

/// Exact form of the step; nullopt when sqrt(L) leaves Q(sqrt c).
inline std::optional<AlgebraicValue> inter_limit_step(const AlgebraicValue& limit) {
  const auto root = limit.sqrt();
  if (!root) return std::nullopt;
  return (AlgebraicValue(1) + *root).square();
}

/// c_{i+1} = (1 + sqrt c_i)^2, returning c_1 ... c_steps.
inline std::vector<Decimal> gener_upper_chain(const Decimal& c0, int steps) {
  if (c0 < 0) throw ArgumentError("gener_upper_chain: c0 must be nonnegative");
  std::vector<Decimal> out;
  Decimal c = c0;
  for (int i = 0; i < steps; ++i) {
    const Decimal s = 1 + boost::multiprecision::sqrt(c);
    c = s * s;
    out.push_back(c);
  }
  return out;
}

inline std::optional<std::vector<AlgebraicValue>> gener_upper_chain_exact(const AlgebraicValue& c0, int steps) {
  std::vector<AlgebraicValue> out;
  AlgebraicValue c = c0;
  for (int i = 0; i < steps; ++i) {
    const auto next = inter_limit_step(c);
    if (!next) return std::nullopt;
    c = *next;
    out.push_back(c);
  }
  return out;
}

/// Growth exponent of binom(n, alpha n)^2 c^(n - alpha n): exp(2 H(alpha)) c^(1-alpha).
inline long double f_alpha(long double alpha, long double c) {
  if (c <= 0) throw ArgumentError("f_alpha: c must be positive");
  if (alpha < 0 || alpha > 1) throw ArgumentError("f_alpha: alpha outside [0, 1]");
  if (alpha == 0) return c;
  if (alpha == 1) return 1;
  const long double h = -alpha * std::log(alpha) - (1 - alpha) * std::log1p(-alpha);
  return std::exp(2 * h) * std::pow(c, 1 - alpha);
}

struct FOptimum {
  long double alpha = 0;
  long double value = 0;
};

/// Maximizes f_alpha over [0, 1] by golden-section search. Unimodality is
/// checked on a 1000-point grid first.
inline FOptimum optimize_f(long double c, long double tolerance = 1e-9L) {
  if (c <= 0) throw ArgumentError("optimize_f: c must be positive");
  constexpr int kGrid = 1000;
  long double prev = f_alpha(0, c);
  int trend = 0;
  for (int i = 1; i <= kGrid; ++i) {
    const long double cur = f_alpha(static_cast<long double>(i) / kGrid, c);
    const int t = cur > prev ? 1 : (cur < prev ? -1 : 0);
    if (t != 0) {
      if (trend == -1 && t == 1) throw std::runtime_error("optimize_f: f is not unimodal on the grid");
      trend = t;
    }
    prev = cur;
  }

  const long double inv_phi = (std::sqrt(5.0L) - 1) / 2;
  long double lo = 0, hi = 1;
  long double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  long double f1 = f_alpha(x1, c), f2 = f_alpha(x2, c);
  while (hi - lo > tolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f_alpha(x2, c);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f_alpha(x1, c);
    }
  }
  const long double alpha = (lo + hi) / 2;
  return {alpha, f_alpha(alpha, c)};
}

/// (k-1)^2, the lower bound for layered patterns of length k.
inline Count layered_floor(int k) {
  if (k < 1) throw ArgumentError("layered_floor: k must be positive");
  return Count(k - 1) * (k - 1);
}

/// e^-3 k^2.
inline double valtr_floor(int k) {
  if (k < 1) throw ArgumentError("valtr_floor: k must be positive");
  return std::exp(-3.0) * static_cast<double>(k) * static_cast<double>(k);
}

struct FeketeBound {
  double best = 0;
  int witness_n = 0;
  std::vector<double> sequence;  // S_n^(1/n) for n = 1..maxN
  std::vector<Count> counts;     // S_n for n = 0..maxN
};

inline double nth_root(const Count& value, int n) {
  if (value == 0) return 0;
  const Decimal v(value);
  return static_cast<double>(boost::multiprecision::exp(boost::multiprecision::log(v) / n));
}

/// S_n(q)^(1/n) for n <= maxN and the best of them. No extrapolation.
inline FeketeBound fekete_lower_bound(const Engine& engine, const Permutation& q, int max_n) {
  if (max_n < 1) throw ArgumentError("fekete_lower_bound: maxN must be at least 1");
  FeketeBound fb;
  fb.counts.push_back(engine.count_avoiders(q, 0));
  for (int n = 1; n <= max_n; ++n) {
    fb.counts.push_back(engine.count_avoiders(q, n));
    const double s = nth_root(fb.counts.back(), n);
    fb.sequence.push_back(s);
    if (fb.witness_n == 0 || s > fb.best) {
      fb.best = s;
      fb.witness_n = n;
    }
  }
  return fb;
}

struct SupermultFailure {
  Permutation pattern;
  int a = 0, b = 0;
  Count lhs;  // S_{a+b}
  Count rhs;  // S_a * S_b
  std::string detail;
};

struct SupermultReport {
  int checks = 0;
  int compositions_checked = 0;
  std::vector<SupermultFailure> failures;
  bool passed() const noexcept { return failures.empty(); }
};

/// Checks S_{a+b}(q) >= S_a(q) S_b(q) for a, b >= 1, a + b <= max_n. When
/// a + b <= compose_max_n, also verifies the injection behind it: every direct
/// sum (q sum-indecomposable) or skew sum (otherwise) of two avoiders avoids q.
inline SupermultReport check_supermultiplicativity(const Engine& engine, const Permutation& q, int max_n,
                                                   int compose_max_n = 0) {
  SupermultReport rep;
  const bool use_direct = is_sum_indecomposable(q);
  const PatternMatcher matcher(q);
  for (int total = 2; total <= max_n; ++total) {
    const Count whole = engine.count_avoiders(q, total);
    for (int a = 1; a < total; ++a) {
      const int b = total - a;
      const Count prod = engine.count_avoiders(q, a) * engine.count_avoiders(q, b);
      ++rep.checks;
      if (whole < prod) rep.failures.push_back({q, a, b, whole, prod, "S_{a+b} < S_a * S_b"});
      if (total > compose_max_n) continue;
      const auto left = engine.enumerate_avoiders(q, a);
      const auto right = engine.enumerate_avoiders(q, b);
      for (const auto& s : left)
        for (const auto& t : right) {
          ++rep.compositions_checked;
          const auto comp = use_direct ? direct_sum(s, t) : skew_sum(s, t);
          if (matcher.contains(comp.entries()))
            rep.failures.push_back({q, a, b, whole, prod,
                                    (use_direct ? "direct sum " : "skew sum ") + format_permutation(comp) +
                                        " contains the pattern"});
        }
    }
  }
  return rep;
}

struct UpperChain {
  Permutation base;
  AlgebraicValue base_constant;
  int steps = 0;
  AlgebraicValue value;
  std::vector<std::string> trace;
};

struct OneSidedBound {
  AlgebraicValue value;
  std::string reason;
};

struct BoundReport {
  Permutation pattern;
  std::optional<AlgebraicValue> closed_form;
  FeketeBound finite_lower;
  std::optional<UpperChain> upper_chain;
  std::optional<OneSidedBound> prepend_lower;  // from an indecomposable tail
  std::optional<Count> layered_lower;          // (k-1)^2 for layered q
  double valtr = 0;

  /// The ordering every report must satisfy.
  bool consistent(double tolerance = 1e-9) const {
    if (closed_form && finite_lower.best > closed_form->to_double() + tolerance) return false;
    if (closed_form && upper_chain && !(*closed_form <= upper_chain->value)) return false;
    if (upper_chain && finite_lower.best > upper_chain->value.to_double() + tolerance) return false;
    if (closed_form && prepend_lower && !(prepend_lower->value <= *closed_form)) return false;
    return true;
  }
};

namespace detail {

// Bases with a cited bound S_n(base) < c^n.
inline std::optional<AlgebraicValue> certified_base_constant(const Permutation& base) {
  if (base.size() == 3) return AlgebraicValue(4);
  if (base == Permutation{1, 3, 4, 2}) return AlgebraicValue(8);
  return std::nullopt;
}

}  // namespace detail

/// Strips leading 1s (each stripped pattern must itself start with 1) until a
/// base with a cited c^n bound, then re-applies c -> (1 + sqrt c)^2 once per
/// stripped entry. Only reported when at least one step was taken.
inline std::optional<UpperChain> upper_chain_for(const Permutation& q) {
  std::vector<Permutation> stages{q};
  while (true) {
    const Permutation& cur = stages.back();
    if (stages.size() > 1) {
      if (auto c = detail::certified_base_constant(cur)) {
        UpperChain chain{cur, *c, static_cast<int>(stages.size()) - 1, *c, {}};
        chain.trace.push_back("S_n(" + format_permutation(cur) + ") < " + c->to_string() + "^n (cited bound)");
        for (int i = static_cast<int>(stages.size()) - 2; i >= 0; --i) {
          const auto next = inter_limit_step(chain.value);
          if (!next) return std::nullopt;
          chain.value = *next;
          chain.trace.push_back("S_n(" + format_permutation(stages[static_cast<std::size_t>(i)]) + ") < (" +
                                chain.value.to_string() + ")^n");
        }
        return chain;
      }
    }
    if (cur.size() < 2 || cur[0] != 1) return std::nullopt;
    auto next = detail::strip_first(cur);
    if (next[0] != 1) return std::nullopt;
    stages.push_back(std::move(next));
  }
}

inline BoundReport bound_report(const Engine& engine, const Permutation& q, int max_n) {
  if (q.empty()) throw ArgumentError("bound_report: empty pattern");
  BoundReport r;
  r.pattern = q;
  r.closed_form = closed_form_limit(q);
  r.finite_lower = fekete_lower_bound(engine, q, max_n);
  r.upper_chain = upper_chain_for(q);
  r.valtr = valtr_floor(q.size());

  if (q.size() >= 2 && q[0] == 1) {
    const auto tail = detail::strip_first(q);
    if (is_indecomposable(tail)) {
      if (const auto tail_limit = closed_form_limit(tail)) {
        if (const auto lb = inter_limit_step(*tail_limit))
          r.prepend_lower = OneSidedBound{*lb, "L(" + format_permutation(q) + ") >= (1+sqrt(L(" +
                                                   format_permutation(tail) + ")))^2, tail indecomposable"};
      }
    }
  }
  if (const auto layers = layers_of(q); layers && !layers->lengths.empty()) r.layered_lower = layered_floor(q.size());
  return r;
}

}  // namespace permwilf

#endif
