#ifndef PERMWILF_PERMUTATION_HPP
#define PERMWILF_PERMUTATION_HPP

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permwilf/error.hpp"

namespace permwilf {

/// A permutation of {1, ..., n} in one-line notation. Also used as a pattern.
///
/// Entries are stored 1-based by value; indexing through operator[] is 0-based
/// like any container. Position arguments elsewhere in the library (minima
/// positions, cut positions) are 1-based.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    validate();
  }

  Permutation(std::initializer_list<int> entries)
      : entries_(entries.begin(), entries.end()) {
    validate();
  }

  /// Builds the pattern order-isomorphic to an arbitrary sequence of distinct
  /// integers (rank flattening).
  static Permutation flatten(std::span<const int> values) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<int> ranks(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (r > 0 && values[order[r]] == values[order[r - 1]])
        throw ParseError("flatten: repeated value " + std::to_string(values[order[r]]));
      ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation(std::move(ranks), Unchecked{});
  }

  static Permutation identity(int n) {
    std::vector<int> e(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(e), Unchecked{});
  }

  static Permutation decreasing(int n) {
    std::vector<int> e(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = n - i;
    return Permutation(std::move(e), Unchecked{});
  }

  int size() const noexcept { return static_cast<int>(entries_.size()); }
  bool empty() const noexcept { return entries_.empty(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  /// 1-based access, matching one-line notation.
  int at(int position) const { return entries_.at(static_cast<std::size_t>(position - 1)); }

  std::span<const int> entries() const noexcept { return entries_; }
  const std::vector<int>& values() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.entries_ <=> b.entries_;
  }

private:
  struct Unchecked {};
  Permutation(std::vector<int> entries, Unchecked) : entries_(std::move(entries)) {}

  void validate() const {
    const auto n = entries_.size();
    std::vector<bool> seen(n + 1, false);
    for (int v : entries_) {
      if (v < 1 || static_cast<std::size_t>(v) > n)
        throw ParseError("value " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      if (seen[static_cast<std::size_t>(v)])
        throw ParseError("duplicate value " + std::to_string(v));
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  std::vector<int> entries_;
};

/// Canonical text: comma-separated entries ("1,2,4,5,3"); empty permutation is "".
inline std::string format_permutation(const Permutation& p) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Digit-string form ("12453"); only defined when every entry is a single digit.
inline std::string format_digits(const Permutation& p) {
  if (p.size() > 9) return format_permutation(p);
  std::string out;
  for (int v : p) out += static_cast<char>('0' + v);
  return out;
}

/// Accepts a digit string ("12453") or a comma-separated list ("3,1,2").
/// Surrounding whitespace is ignored; the empty string is the empty permutation.
inline Permutation parse_permutation(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  std::vector<int> entries;
  if (text.empty()) return Permutation{};

  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw ParseError("invalid token '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
      entries.push_back(c - '0');
    }
  } else {
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      const auto token = trim(text.substr(start, comma == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : comma - start));
      if (token.empty()) throw ParseError("empty token in \"" + std::string(text) + "\"");
      int value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError("invalid token '" + std::string(token) + "'");
      entries.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }

  const int n = static_cast<int>(entries.size());
  std::vector<bool> seen(entries.size() + 1, false);
  for (int v : entries) {
    if (v < 1 || v > n)
      throw ParseError("token '" + std::to_string(v) + "' out of range 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v)])
      throw ParseError("duplicate token '" + std::to_string(v) + "'");
    seen[static_cast<std::size_t>(v)] = true;
  }
  return Permutation(std::move(entries));
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  return os << '<' << format_permutation(p) << '>';
}

}  // namespace permwilf

#endif
