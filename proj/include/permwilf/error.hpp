#ifndef PERMWILF_ERROR_HPP
#define PERMWILF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace permwilf {

/// Malformed permutation text or an entry sequence that is not a permutation.
class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A request outside an operation's preconditions (bad k, bad composition, ...).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Refusal to run an enumeration above the configured ceiling.
class CeilingExceeded : public std::runtime_error {
public:
  CeilingExceeded(const std::string& what, int requested, int ceiling)
      : std::runtime_error(what), requested_(requested), ceiling_(ceiling) {}

  int requested() const noexcept { return requested_; }
  int ceiling() const noexcept { return ceiling_; }

private:
  int requested_;
  int ceiling_;
};

/// A triple whose sizes or value sets are inconsistent. Distinct from an
/// incompatible (but well-formed) triple, which is a normal verdict.
class TripleError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A witness construction whose asserted postconditions did not hold.
class WitnessError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace permwilf

#endif
