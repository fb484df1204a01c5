#ifndef PERMWILF_NUMBERS_HPP
#define PERMWILF_NUMBERS_HPP

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace permwilf {

using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Decimal = boost::multiprecision::cpp_dec_float_50;

inline Count binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Count r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Count factorial(int n) {
  Count r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// binom(2n, n) / (n + 1)
inline Count catalan(int n) {
  if (n < 0) throw std::invalid_argument("catalan: negative n");
  return binomial(2 * n, n) / (n + 1);
}

inline std::string to_string(const Count& c) { return c.str(); }

}  // namespace permwilf

#endif
