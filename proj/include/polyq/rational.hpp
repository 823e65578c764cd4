#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "polyq/errors.hpp"

namespace polyq {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator; zero is 0/1.
///
/// Never bind a GMP arithmetic expression to `auto`: the expression
/// templates reference their operands. Always name the type.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ContractViolation("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline int sign(const Rational& x) { return sgn(x); }

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Parses `[+-]digits[/digits]`. Anything else, including decimal points
/// and exponents, is rejected.
inline Rational parse_rational(std::string_view text, std::size_t line = 0) {
  auto fail = [&](const char* why) {
    throw ParseError(std::string(why) + " '" + std::string(text) + "'", line);
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    return end;
  };
  std::size_t num_end = digits(pos);
  if (num_end == pos) fail("malformed rational");
  Integer num(std::string(text.substr(pos, num_end - pos)));
  Integer den = 1;
  if (num_end != text.size()) {
    if (text[num_end] != '/') fail("malformed rational");
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != text.size()) fail("malformed rational");
    den = Integer(std::string(text.substr(num_end + 1, den_end - num_end - 1)));
    if (den == 0) fail("zero denominator in");
  }
  if (negative) num = -num;
  return make_rational(num, den);
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

namespace detail {

// ceil(log2(|z| + 1)) equals the bit length of |z|.
inline long bit_length(const Integer& z) {
  if (z == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

}  // namespace detail

/// Encoding length 1 + ceil(log2(|p|+1)) + ceil(log2(|q|+1)) of p/q in lowest terms.
inline long encoding_length(const Rational& x) {
  Integer num = abs(x.get_num());
  return 1 + detail::bit_length(num) + detail::bit_length(x.get_den());
}

}  // namespace polyq
