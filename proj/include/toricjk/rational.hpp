#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toricjk {

using Integer = mpz_class;
using Rational = mpq_class;

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

// Error categories map one-to-one onto CLI exit codes.

/// Malformed input: wrong shape, unparsable text, bad field value.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mathematically invalid request: non-regular level, improper weights, ...
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses "p", "-p", "p/q" (whitespace around tokens ignored) into a
/// canonical rational. Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms; den must be nonzero.
Rational make_rational(long num, long den);

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

RationalVector to_rational(const IntegerVector& v);

/// Scales a rational vector by the lcm of its denominators.
IntegerVector clear_denominators(const RationalVector& v);

/// Divides out the gcd of the entries (zero vector is returned unchanged).
IntegerVector make_primitive(IntegerVector v);

Integer gcd_of(const IntegerVector& v);

}  // namespace toricjk
