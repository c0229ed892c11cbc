#ifndef DGLFORGE_RATIONAL_HPP
#define DGLFORGE_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>
#include <string_view>

namespace dglforge {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p" or "p/q" with an optional leading sign. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

}  // namespace dglforge

#endif  // DGLFORGE_RATIONAL_HPP
