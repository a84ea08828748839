// Exact rational arithmetic used for every audited quantity in bfmd.
// Backed by boost::multiprecision (arbitrary precision, canonical lowest
// terms, positive denominator); this header adds parsing, formatting and
// integer rounding helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace bfmd {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parse "p/q" or "p" (optional leading '-'). Returns nullopt on malformed
/// input or a zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical "p/q" encoding (denominator always present, e.g. "3/1").
std::string format_rational(const Rational& r);

/// Largest integer <= r.
Int floor_rat(const Rational& r);

/// Smallest integer >= r.
Int ceil_rat(const Rational& r);

/// floor(log2(n)) for n >= 1.
int floor_log2(Int n);

/// ceil(log2(n)) for n >= 1 (0 for n == 1).
int ceil_log2(Int n);

}  // namespace bfmd
