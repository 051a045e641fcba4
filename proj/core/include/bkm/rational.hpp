#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bkm {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p", "p/q" (whitespace tolerated). Throws BkmError on bad input.
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" with q > 1 otherwise.
std::string to_string(const Rational& q);

// p/q in lowest terms (mpq_class(p, q) does not canonicalize).
Rational ratio(long p, long q);

bool is_integer(const Rational& q);

// Value of an integral rational; throws if not integral or out of range.
std::int64_t to_int64(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& v);

}  // namespace bkm
