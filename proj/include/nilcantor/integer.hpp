#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nilcantor {

/// Unbounded signed integer used for every group coordinate and modulus.
using Integer = mpz_class;

Integer parse_integer(std::string_view text);
std::string to_string(const Integer& value);

Integer gcd(const Integer& x, const Integer& y);
Integer lcm(const Integer& x, const Integer& y);

/// True iff `divisor` divides `value`; zero divides only zero.
bool divides(const Integer& divisor, const Integer& value);

/// Least nonnegative residue of `value` modulo a positive `modulus`.
Integer mod_floor(const Integer& value, const Integer& modulus);

Integer pow(std::uint64_t base, std::uint64_t exponent);

/// Exponent of the prime `p` in a nonzero `value`.
std::uint64_t valuation(const Integer& value, std::uint64_t p);

/// Value as int64 when it fits, for small-grid enumeration.
bool fits_int64(const Integer& value);
std::int64_t to_int64(const Integer& value);

}  // namespace nilcantor
