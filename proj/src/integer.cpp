#include "nilcantor/integer.hpp"

#include <cctype>

#include "nilcantor/errors.hpp"

namespace nilcantor {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw ContractError("expected an integer, got '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ContractError("expected an integer, got '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

Integer gcd(const Integer& x, const Integer& y) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

Integer lcm(const Integer& x, const Integer& y) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

bool divides(const Integer& divisor, const Integer& value) {
  if (divisor == 0) return value == 0;
  return mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t()) != 0;
}

Integer mod_floor(const Integer& value, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Integer pow(std::uint64_t base, std::uint64_t exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

std::uint64_t valuation(const Integer& value, std::uint64_t p) {
  if (value == 0) throw ContractError("valuation of zero is undefined");
  Integer prime(std::to_string(p));
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), value.get_mpz_t(), prime.get_mpz_t());
}

bool fits_int64(const Integer& value) {
  static const Integer lo(std::to_string(INT64_MIN));
  static const Integer hi(std::to_string(INT64_MAX));
  return value >= lo && value <= hi;
}

std::int64_t to_int64(const Integer& value) {
  if (!fits_int64(value)) throw ContractError("integer " + to_string(value) + " exceeds 64 bits");
  return std::stoll(value.get_str(10));
}

}  // namespace nilcantor
