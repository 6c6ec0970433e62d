#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nilcantor/integer.hpp"
#include "nilcantor/prime_set.hpp"
#include "nilcantor/primes.hpp"

namespace nilcantor {

/// A prime exponent in {0, 1, 2, ..., inf}.
class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr explicit Multiplicity(std::uint64_t value) : value_(value) {}

  static constexpr Multiplicity infinity() {
    Multiplicity m;
    m.infinite_ = true;
    return m;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }
  std::uint64_t value() const;

  std::string to_string() const;

  friend Multiplicity operator+(Multiplicity x, Multiplicity y);
  friend Multiplicity max(Multiplicity x, Multiplicity y) { return x < y ? y : x; }

  friend constexpr bool operator==(const Multiplicity&, const Multiplicity&) = default;
  friend constexpr std::strong_ordering operator<=>(const Multiplicity& x, const Multiplicity& y) {
    if (x.infinite_ != y.infinite_) return x.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return x.value_ <=> y.value_;
  }

 private:
  bool infinite_ = false;
  std::uint64_t value_ = 0;
};

/// Infinitely many further primes, each with the same finite exponent:
/// every member of `set` that is not an explicit key carries `exponent`.
struct Tail {
  PrimeSet set;
  std::uint64_t exponent = 1;

  std::string id() const { return set.id() + "^" + std::to_string(exponent); }
  static Tail parse(std::string_view id);

  friend bool operator==(const Tail& x, const Tail& y) { return x.set == y.set && x.exponent == y.exponent; }
};

/// A supernatural number: finitely many explicit prime exponents (finite or
/// infinite) plus an optional tail schedule.
///
/// The representation is normalized so that equal values compare equal:
/// explicit finite entries that coincide with the tail are folded into it.
/// Text form: `2^3 * 3 * 5^inf [tail:primes>5^1]`, factors in increasing
/// prime order, `1` for the empty product.
class SteinitzNumber {
 public:
  SteinitzNumber() = default;

  static SteinitzNumber from_factors(const std::map<Prime, Multiplicity>& factors,
                                     std::optional<Tail> tail = std::nullopt);
  static SteinitzNumber prime_power(Prime p, Multiplicity m);
  static SteinitzNumber from_tail(Tail tail);

  /// Factor a positive integer by trial division.
  static SteinitzNumber from_integer(const Integer& n);
  /// Factor a positive integer whose prime support lies in `support`.
  static SteinitzNumber from_integer(const Integer& n, const std::vector<Prime>& support);

  static SteinitzNumber parse(std::string_view text);
  std::string to_string() const;

  Multiplicity multiplicity(Prime p) const;

  const std::map<Prime, std::uint64_t>& finite_part() const { return finite_; }
  const std::set<Prime>& infinite_primes() const { return infinite_; }
  const std::optional<Tail>& tail() const { return tail_; }

  /// All primes carried explicitly (finite or infinite).
  std::set<Prime> explicit_primes() const;

  /// Copy with the given primes raised to exponent inf.  Callers use this
  /// only for primes whose unboundedness is certified by a schedule.
  SteinitzNumber with_infinite(const std::set<Prime>& primes) const;

  friend bool operator==(const SteinitzNumber& x, const SteinitzNumber& y) {
    return x.finite_ == y.finite_ && x.infinite_ == y.infinite_ && x.tail_ == y.tail_;
  }

 private:
  void normalize();

  std::map<Prime, std::uint64_t> finite_;
  std::set<Prime> infinite_;
  std::optional<Tail> tail_;
};

/// Pointwise exponent sum; inf absorbs.  Two tails must share a prime set.
SteinitzNumber product(const SteinitzNumber& x, const SteinitzNumber& y);

/// Pointwise exponent maximum.  Two tails must share a prime set.
SteinitzNumber lcm(const SteinitzNumber& x, const SteinitzNumber& y);

/// Primes of a spectrum up to an inspection bound.
struct PrimeSetView {
  std::vector<Prime> enumerated;
  bool complete = true;  ///< false when members above the bound exist
};

struct PrimeSpectra {
  PrimeSetView pi;
  PrimeSetView pi_f;
  PrimeSetView pi_inf;
  std::uint64_t enumeration_bound = 0;
};

PrimeSpectra spectra(const SteinitzNumber& xi, std::uint64_t bound);

/// Whether m·x = m'·y for finite m, m' >= 1.  Decided from the exponent
/// characterization: equal inf-sets and agreement at all but finitely many
/// primes.  `bound` must cover every explicit prime of both operands; tails
/// beyond it are compared at the schedule level, and an UndecidableError is
/// raised when that comparison is not possible.
bool asymptotically_equivalent(const SteinitzNumber& x, const SteinitzNumber& y, std::uint64_t bound);

/// Type order: inf-set containment plus pointwise <= at all but finitely
/// many primes.
bool type_leq(const SteinitzNumber& x, const SteinitzNumber& y, std::uint64_t bound);

/// `count` pairwise almost-disjoint infinite prime sets built from distinct
/// branches of the binary tree.  Any two share at most `depth` members.
std::vector<PrimeSet> almost_disjoint_spectra(std::uint64_t count, std::uint64_t depth);

}  // namespace nilcantor
