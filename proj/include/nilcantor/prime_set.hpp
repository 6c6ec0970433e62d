#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nilcantor/primes.hpp"

namespace nilcantor {

/// Outcome of a set-size question answered at the descriptor level.
enum class Cardinality { Finite, Infinite, Unknown };

/// An infinite set of primes given by a decidable membership rule and a
/// canonical id.
///
/// Three shapes are supported:
///   * `primes` / `primes>N` - every prime, or every prime above N;
///   * `branch(<stem>;<cycle>)` - the primes whose 1-based index n has
///     n - 1 equal to the prefix code of some prefix of the infinite binary
///     word stem·cycle·cycle·... (prefix code of a length-L word w is
///     2^L - 1 + value(w));
///   * `custom(<name>)` - an opaque predicate; only equal names can be
///     compared.
///
/// Two distinct branches share exactly the prefixes before their first
/// differing bit, so branch sets are pairwise almost disjoint.
class PrimeSet {
 public:
  enum class Kind { Above, Branch, Custom };

  static PrimeSet all();
  static PrimeSet above(std::uint64_t n);
  static PrimeSet branch(std::string stem, std::string cycle);
  static PrimeSet custom(std::string name, std::function<bool(Prime)> member);

  static PrimeSet parse(std::string_view id);

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }

  bool contains(Prime p) const;

  /// Members <= bound in increasing order.
  std::vector<Prime> enumerate_up_to(Prime bound) const;

  /// The `index`-th member (1-based) after removing `excluded`.
  Prime nth(std::uint64_t index, const std::set<Prime>& excluded = {}) const;

  /// Bit `position` of the infinite branch word (Branch only).
  bool branch_bit(std::uint64_t position) const;

  friend bool operator==(const PrimeSet& x, const PrimeSet& y) { return x.id_ == y.id_; }

 private:
  PrimeSet(Kind kind, std::string id) : kind_(kind), id_(std::move(id)) {}

  Kind kind_;
  std::string id_;
  std::uint64_t floor_ = 0;                      // Above
  std::string stem_, cycle_;                     // Branch
  std::shared_ptr<const std::function<bool(Prime)>> member_;  // Custom
};

/// Size of x \ y.
Cardinality difference_size(const PrimeSet& x, const PrimeSet& y);

/// Size of x ∩ y.
Cardinality intersection_size(const PrimeSet& x, const PrimeSet& y);

}  // namespace nilcantor
