#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nilcantor/heisenberg.hpp"
#include "nilcantor/prime_set.hpp"
#include "nilcantor/steinitz.hpp"

namespace nilcantor {

using Level = std::uint64_t;

enum class Coord : std::size_t { A = 0, B = 1, C = 2 };
inline constexpr std::array<Coord, 3> kCoords = {Coord::A, Coord::B, Coord::C};
char coord_name(Coord c);

/// Exponent e(l) = 0 for l < start, else base + slope·l.
struct CoordinateSchedule {
  Level start = 0;
  std::uint64_t base = 0;
  std::uint64_t slope = 0;

  std::uint64_t at(Level level) const { return level < start ? 0 : base + slope * level; }
  bool is_zero() const { return base == 0 && slope == 0; }

  friend bool operator==(const CoordinateSchedule&, const CoordinateSchedule&) = default;
};

using Exponents = std::array<std::uint64_t, 3>;

struct PrimeSchedule {
  Prime prime = 0;
  std::array<CoordinateSchedule, 3> coords{};

  Exponents at(Level level) const { return {coords[0].at(level), coords[1].at(level), coords[2].at(level)}; }
  bool unbounded(Coord c) const { return coords[static_cast<std::size_t>(c)].slope > 0; }
  bool any_unbounded() const { return coords[0].slope > 0 || coords[1].slope > 0 || coords[2].slope > 0; }
  /// Exponents once every coordinate has started, when all slopes are zero.
  Exponents eventual_bases() const { return {coords[0].base, coords[1].base, coords[2].base}; }
};

/// Indexed family: q_i, the i-th member of `set` outside the explicit
/// primes, enters at level i with constant exponents `base`.
struct FamilySchedule {
  PrimeSet set = PrimeSet::all();
  Exponents base{};
};

/// A descending chain of box subgroups given by exponent schedules.
class ChainSpec {
 public:
  /// Validates the box condition per prime, proper descent, and (when
  /// requested) trivial intersection of the chain.
  static ChainSpec create(std::string label, std::vector<PrimeSchedule> primes,
                          std::optional<FamilySchedule> family = std::nullopt, bool trivial_intersection = true);

  const std::string& label() const { return label_; }
  const std::vector<PrimeSchedule>& primes() const { return primes_; }
  const std::optional<FamilySchedule>& family() const { return family_; }
  bool trivial_intersection() const { return trivial_intersection_; }
  const std::set<Prime>& explicit_primes() const { return explicit_; }

  /// Largest start level among explicit schedules (at least 1).
  Level settle_level() const;

  /// q_i for the indexed family.
  Prime family_prime(std::uint64_t i) const;

  /// Every prime with a nonzero exponent at `level`, with its exponents.
  std::vector<std::pair<Prime, Exponents>> exponents_at(Level level) const;

  /// Declarative config text; parse_config(to_config()) reproduces the chain.
  std::string to_config() const;
  static ChainSpec parse_config(std::string_view text);

 private:
  std::string label_;
  std::vector<PrimeSchedule> primes_;
  std::optional<FamilySchedule> family_;
  bool trivial_intersection_ = true;
  std::set<Prime> explicit_;
};

// Built-in chains.
ChainSpec example_41(Prime p);
ChainSpec example_42(Prime p, Prime q);
/// Stable family with finite pi_f (exponents r on a, n on b and c) and
/// nonempty pi_inf (p_j enters at level j with exponent l).
ChainSpec stable_chain(const std::vector<Prime>& pi_f, const std::vector<std::uint64_t>& r,
                       const std::vector<std::uint64_t>& n, const std::vector<Prime>& pi_inf);
/// Wild family: every q_i of `family_set` outside pi_inf with exponents
/// (r, n, n); pi_inf as in the stable family.
ChainSpec wild_chain(std::uint64_t n, std::uint64_t r, const std::vector<Prime>& pi_inf,
                     const PrimeSet& family_set = PrimeSet::all());

/// Resolves `ex41(p)`, `ex42(p,q)`, `stable(pi_f;r;n;pi_inf)`,
/// `wild(n;r;pi_inf)` or `wild(n;r;pi_inf;set)`.
ChainSpec resolve_builtin(std::string_view ref);

Box box_at(const ChainSpec& chain, Level level);
Box core_at(const ChainSpec& chain, Level level);

/// Residues (a mod A, b mod B, c mod C) with C | A and C | B under the
/// twisted law (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b').
class FiniteQuotient {
 public:
  FiniteQuotient(Integer a_mod, Integer b_mod, Integer c_mod);
  /// Γ/N for a normal box N.
  static FiniteQuotient of(const Box& normal);

  const Integer& a_mod() const { return a_; }
  const Integer& b_mod() const { return b_; }
  const Integer& c_mod() const { return c_; }
  Integer order() const { return a_ * b_ * c_; }
  Box kernel() const { return Box(a_, b_, c_); }

  Element reduce(const Element& g) const;
  bool is_reduced(const Element& g) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;

  friend bool operator==(const FiniteQuotient& x, const FiniteQuotient& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }

 private:
  Integer a_, b_, c_;
};

struct ElementLess {
  bool operator()(const Element& x, const Element& y) const {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};
using ElementSet = std::set<Element, ElementLess>;

struct ClosureOptions {
  bool enumerate = false;             ///< build the element set by BFS
  std::uint64_t cap = 1'000'000;      ///< largest closure allowed
};

/// A subgroup of a FiniteQuotient, given by generators, with either a box
/// form (fast path) or an enumerated closure.
class QuotientSubgroup {
 public:
  /// Image of a box containing the quotient's kernel.
  static QuotientSubgroup from_box(const FiniteQuotient& ambient, const Box& box);
  /// BFS closure of `generators`; throws ResourceError above `cap`.
  static QuotientSubgroup generate(const FiniteQuotient& ambient, std::vector<Element> generators, std::uint64_t cap);

  const FiniteQuotient& ambient() const { return ambient_; }
  const std::vector<Element>& generators() const { return generators_; }
  const Integer& order() const { return order_; }
  const std::optional<Box>& box() const { return box_; }
  bool enumerated() const { return static_cast<bool>(closure_); }
  const ElementSet& elements() const;
  bool contains(const Element& g) const;
  bool is_trivial() const { return order_ == 1; }

  /// Subgroup equality (by box form when both have one, else by elements).
  bool same_as(const QuotientSubgroup& other) const;

 private:
  QuotientSubgroup(FiniteQuotient ambient) : ambient_(std::move(ambient)) {}

  FiniteQuotient ambient_;
  std::vector<Element> generators_;
  std::optional<Box> box_;
  std::shared_ptr<const ElementSet> closure_;
  Integer order_ = 1;
};

/// Q_l = Γ/C_l.
FiniteQuotient quotient_at(const ChainSpec& chain, Level level);

/// D_l = Γ_l/C_l inside Q_l.
QuotientSubgroup discriminant_level(const ChainSpec& chain, Level level, const ClosureOptions& options = {});

/// Residue reduction Q_{l+1} -> Q_l.
struct QuotientMap {
  FiniteQuotient source;
  FiniteQuotient target;

  Element apply(const Element& x) const;
};
QuotientMap connecting_map(const ChainSpec& chain, Level level);

/// Image of D_depth in D_level under the composed connecting maps.
QuotientSubgroup stable_image(const ChainSpec& chain, Level level, Level depth, const ClosureOptions& options = {});

/// lcm of [Γ : Γ_l] for l <= depth, and its schedule-certified limit.
struct ChainSteinitzOrder {
  Level depth = 0;
  SteinitzNumber finite;             ///< exact lcm through `depth`
  SteinitzNumber limit;              ///< with certified inf exponents and family tail
  std::set<Prime> certified_infinite;
};
ChainSteinitzOrder steinitz_order(const ChainSpec& chain, Level depth);

/// X = Γ/B with canonical representatives (a mod Ma, b mod Mb, c mod Mc).
class CosetSpace {
 public:
  explicit CosetSpace(Box box) : box_(std::move(box)) {}

  const Box& box() const { return box_; }
  Integer size() const { return box_.ma() * box_.mb() * box_.mc(); }
  bool is_canonical(const Element& x) const;
  /// All canonical representatives; throws ResourceError above `cap`.
  std::vector<Element> representatives(std::uint64_t cap = 1'000'000) const;

 private:
  Box box_;
};

/// Representative of the left coset g·B.
Element canonical_coset(const CosetSpace& space, const Element& g);
/// g·(xB), as a canonical representative.
Element act(const CosetSpace& space, const Element& g, const Element& x);

}  // namespace nilcantor
