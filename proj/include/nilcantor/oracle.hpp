#pragma once

// Brute-force reference implementations.  They work on int64 3x3 matrices
// and share nothing with the closed forms beyond the Element type.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nilcantor/heisenberg.hpp"
#include "nilcantor/towers.hpp"

namespace nilcantor::oracle {

struct OracleBudget {
  std::uint64_t max_modulus = 12;
  std::uint64_t max_group_order = 1'000'000;
  std::uint64_t random_trials = 1000;
  std::uint64_t seed = 0x5eed;

  /// Overrides from `key=value,...` with keys max_modulus, max_group_order,
  /// random_trials, seed.
  static OracleBudget parse(std::string_view text);
  /// Defaults overridden by the NILCANTOR_ORACLE_BUDGET environment variable.
  static OracleBudget from_environment();

  void validate() const;
};

/// Intersection of the conjugates x·B·x⁻¹ over conjugators (x, y) ∈ [0, Mc)².
Box core_by_enumeration(const Box& box, const OracleBudget& budget = {});

/// Intersection of the conjugates of `inner` over conjugators drawn from
/// `outer`.
Box relative_core_by_enumeration(const Box& outer, const Box& inner, const OracleBudget& budget = {});

/// Elements of Γ/N fixing every coset x·inner with x ∈ outer, where N is the
/// normal box (Ia·Ic, Ib·Ic, Ic) and elements are reduced mod N.
ElementSet fixing_scan(const Box& outer, const Box& inner, const OracleBudget& budget = {});

/// Elements of Q_d fixing U_ℓ pointwise at depth d (ℓ = 0: all of X_d).
ElementSet fixing_scan(const ChainSpec& chain, Level cylinder, Level depth, const OracleBudget& budget = {});

/// The grid [0, 2Ma) × [0, 2Mb) × [0, 2Mc) split into left cosets of a box
/// by pairwise membership tests.
class CosetPartition {
 public:
  CosetPartition(const Box& box, const OracleBudget& budget = {});

  const Box& box() const { return box_; }
  const std::vector<Element>& points() const { return points_; }
  /// Class index of points()[i].
  const std::vector<std::size_t>& classes() const { return classes_; }
  /// First grid point of each class.
  const std::vector<Element>& representatives() const { return reps_; }
  std::size_t class_count() const { return reps_.size(); }

  /// Class of an arbitrary element (which need not lie on the grid).
  std::optional<std::size_t> class_of(const Element& g) const;
  /// Position of a grid point in points(), if it lies on the grid.
  std::optional<std::size_t> grid_index(const Element& g) const;

 private:
  Box box_;
  std::vector<Element> points_;
  std::vector<std::size_t> classes_;
  std::vector<Element> reps_;
  std::vector<std::array<std::int64_t, 3>> rep_inverses_;  // (a, b, c) entries of each rep's inverse matrix
};

/// Agreement of every closed form with the oracles on one nested pair.
struct EquivalenceCheck {
  Box outer = Box::whole();
  Box inner = Box::whole();
  bool core = false;             ///< core(inner)
  bool relative_core = false;    ///< relative_core(outer, inner)
  bool kernel = false;           ///< relative_core as a pointwise fixer
  bool canonical_coset = false;  ///< canonical_coset(inner, ·) on the grid

  bool ok() const { return core && relative_core && kernel && canonical_coset; }
};
EquivalenceCheck check_closed_forms(const Box& outer, const Box& inner, const OracleBudget& budget = {});
/// The outer-dependent half: relative_core and kernel only.
EquivalenceCheck check_pair(const Box& outer, const Box& inner, const OracleBudget& budget = {});
/// The inner-only half: core and canonical_coset only.
EquivalenceCheck check_inner(const Box& inner, const OracleBudget& budget = {});

/// Every valid box with all moduli <= max_modulus.
std::vector<Box> all_boxes(std::uint64_t max_modulus);

/// Seeded nested pairs (outer ⊇ inner) with inner moduli <= max_modulus.
std::vector<std::pair<Box, Box>> random_nested_pairs(std::uint64_t count, std::uint64_t max_modulus,
                                                     std::uint64_t seed);

}  // namespace nilcantor::oracle
