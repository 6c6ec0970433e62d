#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilcantor/heisenberg.hpp"
#include "nilcantor/towers.hpp"

namespace nilcantor {

/// Elements of Γ_ℓ acting trivially on every depth-d coset inside the
/// cylinder U_ℓ: relative_core(box_at(ℓ), box_at(d)).  ℓ = 0 means the
/// whole space and gives core_at(d).
Box trivial_action_kernel(const ChainSpec& chain, Level cylinder, Level depth);

/// Image in Q_d of the pointwise fixer of U_ℓ in the completion, i.e. of
/// the intersection over D of trivial_action_kernel(ℓ, D)·C_d.
Box completion_fixer(const ChainSpec& chain, Level cylinder, Level depth);

/// Whether reduction Q_{d+1} -> Q_d maps trivial_action_kernel(ℓ, d+1)
/// onto trivial_action_kernel(ℓ, d).
bool kernel_map_surjective(const ChainSpec& chain, Level cylinder, Level depth);

struct KernelReport {
  Level level = 0;
  Level level_prime = 0;
  Level depth = 0;
  Box kernel_box = Box::whole();      ///< trivial_action_kernel(ℓ′, d)
  Box comparison_box = Box::whole();  ///< trivial_action_kernel(ℓ, d)
  Integer kernel_order = 1;           ///< [kernel_box : comparison_box]
  std::optional<Element> witness;     ///< in kernel_box, outside comparison_box
  Integer limit_order = 1;            ///< same index between completion fixers
  bool surjective = false;            ///< kernel_map_surjective at ℓ and ℓ′
};

/// Compares the depth-d kernels of U_ℓ′ and U_ℓ.  The witness is the
/// generator along the coordinate with the largest index ratio, ties going
/// to a, then b, then c.
KernelReport lqa_witness(const ChainSpec& chain, Level level, Level level_prime, Level depth);

/// Per-prime exponent of the trivial-action kernel order once the depth is
/// large, read off the schedules.  Returns ∏_{ℓ<i≤ℓ′} q_i^δ times the
/// explicit-prime contribution.
Integer eventual_kernel_order(const ChainSpec& chain, Level level, Level level_prime);

/// δ: exponent contributed by each family prime q_i with ℓ < i ≤ ℓ′ to the
/// eventual kernel order.  Zero when the chain has no family.
std::uint64_t family_defect(const ChainSpec& chain);

/// Least ℓ₁ such that the explicit primes contribute nothing to the
/// eventual kernel order of any pair ℓ₁ ≤ ℓ < ℓ′.
Level explicit_stabilization_level(const ChainSpec& chain);

enum class EvidenceGrade { FiniteDepth, ScheduleCertified };
std::string to_string(EvidenceGrade grade);

struct StableCertified {
  Level stable_from = 1;
  Level tested_depth = 0;
};
struct WildEvidence {
  std::uint64_t defect = 0;
};
struct FreeCertified {
  std::uint64_t radius = 0;
  Level depth = 0;
  Level max_escape_depth = 0;
  Element slowest;  ///< an element escaping at max_escape_depth
};
struct NotFree {
  Element witness;
  Coord coordinate = Coord::A;
};
struct Inconclusive {
  std::string reason;
};
using Verdict = std::variant<StableCertified, WildEvidence, FreeCertified, NotFree, Inconclusive>;

std::string verdict_name(const Verdict& verdict);

/// All kernel reports for one pair (ℓ, ℓ′) across the tested depths.
struct PairEvidence {
  Level level = 0;
  Level level_prime = 0;
  std::vector<KernelReport> by_depth;
  Integer eventual_order = 1;
  bool persistent = false;
};

/// Escape depths along one coordinate for values 1..R.
struct CoordinateEscape {
  Coord coordinate = Coord::A;
  std::vector<Integer> kernel_moduli;       ///< per tested depth
  std::optional<Level> max_escape_depth;    ///< nullopt if some value never escapes
  std::optional<std::uint64_t> stuck_value; ///< smallest value that never escapes
  bool unbounded = false;                   ///< schedule-level check
};

struct Certificate {
  Verdict verdict;
  EvidenceGrade grade = EvidenceGrade::FiniteDepth;
  std::string chain_label;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<PairEvidence> pairs;         // wildness
  std::vector<CoordinateEscape> escapes;   // freeness
};

/// Pre: d_max ≥ ℓ_max ≥ 2.  Tests every pair 1 ≤ ℓ < ℓ′ ≤ ℓ_max at every
/// depth ℓ′..d_max.
Certificate wildness_certificate(const ChainSpec& chain, Level max_cylinder, Level max_depth);

/// Pre: R ≥ 1, d_max ≥ ℓ ≥ 1.
Certificate freeness_certificate(const ChainSpec& chain, Level cylinder, std::uint64_t radius, Level max_depth);

/// First depth in [ℓ, d_max] at which g leaves trivial_action_kernel(ℓ, d).
std::optional<Level> escape_depth(const ChainSpec& chain, Level cylinder, const Element& g, Level max_depth);

struct DiscriminantLimitReport {
  Level level = 0;
  std::vector<Box> images;     ///< stable_image(ℓ, d) for d = ℓ..max_depth
  std::vector<Integer> orders;
  Box limit_image = Box::whole();
  Integer limit_order = 1;
  bool stabilized = false;
};

DiscriminantLimitReport discriminant_limit_report(const ChainSpec& chain, Level level, Level max_depth,
                                                  const ClosureOptions& options = {});

}  // namespace nilcantor
