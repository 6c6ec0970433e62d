#include "nilcantor/dynamics.hpp"

#include <algorithm>
#include <limits>

#include "nilcantor/errors.hpp"

namespace nilcantor {
namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_sub(std::uint64_t x, std::uint64_t y) { return x > y ? x - y : 0; }

Box gcd_box(const Box& x, const Box& y) {
  return Box(gcd(x.ma(), y.ma()), gcd(x.mb(), y.mb()), gcd(x.mc(), y.mc()));
}

// Index ratios comparison/kernel per coordinate.
std::array<Integer, 3> ratios(const Box& kernel, const Box& comparison) {
  return {comparison.ma() / kernel.ma(), comparison.mb() / kernel.mb(), comparison.mc() / kernel.mc()};
}

std::uint64_t max_exponent(const ChainSpec& chain, Level level) {
  std::uint64_t out = 0;
  for (const auto& [p, e] : chain.exponents_at(level)) out = std::max({out, e[0], e[1], e[2]});
  return out;
}

// Exponents of core(box) once every schedule has started, kInf when sloped.
Exponents eventual_core(const PrimeSchedule& s) {
  auto e = [&](std::size_t c) { return s.coords[c].slope > 0 ? kInf : s.coords[c].base; };
  return {std::max(e(0), e(2)), std::max(e(1), e(2)), e(2)};
}

// Exponents of trivial_action_kernel(ℓ, D) at p as D grows.
Exponents kernel_limit(const PrimeSchedule& s, Level level) {
  const auto outer = s.at(level);
  const auto& a = s.coords[0];
  const auto& b = s.coords[1];
  const auto& c = s.coords[2];
  Exponents out;
  out[0] = (a.slope > 0 || c.slope > 0) ? kInf : std::max(a.base, saturating_sub(c.base, outer[1]));
  out[1] = (b.slope > 0 || c.slope > 0) ? kInf : std::max(b.base, saturating_sub(c.base, outer[0]));
  out[2] = c.slope > 0 ? kInf : c.base;
  return out;
}

Exponents eventual_fixer(const PrimeSchedule& s, Level level) {
  auto core = eventual_core(s);
  auto lim = kernel_limit(s, level);
  return {std::min(core[0], lim[0]), std::min(core[1], lim[1]), std::min(core[2], lim[2])};
}

std::uint64_t exponent_gap(const Exponents& coarse, const Exponents& fine) {
  std::uint64_t gap = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    // Infinite entries come from slopes and so agree across levels.
    if (coarse[c] == kInf || fine[c] == kInf) continue;
    gap += saturating_sub(coarse[c], fine[c]);
  }
  return gap;
}

}  // namespace

std::string to_string(EvidenceGrade grade) {
  return grade == EvidenceGrade::ScheduleCertified ? "schedule-certified" : "finite-depth";
}

std::string verdict_name(const Verdict& verdict) {
  struct Namer {
    std::string operator()(const StableCertified&) const { return "StableCertified"; }
    std::string operator()(const WildEvidence&) const { return "WildEvidence"; }
    std::string operator()(const FreeCertified&) const { return "FreeCertified"; }
    std::string operator()(const NotFree&) const { return "NotFree"; }
    std::string operator()(const Inconclusive&) const { return "Inconclusive"; }
  };
  return std::visit(Namer{}, verdict);
}

Box trivial_action_kernel(const ChainSpec& chain, Level cylinder, Level depth) {
  if (depth < 1 || depth < cylinder) throw ContractError("trivial_action_kernel needs depth >= cylinder level and depth >= 1");
  if (cylinder == 0) return core_at(chain, depth);
  return relative_core(box_at(chain, cylinder), box_at(chain, depth));
}

Box completion_fixer(const ChainSpec& chain, Level cylinder, Level depth) {
  if (depth < 1 || depth < cylinder) throw ContractError("completion_fixer needs depth >= cylinder level and depth >= 1");
  // Past this depth every sloped exponent of the kernel exceeds the matching
  // exponent of C_d, and every constant one has settled.
  Level far = std::max({depth, chain.settle_level(), max_exponent(chain, depth) + max_exponent(chain, std::max<Level>(cylinder, 1))}) + 1;
  return gcd_box(trivial_action_kernel(chain, cylinder, far), core_at(chain, depth));
}

bool kernel_map_surjective(const ChainSpec& chain, Level cylinder, Level depth) {
  return gcd_box(trivial_action_kernel(chain, cylinder, depth + 1), core_at(chain, depth)) ==
         trivial_action_kernel(chain, cylinder, depth);
}

KernelReport lqa_witness(const ChainSpec& chain, Level level, Level level_prime, Level depth) {
  if (!(level >= 1 && level_prime > level && depth >= level_prime))
    throw ContractError("lqa_witness needs depth >= level' > level >= 1");
  KernelReport r;
  r.level = level;
  r.level_prime = level_prime;
  r.depth = depth;
  r.kernel_box = trivial_action_kernel(chain, level_prime, depth);
  r.comparison_box = trivial_action_kernel(chain, level, depth);
  auto rs = ratios(r.kernel_box, r.comparison_box);
  r.kernel_order = rs[0] * rs[1] * rs[2];
  if (r.kernel_order > 1) {
    std::size_t widest = 0;
    for (std::size_t c = 1; c < 3; ++c) {
      if (rs[c] > rs[widest]) widest = c;
    }
    Element w;
    if (widest == 0) w.a = r.kernel_box.ma();
    if (widest == 1) w.b = r.kernel_box.mb();
    if (widest == 2) w.c = r.kernel_box.mc();
    r.witness = w;
  }
  auto ls = ratios(completion_fixer(chain, level_prime, depth), completion_fixer(chain, level, depth));
  r.limit_order = ls[0] * ls[1] * ls[2];
  r.surjective = kernel_map_surjective(chain, level, depth) && kernel_map_surjective(chain, level_prime, depth);
  return r;
}

std::uint64_t family_defect(const ChainSpec& chain) {
  const auto& family = chain.family();
  if (!family) return 0;
  const auto& b = family->base;
  Exponents core{std::max(b[0], b[2]), std::max(b[1], b[2]), b[2]};
  // Kernel exponents at q_i when q_i is already in the outer box, and when
  // it is not yet.
  Exponents active{std::max(b[0], saturating_sub(b[2], b[1])), std::max(b[1], saturating_sub(b[2], b[0])), b[2]};
  Exponents inactive{std::max(b[0], b[2]), std::max(b[1], b[2]), b[2]};
  std::uint64_t defect = 0;
  for (std::size_t c = 0; c < 3; ++c) defect += std::min(core[c], inactive[c]) - std::min(core[c], active[c]);
  return defect;
}

Integer eventual_kernel_order(const ChainSpec& chain, Level level, Level level_prime) {
  if (!(level >= 1 && level_prime > level)) throw ContractError("eventual_kernel_order needs level' > level >= 1");
  Integer order = 1;
  for (const auto& s : chain.primes()) {
    order *= pow(s.prime, exponent_gap(eventual_fixer(s, level), eventual_fixer(s, level_prime)));
  }
  if (std::uint64_t delta = family_defect(chain)) {
    for (Level i = level + 1; i <= level_prime; ++i) order *= pow(chain.family_prime(i), delta);
  }
  return order;
}

Level explicit_stabilization_level(const ChainSpec& chain) {
  std::uint64_t top = 0;
  for (const auto& s : chain.primes()) {
    for (const auto& c : s.coords) top = std::max(top, c.base);
  }
  // Kernel limits move only while an outer exponent is still below a
  // constant c base; beyond this level nothing moves.
  const Level last = chain.settle_level() + top + 1;
  Level stable_from = 1;
  for (Level l = 1; l <= last; ++l) {
    for (const auto& s : chain.primes()) {
      if (eventual_fixer(s, l) != eventual_fixer(s, l + 1)) stable_from = l + 1;
    }
  }
  return stable_from;
}

Certificate wildness_certificate(const ChainSpec& chain, Level max_cylinder, Level max_depth) {
  if (!(max_depth >= max_cylinder && max_cylinder >= 2))
    throw ContractError("wildness_certificate needs d_max >= l_max >= 2");
  Certificate cert;
  cert.chain_label = chain.label();
  cert.parameters = {{"l_max", std::to_string(max_cylinder)}, {"d_max", std::to_string(max_depth)}};

  for (Level l = 1; l < max_cylinder; ++l) {
    for (Level lp = l + 1; lp <= max_cylinder; ++lp) {
      PairEvidence pair;
      pair.level = l;
      pair.level_prime = lp;
      pair.eventual_order = eventual_kernel_order(chain, l, lp);
      bool persistent = true;
      for (Level d = lp; d <= max_depth; ++d) {
        auto r = lqa_witness(chain, l, lp, d);
        persistent = persistent && r.surjective && r.kernel_order == r.limit_order &&
                     r.kernel_order == pair.eventual_order;
        pair.by_depth.push_back(std::move(r));
      }
      pair.persistent = persistent;
      cert.pairs.push_back(std::move(pair));
    }
  }

  const std::uint64_t delta = family_defect(chain);
  if (delta > 0) {
    for (Level l = 1; l < max_cylinder; ++l) {
      bool found = std::any_of(cert.pairs.begin(), cert.pairs.end(), [&](const PairEvidence& p) {
        return p.level == l && p.persistent && p.eventual_order > 1;
      });
      if (!found) {
        cert.verdict = Inconclusive{"family defect is positive but no persistent nontrivial kernel was found for l=" +
                                    std::to_string(l)};
        return cert;
      }
    }
    cert.verdict = WildEvidence{delta};
    cert.grade = EvidenceGrade::ScheduleCertified;
    return cert;
  }

  const Level stable_from = explicit_stabilization_level(chain);
  if (stable_from >= max_cylinder) {
    cert.verdict = Inconclusive{"explicit schedules settle only from level " + std::to_string(stable_from) +
                                ", which leaves no tested pair"};
    return cert;
  }
  for (const auto& pair : cert.pairs) {
    if (pair.level < stable_from) continue;
    bool trivial = pair.eventual_order == 1 && std::all_of(pair.by_depth.begin(), pair.by_depth.end(), [](const auto& r) {
                     return r.limit_order == 1;
                   });
    if (!trivial) {
      cert.verdict = Inconclusive{"completion kernel is nontrivial for (l,l')=(" + std::to_string(pair.level) + "," +
                                  std::to_string(pair.level_prime) + ")"};
      return cert;
    }
  }
  cert.verdict = StableCertified{stable_from, max_depth};
  cert.grade = EvidenceGrade::ScheduleCertified;
  return cert;
}

std::optional<Level> escape_depth(const ChainSpec& chain, Level cylinder, const Element& g, Level max_depth) {
  if (cylinder < 1 || max_depth < cylinder) throw ContractError("escape_depth needs d_max >= cylinder level >= 1");
  for (Level d = cylinder; d <= max_depth; ++d) {
    if (!trivial_action_kernel(chain, cylinder, d).contains(g)) return d;
  }
  return std::nullopt;
}

namespace {

bool kernel_unbounded(const ChainSpec& chain, Coord c) {
  const std::size_t i = static_cast<std::size_t>(c);
  for (const auto& s : chain.primes()) {
    if (s.coords[i].slope > 0 || s.coords[2].slope > 0) return true;
  }
  if (const auto& f = chain.family()) return std::max(f->base[i], f->base[2]) > 0;
  return false;
}

const Integer& modulus_of(const Box& box, Coord c) {
  switch (c) {
    case Coord::A: return box.ma();
    case Coord::B: return box.mb();
    default: return box.mc();
  }
}

Element along(Coord c, const Integer& v) {
  Element g;
  if (c == Coord::A) g.a = v;
  if (c == Coord::B) g.b = v;
  if (c == Coord::C) g.c = v;
  return g;
}

}  // namespace

Certificate freeness_certificate(const ChainSpec& chain, Level cylinder, std::uint64_t radius, Level max_depth) {
  if (radius < 1 || cylinder < 1 || max_depth < cylinder)
    throw ContractError("freeness_certificate needs R >= 1 and d_max >= cylinder level >= 1");
  Certificate cert;
  cert.chain_label = chain.label();
  cert.parameters = {{"level", std::to_string(cylinder)},
                     {"radius", std::to_string(radius)},
                     {"d_max", std::to_string(max_depth)}};

  std::vector<Box> kernels;
  for (Level d = cylinder; d <= max_depth; ++d) kernels.push_back(trivial_action_kernel(chain, cylinder, d));

  // A nonidentity g escapes at the least escape depth of its nonzero
  // coordinates, so the slowest element of the ball has one nonzero
  // coordinate and single-coordinate tables decide the whole ball.
  bool all_escape = true;
  bool all_unbounded = true;
  Level slowest_depth = 0;
  Element slowest;
  for (Coord c : kCoords) {
    CoordinateEscape esc;
    esc.coordinate = c;
    esc.unbounded = kernel_unbounded(chain, c);
    for (const auto& k : kernels) esc.kernel_moduli.push_back(modulus_of(k, c));
    Level worst = 0;
    Element worst_element;
    for (std::uint64_t v = 1; v <= radius && !esc.stuck_value; ++v) {
      Integer value(std::to_string(v));
      std::optional<Level> at;
      for (std::size_t j = 0; j < kernels.size(); ++j) {
        if (!divides(esc.kernel_moduli[j], value)) {
          at = cylinder + j;
          break;
        }
      }
      if (!at) {
        esc.stuck_value = v;
      } else if (*at > worst) {
        worst = *at;
        worst_element = along(c, value);
      }
    }
    if (!esc.stuck_value) esc.max_escape_depth = worst;
    all_escape = all_escape && !esc.stuck_value;
    all_unbounded = all_unbounded && esc.unbounded;
    if (!esc.stuck_value && worst > slowest_depth) {
      slowest_depth = worst;
      slowest = worst_element;
    }
    cert.escapes.push_back(std::move(esc));
  }

  if (all_escape && all_unbounded) {
    cert.verdict = FreeCertified{radius, max_depth, slowest_depth, slowest};
    cert.grade = EvidenceGrade::ScheduleCertified;
    return cert;
  }
  for (const auto& esc : cert.escapes) {
    if (esc.unbounded) continue;
    // The deepest modulus is a multiple of every shallower one.
    Element witness = along(esc.coordinate, esc.kernel_moduli.back());
    bool fixed_everywhere =
        std::all_of(kernels.begin(), kernels.end(), [&](const Box& k) { return k.contains(witness); });
    if (fixed_everywhere) {
      cert.verdict = NotFree{witness, esc.coordinate};
      cert.grade = EvidenceGrade::ScheduleCertified;
      return cert;
    }
  }
  if (!all_unbounded) {
    cert.verdict = Inconclusive{"a kernel coordinate is bounded but no witness is fixed at every tested depth"};
  } else {
    cert.verdict = Inconclusive{"some element of the ball does not escape by depth " + std::to_string(max_depth)};
  }
  return cert;
}

DiscriminantLimitReport discriminant_limit_report(const ChainSpec& chain, Level level, Level max_depth,
                                                  const ClosureOptions& options) {
  if (level < 1 || max_depth < level) throw ContractError("discriminant_limit_report needs max_depth >= level >= 1");
  DiscriminantLimitReport out;
  out.level = level;
  for (Level d = level; d <= max_depth; ++d) {
    auto image = stable_image(chain, level, d, options);
    Box fast = *stable_image(chain, level, d).box();
    if (image.order() != index_in(fast, quotient_at(chain, level).kernel()))
      throw std::logic_error("stable_image closure disagrees with its box form");
    out.images.push_back(fast);
    out.orders.push_back(image.order());
  }
  // Deep enough that every sloped exponent of box_at exceeds C_level's.
  Level far = std::max({max_depth, chain.settle_level(), max_exponent(chain, level)}) + 1;
  out.limit_image = *stable_image(chain, level, far).box();
  out.limit_order = index_in(out.limit_image, quotient_at(chain, level).kernel());
  bool settled = out.images.size() < 2 || out.images[out.images.size() - 2] == out.images.back();
  out.stabilized = settled && out.images.back() == out.limit_image;
  return out;
}

}  // namespace nilcantor
