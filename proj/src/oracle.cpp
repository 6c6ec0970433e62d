#include "nilcantor/oracle.hpp"

#include <array>
#include <map>
#include <set>
#include <cstdlib>
#include <random>
#include <string>

#include "nilcantor/errors.hpp"

namespace nilcantor::oracle {
namespace {

// Upper unitriangular integer matrix, stored in full.
using Matrix = std::array<std::array<std::int64_t, 3>, 3>;

Matrix to_matrix(std::int64_t a, std::int64_t b, std::int64_t c) {
  return {{{1, a, c}, {0, 1, b}, {0, 0, 1}}};
}

Matrix to_matrix(const Element& g) { return to_matrix(to_int64(g.a), to_int64(g.b), to_int64(g.c)); }

Matrix mul(const Matrix& x, const Matrix& y) {
  Matrix z{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) z[i][j] += x[i][k] * y[k][j];
  return z;
}

// Inverse of an upper unitriangular 3x3 matrix by back substitution.
Matrix inv(const Matrix& m) {
  Matrix r{};
  r[0][0] = r[1][1] = r[2][2] = 1;
  r[1][2] = -m[1][2];
  r[0][1] = -m[0][1];
  r[0][2] = m[0][1] * m[1][2] - m[0][2];
  return r;
}

struct Moduli {
  std::int64_t a, b, c;
};

Moduli small(const Box& box) {
  if (!fits_int64(box.ma()) || !fits_int64(box.mb()) || !fits_int64(box.mc()))
    throw ResourceError("box moduli exceed the oracle's machine-integer range", 0);
  return {to_int64(box.ma()), to_int64(box.mb()), to_int64(box.mc())};
}

bool in_box(const Matrix& m, const Moduli& box) {
  return m[0][1] % box.a == 0 && m[1][2] % box.b == 0 && m[0][2] % box.c == 0;
}

void require_small(const Box& box, std::uint64_t limit, const char* what) {
  auto lim = Integer(std::to_string(limit));
  if (box.ma() > lim || box.mb() > lim || box.mc() > lim)
    throw ResourceError(std::string(what) + " moduli exceed the oracle budget", limit);
}

void require_order(const Integer& size, std::uint64_t limit, const char* what) {
  if (size > Integer(std::to_string(limit))) throw ResourceError(std::string(what) + " exceeds the oracle budget", limit);
}

// Reads a box off a membership predicate known to be a subgroup contained in
// `within`: the least positive member along each axis, then checks that the
// predicate agrees with that box on the whole window.
template <typename Member>
Box box_from_membership(const Moduli& within, std::int64_t span, Member member) {
  std::int64_t ra = 0, rb = 0, rc = 0;
  for (std::int64_t k = 1; k <= span && !ra; ++k)
    if (member(within.a * k, 0, 0)) ra = within.a * k;
  for (std::int64_t k = 1; k <= span && !rb; ++k)
    if (member(0, within.b * k, 0)) rb = within.b * k;
  for (std::int64_t k = 1; k <= span && !rc; ++k)
    if (member(0, 0, within.c * k)) rc = within.c * k;
  if (!ra || !rb || !rc) throw std::logic_error("oracle window too small to locate the subgroup");
  for (std::int64_t i = 0; i <= span; ++i)
    for (std::int64_t j = 0; j <= span; ++j)
      for (std::int64_t k = 0; k <= 2; ++k) {
        std::int64_t a = within.a * i, b = within.b * j, c = within.c * k;
        bool boxed = a % ra == 0 && b % rb == 0 && c % rc == 0;
        if (boxed != member(a, b, c)) throw std::logic_error("oracle found a subgroup that is not box shaped");
      }
  return Box(ra, rb, rc);
}

}  // namespace

OracleBudget OracleBudget::parse(std::string_view text) {
  OracleBudget out;
  std::string s(text);
  std::size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    auto comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ContractError("oracle budget entry '" + item + "' is not key=value");
    auto trimmed = [](std::string t) {
      const auto first = t.find_first_not_of(" \t");
      if (first == std::string::npos) return std::string{};
      return t.substr(first, t.find_last_not_of(" \t") - first + 1);
    };
    std::string key = trimmed(item.substr(0, eq)), value = trimmed(item.substr(eq + 1));
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 19)
      throw ContractError("oracle budget value for '" + key + "' must be a positive integer");
    std::uint64_t v = std::stoull(value);
    if (key == "max_modulus") out.max_modulus = v;
    else if (key == "max_group_order") out.max_group_order = v;
    else if (key == "random_trials") out.random_trials = v;
    else if (key == "seed") out.seed = v;
    else throw ContractError("unknown oracle budget key '" + key + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  out.validate();
  return out;
}

OracleBudget OracleBudget::from_environment() {
  const char* env = std::getenv("NILCANTOR_ORACLE_BUDGET");
  return env ? parse(env) : OracleBudget{};
}

void OracleBudget::validate() const {
  if (max_modulus == 0 || max_group_order == 0 || random_trials == 0)
    throw ContractError("oracle budget entries must be positive");
}

Box core_by_enumeration(const Box& box, const OracleBudget& budget) {
  require_small(box, budget.max_modulus, "core_by_enumeration");
  const Moduli m = small(box);
  // Conjugating by (x, y, z) shifts c by x·b - y·a, so residues of x and y
  // mod Mc already give every conjugate.
  auto member = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
    const Matrix g = to_matrix(a, b, c);
    for (std::int64_t x = 0; x < m.c; ++x)
      for (std::int64_t y = 0; y < m.c; ++y) {
        const Matrix h = to_matrix(x, y, 0);
        if (!in_box(mul(mul(inv(h), g), h), m)) return false;
      }
    return true;
  };
  return box_from_membership(m, m.c, member);
}

Box relative_core_by_enumeration(const Box& outer, const Box& inner, const OracleBudget& budget) {
  require_small(inner, budget.max_modulus * 6, "relative_core_by_enumeration");
  if (!outer.includes(inner)) throw ContractError(inner.to_string() + " is not contained in " + outer.to_string());
  const Moduli o = small(outer), m = small(inner);
  auto member = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
    const Matrix g = to_matrix(a, b, c);
    for (std::int64_t s = 0; s < m.c; ++s)
      for (std::int64_t t = 0; t < m.c; ++t)
        for (std::int64_t z : {std::int64_t{0}, o.c}) {
          const Matrix h = to_matrix(o.a * s, o.b * t, z);
          if (!in_box(mul(mul(inv(h), g), h), m)) return false;
        }
    return true;
  };
  return box_from_membership(m, m.c, member);
}

ElementSet fixing_scan(const Box& outer, const Box& inner, const OracleBudget& budget) {
  if (!outer.includes(inner)) throw ContractError(inner.to_string() + " is not contained in " + outer.to_string());
  const Moduli o = small(outer), m = small(inner);
  const Moduli n{m.a * m.c, m.b * m.c, m.c};
  require_order(Integer(std::to_string(n.a)) * n.b * n.c, budget.max_group_order, "fixing_scan group");
  require_order(Integer(std::to_string(m.a / o.a)) * (m.b / o.b) * (m.c / o.c) , budget.max_group_order,
                "fixing_scan coset count");
  // Coset representatives of inner inside outer.
  std::vector<Matrix> cosets;
  for (std::int64_t s = 0; s < m.a / o.a; ++s)
    for (std::int64_t t = 0; t < m.b / o.b; ++t)
      for (std::int64_t u = 0; u < m.c / o.c; ++u) cosets.push_back(to_matrix(o.a * s, o.b * t, o.c * u));
  ElementSet out;
  for (std::int64_t a = 0; a < n.a; ++a)
    for (std::int64_t b = 0; b < n.b; ++b)
      for (std::int64_t c = 0; c < n.c; ++c) {
        const Matrix g = to_matrix(a, b, c);
        if (!in_box(g, m)) continue;  // must fix the basepoint coset first
        bool fixes = true;
        for (const auto& x : cosets) {
          if (!in_box(mul(mul(inv(x), g), x), m)) {
            fixes = false;
            break;
          }
        }
        if (fixes) out.insert(Element{a, b, c});
      }
  return out;
}

ElementSet fixing_scan(const ChainSpec& chain, Level cylinder, Level depth, const OracleBudget& budget) {
  if (depth < 1 || depth < cylinder) throw ContractError("fixing_scan needs depth >= cylinder level and depth >= 1");
  const Box inner = box_at(chain, depth);
  const Box outer = cylinder == 0 ? Box::whole() : box_at(chain, cylinder);
  const Moduli m = small(inner), o = small(outer);
  // Q_d from the core moduli, found here without the closed form: the least
  // positive multiple of Ma (Mb) divisible by Mc.
  std::int64_t qa = m.a, qb = m.b;
  while (qa % m.c) qa += m.a;
  while (qb % m.c) qb += m.b;
  require_order(Integer(std::to_string(qa)) * qb * m.c, budget.max_group_order, "fixing_scan quotient");
  require_order(Integer(std::to_string(m.a / o.a)) * (m.b / o.b) * (m.c / o.c), budget.max_group_order,
                "fixing_scan coset count");
  std::vector<Matrix> cosets;
  for (std::int64_t s = 0; s < m.a / o.a; ++s)
    for (std::int64_t t = 0; t < m.b / o.b; ++t)
      for (std::int64_t u = 0; u < m.c / o.c; ++u) cosets.push_back(to_matrix(o.a * s, o.b * t, o.c * u));
  ElementSet out;
  for (std::int64_t a = 0; a < qa; ++a)
    for (std::int64_t b = 0; b < qb; ++b)
      for (std::int64_t c = 0; c < m.c; ++c) {
        const Matrix g = to_matrix(a, b, c);
        if (!in_box(g, m)) continue;
        bool fixes = true;
        for (const auto& x : cosets) {
          if (!in_box(mul(mul(inv(x), g), x), m)) {
            fixes = false;
            break;
          }
        }
        if (fixes) out.insert(Element{a, b, c});
      }
  return out;
}

CosetPartition::CosetPartition(const Box& box, const OracleBudget& budget) : box_(box) {
  const Moduli m = small(box);
  require_order(Integer(std::to_string(m.a)) * m.b * m.c, budget.max_group_order, "coset_partition");
  require_order(Integer(std::to_string(8 * m.a)) * m.b * m.c, budget.max_group_order * 8, "coset_partition grid");
  std::vector<Matrix> rep_inverses;
  for (std::int64_t a = 0; a < 2 * m.a; ++a)
    for (std::int64_t b = 0; b < 2 * m.b; ++b)
      for (std::int64_t c = 0; c < 2 * m.c; ++c) {
        const Matrix g = to_matrix(a, b, c);
        // g and r share a left coset iff r⁻¹·g lies in the box.
        std::size_t cls = reps_.size();
        for (std::size_t i = 0; i < rep_inverses.size(); ++i) {
          if (in_box(mul(rep_inverses[i], g), m)) {
            cls = i;
            break;
          }
        }
        if (cls == reps_.size()) {
          reps_.push_back(Element{a, b, c});
          rep_inverses.push_back(inv(g));
        }
        points_.push_back(Element{a, b, c});
        classes_.push_back(cls);
      }
  for (const Matrix& r : rep_inverses) rep_inverses_.push_back({r[0][1], r[1][2], r[0][2]});
}

std::optional<std::size_t> CosetPartition::class_of(const Element& g) const {
  const Moduli m = small(box_);
  const Matrix x = to_matrix(g);
  for (std::size_t i = 0; i < rep_inverses_.size(); ++i) {
    const auto& r = rep_inverses_[i];
    if (in_box(mul(to_matrix(r[0], r[1], r[2]), x), m)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> CosetPartition::grid_index(const Element& g) const {
  const Moduli m = small(box_);
  if (!fits_int64(g.a) || !fits_int64(g.b) || !fits_int64(g.c)) return std::nullopt;
  const std::int64_t a = to_int64(g.a), b = to_int64(g.b), c = to_int64(g.c);
  if (a < 0 || b < 0 || c < 0 || a >= 2 * m.a || b >= 2 * m.b || c >= 2 * m.c) return std::nullopt;
  return static_cast<std::size_t>((a * 2 * m.b + b) * 2 * m.c + c);
}

EquivalenceCheck check_pair(const Box& outer, const Box& inner, const OracleBudget& budget) {
  EquivalenceCheck out;
  out.outer = outer;
  out.inner = inner;
  const Box closed = relative_core(outer, inner);
  out.relative_core = relative_core_by_enumeration(outer, inner, budget) == closed;

  const Moduli m = small(inner);
  const ElementSet fixed = fixing_scan(outer, inner, budget);
  std::size_t expected = 0;
  bool members_ok = true;
  for (std::int64_t a = 0; a < m.a * m.c; ++a)
    for (std::int64_t b = 0; b < m.b * m.c; ++b)
      for (std::int64_t c = 0; c < m.c; ++c) {
        Element g{a, b, c};
        bool in_closed = closed.contains(g);
        expected += in_closed;
        members_ok = members_ok && in_closed == (fixed.count(g) > 0);
      }
  out.kernel = members_ok && expected == fixed.size();
  return out;
}

EquivalenceCheck check_inner(const Box& inner, const OracleBudget& budget) {
  EquivalenceCheck out;
  out.inner = inner;
  out.core = core_by_enumeration(inner, budget) == core(inner);

  const CosetPartition partition(inner, budget);
  const CosetSpace space(inner);
  std::map<std::size_t, Element> canonical_of_class;
  std::set<Element, ElementLess> seen;
  bool canonical_ok = true;
  for (std::size_t i = 0; i < partition.points().size() && canonical_ok; ++i) {
    Element rep = canonical_coset(space, partition.points()[i]);
    auto [it, fresh] = canonical_of_class.emplace(partition.classes()[i], rep);
    if (fresh) canonical_ok = seen.insert(rep).second;  // distinct classes, distinct representatives
    else canonical_ok = it->second == rep;
    const auto at = partition.grid_index(rep);
    canonical_ok = canonical_ok && space.is_canonical(rep) && at && partition.classes()[*at] == partition.classes()[i];
  }
  out.canonical_coset = canonical_ok && partition.class_count() == canonical_of_class.size() &&
                        Integer(std::to_string(partition.class_count())) == space.size();
  return out;
}

EquivalenceCheck check_closed_forms(const Box& outer, const Box& inner, const OracleBudget& budget) {
  EquivalenceCheck out = check_pair(outer, inner, budget);
  const EquivalenceCheck in = check_inner(inner, budget);
  out.core = in.core;
  out.canonical_coset = in.canonical_coset;
  return out;
}

std::vector<Box> all_boxes(std::uint64_t max_modulus) {
  std::vector<Box> out;
  for (std::uint64_t a = 1; a <= max_modulus; ++a)
    for (std::uint64_t b = 1; b <= max_modulus; ++b)
      for (std::uint64_t c = 1; c <= max_modulus; ++c) {
        if ((a * b) % c == 0) out.emplace_back(Integer(std::to_string(a)), Integer(std::to_string(b)), Integer(std::to_string(c)));
      }
  return out;
}

std::vector<std::pair<Box, Box>> random_nested_pairs(std::uint64_t count, std::uint64_t max_modulus,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> modulus(1, max_modulus);
  auto pick_divisor = [&](std::uint64_t n) {
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t k = 1; k <= n; ++k)
      if (n % k == 0) divisors.push_back(k);
    return divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)];
  };
  std::vector<std::pair<Box, Box>> out;
  while (out.size() < count) {
    std::uint64_t a = modulus(rng), b = modulus(rng), c = modulus(rng);
    if ((a * b) % c) continue;
    for (int attempt = 0;; ++attempt) {
      std::uint64_t oa = pick_divisor(a), ob = pick_divisor(b), oc = pick_divisor(c);
      if (attempt > 64) oa = ob = oc = 1;
      if ((oa * ob) % oc) continue;
      out.emplace_back(Box(Integer(std::to_string(oa)), Integer(std::to_string(ob)), Integer(std::to_string(oc))),
                       Box(Integer(std::to_string(a)), Integer(std::to_string(b)), Integer(std::to_string(c))));
      break;
    }
  }
  return out;
}

}  // namespace nilcantor::oracle
