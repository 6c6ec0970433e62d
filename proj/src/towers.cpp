#include "nilcantor/towers.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "nilcantor/errors.hpp"

namespace nilcantor {

char coord_name(Coord c) { return "abc"[static_cast<std::size_t>(c)]; }

// ---------------------------------------------------------------------------
// ChainSpec

ChainSpec ChainSpec::create(std::string label, std::vector<PrimeSchedule> primes, std::optional<FamilySchedule> family,
                            bool trivial_intersection) {
  ChainSpec chain;
  chain.label_ = std::move(label);
  chain.trivial_intersection_ = trivial_intersection;
  std::sort(primes.begin(), primes.end(), [](const auto& x, const auto& y) { return x.prime < y.prime; });
  for (const auto& s : primes) {
    if (!is_prime(s.prime)) throw ContractError("schedule prime " + std::to_string(s.prime) + " is not prime");
    if (!chain.explicit_.insert(s.prime).second)
      throw ContractError("prime " + std::to_string(s.prime) + " has two schedules");
    if (std::all_of(s.coords.begin(), s.coords.end(), [](const auto& c) { return c.is_zero(); }))
      throw ContractError("prime " + std::to_string(s.prime) + " has an all-zero schedule");
  }
  chain.primes_ = std::move(primes);

  if (family) {
    const auto& b = family->base;
    if (b[0] + b[1] + b[2] == 0) throw ContractError("indexed family has all-zero exponents");
    if (b[2] > b[0] + b[1]) throw ContractError("indexed family violates the box condition: c > a + b");
  }
  chain.family_ = std::move(family);

  const Level settle = chain.settle_level();
  for (const auto& s : chain.primes_) {
    for (Level l = 1; l <= settle; ++l) {
      auto e = s.at(l);
      if (e[2] > e[0] + e[1])
        throw ContractError("schedule for prime " + std::to_string(s.prime) + " violates the box condition at level " +
                            std::to_string(l));
    }
    if (s.coords[2].slope > s.coords[0].slope + s.coords[1].slope)
      throw ContractError("schedule for prime " + std::to_string(s.prime) +
                          " violates the box condition for large levels (c slope exceeds a + b)");
  }

  const bool grows = chain.family_ || std::any_of(chain.primes_.begin(), chain.primes_.end(),
                                                  [](const auto& s) { return s.any_unbounded(); });
  for (Level l = 1; l < settle; ++l) {
    bool proper = static_cast<bool>(chain.family_);
    for (const auto& s : chain.primes_) proper = proper || s.at(l) != s.at(l + 1);
    if (!proper) throw ContractError("chain is not properly descending at level " + std::to_string(l));
  }
  if (!grows) throw ContractError("chain is not properly descending from level " + std::to_string(settle));

  if (trivial_intersection) {
    for (Coord c : kCoords) {
      bool unbounded = chain.family_ && chain.family_->base[static_cast<std::size_t>(c)] > 0;
      for (const auto& s : chain.primes_) unbounded = unbounded || s.unbounded(c);
      if (!unbounded)
        throw ContractError(std::string("chain does not have trivial intersection: coordinate ") + coord_name(c) +
                            " is bounded (declare trivial_intersection=false to allow this)");
    }
  }
  return chain;
}

Level ChainSpec::settle_level() const {
  Level settle = 1;
  for (const auto& s : primes_) {
    for (const auto& c : s.coords) settle = std::max(settle, c.start);
  }
  return settle;
}

Prime ChainSpec::family_prime(std::uint64_t i) const {
  if (!family_) throw ContractError("chain has no indexed family");
  return family_->set.nth(i, explicit_);
}

std::vector<std::pair<Prime, Exponents>> ChainSpec::exponents_at(Level level) const {
  std::vector<std::pair<Prime, Exponents>> out;
  for (const auto& s : primes_) {
    auto e = s.at(level);
    if (e[0] + e[1] + e[2] > 0) out.emplace_back(s.prime, e);
  }
  if (family_) {
    for (std::uint64_t i = 1; i <= level; ++i) out.emplace_back(family_prime(i), family_->base);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Built-in chains

namespace {

CoordinateSchedule sloped(Level start, std::uint64_t slope) { return {start, 0, slope}; }
CoordinateSchedule constant(std::uint64_t base) { return {1, base, 0}; }

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

void require_primes(const std::vector<Prime>& ps, const char* what) {
  std::set<Prime> seen;
  for (Prime p : ps) {
    if (!is_prime(p)) throw ContractError(std::string(what) + " entry " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw ContractError(std::string(what) + " lists " + std::to_string(p) + " twice");
  }
}

std::vector<PrimeSchedule> infinite_part(const std::vector<Prime>& pi_inf) {
  std::vector<PrimeSchedule> out;
  for (std::size_t j = 0; j < pi_inf.size(); ++j) {
    Level start = j + 1;  // p_j enters at level j
    out.push_back({pi_inf[j], {sloped(start, 1), sloped(start, 1), sloped(start, 1)}});
  }
  return out;
}

}  // namespace

ChainSpec example_41(Prime p) {
  if (!is_prime(p)) throw ContractError("ex41 needs a prime, got " + std::to_string(p));
  return ChainSpec::create("ex41(" + std::to_string(p) + ")", {{p, {sloped(1, 1), sloped(1, 1), sloped(1, 2)}}});
}

ChainSpec example_42(Prime p, Prime q) {
  if (!is_prime(p) || !is_prime(q) || p == q) throw ContractError("ex42 needs two distinct primes");
  return ChainSpec::create("ex42(" + std::to_string(p) + "," + std::to_string(q) + ")",
                           {{p, {sloped(1, 1), CoordinateSchedule{}, sloped(1, 1)}},
                            {q, {CoordinateSchedule{}, sloped(1, 1), sloped(1, 1)}}});
}

ChainSpec stable_chain(const std::vector<Prime>& pi_f, const std::vector<std::uint64_t>& r,
                       const std::vector<std::uint64_t>& n, const std::vector<Prime>& pi_inf) {
  if (r.size() != pi_f.size() || n.size() != pi_f.size())
    throw ContractError("stable chain needs one r and one n per prime of pi_f");
  if (pi_inf.empty()) throw ContractError("stable chain needs a nonempty pi_inf");
  require_primes(pi_f, "pi_f");
  require_primes(pi_inf, "pi_inf");
  for (Prime p : pi_f) {
    if (std::find(pi_inf.begin(), pi_inf.end(), p) != pi_inf.end())
      throw ContractError("pi_f and pi_inf share prime " + std::to_string(p));
  }
  std::vector<PrimeSchedule> primes = infinite_part(pi_inf);
  for (std::size_t i = 0; i < pi_f.size(); ++i) {
    if (r[i] < 1 || r[i] > n[i]) throw ContractError("stable chain needs 1 <= r_i <= n_i");
    primes.push_back({pi_f[i], {constant(r[i]), constant(n[i]), constant(n[i])}});
  }
  return ChainSpec::create("stable(" + join(pi_f) + ";" + join(r) + ";" + join(n) + ";" + join(pi_inf) + ")",
                           std::move(primes));
}

ChainSpec wild_chain(std::uint64_t n, std::uint64_t r, const std::vector<Prime>& pi_inf, const PrimeSet& family_set) {
  if (r < 1 || r >= n) throw ContractError("wild chain needs 1 <= r < n");
  require_primes(pi_inf, "pi_inf");
  std::string label = "wild(" + std::to_string(n) + ";" + std::to_string(r) + ";" + join(pi_inf);
  if (!(family_set == PrimeSet::all())) label += ";" + family_set.id();
  label += ")";
  return ChainSpec::create(label, infinite_part(pi_inf), FamilySchedule{family_set, {r, n, n}});
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  int depth = 0;
  std::string cur;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
      throw ContractError("expected a comma-separated list of integers, got '" + s + "'");
    out.push_back(std::stoull(item));
  }
  return out;
}

std::uint64_t parse_single(const std::string& s) {
  auto v = parse_list(s);
  if (v.size() != 1) throw ContractError("expected one integer, got '" + s + "'");
  return v[0];
}

}  // namespace

ChainSpec resolve_builtin(std::string_view ref) {
  std::string s;
  for (char ch : ref) {
    if (ch != ' ') s.push_back(ch);
  }
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw ContractError("unknown chain reference '" + s + "'");
  std::string name = s.substr(0, open);
  std::string body = s.substr(open + 1, s.size() - open - 2);
  if (name == "ex41") return example_41(parse_single(body));
  if (name == "ex42") {
    auto v = parse_list(body);
    if (v.size() != 2) throw ContractError("ex42 takes two primes");
    return example_42(v[0], v[1]);
  }
  auto parts = split(body, ';');
  if (name == "stable") {
    if (parts.size() != 4) throw ContractError("stable takes pi_f;r;n;pi_inf");
    return stable_chain(parse_list(parts[0]), parse_list(parts[1]), parse_list(parts[2]), parse_list(parts[3]));
  }
  if (name == "wild") {
    if (parts.size() != 3 && parts.size() != 4) throw ContractError("wild takes n;r;pi_inf[;set]");
    PrimeSet set = parts.size() == 4 ? PrimeSet::parse(parts[3]) : PrimeSet::all();
    return wild_chain(parse_single(parts[0]), parse_single(parts[1]), parse_list(parts[2]), set);
  }
  throw ContractError("unknown built-in chain '" + name + "'");
}

// ---------------------------------------------------------------------------
// Boxes along the chain

Box box_at(const ChainSpec& chain, Level level) {
  if (level < 1) throw ContractError("chain levels start at 1");
  Integer ma = 1, mb = 1, mc = 1;
  for (const auto& [p, e] : chain.exponents_at(level)) {
    ma *= pow(p, e[0]);
    mb *= pow(p, e[1]);
    mc *= pow(p, e[2]);
  }
  return Box(ma, mb, mc);
}

Box core_at(const ChainSpec& chain, Level level) { return core(box_at(chain, level)); }

// ---------------------------------------------------------------------------
// Finite quotients

FiniteQuotient::FiniteQuotient(Integer a_mod, Integer b_mod, Integer c_mod)
    : a_(std::move(a_mod)), b_(std::move(b_mod)), c_(std::move(c_mod)) {
  if (a_ <= 0 || b_ <= 0 || c_ <= 0) throw ContractError("quotient moduli must be positive");
  if (!divides(c_, a_) || !divides(c_, b_))
    throw ContractError("quotient moduli need C | A and C | B for the product to be well defined");
}

FiniteQuotient FiniteQuotient::of(const Box& normal) {
  if (!is_normal_in_gamma(normal)) throw ContractError(normal.to_string() + " is not normal");
  return FiniteQuotient(normal.ma(), normal.mb(), normal.mc());
}

Element FiniteQuotient::reduce(const Element& g) const {
  return {mod_floor(g.a, a_), mod_floor(g.b, b_), mod_floor(g.c, c_)};
}

bool FiniteQuotient::is_reduced(const Element& g) const {
  return g.a >= 0 && g.a < a_ && g.b >= 0 && g.b < b_ && g.c >= 0 && g.c < c_;
}

Element FiniteQuotient::multiply(const Element& x, const Element& y) const { return reduce(nilcantor::multiply(x, y)); }

Element FiniteQuotient::inverse(const Element& x) const { return reduce(nilcantor::inverse(x)); }

QuotientSubgroup QuotientSubgroup::from_box(const FiniteQuotient& ambient, const Box& box) {
  if (!box.includes(ambient.kernel()))
    throw ContractError(box.to_string() + " does not contain the quotient kernel " + ambient.kernel().to_string());
  QuotientSubgroup h(ambient);
  h.box_ = box;
  h.generators_ = {ambient.reduce({box.ma(), 0, 0}), ambient.reduce({0, box.mb(), 0}), ambient.reduce({0, 0, box.mc()})};
  h.order_ = (ambient.a_mod() / box.ma()) * (ambient.b_mod() / box.mb()) * (ambient.c_mod() / box.mc());
  return h;
}

QuotientSubgroup QuotientSubgroup::generate(const FiniteQuotient& ambient, std::vector<Element> generators,
                                            std::uint64_t cap) {
  QuotientSubgroup h(ambient);
  for (auto& g : generators) g = ambient.reduce(g);
  auto closure = std::make_shared<ElementSet>();
  std::deque<Element> frontier{Element::identity()};
  closure->insert(Element::identity());
  // Right multiplication by generators from the identity reaches the whole
  // subgroup because every element of a finite group has finite order.
  while (!frontier.empty()) {
    Element x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      Element y = ambient.multiply(x, g);
      if (closure->insert(y).second) {
        if (closure->size() > cap) throw ResourceError("subgroup closure exceeded its cap", cap);
        frontier.push_back(std::move(y));
      }
    }
  }
  h.generators_ = std::move(generators);
  h.order_ = Integer(std::to_string(closure->size()));
  h.closure_ = std::move(closure);
  return h;
}

const ElementSet& QuotientSubgroup::elements() const {
  if (!closure_) throw ContractError("subgroup was built on the box fast path; enumerate it first");
  return *closure_;
}

bool QuotientSubgroup::contains(const Element& g) const {
  Element r = ambient_.reduce(g);
  if (closure_) return closure_->count(r) > 0;
  return box_->contains(r);
}

bool QuotientSubgroup::same_as(const QuotientSubgroup& other) const {
  if (!(ambient_ == other.ambient_) || order_ != other.order_) return false;
  if (box_ && other.box_) return *box_ == *other.box_;
  const QuotientSubgroup& listed = closure_ ? *this : other;
  const QuotientSubgroup& probe = closure_ ? other : *this;
  if (!listed.closure_) return false;
  return std::all_of(listed.closure_->begin(), listed.closure_->end(),
                     [&](const Element& g) { return probe.contains(g); });
}

FiniteQuotient quotient_at(const ChainSpec& chain, Level level) { return FiniteQuotient::of(core_at(chain, level)); }

QuotientSubgroup discriminant_level(const ChainSpec& chain, Level level, const ClosureOptions& options) {
  FiniteQuotient q = quotient_at(chain, level);
  Box b = box_at(chain, level);
  if (options.enumerate) return QuotientSubgroup::generate(q, {{b.ma(), 0, 0}, {0, b.mb(), 0}, {0, 0, b.mc()}}, options.cap);
  return QuotientSubgroup::from_box(q, b);
}

Element QuotientMap::apply(const Element& x) const {
  if (!source.is_reduced(x)) throw ContractError(x.to_string() + " is not a reduced element of the source quotient");
  return target.reduce(x);
}

QuotientMap connecting_map(const ChainSpec& chain, Level level) {
  return {quotient_at(chain, level + 1), quotient_at(chain, level)};
}

QuotientSubgroup stable_image(const ChainSpec& chain, Level level, Level depth, const ClosureOptions& options) {
  if (depth < level) throw ContractError("stable_image needs depth >= level");
  FiniteQuotient q = quotient_at(chain, level);
  Box deep = box_at(chain, depth);
  if (options.enumerate)
    return QuotientSubgroup::generate(q, {{deep.ma(), 0, 0}, {0, deep.mb(), 0}, {0, 0, deep.mc()}}, options.cap);
  // Γ_depth·C_level is the box of coordinatewise gcds.
  return QuotientSubgroup::from_box(
      q, Box(gcd(deep.ma(), q.a_mod()), gcd(deep.mb(), q.b_mod()), gcd(deep.mc(), q.c_mod())));
}

ChainSteinitzOrder steinitz_order(const ChainSpec& chain, Level depth) {
  if (depth < 1) throw ContractError("steinitz_order needs depth >= 1");
  ChainSteinitzOrder out;
  out.depth = depth;
  std::vector<Prime> support;
  for (const auto& [p, e] : chain.exponents_at(depth)) support.push_back(p);
  for (Level l = 1; l <= depth; ++l) {
    out.finite = lcm(out.finite, SteinitzNumber::from_integer(index_in(Box::whole(), box_at(chain, l)), support));
  }
  std::map<Prime, Multiplicity> limit;
  for (const auto& s : chain.primes()) {
    if (s.any_unbounded()) {
      limit[s.prime] = Multiplicity::infinity();
      out.certified_infinite.insert(s.prime);
    } else {
      auto b = s.eventual_bases();
      limit[s.prime] = Multiplicity(b[0] + b[1] + b[2]);
    }
  }
  std::optional<Tail> tail;
  if (const auto& f = chain.family()) tail = Tail{f->set, f->base[0] + f->base[1] + f->base[2]};
  out.limit = SteinitzNumber::from_factors(limit, tail);
  return out;
}

// ---------------------------------------------------------------------------
// Coset spaces

bool CosetSpace::is_canonical(const Element& x) const {
  return x.a >= 0 && x.a < box_.ma() && x.b >= 0 && x.b < box_.mb() && x.c >= 0 && x.c < box_.mc();
}

std::vector<Element> CosetSpace::representatives(std::uint64_t cap) const {
  if (size() > Integer(std::to_string(cap))) throw ResourceError("coset space too large to enumerate", cap);
  std::vector<Element> out;
  for (Integer a = 0; a < box_.ma(); ++a)
    for (Integer b = 0; b < box_.mb(); ++b)
      for (Integer c = 0; c < box_.mc(); ++c) out.push_back({a, b, c});
  return out;
}

Element canonical_coset(const CosetSpace& space, const Element& g) {
  const Box& box = space.box();
  Integer a = mod_floor(g.a, box.ma());
  Integer b = mod_floor(g.b, box.mb());
  // g = (a, b, c̄)·h with h ∈ B forces c̄ = c - a·(g.b - b).
  Integer c = mod_floor(g.c - a * (g.b - b), box.mc());
  return {a, b, c};
}

Element act(const CosetSpace& space, const Element& g, const Element& x) {
  if (!space.is_canonical(x)) throw ContractError(x.to_string() + " is not a canonical coset representative");
  return canonical_coset(space, multiply(g, x));
}

}  // namespace nilcantor
