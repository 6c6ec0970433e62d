#include "nilcantor/steinitz.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nilcantor/errors.hpp"

namespace nilcantor {
namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::string s = trim(text);
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 19)
    throw ContractError("malformed " + std::string(what) + " '" + s + "'");
  return std::stoull(s);
}

std::uint64_t above_floor(const PrimeSet& set) {
  return set.id() == "primes" ? 1 : std::stoull(set.id().substr(7));
}

template <typename Combine>
SteinitzNumber combine(const SteinitzNumber& x, const SteinitzNumber& y, Combine op) {
  std::set<Prime> keys = x.explicit_primes();
  keys.merge(y.explicit_primes());
  // Two primes>N tails differ in finitely many primes: combine on the
  // higher floor and list the primes below it explicitly.
  std::optional<PrimeSet> shared;
  if (x.tail() && y.tail() && x.tail()->set.kind() == PrimeSet::Kind::Above &&
      y.tail()->set.kind() == PrimeSet::Kind::Above && !(x.tail()->set == y.tail()->set)) {
    const std::uint64_t floor = std::max(above_floor(x.tail()->set), above_floor(y.tail()->set));
    for (Prime p : primes_up_to(floor)) keys.insert(p);
    shared = PrimeSet::above(floor);
  }
  std::optional<Tail> tail;
  if (x.tail() && y.tail()) {
    if (!shared && !(x.tail()->set == y.tail()->set))
      throw ContractError("tails '" + x.tail()->id() + "' and '" + y.tail()->id() + "' enumerate different primes");
    auto e = op(Multiplicity(x.tail()->exponent), Multiplicity(y.tail()->exponent));
    tail = Tail{shared.value_or(x.tail()->set), e.value()};
  } else if (x.tail()) {
    tail = x.tail();
  } else if (y.tail()) {
    tail = y.tail();
  }
  std::map<Prime, Multiplicity> factors;
  for (Prime p : keys) {
    auto m = op(x.multiplicity(p), y.multiplicity(p));
    if (!m.is_zero()) factors[p] = m;
  }
  return SteinitzNumber::from_factors(factors, tail);
}

void require_bound_covers(const SteinitzNumber& xi, std::uint64_t bound) {
  if (bound < 2) throw ContractError("inspection bound must be at least 2");
  for (Prime p : xi.explicit_primes()) {
    if (p > bound)
      throw ContractError("inspection bound " + std::to_string(bound) + " is below explicit prime " +
                          std::to_string(p));
  }
}

Cardinality either_infinite(Cardinality a, Cardinality b) {
  if (a == Cardinality::Infinite || b == Cardinality::Infinite) return Cardinality::Infinite;
  if (a == Cardinality::Unknown || b == Cardinality::Unknown) return Cardinality::Unknown;
  return Cardinality::Finite;
}

bool decided(Cardinality c, const std::string& context) {
  if (c == Cardinality::Unknown) throw UndecidableError("cannot compare tail schedules " + context);
  return c == Cardinality::Finite;
}

}  // namespace

std::uint64_t Multiplicity::value() const {
  if (infinite_) throw ContractError("infinite multiplicity has no finite value");
  return value_;
}

std::string Multiplicity::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

Multiplicity operator+(Multiplicity x, Multiplicity y) {
  if (x.infinite_ || y.infinite_) return Multiplicity::infinity();
  return Multiplicity(x.value_ + y.value_);
}

Tail Tail::parse(std::string_view id) {
  auto caret = id.rfind('^');
  if (caret == std::string_view::npos) throw ContractError("tail id needs '<set>^<exponent>'");
  std::uint64_t e = parse_u64(id.substr(caret + 1), "tail exponent");
  if (e == 0) throw ContractError("tail exponent must be positive");
  return Tail{PrimeSet::parse(trim(id.substr(0, caret))), e};
}

SteinitzNumber SteinitzNumber::from_factors(const std::map<Prime, Multiplicity>& factors, std::optional<Tail> tail) {
  SteinitzNumber xi;
  for (auto [p, m] : factors) {
    if (!is_prime(p)) throw ContractError(std::to_string(p) + " is not prime");
    if (m.is_zero()) continue;
    if (m.is_infinite())
      xi.infinite_.insert(p);
    else
      xi.finite_[p] = m.value();
  }
  if (tail && tail->exponent == 0) throw ContractError("tail exponent must be positive");
  xi.tail_ = std::move(tail);
  xi.normalize();
  return xi;
}

SteinitzNumber SteinitzNumber::prime_power(Prime p, Multiplicity m) { return from_factors({{p, m}}); }

SteinitzNumber SteinitzNumber::from_tail(Tail tail) { return from_factors({}, std::move(tail)); }

SteinitzNumber SteinitzNumber::from_integer(const Integer& n) {
  if (n <= 0) throw ContractError("only positive integers are Steinitz numbers");
  std::map<Prime, Multiplicity> factors;
  Integer rest = n;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (Integer(std::to_string(p * p)) > rest) {
      if (!fits_int64(rest)) throw ResourceError("trial division exhausted", p);
      factors[static_cast<Prime>(to_int64(rest))] = Multiplicity(1);
      break;
    }
    std::uint64_t e = 0;
    while (divides(Integer(std::to_string(p)), rest)) {
      rest /= Integer(std::to_string(p));
      ++e;
    }
    if (e > 0) factors[p] = Multiplicity(e);
  }
  return from_factors(factors);
}

SteinitzNumber SteinitzNumber::from_integer(const Integer& n, const std::vector<Prime>& support) {
  if (n <= 0) throw ContractError("only positive integers are Steinitz numbers");
  std::map<Prime, Multiplicity> factors;
  Integer rest = n;
  for (Prime p : support) {
    if (rest == 1) break;
    std::uint64_t e = valuation(rest, p);
    if (e == 0) continue;
    rest /= pow(p, e);
    factors[p] = Multiplicity(e);
  }
  if (rest != 1) throw ContractError("integer has prime factors outside the supplied support");
  return from_factors(factors);
}

void SteinitzNumber::normalize() {
  for (Prime p : infinite_) finite_.erase(p);
  if (!tail_) return;
  // Fold explicit entries that agree with the tail.
  for (auto it = finite_.begin(); it != finite_.end();) {
    if (it->second == tail_->exponent && tail_->set.contains(it->first))
      it = finite_.erase(it);
    else
      ++it;
  }
  // Explicit keys override the tail, so primes>P can always drop below an
  // explicit P; the lowest such floor is canonical.
  while (tail_->set.kind() == PrimeSet::Kind::Above && tail_->set.id() != "primes") {
    Prime floor = std::stoull(tail_->set.id().substr(7));
    auto it = finite_.find(floor);
    if (it == finite_.end() && !infinite_.count(floor)) break;
    if (it != finite_.end() && it->second == tail_->exponent) finite_.erase(it);
    tail_->set = PrimeSet::above(floor - 1);
  }
}

std::set<Prime> SteinitzNumber::explicit_primes() const {
  std::set<Prime> keys = infinite_;
  for (auto& [p, e] : finite_) keys.insert(p);
  return keys;
}

Multiplicity SteinitzNumber::multiplicity(Prime p) const {
  if (!is_prime(p)) throw ContractError(std::to_string(p) + " is not prime");
  if (auto it = finite_.find(p); it != finite_.end()) return Multiplicity(it->second);
  if (infinite_.count(p)) return Multiplicity::infinity();
  if (tail_ && tail_->set.contains(p)) return Multiplicity(tail_->exponent);
  return Multiplicity(0);
}

SteinitzNumber SteinitzNumber::with_infinite(const std::set<Prime>& primes) const {
  SteinitzNumber xi = *this;
  for (Prime p : primes) {
    if (!is_prime(p)) throw ContractError(std::to_string(p) + " is not prime");
    xi.finite_.erase(p);
    xi.infinite_.insert(p);
  }
  xi.normalize();
  return xi;
}

std::string SteinitzNumber::to_string() const {
  std::map<Prime, Multiplicity> all;
  for (auto& [p, e] : finite_) all[p] = Multiplicity(e);
  for (Prime p : infinite_) all[p] = Multiplicity::infinity();
  std::ostringstream out;
  if (all.empty()) out << "1";
  bool first = true;
  for (auto& [p, m] : all) {
    if (!first) out << " * ";
    first = false;
    out << p;
    if (m != Multiplicity(1)) out << "^" << m.to_string();
  }
  if (tail_) out << " [tail:" << tail_->id() << "]";
  return out.str();
}

SteinitzNumber SteinitzNumber::parse(std::string_view text) {
  std::string body = trim(text);
  std::optional<Tail> tail;
  if (auto open = body.find("[tail:"); open != std::string::npos) {
    if (body.back() != ']') throw ContractError("unterminated tail in '" + body + "'");
    tail = Tail::parse(body.substr(open + 6, body.size() - open - 7));
    body = trim(body.substr(0, open));
  }
  std::map<Prime, Multiplicity> factors;
  if (!body.empty() && body != "1") {
    std::size_t pos = 0;
    while (pos <= body.size()) {
      auto star = body.find('*', pos);
      std::string term = trim(body.substr(pos, star == std::string::npos ? std::string::npos : star - pos));
      if (term.empty()) throw ContractError("empty factor in '" + body + "'");
      auto caret = term.find('^');
      Prime p = parse_u64(term.substr(0, caret), "prime");
      Multiplicity m(1);
      if (caret != std::string::npos) {
        std::string exp = trim(term.substr(caret + 1));
        m = exp == "inf" ? Multiplicity::infinity() : Multiplicity(parse_u64(exp, "exponent"));
        if (m.is_zero()) throw ContractError("explicit exponents must be positive");
      }
      if (factors.count(p)) throw ContractError("prime " + std::to_string(p) + " listed twice");
      factors[p] = m;
      if (star == std::string::npos) break;
      pos = star + 1;
    }
  }
  return from_factors(factors, tail);
}

SteinitzNumber product(const SteinitzNumber& x, const SteinitzNumber& y) {
  return combine(x, y, [](Multiplicity a, Multiplicity b) { return a + b; });
}

SteinitzNumber lcm(const SteinitzNumber& x, const SteinitzNumber& y) {
  return combine(x, y, [](Multiplicity a, Multiplicity b) { return max(a, b); });
}

PrimeSpectra spectra(const SteinitzNumber& xi, std::uint64_t bound) {
  if (bound < 2) throw ContractError("spectrum bound must be at least 2");
  PrimeSpectra s;
  s.enumeration_bound = bound;
  std::set<Prime> finite, infinite;
  for (auto& [p, e] : xi.finite_part()) {
    if (p <= bound)
      finite.insert(p);
    else
      s.pi_f.complete = false;
  }
  for (Prime p : xi.infinite_primes()) {
    if (p <= bound)
      infinite.insert(p);
    else
      s.pi_inf.complete = false;
  }
  if (xi.tail()) {
    s.pi_f.complete = false;
    for (Prime p : xi.tail()->set.enumerate_up_to(bound)) {
      if (!xi.infinite_primes().count(p) && !xi.finite_part().count(p)) finite.insert(p);
    }
  }
  s.pi_f.enumerated.assign(finite.begin(), finite.end());
  s.pi_inf.enumerated.assign(infinite.begin(), infinite.end());
  std::set<Prime> all = finite;
  all.insert(infinite.begin(), infinite.end());
  s.pi.enumerated.assign(all.begin(), all.end());
  s.pi.complete = s.pi_f.complete && s.pi_inf.complete;
  return s;
}

bool asymptotically_equivalent(const SteinitzNumber& x, const SteinitzNumber& y, std::uint64_t bound) {
  require_bound_covers(x, bound);
  require_bound_covers(y, bound);
  if (x.infinite_primes() != y.infinite_primes()) return false;
  const auto& tx = x.tail();
  const auto& ty = y.tail();
  if (!tx && !ty) return true;
  if (!tx || !ty) return false;  // one side has infinitely many extra primes
  if (tx->set == ty->set) return tx->exponent == ty->exponent;
  Cardinality disagreement = either_infinite(difference_size(tx->set, ty->set), difference_size(ty->set, tx->set));
  if (tx->exponent != ty->exponent)
    disagreement = either_infinite(disagreement, intersection_size(tx->set, ty->set));
  return decided(disagreement, "'" + tx->id() + "' and '" + ty->id() + "'");
}

bool type_leq(const SteinitzNumber& x, const SteinitzNumber& y, std::uint64_t bound) {
  require_bound_covers(x, bound);
  require_bound_covers(y, bound);
  if (!std::includes(y.infinite_primes().begin(), y.infinite_primes().end(), x.infinite_primes().begin(),
                     x.infinite_primes().end()))
    return false;
  const auto& tx = x.tail();
  const auto& ty = y.tail();
  if (!tx) return true;
  if (!ty) return false;
  // Primes where x exceeds y: tx \ ty, plus tx ∩ ty when x's exponent is larger.
  Cardinality excess = difference_size(tx->set, ty->set);
  if (tx->exponent > ty->exponent) excess = either_infinite(excess, intersection_size(tx->set, ty->set));
  return decided(excess, "'" + tx->id() + "' and '" + ty->id() + "'");
}

std::vector<PrimeSet> almost_disjoint_spectra(std::uint64_t count, std::uint64_t depth) {
  if (count == 0) throw ContractError("count must be positive");
  std::uint64_t width = 0;
  while ((std::uint64_t{1} << width) < count) ++width;
  // Distinct stems of length `width` diverge within `width` bits, so two
  // sets share at most the codes of the `width` shorter prefixes.
  if (depth < width)
    throw ContractError("depth " + std::to_string(depth) + " cannot separate " + std::to_string(count) + " branches");
  std::vector<PrimeSet> sets;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::string stem;
    for (std::uint64_t j = width; j-- > 0;) stem.push_back(((k >> j) & 1u) ? '1' : '0');
    sets.push_back(PrimeSet::branch(stem, "0"));
  }
  return sets;
}

}  // namespace nilcantor
