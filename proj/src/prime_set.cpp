#include "nilcantor/prime_set.hpp"

#include <algorithm>

#include "nilcantor/errors.hpp"

namespace nilcantor {
namespace {

bool is_bit_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

// Shortest period of `cycle`, then fold trailing stem bits into the cycle.
void canonicalize_branch(std::string& stem, std::string& cycle) {
  const std::size_t n = cycle.size();
  for (std::size_t k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    bool periodic = true;
    for (std::size_t i = k; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - k];
    if (periodic) {
      cycle.resize(k);
      break;
    }
  }
  while (!stem.empty() && stem.back() == cycle.back()) {
    stem.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
}

// Prime index (1-based) of the length-`length` prefix of a branch word.
std::uint64_t prefix_index(const PrimeSet& set, std::uint64_t length) {
  if (length >= 62) throw ResourceError("branch prefix too long to index", 62);
  std::uint64_t value = 0;
  for (std::uint64_t j = 0; j < length; ++j) value = (value << 1) | (set.branch_bit(j) ? 1u : 0u);
  return (std::uint64_t{1} << length) - 1 + value + 1;
}

}  // namespace

PrimeSet PrimeSet::all() { return above(0); }

PrimeSet PrimeSet::above(std::uint64_t n) {
  // primes>N and primes>P name the same set when P is the largest prime <= N.
  Prime floor = prime_at_most(n);
  PrimeSet set(Kind::Above, floor == 0 ? "primes" : "primes>" + std::to_string(floor));
  set.floor_ = floor;
  return set;
}

PrimeSet PrimeSet::branch(std::string stem, std::string cycle) {
  if (cycle.empty()) throw ContractError("branch cycle must be nonempty");
  if (!is_bit_string(stem) || !is_bit_string(cycle)) throw ContractError("branch words use only 0 and 1");
  canonicalize_branch(stem, cycle);
  PrimeSet set(Kind::Branch, "branch(" + stem + ";" + cycle + ")");
  set.stem_ = std::move(stem);
  set.cycle_ = std::move(cycle);
  return set;
}

PrimeSet PrimeSet::custom(std::string name, std::function<bool(Prime)> member) {
  if (name.empty() || name.find_first_of("()^[]") != std::string::npos)
    throw ContractError("custom prime-set names must be nonempty and free of ()^[]");
  PrimeSet set(Kind::Custom, "custom(" + name + ")");
  set.member_ = std::make_shared<const std::function<bool(Prime)>>(std::move(member));
  return set;
}

PrimeSet PrimeSet::parse(std::string_view id) {
  if (id == "primes") return all();
  if (id.rfind("primes>", 0) == 0) {
    std::string digits(id.substr(7));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ContractError("malformed prime set '" + std::string(id) + "'");
    return above(std::stoull(digits));
  }
  if (id.rfind("branch(", 0) == 0 && id.back() == ')') {
    std::string_view body = id.substr(7, id.size() - 8);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) throw ContractError("branch set needs '<stem>;<cycle>'");
    return branch(std::string(body.substr(0, semi)), std::string(body.substr(semi + 1)));
  }
  if (id.rfind("custom(", 0) == 0)
    throw ContractError("custom prime set '" + std::string(id) + "' cannot be rebuilt from text");
  throw ContractError("unknown prime set '" + std::string(id) + "'");
}

bool PrimeSet::branch_bit(std::uint64_t position) const {
  if (kind_ != Kind::Branch) throw ContractError("branch_bit on a non-branch prime set");
  if (position < stem_.size()) return stem_[position] == '1';
  return cycle_[(position - stem_.size()) % cycle_.size()] == '1';
}

bool PrimeSet::contains(Prime p) const {
  if (!is_prime(p)) return false;
  switch (kind_) {
    case Kind::Above:
      return p > floor_;
    case Kind::Custom:
      return (*member_)(p);
    case Kind::Branch: {
      std::uint64_t code = prime_index(p) - 1;
      // Decode code = 2^L - 1 + value with 0 <= value < 2^L.
      std::uint64_t length = 0;
      while (((std::uint64_t{1} << (length + 1)) - 1) <= code) ++length;
      std::uint64_t value = code - ((std::uint64_t{1} << length) - 1);
      for (std::uint64_t j = 0; j < length; ++j) {
        bool bit = (value >> (length - 1 - j)) & 1u;
        if (bit != branch_bit(j)) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<Prime> PrimeSet::enumerate_up_to(Prime bound) const {
  std::vector<Prime> out;
  if (kind_ == Kind::Branch) {
    const std::uint64_t available = bound >= 2 ? prime_index(prime_at_most(bound)) : 0;
    for (std::uint64_t length = 0;; ++length) {
      std::uint64_t index = prefix_index(*this, length);
      if (index > available) break;
      out.push_back(nth_prime(index));
    }
    return out;
  }
  for (Prime p : primes_up_to(bound)) {
    if (contains(p)) out.push_back(p);
  }
  return out;
}

Prime PrimeSet::nth(std::uint64_t index, const std::set<Prime>& excluded) const {
  if (index == 0) throw ContractError("prime-set indices are 1-based");
  std::uint64_t seen = 0;
  if (kind_ == Kind::Branch) {
    for (std::uint64_t length = 0;; ++length) {
      Prime p = nth_prime(prefix_index(*this, length));
      if (excluded.count(p)) continue;
      if (++seen == index) return p;
    }
  }
  for (std::uint64_t k = 1;; ++k) {
    Prime p = nth_prime(k);
    if (!contains(p) || excluded.count(p)) continue;
    if (++seen == index) return p;
  }
}

Cardinality difference_size(const PrimeSet& x, const PrimeSet& y) {
  using K = PrimeSet::Kind;
  if (x == y) return Cardinality::Finite;
  if (y.kind() == K::Above) return Cardinality::Finite;  // y is cofinite
  if (x.kind() == K::Above) {
    // cofinite minus a co-infinite set
    return y.kind() == K::Branch ? Cardinality::Infinite : Cardinality::Unknown;
  }
  if (x.kind() == K::Branch && y.kind() == K::Branch) return Cardinality::Infinite;
  return Cardinality::Unknown;
}

Cardinality intersection_size(const PrimeSet& x, const PrimeSet& y) {
  using K = PrimeSet::Kind;
  if (x == y) return Cardinality::Infinite;
  if (x.kind() == K::Above || y.kind() == K::Above) return Cardinality::Infinite;
  if (x.kind() == K::Branch && y.kind() == K::Branch) return Cardinality::Finite;
  return Cardinality::Unknown;
}

}  // namespace nilcantor
