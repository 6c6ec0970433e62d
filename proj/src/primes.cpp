#include "nilcantor/primes.hpp"

#include <algorithm>
#include <mutex>

#include "nilcantor/errors.hpp"

namespace nilcantor {
namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Sieve shared by every caller; grows by doubling and never shrinks.
class PrimeTable {
 public:
  static PrimeTable& instance() {
    static PrimeTable table;
    return table;
  }

  std::uint64_t count_at_most(std::uint64_t n) {
    std::lock_guard lock(mutex_);
    ensure_limit(n);
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
  }

  Prime nth(std::uint64_t index) {
    std::lock_guard lock(mutex_);
    while (primes_.size() < index) ensure_limit(limit_ * 2);
    return primes_[index - 1];
  }

  std::vector<Prime> up_to(std::uint64_t bound) {
    std::lock_guard lock(mutex_);
    ensure_limit(bound);
    auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.begin(), end};
  }

 private:
  void ensure_limit(std::uint64_t n) {
    if (n <= limit_) return;
    std::uint64_t limit = std::max<std::uint64_t>(n, limit_ * 2);
    if (limit > (std::uint64_t{1} << 34)) throw ResourceError("prime sieve limit exceeded", std::uint64_t{1} << 34);
    std::vector<bool> composite(limit + 1, false);
    primes_.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    limit_ = limit;
  }

  std::mutex mutex_;
  std::uint64_t limit_ = 1;
  std::vector<Prime> primes_;
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic below 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t prime_index(Prime p) {
  if (!is_prime(p)) throw ContractError(std::to_string(p) + " is not prime");
  return PrimeTable::instance().count_at_most(p);
}

Prime nth_prime(std::uint64_t index) {
  if (index == 0) throw ContractError("prime indices are 1-based");
  return PrimeTable::instance().nth(index);
}

std::vector<Prime> primes_up_to(std::uint64_t bound) { return PrimeTable::instance().up_to(bound); }

Prime prime_at_most(std::uint64_t n) {
  for (std::uint64_t k = n; k >= 2; --k) {
    if (is_prime(k)) return k;
  }
  return 0;
}

}  // namespace nilcantor
