#pragma once

#include <cstdint>
#include <vector>

namespace nilcantor {

using Prime = std::uint64_t;

/// Deterministic primality for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// 1-based position of the prime `p` in 2, 3, 5, 7, ...
std::uint64_t prime_index(Prime p);

/// The `index`-th prime, 1-based.
Prime nth_prime(std::uint64_t index);

std::vector<Prime> primes_up_to(std::uint64_t bound);

/// Largest prime <= n, or 0 when n < 2.
Prime prime_at_most(std::uint64_t n);

}  // namespace nilcantor
