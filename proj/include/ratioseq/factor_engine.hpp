#pragma once

#include <cstdint>
#include <vector>

namespace ratioseq {

// Smallest-prime-factor lookup for every n in [2, limit], one flat 32-bit
// array. Immutable after construction; reads are safe for unbounded
// concurrent use.
struct SpfTable {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> spf;  // spf[n]; entries 0 and 1 unused
};

// limit must be >= 2 and fit 32-bit entries.
SpfTable build_spf_table(std::uint64_t limit);

// Largest prime factor of n, by dividing out smallest factors until the
// chain ends. Throws TableTooSmallError for n > table.limit — out of range
// is a hard error, not a slow path.
std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& table);

// Largest prime factor by pure trial division up to sqrt(n). Independent of
// any sieve table; exists to cross-check largest_prime_factor.
std::uint64_t lpf_oracle(std::uint64_t n);

}  // namespace ratioseq
