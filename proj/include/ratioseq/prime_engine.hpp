#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ratioseq {

// Ascending list of every prime <= limit. Immutable once built and safe to
// share across concurrent readers. Prime indexing is 1-based throughout:
// nth_prime(1) == 2.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;

  std::uint64_t count() const { return primes.size(); }
};

// Segment span of the segmented sieve, in numbers per segment. Sized so the
// working window stays cache-resident; peak scratch is one segment plus the
// base primes up to sqrt(limit), never a byte per integer of the full range.
inline constexpr std::uint64_t kDefaultSegmentSpan = 1u << 18;

// Streams every prime <= limit to `emit`, ascending, without materializing
// the whole list.
void stream_primes(std::uint64_t limit,
                   const std::function<void(std::uint64_t)>& emit,
                   std::uint64_t segment_span = kDefaultSegmentSpan);

// All primes <= limit. limit must be >= 2.
PrimeTable build_prime_table(std::uint64_t limit,
                             std::uint64_t segment_span = kDefaultSegmentSpan);

// k-th prime, 1-based. Throws TableTooSmallError when the table holds fewer
// than k primes.
std::uint64_t nth_prime(std::uint64_t k, const PrimeTable& table);

// A sieve bound L with pi(L) >= n, from the p_k < k(ln k + ln ln k) upper
// bound (valid for k >= 6) with a 1.05 safety factor; fixed floor of 13 for
// n < 6.
std::uint64_t sieve_limit_for(std::uint64_t n);

// Convenience: size the sieve for at least n primes and verify the count
// after building.
PrimeTable build_prime_table_for_count(std::uint64_t n);

}  // namespace ratioseq
