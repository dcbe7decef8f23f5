#include "ratioseq/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ratioseq/errors.hpp"

namespace ratioseq {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

// Odd base primes in (2, sqrt(limit)], by a plain sieve.
std::vector<std::uint64_t> base_primes(std::uint64_t root) {
  std::vector<std::uint64_t> base;
  if (root < 3) return base;
  std::vector<std::uint8_t> composite(root + 1, 0);
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (composite[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) composite[j] = 1;
  }
  return base;
}

}  // namespace

void stream_primes(std::uint64_t limit,
                   const std::function<void(std::uint64_t)>& emit,
                   std::uint64_t segment_span) {
  if (limit < 2) throw std::invalid_argument("stream_primes: limit must be >= 2");
  if (segment_span < 2) throw std::invalid_argument("stream_primes: segment span too small");

  emit(2);
  if (limit < 3) return;

  const std::vector<std::uint64_t> base = base_primes(isqrt_u64(limit));
  std::vector<std::uint8_t> flags(segment_span);

  // Odd numbers only; each segment covers [low, high] and flags odd v via
  // bit (v - low) / 2.
  for (std::uint64_t low = 3; low <= limit; low += 2 * segment_span) {
    const std::uint64_t high = std::min(limit, low + 2 * segment_span - 2);
    const std::uint64_t half = (high - low) / 2 + 1;
    std::fill(flags.begin(), flags.begin() + half, 0);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t j = start; j <= high; j += 2 * p) flags[(j - low) / 2] = 1;
    }
    for (std::uint64_t i = 0; i < half; ++i) {
      if (!flags[i]) emit(low + 2 * i);
    }
  }
}

PrimeTable build_prime_table(std::uint64_t limit, std::uint64_t segment_span) {
  PrimeTable table;
  table.limit = limit;
  if (limit >= 17) {
    const double x = static_cast<double>(limit);
    table.primes.reserve(static_cast<std::size_t>(1.15 * x / std::log(x)));
  }
  stream_primes(limit, [&table](std::uint64_t p) { table.primes.push_back(p); },
                segment_span);
  return table;
}

std::uint64_t nth_prime(std::uint64_t k, const PrimeTable& table) {
  if (k == 0) throw std::invalid_argument("nth_prime: index is 1-based");
  if (k > table.count()) {
    throw TableTooSmallError("nth_prime: table holds " + std::to_string(table.count()) +
                             " primes, index " + std::to_string(k) +
                             " requested; rebuild with a larger limit");
  }
  return table.primes[k - 1];
}

std::uint64_t sieve_limit_for(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sieve_limit_for: need n >= 1");
  if (n < 6) return 13;  // p_6 = 13 covers every smaller count
  const double x = static_cast<double>(n);
  const double bound = x * (std::log(x) + std::log(std::log(x)));
  return static_cast<std::uint64_t>(1.05 * bound) + 1;
}

PrimeTable build_prime_table_for_count(std::uint64_t n) {
  PrimeTable table = build_prime_table(sieve_limit_for(n));
  if (table.count() < n) {
    throw InvariantViolationError("prime table sized for " + std::to_string(n) +
                                  " primes holds only " + std::to_string(table.count()));
  }
  return table;
}

}  // namespace ratioseq
