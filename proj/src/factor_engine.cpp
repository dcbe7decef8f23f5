#include "ratioseq/factor_engine.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "ratioseq/errors.hpp"

namespace ratioseq {

SpfTable build_spf_table(std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("build_spf_table: limit must be >= 2");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("build_spf_table: limit exceeds 32-bit entry width");
  }
  SpfTable table;
  table.limit = limit;
  table.spf.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (table.spf[i] != 0) continue;
    table.spf[i] = static_cast<std::uint32_t>(i);  // i is prime
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      if (table.spf[j] == 0) table.spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return table;
}

std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& table) {
  if (n < 2) throw std::invalid_argument("largest_prime_factor: n must be >= 2");
  if (n > table.limit) {
    throw TableTooSmallError("largest_prime_factor: n = " + std::to_string(n) +
                             " exceeds table limit " + std::to_string(table.limit));
  }
  // Successive smallest factors are strictly increasing, so the last one
  // extracted is the largest.
  std::uint64_t p = 0;
  while (n > 1) {
    p = table.spf[n];
    do {
      n /= p;
    } while (n % p == 0);
  }
  return p;
}

std::uint64_t lpf_oracle(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("lpf_oracle: n must be >= 2");
  std::uint64_t largest = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      largest = d;
      n /= d;
    }
  }
  return n > 1 ? n : largest;
}

}  // namespace ratioseq
