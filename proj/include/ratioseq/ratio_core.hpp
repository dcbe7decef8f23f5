#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratioseq/factor_engine.hpp"
#include "ratioseq/prime_engine.hpp"

namespace ratioseq {

// One scanned index m >= 3: the prime predecessor p_prev = p_{m-1}, its
// successor n = p_prev + 1 factored as n = largest_factor * ratio, and the
// acceptance verdict largest_factor > m (strict).
struct RatioRecord {
  std::uint64_t m = 0;
  std::uint64_t p_prev = 0;
  std::uint64_t n = 0;
  std::uint64_t largest_factor = 0;
  std::uint64_t ratio = 0;
  bool accepted = false;

  bool operator==(const RatioRecord&) const = default;
};

// Occurrence counts of accepted ratio values over a scanned index range.
struct RatioMultiset {
  std::uint64_t max_m = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t accepted_total = 0;

  void add(std::uint64_t ratio) {
    ++counts[ratio];
    ++accepted_total;
  }
  // Counts merge by addition: commutative and associative, so chunked or
  // parallel accumulation cannot change the result.
  void merge(const RatioMultiset& other) {
    for (const auto& [ratio, count] : other.counts) counts[ratio] += count;
    accepted_total += other.accepted_total;
    max_m = std::max(max_m, other.max_m);
  }

  bool operator==(const RatioMultiset&) const = default;
};

struct ScanOptions {
  unsigned workers = 0;       // 0 = hardware concurrency
  bool keep_records = false;  // retain the accepted records for export
};

struct ScanResult {
  RatioMultiset multiset;
  std::vector<RatioRecord> records;  // accepted only, ascending m; empty
                                     // unless keep_records was set
};

// Record for one index. m must be >= 3 and the tables must cover p_{m-1}
// and p_{m-1} + 1.
RatioRecord ratio_record(std::uint64_t m, const PrimeTable& primes, const SpfTable& spf);

// Aggregates accepted ratios over an inclusive index range. Chunked; chunks
// may run on `workers` threads, merged in chunk order, so output is
// identical for any worker count.
ScanResult scan_range(std::uint64_t first_m, std::uint64_t last_m, const PrimeTable& primes,
                      const SpfTable& spf, const ScanOptions& options = {});

// The full scan over 3 <= m <= max_m.
ScanResult scan(std::uint64_t max_m, const PrimeTable& primes, const SpfTable& spf,
                const ScanOptions& options = {});

// Distinct ratio values by descending count; ties broken by ascending value.
std::vector<std::uint64_t> frequency_order(const RatioMultiset& multiset);

// Ascending accepted indices m in [3, max_m].
std::vector<std::uint64_t> a223881_prefix(std::uint64_t max_m, const PrimeTable& primes,
                                          const SpfTable& spf);

// (largest_factor, n) for every accepted m <= max_m with the given ratio;
// each point satisfies n = ratio * largest_factor exactly. ratio must be
// even (odd ratios are unreachable).
std::vector<std::pair<std::uint64_t, std::uint64_t>> family_points(std::uint64_t ratio,
                                                                   std::uint64_t max_m,
                                                                   const PrimeTable& primes,
                                                                   const SpfTable& spf);

// CSV export, header `m,p_prev,n,largest_prime_factor,ratio,accepted`, one
// row per record in the given order.
std::string write_record_csv(std::span<const RatioRecord> records);

// CSV export, header `ratio,count`, rows in frequency order.
std::string write_frequency_csv(const RatioMultiset& multiset);

}  // namespace ratioseq
