#include "ratioseq/ratio_core.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "ratioseq/errors.hpp"

namespace ratioseq {

namespace {

constexpr std::uint64_t kScanChunk = 1u << 16;  // indices per work unit

// Fails fast when the tables cannot cover [first_m, last_m].
void check_table_cover(std::uint64_t last_m, const PrimeTable& primes, const SpfTable& spf) {
  if (primes.count() < last_m - 1) {
    throw TableTooSmallError("scan: prime table holds " + std::to_string(primes.count()) +
                             " primes, need index " + std::to_string(last_m - 1));
  }
  const std::uint64_t n_max = primes.primes[last_m - 2] + 1;
  if (n_max > spf.limit) {
    throw TableTooSmallError("scan: spf table limit " + std::to_string(spf.limit) +
                             " below n = " + std::to_string(n_max));
  }
}

// Largest prime factor via the spf chain; no bounds checks, caller has
// validated coverage.
inline std::uint64_t lpf_unchecked(std::uint64_t n, const SpfTable& spf) {
  std::uint64_t p = 0;
  while (n > 1) {
    p = spf.spf[n];
    do {
      n /= p;
    } while (n % p == 0);
  }
  return p;
}

struct ChunkResult {
  RatioMultiset multiset;
  std::vector<RatioRecord> records;
};

void process_chunk(std::uint64_t lo, std::uint64_t hi, const PrimeTable& primes,
                   const SpfTable& spf, bool keep_records, ChunkResult& out) {
  out.multiset.max_m = hi;
  for (std::uint64_t m = lo; m <= hi; ++m) {
    const std::uint64_t p_prev = primes.primes[m - 2];
    const std::uint64_t n = p_prev + 1;
    const std::uint64_t largest = lpf_unchecked(n, spf);
    if (largest > m) {
      const std::uint64_t ratio = n / largest;
      out.multiset.add(ratio);
      if (keep_records) out.records.push_back({m, p_prev, n, largest, ratio, true});
    }
  }
}

}  // namespace

RatioRecord ratio_record(std::uint64_t m, const PrimeTable& primes, const SpfTable& spf) {
  if (m < 3) throw std::invalid_argument("ratio_record: m must be >= 3");
  const std::uint64_t p_prev = nth_prime(m - 1, primes);
  const std::uint64_t n = p_prev + 1;
  const std::uint64_t largest = largest_prime_factor(n, spf);
  return {m, p_prev, n, largest, n / largest, largest > m};
}

ScanResult scan_range(std::uint64_t first_m, std::uint64_t last_m, const PrimeTable& primes,
                      const SpfTable& spf, const ScanOptions& options) {
  if (first_m < 3) throw std::invalid_argument("scan: index range starts at m = 3");
  ScanResult result;
  result.multiset.max_m = last_m;
  if (last_m < first_m) return result;
  check_table_cover(last_m, primes, spf);

  const std::uint64_t span = last_m - first_m + 1;
  const std::uint64_t n_chunks = (span + kScanChunk - 1) / kScanChunk;
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_chunks)));

  std::vector<ChunkResult> chunks(n_chunks);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = first_m + c * kScanChunk;
    const std::uint64_t hi = std::min(last_m, lo + kScanChunk - 1);
    process_chunk(lo, hi, primes, spf, options.keep_records, chunks[c]);
  };

  if (workers == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Merge in chunk order: counts are order-independent, records end up
  // ascending in m.
  for (auto& chunk : chunks) {
    result.multiset.merge(chunk.multiset);
    if (options.keep_records) {
      result.records.insert(result.records.end(), chunk.records.begin(), chunk.records.end());
    }
  }
  result.multiset.max_m = last_m;
  return result;
}

ScanResult scan(std::uint64_t max_m, const PrimeTable& primes, const SpfTable& spf,
                const ScanOptions& options) {
  if (max_m < 3) throw std::invalid_argument("scan: max_m must be >= 3");
  return scan_range(3, max_m, primes, spf, options);
}

std::vector<std::uint64_t> frequency_order(const RatioMultiset& multiset) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> items(multiset.counts.begin(),
                                                             multiset.counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::uint64_t> order;
  order.reserve(items.size());
  for (const auto& [ratio, count] : items) order.push_back(ratio);
  return order;
}

std::vector<std::uint64_t> a223881_prefix(std::uint64_t max_m, const PrimeTable& primes,
                                          const SpfTable& spf) {
  if (max_m < 3) throw std::invalid_argument("a223881_prefix: max_m must be >= 3");
  ScanOptions options;
  options.keep_records = true;
  ScanResult result = scan(max_m, primes, spf, options);
  std::vector<std::uint64_t> indices;
  indices.reserve(result.records.size());
  for (const RatioRecord& rec : result.records) indices.push_back(rec.m);
  return indices;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> family_points(std::uint64_t ratio,
                                                                   std::uint64_t max_m,
                                                                   const PrimeTable& primes,
                                                                   const SpfTable& spf) {
  if (ratio < 2 || ratio % 2 != 0) {
    throw std::invalid_argument("family_points: ratio must be even and >= 2");
  }
  ScanOptions options;
  options.keep_records = true;
  ScanResult result = scan(max_m, primes, spf, options);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
  for (const RatioRecord& rec : result.records) {
    if (rec.ratio == ratio) points.emplace_back(rec.largest_factor, rec.n);
  }
  return points;
}

std::string write_record_csv(std::span<const RatioRecord> records) {
  std::ostringstream out;
  out << "m,p_prev,n,largest_prime_factor,ratio,accepted\n";
  for (const RatioRecord& rec : records) {
    out << rec.m << ',' << rec.p_prev << ',' << rec.n << ',' << rec.largest_factor << ','
        << rec.ratio << ',' << (rec.accepted ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string write_frequency_csv(const RatioMultiset& multiset) {
  std::ostringstream out;
  out << "ratio,count\n";
  for (std::uint64_t ratio : frequency_order(multiset)) {
    out << ratio << ',' << multiset.counts.at(ratio) << '\n';
  }
  return out.str();
}

}  // namespace ratioseq
