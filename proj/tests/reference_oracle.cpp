#include "reference_oracle.hpp"

namespace testref {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t candidate = 2; primes.size() < count; ++candidate) {
    if (is_prime(candidate)) primes.push_back(candidate);
  }
  return primes;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t candidate = 2; candidate <= limit; ++candidate) {
    if (is_prime(candidate)) primes.push_back(candidate);
  }
  return primes;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  std::uint64_t largest = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      largest = d;
      n /= d;
    }
  }
  return n > 1 ? n : largest;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

std::vector<Record> scan_records(std::uint64_t max_m) {
  std::vector<Record> records;
  if (max_m < 3) return records;
  const std::vector<std::uint64_t> primes = first_primes(max_m - 1);
  records.reserve(max_m - 2);
  for (std::uint64_t m = 3; m <= max_m; ++m) {
    Record rec;
    rec.m = m;
    rec.p_prev = primes[m - 2];
    rec.n = rec.p_prev + 1;
    rec.largest = largest_prime_factor(rec.n);
    rec.ratio = rec.n / rec.largest;
    rec.accepted = rec.largest > m;
    records.push_back(rec);
  }
  return records;
}

std::map<std::uint64_t, std::uint64_t> accepted_counts(std::uint64_t max_m) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const Record& rec : scan_records(max_m)) {
    if (rec.accepted) ++counts[rec.ratio];
  }
  return counts;
}

}  // namespace testref
