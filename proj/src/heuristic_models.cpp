#include "ratioseq/heuristic_models.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ratioseq/errors.hpp"

namespace ratioseq {

namespace {

void require_even_ratio(std::uint64_t r, const char* who) {
  if (r < 2 || r % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": ratio must be even and >= 2");
  }
}

}  // namespace

std::uint64_t euler_totient(std::uint64_t r) {
  if (r < 1) throw std::invalid_argument("euler_totient: r must be >= 1");
  std::uint64_t phi = r;
  std::uint64_t v = r;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    phi -= phi / d;
    while (v % d == 0) v /= d;
  }
  if (v > 1) phi -= phi / v;
  return phi;
}

double dirichlet_estimate(std::uint64_t r, std::uint64_t scan_bound) {
  require_even_ratio(r, "dirichlet_estimate");
  if (scan_bound < 3) throw std::invalid_argument("dirichlet_estimate: bound must be >= 3");
  const double n = static_cast<double>(scan_bound);
  return n / (static_cast<double>(euler_totient(r)) * std::log(n));
}

double twin_prime_constant(std::uint64_t cutoff) {
  if (cutoff < 3) throw std::invalid_argument("twin_prime_constant: cutoff must be >= 3");
  static std::mutex mutex;
  static std::map<std::uint64_t, double> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(cutoff);
  if (it != cache.end()) return it->second;
  // Product evaluated in log space with compensated summation: factors in
  // the tail sit within a few ulps of 1, where a plain running product
  // quantizes at the 1e-11 level.
  double sum = 0.0, carry = 0.0;
  stream_primes(cutoff, [&](std::uint64_t p) {
    if (p == 2) return;
    const double q = static_cast<double>(p) - 1.0;
    const double term = std::log1p(-1.0 / (q * q)) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  });
  const double product = std::exp(sum);
  cache.emplace(cutoff, product);
  return product;
}

double hl_singular_series(std::uint64_t r, std::uint64_t c2_cutoff) {
  require_even_ratio(r, "hl_singular_series");
  double series = 2.0 * twin_prime_constant(c2_cutoff);
  std::uint64_t v = r;
  while (v % 2 == 0) v /= 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d != 0) continue;
    series *= static_cast<double>(d - 1) / static_cast<double>(d - 2);
    while (v % d == 0) v /= d;
  }
  if (v > 1) series *= static_cast<double>(v - 1) / static_cast<double>(v - 2);
  return series;
}

double hl_estimate_from_limit(std::uint64_t r, double x, std::uint64_t c2_cutoff) {
  require_even_ratio(r, "hl_estimate_from_limit");
  if (!(x > std::exp(1.0))) {
    throw std::invalid_argument("hl_estimate_from_limit: offset limit must exceed e");
  }
  const double series = hl_singular_series(r, c2_cutoff);
  return series * x / (std::log(x) * std::log(static_cast<double>(r) * x));
}

double hl_estimate(std::uint64_t r, std::uint64_t scan_bound, const PrimeTable& primes,
                   std::uint64_t c2_cutoff) {
  require_even_ratio(r, "hl_estimate");
  if (scan_bound < 4) throw std::invalid_argument("hl_estimate: bound must be >= 4");
  const double x =
      (static_cast<double>(nth_prime(scan_bound - 1, primes)) + 1.0) / static_cast<double>(r);
  return hl_estimate_from_limit(r, x, c2_cutoff);
}

double fit_constant_c(std::uint64_t empirical_count, std::uint64_t r, std::uint64_t scan_bound) {
  require_even_ratio(r, "fit_constant_c");
  if (scan_bound < 3) throw std::invalid_argument("fit_constant_c: bound must be >= 3");
  if (empirical_count == 0) return 0.0;
  const double n = static_cast<double>(scan_bound);
  return static_cast<double>(empirical_count) * static_cast<double>(euler_totient(r)) *
         std::log(n) / n;
}

double fit_constant_c_alt(std::uint64_t empirical_count, std::uint64_t r,
                          std::uint64_t scan_bound) {
  require_even_ratio(r, "fit_constant_c_alt");
  if (scan_bound < 3) throw std::invalid_argument("fit_constant_c_alt: bound must be >= 3");
  if (empirical_count == 0) return 0.0;
  const double n = static_cast<double>(scan_bound);
  return static_cast<double>(empirical_count) * static_cast<double>(euler_totient(r)) *
         std::log(n * std::log(n)) / n;
}

double ratio_ceiling(std::uint64_t m) {
  if (m < 3) throw std::invalid_argument("ratio_ceiling: m must be >= 3");
  const double x = static_cast<double>(m);
  return std::log(x) + std::log(std::log(x)) + 1.0;
}

BoundCheck ratio_ceiling_check(std::uint64_t m, std::uint64_t ratio) {
  const double bound = ratio_ceiling(m);
  return {m, bound, ratio, static_cast<double>(ratio) < bound};
}

ModelEstimate model_estimate(std::uint64_t r, std::uint64_t scan_bound,
                             std::uint64_t empirical_count, const PrimeTable& primes,
                             std::uint64_t c2_cutoff) {
  ModelEstimate estimate;
  estimate.r = r;
  estimate.scan_bound = scan_bound;
  estimate.phi = euler_totient(r);
  estimate.empirical_count = empirical_count;
  estimate.dirichlet = dirichlet_estimate(r, scan_bound);
  estimate.singular_series = hl_singular_series(r, c2_cutoff);
  estimate.hl = hl_estimate(r, scan_bound, primes, c2_cutoff);
  estimate.fitted_c = fit_constant_c(empirical_count, r, scan_bound);
  estimate.fitted_c_alt = fit_constant_c_alt(empirical_count, r, scan_bound);
  return estimate;
}

}  // namespace ratioseq
