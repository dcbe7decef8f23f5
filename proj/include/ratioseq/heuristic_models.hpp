#pragma once

#include <cstdint>

#include "ratioseq/prime_engine.hpp"

namespace ratioseq {

// Truncation bound for the twin-prime-constant Euler product.
inline constexpr std::uint64_t kDefaultC2Cutoff = 10'000'000;

// Count of integers in [1, r] coprime to r, via factorization of r.
std::uint64_t euler_totient(std::uint64_t r);

// N / (phi(r) * ln N). Natural logarithm; r must be even (odd ratios never
// occur, so no estimate is defined for them).
double dirichlet_estimate(std::uint64_t r, std::uint64_t scan_bound);

// prod_{2 < p <= cutoff} (1 - 1/(p-1)^2). Computed once per cutoff and
// cached; immutable thereafter.
double twin_prime_constant(std::uint64_t cutoff = kDefaultC2Cutoff);

// H(r) = 2 C2 * prod_{p | r, p odd} (p-1)/(p-2), the pair-correlation
// constant for L and r*L - 1 simultaneously prime. r must be even.
double hl_singular_series(std::uint64_t r, std::uint64_t c2_cutoff = kDefaultC2Cutoff);

// H(r) * x / (ln x * ln(r x)): expected count of primes L <= x with
// r*L - 1 also prime. Requires x > e so both logarithms are positive.
double hl_estimate_from_limit(std::uint64_t r, double x,
                              std::uint64_t c2_cutoff = kDefaultC2Cutoff);

// The above with the offset limit x = (p_{N-1} + 1) / r taken from an
// actual scan bound N.
double hl_estimate(std::uint64_t r, std::uint64_t scan_bound, const PrimeTable& primes,
                   std::uint64_t c2_cutoff = kDefaultC2Cutoff);

// Empirical constant C = count * phi(r) * ln N / N; 0 when count is 0.
double fit_constant_c(std::uint64_t empirical_count, std::uint64_t r, std::uint64_t scan_bound);

// Alternative normalization C' = count * phi(r) * ln(N ln N) / N, emitted
// alongside the canonical constant in reports.
double fit_constant_c_alt(std::uint64_t empirical_count, std::uint64_t r,
                          std::uint64_t scan_bound);

// ln m + ln(ln m) + 1. Defined for m >= 3; the bound statement applies to
// accepted records with m >= 6.
double ratio_ceiling(std::uint64_t m);

struct BoundCheck {
  std::uint64_t m = 0;
  double bound_value = 0;
  std::uint64_t ratio = 0;
  bool satisfied = false;  // ratio < bound_value, strict
};

BoundCheck ratio_ceiling_check(std::uint64_t m, std::uint64_t ratio);

// Per-(r, N) model summary next to the observed count.
struct ModelEstimate {
  std::uint64_t r = 0;
  std::uint64_t scan_bound = 0;
  std::uint64_t phi = 0;
  std::uint64_t empirical_count = 0;
  double dirichlet = 0;
  double singular_series = 0;
  double hl = 0;
  double fitted_c = 0;
  double fitted_c_alt = 0;
};

ModelEstimate model_estimate(std::uint64_t r, std::uint64_t scan_bound,
                             std::uint64_t empirical_count, const PrimeTable& primes,
                             std::uint64_t c2_cutoff = kDefaultC2Cutoff);

}  // namespace ratioseq
