#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ratioseq/errors.hpp"
#include "ratioseq/prime_engine.hpp"
#include "reference_oracle.hpp"

using namespace ratioseq;

TEST_CASE("smallest table") {
  const PrimeTable table = build_prime_table(2);
  CHECK(table.primes == std::vector<std::uint64_t>{2});
}

TEST_CASE("primes up to 30") {
  const PrimeTable table = build_prime_table(30);
  CHECK(table.primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(table.count() == 10);
}

TEST_CASE("primes up to 1000 against trial division") {
  const PrimeTable table = build_prime_table(1000);
  CHECK(table.count() == 168);
  CHECK(table.primes.back() == 997);
  CHECK(table.primes == testref::primes_upto(1000));
}

TEST_CASE("limit below 2 is rejected") {
  CHECK_THROWS_AS(build_prime_table(1), std::invalid_argument);
  CHECK_THROWS_AS(build_prime_table(0), std::invalid_argument);
}

TEST_CASE("segment span does not affect the result") {
  const PrimeTable coarse = build_prime_table(100000);
  for (std::uint64_t span : {16u, 257u, 4096u}) {
    CHECK(build_prime_table(100000, span).primes == coarse.primes);
  }
}

TEST_CASE("nth_prime") {
  const PrimeTable table = build_prime_table(1000);
  CHECK(nth_prime(1, table) == 2);
  CHECK(nth_prime(12, table) == 37);
  CHECK(nth_prime(168, table) == 997);
  CHECK_THROWS_AS(nth_prime(169, table), TableTooSmallError);
  CHECK_THROWS_AS(nth_prime(0, table), std::invalid_argument);
}

TEST_CASE("every listed entry is prime, strictly increasing, with no gaps skipped") {
  const PrimeTable table = build_prime_table(5000);
  std::size_t at = 0;
  for (std::uint64_t v = 2; v <= table.limit; ++v) {
    const bool prime = testref::is_prime(v);
    if (prime) {
      REQUIRE(at < table.count());
      REQUIRE(table.primes[at] == v);
      ++at;
    }
  }
  CHECK(at == table.count());
}

TEST_CASE("rebuilding larger extends without changing the prefix") {
  const PrimeTable small = build_prime_table(1000);
  const PrimeTable large = build_prime_table(100000);
  REQUIRE(large.count() >= small.count());
  for (std::size_t i = 0; i < small.count(); ++i) {
    CHECK(large.primes[i] == small.primes[i]);
  }
}

TEST_CASE("sieve_limit_for floor and small cases") {
  CHECK(sieve_limit_for(1) == 13);
  CHECK(sieve_limit_for(5) == 13);
  const std::uint64_t limit6 = sieve_limit_for(6);
  CHECK(limit6 >= 13);
  CHECK(build_prime_table(limit6).count() >= 6);
  CHECK_THROWS_AS(sieve_limit_for(0), std::invalid_argument);
}

TEST_CASE("sieve_limit_for covers two million indices") {
  const std::uint64_t limit = sieve_limit_for(2'000'000);
  const PrimeTable table = build_prime_table(limit);
  CHECK(table.count() >= 2'000'000);
  // independent anchors for the millionth and two-millionth primes
  CHECK(nth_prime(1'000'000, table) == 15'485'863);
  CHECK(nth_prime(2'000'000, table) == 32'452'843);
}

TEST_CASE("upper bound k(ln k + ln ln k) holds for 6 <= k <= 10^4") {
  const PrimeTable table = build_prime_table_for_count(10'000);
  for (std::uint64_t k = 6; k <= 10'000; ++k) {
    const double bound = static_cast<double>(k) *
                         (std::log(static_cast<double>(k)) +
                          std::log(std::log(static_cast<double>(k))));
    CHECK(static_cast<double>(nth_prime(k, table)) < bound);
  }
}

TEST_CASE("stream_primes matches the table route") {
  std::vector<std::uint64_t> streamed;
  stream_primes(4096, [&](std::uint64_t p) { streamed.push_back(p); });
  CHECK(streamed == build_prime_table(4096).primes);
}
