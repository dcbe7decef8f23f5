// Acceptance suite: one line per criterion, exit code = number of failures.
//
// The reference counts for the full 2,000,000-index scale are treated as
// published claims under comparison, not ground truth: when the computed
// counts diverge, the suite reports the divergence with per-index oracle
// re-verification instead of silently accepting either side.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ratioseq/analysis_report.hpp"
#include "ratioseq/cli_frontend.hpp"
#include "ratioseq/errors.hpp"
#include "ratioseq/heuristic_models.hpp"
#include "ratioseq/ratio_core.hpp"
#include "reference_oracle.hpp"

using namespace ratioseq;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool passed, const std::string& detail) {
  std::printf("%s criterion %d: %s — %s\n", passed ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  if (!passed) ++failures;
}

void report_invariant(const std::string& name, bool passed, const std::string& detail) {
  std::printf("%s invariant: %s — %s\n", passed ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!passed) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double peak_rss_gib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);  // KiB on Linux
}

std::string counts_to_string(const std::map<std::uint64_t, std::uint64_t>& counts) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [ratio, count] : counts) {
    if (!first) out << ", ";
    out << ratio << ":" << count;
    first = false;
  }
  out << "}";
  return out.str();
}

std::string order_to_string(const std::vector<std::uint64_t>& order) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out << ",";
    out << order[i];
  }
  out << "]";
  return out.str();
}

const std::map<std::uint64_t, std::uint64_t> kReference50k = {
    {2, 2882}, {6, 2155}, {4, 1544}, {8, 786}, {10, 719}, {12, 201}};
const std::vector<std::uint64_t> kReferenceOrder = {2, 6, 4, 8, 10, 12, 14, 16};

}  // namespace

int main() {
  std::printf("building tables for the full 2,000,000-index scale...\n");
  const auto build_start = Clock::now();
  const PrimeTable big_primes = build_prime_table_for_count(2'000'000);
  const SpfTable big_spf = build_spf_table(big_primes.limit);
  const double build_seconds = seconds_since(build_start);
  std::printf("tables ready in %.1f s (sieve limit %llu)\n", build_seconds,
              static_cast<unsigned long long>(big_primes.limit));

  // ---- criterion 1: exact reproduction at N = 50000, single-threaded ----
  {
    const auto start = Clock::now();
    const PrimeTable primes = build_prime_table_for_count(50'000);
    const SpfTable spf = build_spf_table(primes.limit);
    ScanOptions single;
    single.workers = 1;
    const ScanResult result = scan(50'000, primes, spf, single);
    const double elapsed = seconds_since(start);

    const bool counts_ok = result.multiset.counts == kReference50k;
    bool ok = counts_ok && elapsed <= 30.0;
    std::string detail = "counts " + std::string(counts_ok ? "match exactly" : "MISMATCH") +
                         ", " + std::to_string(elapsed) + " s single-threaded (limit 30)";
    if (!counts_ok) {
      const TableReport rep = table_report(50'000, result.multiset, primes, spf);
      detail += "; divergent ratios " + std::to_string(rep.mismatches.size()) +
                ", pipeline disagreements " + std::to_string(rep.pipeline_disagreements.size());
      detail += "; computed " + counts_to_string(result.multiset.counts);
    }
    report(1, "published counts at N=50000", ok, detail);
  }

  // ---- criterion 2: full scale N = 2,000,000 ----
  {
    const auto start = Clock::now();
    const ScanResult result = scan(2'000'000, big_primes, big_spf);
    const TableReport rep = table_report(2'000'000, result.multiset, big_primes, big_spf);
    const double elapsed = build_seconds + seconds_since(start);

    const std::vector<std::uint64_t> order = frequency_order(result.multiset);
    const bool order_ok = order == kReferenceOrder;
    const bool distinct_ok = result.multiset.counts.size() == 8;
    const bool runtime_ok = elapsed <= 900.0;
    const bool memory_ok = peak_rss_gib() <= 1.0;

    // Count comparison: mismatches must be reported with oracle
    // re-verification and surface as exit 1, per criterion 1 semantics.
    bool comparison_ok = true;
    std::string comparison_note;
    if (rep.all_match) {
      comparison_note = "counts match the reference column";
    } else {
      comparison_ok = !rep.mismatches.empty() &&
                      rep.fault != FaultLocalization::none;
      std::uint64_t oracle_bad = 0, listed = 0;
      for (const RatioMismatch& mismatch : rep.mismatches) {
        oracle_bad += mismatch.oracle_disagreements;
        listed += mismatch.records.size();
      }
      {
        RunConfig config;
        config.max_m = 2'000'000;
        const CommandResult cli = report_with_tables(config, big_primes, big_spf);
        comparison_ok = comparison_ok && cli.status == kExitMismatch;
      }
      std::ostringstream note;
      note << rep.mismatches.size() << " divergent ratios reported (exit 1), " << listed
           << " contributing records oracle-reverified, " << oracle_bad
           << " oracle disagreements, " << rep.pipeline_disagreements.size()
           << " pipeline disagreements -> fault localized to "
           << (rep.fault == FaultLocalization::reference_side ? "reference side"
                                                              : "pipeline side");
      comparison_note = note.str();
    }

    const bool ok = order_ok && distinct_ok && comparison_ok && runtime_ok && memory_ok;
    std::ostringstream detail;
    detail << "distinct=" << result.multiset.counts.size() << (distinct_ok ? " (ok)" : " (BAD)")
           << "; frequency order " << order_to_string(order)
           << (order_ok ? " equals reference" : " != reference " + order_to_string(kReferenceOrder))
           << "; " << comparison_note << "; computed counts "
           << counts_to_string(result.multiset.counts) << "; " << elapsed
           << " s incl. tables (limit 900), peak rss " << peak_rss_gib() << " GiB (limit 1)";
    report(2, "full-scale frequency order, distinct count, reference comparison", ok,
           detail.str());
    report_invariant("sieve-method ceiling K = 2 at both published scales",
                     rep.within_sieve_band,
                     "max fitted C at 2e6 = " + std::to_string(rep.max_fitted_c) +
                         " (50000-scale band asserted in the unit suite)");
  }

  // ---- criterion 3: convergence ratio 6 vs 4 ----
  {
    const CheckpointSeries series =
        checkpoint_scan(2'000'000, {50'000, 2'000'000}, big_primes, big_spf);
    const auto values = convergence_ratio(6, 4, series);
    bool ok = values.size() == 2 && values[0].has_value() && values[1].has_value();

    const double implied_50k = 2155.0 / 1544.0;
    double observed_50k = 0, observed_2m = 0;
    std::string note_2m;
    if (ok) {
      observed_50k = *values[0];
      observed_2m = *values[1];
      // counts match the reference at 50000, so the observed ratio must hit
      // the implied value to well inside 4 significant figures
      ok = std::abs(observed_50k - implied_50k) < 1e-12 &&
           std::abs(observed_50k - 1.3957) <= 5e-5;
      const bool counts_match_2m =
          series.counts_at[1].counts.find(6) != series.counts_at[1].counts.end() &&
          series.counts_at[1].counts.at(6) == 55270 &&
          series.counts_at[1].counts.at(4) == 39251;
      if (counts_match_2m) {
        ok = ok && std::abs(observed_2m - 1.408) <= 5e-4;
        note_2m = "matches 1.408";
      } else {
        // conditional clause (counts match exactly) not triggered
        note_2m = "reference-count condition not met, observed " +
                  std::to_string(observed_2m) + " reported (implied 1.408 not binding)";
      }
    }
    report(3, "convergence ratio counts[6]/counts[4]", ok,
           "at 50000: " + std::to_string(observed_50k) + " (implied 1.3957...); at 2000000: " +
               note_2m);
  }

  // ---- criterion 4: parity suite over [3, 10^5] ----
  {
    ScanOptions options;
    options.keep_records = true;
    const ScanResult result = scan(100'000, big_primes, big_spf, options);
    std::uint64_t odd = 0, odd_prime = 0;
    for (const RatioRecord& rec : result.records) {
      if (rec.ratio % 2 != 0) ++odd;
      if (rec.ratio != 2 && testref::is_prime(rec.ratio)) ++odd_prime;
    }
    report(4, "parity and prime-ratio corollary over [3, 10^5]", odd == 0 && odd_prime == 0,
           std::to_string(result.records.size()) + " accepted records, " + std::to_string(odd) +
               " odd ratios, " + std::to_string(odd_prime) + " prime ratios besides 2");
  }

  // ---- criterion 5: strict ratio ceiling over accepted 6 <= m <= 10^6 ----
  {
    ScanOptions options;
    options.keep_records = true;
    const ScanResult result = scan(1'000'000, big_primes, big_spf, options);
    std::uint64_t violations = 0, checked = 0;
    std::string first;
    for (const RatioRecord& rec : result.records) {
      if (rec.m < 6) continue;
      ++checked;
      if (!ratio_ceiling_check(rec.m, rec.ratio).satisfied) {
        ++violations;
        if (first.empty()) first = " first at m=" + std::to_string(rec.m);
      }
    }
    report(5, "ratio < ln m + ln ln m + 1 on accepted records to 10^6", violations == 0,
           std::to_string(checked) + " records checked, " + std::to_string(violations) +
               " violations" + first);
  }

  // ---- criterion 6: oracle equivalence ----
  {
    std::uint64_t lpf_bad = 0;
    for (std::uint64_t n = 2; n <= 1'000'000; ++n) {
      if (largest_prime_factor(n, big_spf) != lpf_oracle(n)) ++lpf_bad;
    }

    // scan vs the sequential brute-force reference: per-record agreement up
    // to 5000 pins every intermediate bound, then spot scans re-check the
    // cumulative counts directly
    ScanOptions options;
    options.keep_records = true;
    const ScanResult mine = scan(5000, big_primes, big_spf, options);
    const std::vector<testref::Record> reference = testref::scan_records(5000);
    std::uint64_t record_bad = 0;
    std::size_t at = 0;
    for (const testref::Record& ref : reference) {
      if (!ref.accepted) continue;
      if (at >= mine.records.size()) {
        ++record_bad;
        continue;
      }
      const RatioRecord& rec = mine.records[at++];
      if (rec.m != ref.m || rec.largest_factor != ref.largest || rec.ratio != ref.ratio) {
        ++record_bad;
      }
    }
    if (at != mine.records.size()) ++record_bad;
    bool spot_ok = true;
    for (std::uint64_t bound : {25u, 313u, 1000u, 2781u, 5000u}) {
      if (scan(bound, big_primes, big_spf).multiset.counts != testref::accepted_counts(bound)) {
        spot_ok = false;
      }
    }
    report(6, "largest-prime-factor and scan oracle equivalence",
           lpf_bad == 0 && record_bad == 0 && spot_ok,
           "lpf sweep to 10^6: " + std::to_string(lpf_bad) + " disagreements; " +
               std::to_string(mine.records.size()) + " accepted records to 5000 all " +
               (record_bad == 0 ? "match" : "MISMATCH") + " the brute-force reference; spot scans " +
               (spot_ok ? "match" : "MISMATCH"));
  }

  // ---- criterion 7: worker count cannot change the output bytes ----
  {
    std::vector<std::string> scans, reports;
    for (unsigned workers : {1u, 2u, 8u}) {
      RunConfig config;
      config.max_m = 100'000;
      config.workers = workers;
      scans.push_back(scan_with_tables(config, big_primes, big_spf).payload);
      reports.push_back(report_with_tables(config, big_primes, big_spf).payload);
    }
    const bool ok = scans[0] == scans[1] && scans[1] == scans[2] && reports[0] == reports[1] &&
                    reports[1] == reports[2];
    report(7, "byte-identical output for 1, 2 and 8 workers at N=10^5", ok,
           ok ? "scan and report payloads identical"
              : "payloads differ across worker counts");
  }

  // ---- criterion 8: log-log slopes ----
  {
    // synthetic counts c*N/ln N over a decade grid
    CheckpointSeries synthetic;
    synthetic.checkpoints = {10'000, 100'000, 1'000'000};
    for (std::uint64_t n : synthetic.checkpoints) {
      RatioMultiset ms;
      ms.max_m = n;
      const double model = 1000.0 * static_cast<double>(n) / std::log(static_cast<double>(n));
      ms.counts[2] = static_cast<std::uint64_t>(std::llround(model));
      ms.accepted_total = ms.counts[2];
      synthetic.counts_at.push_back(ms);
    }
    const double synthetic_slope = loglog_fit(synthetic, 2).slope;
    const bool synthetic_ok =
        synthetic_slope >= 0.90 && synthetic_slope <= 0.94 &&
        std::abs(synthetic_slope - 0.911954412) < 1e-6;

    const CheckpointSeries real =
        checkpoint_scan(2'000'000, {50'000, 2'000'000}, big_primes, big_spf);
    const double real_slope = loglog_fit(real, 2).slope;
    const bool counts_match = real.counts_at[0].counts.at(2) == 2882 &&
                              real.counts_at[1].counts.at(2) == 73113;
    bool real_ok = true;
    std::string real_note;
    if (counts_match) {
      real_ok = real_slope >= 0.85 && real_slope <= 0.90;
      real_note = "two-point slope " + std::to_string(real_slope) + " in [0.85, 0.90]";
    } else {
      real_note = "reference-count condition not met; observed two-point slope " +
                  std::to_string(real_slope) + " reported ([0.85,0.90] band not binding)";
    }
    report(8, "log-log slopes", synthetic_ok && real_ok,
           "synthetic slope " + std::to_string(synthetic_slope) + " (0.92 +/- 0.02); " +
               real_note);
  }

  // ---- criterion 9: singular-series construction ----
  {
    const double c2_7 = twin_prime_constant(10'000'000);
    const double c2_8 = twin_prime_constant(100'000'000);
    const double rel = std::abs(c2_7 - c2_8) / c2_8;
    // nine significant digits: relative difference below 1e-8
    const bool c2_ok = rel <= 1e-8;
    const bool h_ok = hl_singular_series(4) == hl_singular_series(2) &&
                      hl_singular_series(6) == 2.0 * hl_singular_series(2);
    std::ostringstream detail;
    detail.precision(12);
    detail << "C2(1e7)=" << c2_7 << ", C2(1e8)=" << c2_8 << ", rel diff " << rel
           << (c2_ok ? " <= 1e-8" : " > 1e-8") << "; H(4)==H(2) and H(6)==2H(2) "
           << (h_ok ? "exact" : "VIOLATED");
    report(9, "twin-prime-constant truncation and singular-series identities", c2_ok && h_ok,
           detail.str());
  }

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
