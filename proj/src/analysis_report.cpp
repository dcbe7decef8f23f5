#include "ratioseq/analysis_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ratioseq/errors.hpp"
#include "ratioseq/factor_engine.hpp"

namespace ratioseq {

namespace {

// Reference counts for the two published scales.
struct ReferenceRow {
  std::uint64_t ratio;
  std::uint64_t count_50k;
  std::uint64_t count_2m;
};

constexpr std::uint64_t kSmallScale = 50'000;
constexpr std::uint64_t kFullScale = 2'000'000;
constexpr std::uint64_t kFullScaleDistinct = 8;

constexpr ReferenceRow kReferenceRows[] = {
    {2, 2882, 73113}, {6, 2155, 55270}, {4, 1544, 39251}, {8, 786, 20011},
    {10, 719, 18367}, {12, 201, 5160},  {14, 0, 1},       {16, 0, 1},
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

CheckpointSeries checkpoint_scan(std::uint64_t max_m, const std::vector<std::uint64_t>& checkpoints,
                                 const PrimeTable& primes, const SpfTable& spf,
                                 const ScanOptions& options) {
  if (max_m < 3) throw std::invalid_argument("checkpoint_scan: max_m must be >= 3");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 3 || checkpoints[i] > max_m) {
      throw std::invalid_argument("checkpoint_scan: checkpoint out of [3, max_m]");
    }
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw std::invalid_argument("checkpoint_scan: checkpoints must be strictly ascending");
    }
  }

  CheckpointSeries series;
  series.checkpoints = checkpoints;
  series.counts_at.reserve(checkpoints.size());

  // One pass: scan each inter-checkpoint interval, accumulate, snapshot.
  ScanOptions interval_options = options;
  interval_options.keep_records = false;
  RatioMultiset running;
  std::uint64_t next_first = 3;
  for (std::uint64_t checkpoint : checkpoints) {
    if (checkpoint >= next_first) {
      running.merge(scan_range(next_first, checkpoint, primes, spf, interval_options).multiset);
      next_first = checkpoint + 1;
    }
    running.max_m = checkpoint;
    series.counts_at.push_back(running);
  }
  return series;
}

LogLogFit loglog_fit(const CheckpointSeries& series, std::uint64_t r) {
  LogLogFit fit;
  fit.r = r;
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    auto it = series.counts_at[i].counts.find(r);
    if (it == series.counts_at[i].counts.end() || it->second == 0) continue;
    fit.points.emplace_back(std::log(static_cast<double>(series.checkpoints[i])),
                            std::log(static_cast<double>(it->second)));
  }
  if (fit.points.size() < 2) {
    throw InsufficientDataError("loglog_fit: need >= 2 checkpoints with nonzero count for r = " +
                                std::to_string(r));
  }
  double mean_x = 0, mean_y = 0;
  for (const auto& [x, y] : fit.points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(fit.points.size());
  mean_y /= static_cast<double>(fit.points.size());
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

bool has_reference_counts(std::uint64_t scan_bound) {
  return scan_bound == kSmallScale || scan_bound == kFullScale;
}

std::optional<std::uint64_t> reference_count(std::uint64_t ratio, std::uint64_t scan_bound) {
  if (!has_reference_counts(scan_bound)) return std::nullopt;
  for (const ReferenceRow& row : kReferenceRows) {
    if (row.ratio == ratio) return scan_bound == kSmallScale ? row.count_50k : row.count_2m;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> reference_ratios(std::uint64_t scan_bound) {
  std::vector<std::uint64_t> ratios;
  if (!has_reference_counts(scan_bound)) return ratios;
  for (const ReferenceRow& row : kReferenceRows) ratios.push_back(row.ratio);
  return ratios;
}

TableReport table_report(std::uint64_t scan_bound, const RatioMultiset& multiset,
                         const PrimeTable& primes, const SpfTable& spf,
                         std::uint64_t c2_cutoff) {
  TableReport report;
  report.scan_bound = scan_bound;
  report.freq_order = frequency_order(multiset);
  report.distinct_ratios = multiset.counts.size();

  // Row order: empirical frequency order, then reference-only ratios
  // (ascending) so zero-count reference rows still appear.
  std::vector<std::uint64_t> row_ratios = report.freq_order;
  for (std::uint64_t ratio : reference_ratios(scan_bound)) {
    if (multiset.counts.find(ratio) == multiset.counts.end()) row_ratios.push_back(ratio);
  }

  for (std::uint64_t ratio : row_ratios) {
    ReportRow row;
    row.ratio = ratio;
    auto it = multiset.counts.find(ratio);
    row.count = it != multiset.counts.end() ? it->second : 0;
    row.reference = reference_count(ratio, scan_bound);
    row.phi = euler_totient(ratio);
    row.dirichlet = dirichlet_estimate(ratio, scan_bound);
    try {
      row.hl = hl_estimate(ratio, scan_bound, primes, c2_cutoff);
    } catch (const std::invalid_argument&) {
      row.hl = std::nullopt;  // offset limit <= e at tiny bounds
    }
    row.fitted_c = fit_constant_c(row.count, ratio, scan_bound);
    row.fitted_c_alt = fit_constant_c_alt(row.count, ratio, scan_bound);
    if (row.reference) {
      row.match = row.count == *row.reference;
      if (!*row.match) report.all_match = false;
    }
    report.max_fitted_c = std::max(report.max_fitted_c, row.fitted_c);
    report.rows.push_back(row);
  }
  report.within_sieve_band = report.max_fitted_c <= 2.0;

  if (scan_bound == kFullScale) {
    report.expected_distinct = kFullScaleDistinct;
    if (report.distinct_ratios != kFullScaleDistinct) report.all_match = false;
  }

  // Localize any disagreement. A wrongly rejected index never shows up in
  // the accepted records, so the sweep re-verifies every m against the
  // trial-division oracle: zero pipeline disagreements pins the divergence
  // on the reference side.
  std::vector<std::uint64_t> divergent;
  for (const ReportRow& row : report.rows) {
    if (row.match && !*row.match) divergent.push_back(row.ratio);
  }
  if (!divergent.empty()) {
    ScanOptions options;
    options.keep_records = true;
    const ScanResult rescan = scan(scan_bound, primes, spf, options);

    for (std::uint64_t m = 3; m <= scan_bound; ++m) {
      const std::uint64_t n = primes.primes[m - 2] + 1;
      const std::uint64_t sieve_factor = largest_prime_factor(n, spf);
      const std::uint64_t oracle_factor = lpf_oracle(n);
      if (sieve_factor != oracle_factor) {
        VerifiedRecord bad;
        bad.record = {m, n - 1, n, sieve_factor, n / sieve_factor, sieve_factor > m};
        bad.oracle_factor = oracle_factor;
        bad.oracle_agrees = false;
        report.pipeline_disagreements.push_back(bad);
      }
    }

    for (std::uint64_t ratio : divergent) {
      RatioMismatch mismatch;
      mismatch.ratio = ratio;
      auto found = multiset.counts.find(ratio);
      mismatch.empirical = found != multiset.counts.end() ? found->second : 0;
      mismatch.reference = *reference_count(ratio, scan_bound);
      for (const RatioRecord& rec : rescan.records) {
        if (rec.ratio != ratio) continue;
        VerifiedRecord verified;
        verified.record = rec;
        verified.oracle_factor = lpf_oracle(rec.n);
        verified.oracle_agrees = verified.oracle_factor == rec.largest_factor &&
                                 rec.n == rec.largest_factor * rec.ratio &&
                                 verified.oracle_factor > rec.m;
        if (!verified.oracle_agrees) ++mismatch.oracle_disagreements;
        mismatch.records.push_back(verified);
      }
      report.mismatches.push_back(std::move(mismatch));
    }
    report.fault = report.pipeline_disagreements.empty() ? FaultLocalization::reference_side
                                                         : FaultLocalization::pipeline_side;
  }
  return report;
}

std::optional<std::uint64_t> first_occurrence(std::uint64_t ratio, std::uint64_t max_m,
                                              const PrimeTable& primes, const SpfTable& spf) {
  if (ratio < 2 || ratio % 2 != 0) {
    throw std::invalid_argument("first_occurrence: ratio must be even and >= 2");
  }
  if (max_m < 3) throw std::invalid_argument("first_occurrence: max_m must be >= 3");
  for (std::uint64_t m = 3; m <= max_m; ++m) {
    const RatioRecord rec = ratio_record(m, primes, spf);
    if (rec.accepted && rec.ratio == ratio) return m;
  }
  return std::nullopt;
}

std::vector<std::optional<double>> convergence_ratio(std::uint64_t r1, std::uint64_t r2,
                                                     const CheckpointSeries& series) {
  std::vector<std::optional<double>> values;
  values.reserve(series.checkpoints.size());
  for (const RatioMultiset& counts : series.counts_at) {
    auto num = counts.counts.find(r1);
    auto den = counts.counts.find(r2);
    if (den == counts.counts.end() || den->second == 0) {
      values.push_back(std::nullopt);
      continue;
    }
    const double numerator =
        num != counts.counts.end() ? static_cast<double>(num->second) : 0.0;
    values.push_back(numerator / static_cast<double>(den->second));
  }
  return values;
}

std::vector<std::string> convergence_warnings(const CheckpointSeries& series) {
  std::vector<std::string> warnings;
  const auto values = convergence_ratio(6, 4, series);
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    if (series.checkpoints[i] < 50'000) continue;
    const std::string at = "counts[6]/counts[4] at N=" + std::to_string(series.checkpoints[i]);
    if (!values[i].has_value()) {
      warnings.push_back(at + " is undefined (zero denominator)");
    } else if (*values[i] < 1.0) {
      warnings.push_back(at + " dropped below 1: " + std::to_string(*values[i]));
    }
  }
  return warnings;
}

std::string export_bfile(std::span<const std::uint64_t> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += std::to_string(i + 1);
    out += ' ';
    out += std::to_string(items[i]);
    out += '\n';
  }
  return out;
}

std::string export_loglog_tsv(const LogLogFit& fit) {
  std::string out = "ln_N\tln_count\n";
  for (const auto& [x, y] : fit.points) {
    out += format_double(x);
    out += '\t';
    out += format_double(y);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json report_json(const TableReport& report) {
  nlohmann::ordered_json doc;
  doc["N"] = report.scan_bound;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json entry;
    entry["ratio"] = row.ratio;
    entry["count"] = row.count;
    entry["reference"] = row.reference ? nlohmann::ordered_json(*row.reference)
                                       : nlohmann::ordered_json(nullptr);
    entry["phi"] = row.phi;
    entry["dirichlet"] = row.dirichlet;
    entry["hl"] = row.hl ? nlohmann::ordered_json(*row.hl) : nlohmann::ordered_json(nullptr);
    entry["fitted_C"] = row.fitted_c;
    entry["fitted_C_alt"] = row.fitted_c_alt;
    entry["match"] = row.match ? nlohmann::ordered_json(*row.match)
                               : nlohmann::ordered_json(nullptr);
    doc["rows"].push_back(entry);
  }
  doc["distinct_ratios"] = report.distinct_ratios;
  doc["frequency_order"] = report.freq_order;
  if (report.expected_distinct) {
    doc["distinct_ratios_expected"] = *report.expected_distinct;
    doc["distinct_ratios_match"] = report.distinct_ratios == *report.expected_distinct;
  }
  doc["max_fitted_C"] = report.max_fitted_c;
  doc["sieve_band_K2_satisfied"] = report.within_sieve_band;
  doc["all_match"] = report.all_match;
  switch (report.fault) {
    case FaultLocalization::none:
      doc["fault_localization"] = nullptr;
      break;
    case FaultLocalization::reference_side:
      doc["fault_localization"] = "reference_side";
      break;
    case FaultLocalization::pipeline_side:
      doc["fault_localization"] = "pipeline_side";
      break;
  }
  doc["pipeline_disagreements"] = nlohmann::ordered_json::array();
  for (const VerifiedRecord& bad : report.pipeline_disagreements) {
    doc["pipeline_disagreements"].push_back({{"m", bad.record.m},
                                             {"n", bad.record.n},
                                             {"sieve_factor", bad.record.largest_factor},
                                             {"oracle_factor", bad.oracle_factor}});
  }
  doc["mismatches"] = nlohmann::ordered_json::array();
  for (const RatioMismatch& mismatch : report.mismatches) {
    nlohmann::ordered_json entry;
    entry["ratio"] = mismatch.ratio;
    entry["empirical"] = mismatch.empirical;
    entry["reference"] = mismatch.reference;
    entry["oracle_disagreements"] = mismatch.oracle_disagreements;
    entry["records"] = nlohmann::ordered_json::array();
    for (const VerifiedRecord& verified : mismatch.records) {
      entry["records"].push_back({{"m", verified.record.m},
                                  {"p_prev", verified.record.p_prev},
                                  {"n", verified.record.n},
                                  {"largest_prime_factor", verified.record.largest_factor},
                                  {"ratio", verified.record.ratio},
                                  {"oracle_factor", verified.oracle_factor},
                                  {"oracle_agrees", verified.oracle_agrees}});
    }
    doc["mismatches"].push_back(entry);
  }
  return doc;
}

}  // namespace ratioseq
