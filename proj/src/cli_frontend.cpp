#include "ratioseq/cli_frontend.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ratioseq/errors.hpp"
#include "ratioseq/heuristic_models.hpp"

namespace ratioseq {

namespace {

using nlohmann::ordered_json;

std::string error_payload(const std::string& message) {
  ordered_json doc;
  doc["error"] = message;
  return doc.dump(2) + "\n";
}

// Config checks shared by every subcommand; returns an error message or
// empty when valid.
std::string validate_common(const RunConfig& config) {
  if (config.max_m < 3) return "max_m must be >= 3";
  for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
    if (config.checkpoints[i] < 3 || config.checkpoints[i] > config.max_m) {
      return "checkpoints must lie in [3, max_m]";
    }
    if (i > 0 && config.checkpoints[i] <= config.checkpoints[i - 1]) {
      return "checkpoints must be strictly ascending";
    }
  }
  if (config.c2_cutoff < 3) return "c2-cutoff must be >= 3";
  return {};
}

ordered_json multiset_json(const RatioMultiset& multiset) {
  ordered_json counts = ordered_json::object();
  for (const auto& [ratio, count] : multiset.counts) counts[std::to_string(ratio)] = count;
  return counts;
}

ordered_json record_json(const RatioRecord& rec) {
  return {{"m", rec.m},
          {"p_prev", rec.p_prev},
          {"n", rec.n},
          {"largest_prime_factor", rec.largest_factor},
          {"ratio", rec.ratio},
          {"accepted", rec.accepted}};
}

struct Tables {
  PrimeTable primes;
  SpfTable spf;
};

// Sieve limits always derive from max_m; user-supplied limits would only
// invite under-sized tables.
Tables build_tables(std::uint64_t max_m, std::ostream& progress) {
  const std::uint64_t limit = sieve_limit_for(max_m);
  progress << "sieving to " << limit << " for " << max_m << " indices\n";
  Tables tables;
  tables.primes = build_prime_table(limit);
  if (tables.primes.count() < max_m) {
    throw InvariantViolationError("sieve bound produced only " +
                                  std::to_string(tables.primes.count()) + " primes for " +
                                  std::to_string(max_m));
  }
  tables.spf = build_spf_table(limit);
  return tables;
}

int write_payload(const CommandResult& result, const std::string& out_path, std::ostream& out,
                  std::ostream& progress) {
  if (out_path.empty()) {
    out << result.payload;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      progress << "error: cannot open " << out_path << " for writing\n";
      return kExitUsage;
    }
    file.write(result.payload.data(), static_cast<std::streamsize>(result.payload.size()));
    if (!file) {
      progress << "error: short write to " << out_path << "\n";
      return kExitUsage;
    }
  }
  return result.status;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& progress,
                const std::function<CommandResult(const RunConfig&, const PrimeTable&,
                                                  const SpfTable&)>& command) {
  const std::string error = validate_common(config);
  if (!error.empty()) {
    progress << "error: " << error << "\n";
    return kExitUsage;
  }
  try {
    const Tables tables = build_tables(config.max_m, progress);
    return write_payload(command(config, tables.primes, tables.spf), config.out_path, out,
                         progress);
  } catch (const std::invalid_argument& e) {
    progress << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // Sizing is automatic, so table-too-small or invariant errors escaping
    // to here are internal bugs, not usage mistakes.
    progress << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace

CommandResult scan_with_tables(const RunConfig& config, const PrimeTable& primes,
                               const SpfTable& spf) {
  if (config.format == OutputFormat::tsv) {
    return {kExitUsage, error_payload("scan emits csv, json or bfile")};
  }
  ScanOptions options{config.workers, config.keep_records};
  const ScanResult result = scan(config.max_m, primes, spf, options);

  for (const auto& [ratio, count] : result.multiset.counts) {
    if (ratio % 2 != 0) {
      return {kExitInvariant, error_payload("accepted ratio " + std::to_string(ratio) +
                                            " is odd (count " + std::to_string(count) + ")")};
    }
  }

  switch (config.format) {
    case OutputFormat::csv:
      if (config.keep_records) return {kExitOk, write_record_csv(result.records)};
      return {kExitOk, write_frequency_csv(result.multiset)};
    case OutputFormat::bfile: {
      const std::vector<std::uint64_t> order = frequency_order(result.multiset);
      return {kExitOk, export_bfile(order)};
    }
    case OutputFormat::json:
    default: {
      ordered_json doc;
      doc["N"] = config.max_m;
      doc["accepted_total"] = result.multiset.accepted_total;
      doc["counts"] = multiset_json(result.multiset);
      doc["frequency_order"] = frequency_order(result.multiset);
      if (config.keep_records) {
        doc["records"] = ordered_json::array();
        for (const RatioRecord& rec : result.records) doc["records"].push_back(record_json(rec));
      }
      return {kExitOk, doc.dump(2) + "\n"};
    }
  }
}

CommandResult report_with_tables(const RunConfig& config, const PrimeTable& primes,
                                 const SpfTable& spf) {
  if (config.format != OutputFormat::json) {
    return {kExitUsage, error_payload("report emits json")};
  }
  ScanOptions options{config.workers, false};

  ordered_json doc;
  if (config.checkpoints.empty()) {
    const ScanResult result = scan(config.max_m, primes, spf, options);
    const TableReport report =
        table_report(config.max_m, result.multiset, primes, spf, config.c2_cutoff);
    doc = report_json(report);
    return {report.all_match ? kExitOk : kExitMismatch, doc.dump(2) + "\n"};
  }

  // With checkpoints: one pass, final snapshot feeds the comparison table,
  // intermediate snapshots feed fits and convergence.
  std::vector<std::uint64_t> checkpoints = config.checkpoints;
  if (checkpoints.back() != config.max_m) checkpoints.push_back(config.max_m);
  const CheckpointSeries series =
      checkpoint_scan(config.max_m, checkpoints, primes, spf, options);
  const TableReport report =
      table_report(config.max_m, series.counts_at.back(), primes, spf, config.c2_cutoff);
  doc = report_json(report);
  doc["checkpoints"] = series.checkpoints;
  doc["loglog_fits"] = ordered_json::array();
  for (std::uint64_t ratio : report.freq_order) {
    try {
      const LogLogFit fit = loglog_fit(series, ratio);
      ordered_json entry;
      entry["ratio"] = ratio;
      entry["slope"] = fit.slope;
      entry["intercept"] = fit.intercept;
      entry["points"] = fit.points;
      doc["loglog_fits"].push_back(entry);
    } catch (const InsufficientDataError&) {
      // fewer than two nonzero checkpoints: nothing to fit
    }
  }
  ordered_json convergence = ordered_json::array();
  for (const auto& value : convergence_ratio(6, 4, series)) {
    convergence.push_back(value ? ordered_json(*value) : ordered_json(nullptr));
  }
  doc["convergence_6_over_4"] = convergence;
  doc["warnings"] = convergence_warnings(series);
  return {report.all_match ? kExitOk : kExitMismatch, doc.dump(2) + "\n"};
}

CommandResult verify_with_tables(const RunConfig& config, const PrimeTable& primes,
                                 const SpfTable& spf) {
  if (config.format != OutputFormat::json) {
    return {kExitUsage, error_payload("verify emits json")};
  }

  ordered_json doc;
  doc["max_m"] = config.max_m;
  ordered_json checks = ordered_json::array();
  ordered_json counterexample = nullptr;
  bool all_passed = true;

  auto add_check = [&](const char* name, std::uint64_t violations, std::uint64_t examined,
                       const ordered_json& first_bad) {
    ordered_json entry;
    entry["name"] = name;
    entry["passed"] = violations == 0;
    entry["violations"] = violations;
    entry["examined"] = examined;
    checks.push_back(entry);
    if (violations != 0) {
      all_passed = false;
      if (counterexample.is_null()) {
        counterexample = first_bad;
        counterexample["check"] = name;
      }
    }
  };

  // Accepted-record suite: parity, prime-ratio corollary, strict bound,
  // reconstruction, per-record oracle recheck.
  ScanOptions options{config.workers, true};
  const ScanResult result = scan(config.max_m, primes, spf, options);
  std::uint64_t parity_bad = 0, prime_bad = 0, bound_bad = 0, reconstruct_bad = 0,
                oracle_bad = 0;
  ordered_json parity_first = nullptr, prime_first = nullptr, bound_first = nullptr,
               reconstruct_first = nullptr, oracle_first = nullptr;
  auto note = [](ordered_json& slot, const RatioRecord& rec) {
    if (slot.is_null()) slot = record_json(rec);
  };
  for (const RatioRecord& rec : result.records) {
    if (rec.ratio % 2 != 0) {
      ++parity_bad;
      note(parity_first, rec);
    }
    const bool ratio_prime = lpf_oracle(std::max<std::uint64_t>(rec.ratio, 2)) == rec.ratio &&
                             rec.ratio >= 2;
    if (ratio_prime && rec.ratio != 2) {
      ++prime_bad;
      note(prime_first, rec);
    }
    if (rec.m >= 6 && !ratio_ceiling_check(rec.m, rec.ratio).satisfied) {
      ++bound_bad;
      note(bound_first, rec);
    }
    if (rec.largest_factor * rec.ratio != rec.n || rec.p_prev + 1 != rec.n) {
      ++reconstruct_bad;
      note(reconstruct_first, rec);
    }
    if (lpf_oracle(rec.n) != rec.largest_factor) {
      ++oracle_bad;
      note(oracle_first, rec);
    }
  }
  const std::uint64_t accepted = result.records.size();
  add_check("parity_even_accepted_ratio", parity_bad, accepted, parity_first);
  add_check("prime_ratio_only_two", prime_bad, accepted, prime_first);
  add_check("ratio_ceiling_strict", bound_bad, accepted, bound_first);
  add_check("factor_reconstruction", reconstruct_bad, accepted, reconstruct_first);
  add_check("record_oracle_recheck", oracle_bad, accepted, oracle_first);

  // Dense oracle equivalence sweep, ascending so the first failure is the
  // smallest failing n.
  const std::uint64_t sweep_limit = std::min<std::uint64_t>(spf.limit, 1'000'000);
  std::uint64_t sweep_bad = 0;
  ordered_json sweep_first = nullptr;
  for (std::uint64_t n = 2; n <= sweep_limit; ++n) {
    const std::uint64_t sieve_lpf = largest_prime_factor(n, spf);
    const std::uint64_t oracle_lpf = lpf_oracle(n);
    if (sieve_lpf != oracle_lpf) {
      ++sweep_bad;
      if (sweep_first.is_null()) {
        sweep_first = {{"n", n}, {"sieve", sieve_lpf}, {"oracle", oracle_lpf}};
      }
    }
  }
  add_check("lpf_oracle_equivalence", sweep_bad, sweep_limit - 1, sweep_first);

  doc["accepted_records"] = accepted;
  doc["checks"] = checks;
  doc["passed"] = all_passed;
  doc["counterexample"] = counterexample;
  return {all_passed ? kExitOk : kExitInvariant, doc.dump(2) + "\n"};
}

CommandResult model_with_tables(const RunConfig& config, const PrimeTable& primes,
                                const SpfTable& spf) {
  if (config.r < 2 || config.r % 2 != 0) {
    return {kExitUsage, error_payload("model requires an even r >= 2")};
  }
  if (config.format != OutputFormat::json && config.format != OutputFormat::tsv) {
    return {kExitUsage, error_payload("model emits json, or tsv with checkpoints")};
  }
  if (config.format == OutputFormat::tsv && config.checkpoints.empty()) {
    return {kExitUsage, error_payload("tsv plot data needs --checkpoints")};
  }

  ScanOptions options{config.workers, false};
  std::vector<std::uint64_t> checkpoints = config.checkpoints;
  if (checkpoints.empty() || checkpoints.back() != config.max_m) {
    checkpoints.push_back(config.max_m);
  }
  const CheckpointSeries series = checkpoint_scan(config.max_m, checkpoints, primes, spf, options);
  const RatioMultiset& final_counts = series.counts_at.back();
  auto it = final_counts.counts.find(config.r);
  const std::uint64_t empirical = it != final_counts.counts.end() ? it->second : 0;
  const ModelEstimate estimate =
      model_estimate(config.r, config.max_m, empirical, primes, config.c2_cutoff);

  if (config.format == OutputFormat::tsv) {
    try {
      return {kExitOk, export_loglog_tsv(loglog_fit(series, config.r))};
    } catch (const InsufficientDataError& e) {
      return {kExitUsage, error_payload(e.what())};
    }
  }

  ordered_json doc;
  doc["r"] = estimate.r;
  doc["N"] = estimate.scan_bound;
  doc["phi"] = estimate.phi;
  doc["empirical_count"] = estimate.empirical_count;
  doc["dirichlet"] = estimate.dirichlet;
  doc["singular_series"] = estimate.singular_series;
  doc["hl"] = estimate.hl;
  doc["fitted_C"] = estimate.fitted_c;
  doc["fitted_C_alt"] = estimate.fitted_c_alt;
  doc["c2_cutoff"] = config.c2_cutoff;

  if (!config.checkpoints.empty()) {
    doc["checkpoints"] = series.checkpoints;
    ordered_json counts = ordered_json::array();
    for (const RatioMultiset& snapshot : series.counts_at) {
      auto found = snapshot.counts.find(config.r);
      counts.push_back(found != snapshot.counts.end() ? found->second : 0);
    }
    doc["counts_at_checkpoints"] = counts;
    try {
      const LogLogFit fit = loglog_fit(series, config.r);
      doc["loglog"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"points", fit.points}};
    } catch (const InsufficientDataError& e) {
      doc["loglog"] = nullptr;
      doc["loglog_note"] = e.what();
    }
    // Convergence against the canonical denominator family 4 (the published
    // comparison pair); for r = 4 itself, the 6-vs-4 pair.
    const std::uint64_t numerator = config.r == 4 ? 6 : config.r;
    ordered_json convergence = ordered_json::array();
    for (const auto& value : convergence_ratio(numerator, 4, series)) {
      convergence.push_back(value ? ordered_json(*value) : ordered_json(nullptr));
    }
    doc["convergence"] = {{"numerator", numerator}, {"denominator", 4}, {"values", convergence}};
  }
  return {kExitOk, doc.dump(2) + "\n"};
}

int run_scan(const RunConfig& config, std::ostream& out, std::ostream& progress) {
  return run_command(config, out, progress, scan_with_tables);
}

int run_report(const RunConfig& config, std::ostream& out, std::ostream& progress) {
  return run_command(config, out, progress, report_with_tables);
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& progress) {
  return run_command(config, out, progress, verify_with_tables);
}

int run_model(const RunConfig& config, std::ostream& out, std::ostream& progress) {
  return run_command(config, out, progress, model_with_tables);
}

}  // namespace ratioseq
