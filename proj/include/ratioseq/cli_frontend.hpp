#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ratioseq/analysis_report.hpp"
#include "ratioseq/ratio_core.hpp"

namespace ratioseq {

enum class OutputFormat { csv, json, tsv, bfile };

struct RunConfig {
  std::uint64_t max_m = 0;
  std::vector<std::uint64_t> checkpoints;
  OutputFormat format = OutputFormat::json;
  std::string out_path;  // empty = standard output
  unsigned workers = 0;  // 0 = auto
  bool keep_records = false;
  std::uint64_t r = 0;  // model subcommand only
  std::uint64_t c2_cutoff = kDefaultC2Cutoff;
};

// Exit statuses, shared across subcommands:
//   0 success, 1 reference mismatch, 2 usage, 3 invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;

struct CommandResult {
  int status = kExitOk;
  std::string payload;  // the bytes destined for stdout or --out
};

// Table-injected command cores. The run_* wrappers below size and build the
// tables themselves; these exist so tests can drive the commands against
// prepared (or deliberately corrupted) tables.
CommandResult scan_with_tables(const RunConfig& config, const PrimeTable& primes,
                               const SpfTable& spf);
CommandResult report_with_tables(const RunConfig& config, const PrimeTable& primes,
                                 const SpfTable& spf);
CommandResult verify_with_tables(const RunConfig& config, const PrimeTable& primes,
                                 const SpfTable& spf);
CommandResult model_with_tables(const RunConfig& config, const PrimeTable& primes,
                                const SpfTable& spf);

// Full pipelines: validate config, auto-size sieves from max_m, run, write
// the payload to config.out_path or `out`. Progress goes to `progress`
// (standard error in the CLI) so standard output stays machine-parseable.
int run_scan(const RunConfig& config, std::ostream& out, std::ostream& progress);
int run_report(const RunConfig& config, std::ostream& out, std::ostream& progress);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& progress);
int run_model(const RunConfig& config, std::ostream& out, std::ostream& progress);

}  // namespace ratioseq
