#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ratioseq/cli_frontend.hpp"

namespace {

using ratioseq::OutputFormat;
using ratioseq::RunConfig;

const std::map<std::string, OutputFormat> kFormats = {
    {"csv", OutputFormat::csv},
    {"json", OutputFormat::json},
    {"tsv", OutputFormat::tsv},
    {"bfile", OutputFormat::bfile},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ratioseq: factor each prime successor p_{m-1}+1 into its largest prime "
      "factor L and cofactor R, keep R where L > m, and study the resulting "
      "frequency-ordered multiset against density models"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  int (*runner)(const RunConfig&, std::ostream&, std::ostream&) = nullptr;

  auto add_shared = [&](CLI::App* cmd, bool with_checkpoints, bool with_cutoff) {
    cmd->add_option("--max-m", config.max_m, "scan bound N (indices 3..N)")->required();
    cmd->add_option("--format", format, "output format")
        ->transform(CLI::IsMember({"csv", "json", "tsv", "bfile"}));
    cmd->add_option("--out", config.out_path, "write output to a file instead of stdout");
    cmd->add_option("--workers", config.workers, "scan threads, 0 = auto");
    if (with_checkpoints) {
      cmd->add_option("--checkpoints", config.checkpoints,
                      "comma-separated snapshot bounds, ascending")
          ->delimiter(',');
    }
    if (with_cutoff) {
      cmd->add_option("--c2-cutoff", config.c2_cutoff,
                      "truncation bound for the twin-prime-constant product");
    }
  };

  CLI::App* scan = app.add_subcommand(
      "scan", "run the full scan; emit ratio counts and frequency order");
  add_shared(scan, false, false);
  scan->add_flag("--keep-records", config.keep_records,
                 "retain accepted records (record CSV / records array)");
  scan->callback([&] { runner = ratioseq::run_scan; });

  CLI::App* report = app.add_subcommand(
      "report", "compare counts against the published reference table");
  add_shared(report, true, true);
  report->callback([&] { runner = ratioseq::run_report; });

  CLI::App* verify = app.add_subcommand(
      "verify", "run the invariant suites (parity, bound, oracle equivalence)");
  add_shared(verify, false, false);
  verify->callback([&] { runner = ratioseq::run_verify; });

  CLI::App* model = app.add_subcommand(
      "model", "evaluate density-model estimates for one ratio value");
  add_shared(model, true, true);
  model->add_option("--r", config.r, "even ratio value")->required();
  model->callback([&] { runner = ratioseq::run_model; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ratioseq::kExitUsage;
  }

  config.format = kFormats.at(format);
  return runner(config, std::cout, std::cerr);
}
