// Command-line front end: batch conversion of layered coreference
// annotation into entity-bracket CoNLL-U, directory statistics and
// validation, and merging of predicted coreference into base treebanks.
//
// Exit codes: 0 all files ok; 1 some files failed; 2 run-level error.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "corefud/corefud.hpp"

namespace {

using corefud::ReportFormat;

ReportFormat parse_format(const std::string& value) {
  return value == "json" ? ReportFormat::json : ReportFormat::text;
}

int exit_code(const corefud::RunReport& report) { return report.files_failed > 0 ? 1 : 0; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coreference corpus harmonization toolkit"};
  app.require_subcommand(1);

  // convert
  std::string manifest_path, out_dir, config_path, format = "text";
  int jobs = 0;
  long long timeout_seconds = -1;
  bool include_non_coref_zeros = false, emit_unannotated = false, no_zeros = false;
  std::string appos_linking;

  CLI::App* convert = app.add_subcommand(
      "convert", "convert annotation/parse file pairs listed in a manifest");
  convert->add_option("--manifest", manifest_path, "manifest of coref<TAB>parse pairs")->required();
  convert->add_option("--out", out_dir, "output directory")->required();
  convert->add_option("--config", config_path, "key=value configuration file");
  convert->add_option("--jobs", jobs, "worker count (default: logical CPUs)");
  convert->add_option("--timeout", timeout_seconds, "per-file time limit in seconds (0 = none)");
  convert->add_flag("--include-non-coref-zeros", include_non_coref_zeros,
                    "insert empty nodes for traces outside any span");
  convert->add_flag("--emit-unannotated", emit_unannotated,
                    "write output files for documents without coreference spans");
  convert->add_flag("--no-zeros", no_zeros, "disable empty-node insertion entirely");
  convert->add_option("--appos-linking", appos_linking,
                      "merge_into_head_chain (default) or separate_cluster");
  convert->add_option("--format", format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // stats
  std::string stats_dir;
  bool stats_json = false;
  int stats_jobs = 0;
  CLI::App* stats = app.add_subcommand("stats", "aggregate statistics over a directory of .conllu files");
  stats->add_option("--in", stats_dir, "input directory")->required();
  stats->add_flag("--json", stats_json, "emit JSON instead of text tables");
  stats->add_option("--jobs", stats_jobs, "worker count");

  // validate
  std::string validate_dir;
  bool validate_json = false;
  int validate_jobs = 0;
  CLI::App* validate = app.add_subcommand("validate", "check scheme invariants over a directory");
  validate->add_option("--in", validate_dir, "input directory")->required();
  validate->add_flag("--json", validate_json, "emit JSON instead of text");
  validate->add_option("--jobs", validate_jobs, "worker count");

  // merge
  std::string base_path, pred_path, merge_out, on_mismatch = "abort", merge_format = "text";
  bool no_empty_nodes = false;
  CLI::App* merge = app.add_subcommand("merge", "merge predicted coreference into a base treebank");
  merge->add_option("--base", base_path, "base .conllu file")->required();
  merge->add_option("--pred", pred_path, "predicted .conllu file")->required();
  merge->add_option("--out", merge_out, "output .conllu file")->required();
  merge->add_option("--on-mismatch", on_mismatch, "abort or skip")
      ->check(CLI::IsMember({"abort", "skip"}));
  merge->add_flag("--no-empty-nodes", no_empty_nodes, "do not copy predicted empty nodes");
  merge->add_option("--format", merge_format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) {
      corefud::PipelineConfig config;
      if (!config_path.empty()) config = corefud::load_config(config_path);
      if (jobs > 0) config.jobs = jobs;
      if (timeout_seconds >= 0) config.timeout_seconds = timeout_seconds;
      if (include_non_coref_zeros) config.conversion.include_non_coref_zeros = true;
      if (emit_unannotated) config.conversion.omit_unannotated_docs = false;
      if (no_zeros) config.conversion.enable_zero_insertion = false;
      if (!appos_linking.empty()) {
        if (appos_linking == "merge_into_head_chain")
          config.conversion.appos_linking = corefud::ApposLinking::merge_into_head_chain;
        else if (appos_linking == "separate_cluster")
          config.conversion.appos_linking = corefud::ApposLinking::separate_cluster;
        else
          corefud::fail(corefud::ErrorCode::BadConfig,
                        "unknown appos_linking value '" + appos_linking + "'");
      }
      corefud::RunReport report = corefud::run_convert(manifest_path, out_dir, config);
      std::cout << corefud::render_report(report, parse_format(format));
      return exit_code(report);
    }

    if (stats->parsed()) {
      corefud::StatsRun run = corefud::run_stats(stats_dir, stats_jobs);
      if (stats_json) {
        nlohmann::json out = corefud::stats_to_json(run.stats);
        out["report"] = corefud::run_report_to_json(run.report);
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << corefud::render_stats_text(run.stats) << "\n"
                  << corefud::render_report(run.report, ReportFormat::text);
      }
      return exit_code(run.report);
    }

    if (validate->parsed()) {
      corefud::ValidateRun run = corefud::run_validate(validate_dir, validate_jobs);
      if (validate_json) {
        nlohmann::json out;
        out["violations"] = corefud::violations_to_json(run.violations);
        out["report"] = corefud::run_report_to_json(run.report);
        std::cout << out.dump(2) << "\n";
      } else {
        for (const corefud::Violation& v : run.violations)
          std::cout << corefud::to_string(v) << "\n";
        std::cout << corefud::render_report(run.report, ReportFormat::text);
      }
      return exit_code(run.report);
    }

    if (merge->parsed()) {
      corefud::MergePolicy policy;
      policy.on_token_mismatch = on_mismatch == "skip"
                                     ? corefud::MergePolicy::OnTokenMismatch::skip_file
                                     : corefud::MergePolicy::OnTokenMismatch::abort;
      policy.copy_empty_nodes = !no_empty_nodes;
      std::vector<std::string> warnings;
      corefud::RunReport report =
          corefud::run_merge(base_path, pred_path, merge_out, policy, &warnings);
      for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
      std::cout << corefud::render_report(report, parse_format(merge_format));
      return exit_code(report);
    }
  } catch (const corefud::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
