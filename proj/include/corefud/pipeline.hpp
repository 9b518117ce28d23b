#pragma once

// Batch orchestration: converting manifests of annotation/parse file pairs,
// aggregating statistics and validation over directories, merging predicted
// coreference back into base treebanks, and per-file failure accounting.
// Files are processed by a bounded worker pool; one bad file never aborts a
// run; outputs are written atomically (temp file, then rename).

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "corefud/alignment.hpp"
#include "corefud/conllu.hpp"
#include "corefud/convert.hpp"
#include "corefud/error.hpp"
#include "corefud/ontonotes.hpp"
#include "corefud/ptb.hpp"
#include "corefud/stats.hpp"
#include "corefud/strings.hpp"

namespace corefud {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Run reports

struct FileFailure {
  std::string path;
  std::string code;  // "parse-error", "timeout", "io-error", "invalid"
  std::string message;

  bool operator==(const FileFailure&) const = default;
};

struct RunReport {
  long long files_total = 0;
  long long files_ok = 0;
  long long files_failed = 0;
  long long files_omitted = 0;  // processed fine but not written (unannotated)
  std::vector<FileFailure> failures;
  std::chrono::milliseconds wall_time{0};

  int percent_ok() const {
    if (files_total <= 0) return 100;  // vacuous success
    return static_cast<int>(100 * files_ok / files_total);
  }

  bool operator==(const RunReport&) const = default;
};

enum class ReportFormat { text, json };

inline nlohmann::json run_report_to_json(const RunReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const FileFailure& f : report.failures)
    failures.push_back({{"path", f.path}, {"code", f.code}, {"message", f.message}});
  return nlohmann::json{{"files_total", report.files_total},
                        {"files_ok", report.files_ok},
                        {"files_failed", report.files_failed},
                        {"files_omitted", report.files_omitted},
                        {"percent_ok", report.percent_ok()},
                        {"wall_time_ms", report.wall_time.count()},
                        {"failures", failures}};
}

inline RunReport run_report_from_json(const nlohmann::json& j) {
  RunReport report;
  report.files_total = j.at("files_total").get<long long>();
  report.files_ok = j.at("files_ok").get<long long>();
  report.files_failed = j.at("files_failed").get<long long>();
  report.files_omitted = j.value("files_omitted", 0LL);
  report.wall_time = std::chrono::milliseconds(j.value("wall_time_ms", 0LL));
  for (const nlohmann::json& f : j.value("failures", nlohmann::json::array()))
    report.failures.push_back({f.at("path").get<std::string>(), f.at("code").get<std::string>(),
                               f.at("message").get<std::string>()});
  return report;
}

inline std::string render_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return run_report_to_json(report).dump(2) + "\n";
  std::string out = "parsed " + std::to_string(report.files_ok) + " of " +
                    std::to_string(report.files_total) + " files (" +
                    std::to_string(report.percent_ok()) + "%)\n";
  if (report.files_omitted > 0)
    out += "omitted " + std::to_string(report.files_omitted) + " unannotated documents\n";
  for (const FileFailure& f : report.failures)
    out += "failed: " + f.path + " [" + f.code + "] " + f.message + "\n";
  out += "wall time: " + std::to_string(report.wall_time.count()) + " ms\n";
  return out;
}

// Failure classes keep cause analysis possible from the report alone.
inline std::string failure_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::Timeout:
      return "timeout";
    case ErrorCode::IoError:
    case ErrorCode::ManifestUnreadable:
    case ErrorCode::OutDirUnwritable:
      return "io-error";
    default:
      return "parse-error";
  }
}

// ---------------------------------------------------------------------------
// Stats and violations as JSON

inline nlohmann::json stats_to_json(const CorpusStats& stats) {
  return nlohmann::json{
      {"total_tokens", stats.total_tokens},
      {"total_empty_nodes", stats.total_empty_nodes},
      {"total_sentences", stats.total_sentences},
      {"tokens_in_entity", stats.tokens_in_entity},
      {"single_token_mentions", stats.single_token_mentions},
      {"nested_tokens", stats.nested_tokens},
      {"nested_mentions", stats.nested_mentions},
      {"label_tokens",
       {{"head", stats.label_tokens.head},
        {"attrib", stats.label_tokens.attrib},
        {"span", stats.label_tokens.span}}},
      {"label_mentions",
       {{"head", stats.label_mentions.head},
        {"attrib", stats.label_mentions.attrib},
        {"span", stats.label_mentions.span}}}};
}

inline nlohmann::json violations_to_json(const std::vector<Violation>& violations) {
  nlohmann::json out = nlohmann::json::array();
  for (const Violation& v : violations)
    out.push_back({{"code", std::string(to_string(v.code))},
                   {"doc_id", v.doc_id},
                   {"sent_id", v.sent_id},
                   {"item", v.item},
                   {"detail", v.detail}});
  return out;
}

// ---------------------------------------------------------------------------
// Files, manifests, configuration

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::IoError, "read failed for '" + path.string() + "'");
  return data;
}

inline void atomic_write_file(const fs::path& path, std::string_view data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) fail(ErrorCode::IoError, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::IoError, "rename to '" + path.string() + "' failed: " + ec.message());
}

struct ManifestEntry {
  fs::path coref_path;
  fs::path parse_path;
};

// One "coref_path TAB parse_path" pair per line; '#' comments and blank
// lines allowed; relative paths resolve against the manifest's directory.
inline std::vector<ManifestEntry> read_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in)
    fail(ErrorCode::ManifestUnreadable, "cannot open manifest '" + manifest_path.string() + "'");
  fs::path base = manifest_path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    std::size_t tab = sv.find('\t');
    if (tab == std::string_view::npos)
      fail(ErrorCode::ManifestUnreadable, "manifest line " + std::to_string(line_no) +
                                              " is not 'coref_path<TAB>parse_path'");
    fs::path coref{std::string(trim(sv.substr(0, tab)))};
    fs::path parse{std::string(trim(sv.substr(tab + 1)))};
    if (coref.empty() || parse.empty())
      fail(ErrorCode::ManifestUnreadable,
           "manifest line " + std::to_string(line_no) + " has an empty path");
    if (coref.is_relative()) coref = base / coref;
    if (parse.is_relative()) parse = base / parse;
    entries.push_back({std::move(coref), std::move(parse)});
  }
  return entries;
}

struct PipelineConfig {
  ConversionConfig conversion;
  int jobs = 0;  // 0 = number of logical CPUs
  long long timeout_seconds = 0;  // 0 = no per-file timeout
};

inline PipelineConfig parse_config_text(std::string_view text) {
  PipelineConfig config;
  auto parse_bool = [](std::string_view value, std::string_view key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(ErrorCode::BadConfig, "value of '" + std::string(key) + "' must be true or false");
  };
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::BadConfig, "config line " + std::to_string(line_no) + " is not key=value");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "include_non_coref_zeros") {
      config.conversion.include_non_coref_zeros = parse_bool(value, key);
    } else if (key == "omit_unannotated_docs") {
      config.conversion.omit_unannotated_docs = parse_bool(value, key);
    } else if (key == "insert_zeros") {
      config.conversion.enable_zero_insertion = parse_bool(value, key);
    } else if (key == "appos_linking") {
      if (value == "merge_into_head_chain")
        config.conversion.appos_linking = ApposLinking::merge_into_head_chain;
      else if (value == "separate_cluster")
        config.conversion.appos_linking = ApposLinking::separate_cluster;
      else
        fail(ErrorCode::BadConfig, "unknown appos_linking value '" + std::string(value) + "'");
    } else if (key == "jobs") {
      auto n = parse_digits(value, 6);
      if (!n) fail(ErrorCode::BadConfig, "jobs must be a non-negative integer");
      config.jobs = static_cast<int>(*n);
    } else if (key == "timeout_seconds") {
      auto n = parse_digits(value, 9);
      if (!n) fail(ErrorCode::BadConfig, "timeout_seconds must be a non-negative integer");
      config.timeout_seconds = *n;
    } else {
      fail(ErrorCode::BadConfig, "unknown config key '" + std::string(key) + "'");
    }
  }
  return config;
}

inline PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::BadConfig, "cannot open config '" + path.string() + "'");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(data);
}

// ---------------------------------------------------------------------------
// Worker pool and per-file deadlines

namespace detail {

// Cooperative per-file deadline, checked between pipeline stages.
class Deadline {
 public:
  explicit Deadline(long long timeout_seconds) : enabled_(timeout_seconds > 0) {
    if (enabled_) end_ = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_seconds);
  }

  void check(const char* stage) const {
    if (enabled_ && std::chrono::steady_clock::now() > end_)
      fail(ErrorCode::Timeout, std::string("per-file time limit exceeded during ") + stage);
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point end_;
};

// Runs fn(0..n-1) on a bounded pool. fn must not throw.
template <typename Fn>
inline void for_each_index(std::size_t n, int jobs, Fn&& fn) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : (hw > 0 ? hw : 1);
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

struct FileOutcome {
  bool ok = false;
  bool omitted = false;
  std::optional<FileFailure> failure;
};

inline RunReport aggregate(const std::vector<FileOutcome>& outcomes,
                           std::chrono::steady_clock::time_point started) {
  RunReport report;
  report.files_total = static_cast<long long>(outcomes.size());
  for (const FileOutcome& o : outcomes) {
    if (o.failure) {
      ++report.files_failed;
      report.failures.push_back(*o.failure);
    } else {
      ++report.files_ok;
      if (o.omitted) ++report.files_omitted;
    }
  }
  report.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return report;
}

inline std::vector<fs::path> conllu_files_in(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    fail(ErrorCode::IoError, "'" + dir.string() + "' is not a readable directory");
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".conllu")
      files.push_back(entry.path());
  }
  if (ec) fail(ErrorCode::IoError, "cannot list '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Batch conversion

inline constexpr std::string_view kRunReportFileName = "run-report.json";

// Converts every manifest pair into one CoNLL-U file under out_dir, named
// after the annotation file's stem. Failures are isolated per file and the
// report is written alongside the outputs.
inline RunReport run_convert(const fs::path& manifest_path, const fs::path& out_dir,
                             const PipelineConfig& config) {
  auto started = std::chrono::steady_clock::now();
  std::vector<ManifestEntry> entries = read_manifest(manifest_path);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    fail(ErrorCode::OutDirUnwritable, "cannot create output directory '" + out_dir.string() + "'");

  // Output names must be unique; later colliding entries fail individually.
  std::vector<std::optional<fs::path>> out_paths(entries.size());
  std::set<std::string> names;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string name = entries[i].coref_path.stem().string() + ".conllu";
    if (names.insert(name).second) out_paths[i] = out_dir / name;
  }

  std::vector<detail::FileOutcome> outcomes(entries.size());
  detail::for_each_index(entries.size(), config.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = entries[i];
    detail::FileOutcome& outcome = outcomes[i];
    try {
      if (!out_paths[i])
        fail(ErrorCode::IoError, "output name collides with an earlier manifest entry");
      detail::Deadline deadline(config.timeout_seconds);
      std::string coref_text = read_file(entry.coref_path);
      std::string parse_text = read_file(entry.parse_path);
      deadline.check("reading");
      OntoDocument onto = parse_onto_coref(coref_text);
      deadline.check("coreference parsing");
      std::vector<PtbTree> trees = parse_ptb(parse_text);
      deadline.check("tree parsing");
      AlignedDocument aligned = align(onto, trees);
      deadline.check("alignment");
      Conversion conv = convert(aligned, config.conversion);
      deadline.check("conversion");

      std::vector<Violation> violations = validate(conv.document);
      if (!violations.empty())
        fail(ErrorCode::DuplicateMention,
             "converted document failed validation: " + to_string(violations.front()));

      if (onto.spans.empty() && config.conversion.omit_unannotated_docs) {
        outcome.omitted = true;
        outcome.ok = true;
        return;
      }
      std::string text = serialize_conllu(conv.document);
      deadline.check("serialization");
      atomic_write_file(*out_paths[i], text);
      outcome.ok = true;
    } catch (const Error& e) {
      outcome.failure = FileFailure{entry.coref_path.string(), failure_class(e.code()), e.what()};
    } catch (const std::exception& e) {
      outcome.failure = FileFailure{entry.coref_path.string(), "parse-error", e.what()};
    }
  });

  RunReport report = detail::aggregate(outcomes, started);
  atomic_write_file(out_dir / kRunReportFileName, run_report_to_json(report).dump(2) + "\n");
  return report;
}

// ---------------------------------------------------------------------------
// Directory statistics and validation

struct StatsRun {
  CorpusStats stats;
  RunReport report;
};

inline StatsRun run_stats(const fs::path& in_dir, int jobs = 0) {
  auto started = std::chrono::steady_clock::now();
  std::vector<fs::path> files = detail::conllu_files_in(in_dir);
  std::vector<detail::FileOutcome> outcomes(files.size());
  std::vector<CorpusStats> partial(files.size());
  detail::for_each_index(files.size(), jobs, [&](std::size_t i) {
    try {
      partial[i] = compute_stats(parse_conllu(read_file(files[i])));
      outcomes[i].ok = true;
    } catch (const Error& e) {
      outcomes[i].failure = FileFailure{files[i].string(), failure_class(e.code()), e.what()};
    } catch (const std::exception& e) {
      outcomes[i].failure = FileFailure{files[i].string(), "parse-error", e.what()};
    }
  });
  StatsRun run;
  for (std::size_t i = 0; i < files.size(); ++i)
    if (outcomes[i].ok) run.stats += partial[i];
  run.report = detail::aggregate(outcomes, started);
  return run;
}

struct ValidateRun {
  std::vector<Violation> violations;  // in file order
  RunReport report;
};

// Parses every file and runs the scheme checks; a file fails when it cannot
// be parsed or when any violation is found.
inline ValidateRun run_validate(const fs::path& in_dir, int jobs = 0) {
  auto started = std::chrono::steady_clock::now();
  std::vector<fs::path> files = detail::conllu_files_in(in_dir);
  std::vector<detail::FileOutcome> outcomes(files.size());
  std::vector<std::vector<Violation>> partial(files.size());
  detail::for_each_index(files.size(), jobs, [&](std::size_t i) {
    try {
      partial[i] = validate(parse_conllu(read_file(files[i])));
      if (partial[i].empty()) {
        outcomes[i].ok = true;
      } else {
        outcomes[i].failure =
            FileFailure{files[i].string(), "invalid",
                        std::to_string(partial[i].size()) + " scheme violation(s), first: " +
                            to_string(partial[i].front())};
      }
    } catch (const Error& e) {
      outcomes[i].failure = FileFailure{files[i].string(), failure_class(e.code()), e.what()};
    } catch (const std::exception& e) {
      outcomes[i].failure = FileFailure{files[i].string(), "parse-error", e.what()};
    }
  });
  ValidateRun run;
  for (std::vector<Violation>& v : partial)
    run.violations.insert(run.violations.end(), v.begin(), v.end());
  run.report = detail::aggregate(outcomes, started);
  return run;
}

// ---------------------------------------------------------------------------
// Prediction merging

struct MergePolicy {
  enum class OnTokenMismatch { abort, skip_file };
  OnTokenMismatch on_token_mismatch = OnTokenMismatch::abort;
  bool copy_empty_nodes = true;
};

// Carries the predicted entity layer onto the base document. Base columns
// stay verbatim for surface tokens; predicted empty nodes are renumbered to
// sit after the base's own empty nodes at the same anchor.
inline Document merge_predictions(const Document& base, const Document& predicted,
                                  const MergePolicy& policy,
                                  std::vector<std::string>* warnings = nullptr) {
  auto warn = [&](std::string msg) {
    if (warnings != nullptr) warnings->push_back(std::move(msg));
  };

  if (base.sentences.size() != predicted.sentences.size())
    fail(ErrorCode::SentenceCountMismatch,
         "base has " + std::to_string(base.sentences.size()) + " sentences but predictions have " +
             std::to_string(predicted.sentences.size()));

  for (std::size_t k = 0; k < base.sentences.size(); ++k) {
    std::vector<const Token*> bs, ps;
    for (const Token& t : base.sentences[k].tokens)
      if (!t.is_empty_node()) bs.push_back(&t);
    for (const Token& t : predicted.sentences[k].tokens)
      if (!t.is_empty_node()) ps.push_back(&t);
    std::size_t n = std::min(bs.size(), ps.size());
    for (std::size_t i = 0; i < n; ++i)
      if (bs[i]->form != ps[i]->form)
        fail(ErrorCode::TokenMismatch, "sentence " + std::to_string(k + 1) + " token " +
                                           std::to_string(i + 1) + ": base '" + bs[i]->form +
                                           "' vs predicted '" + ps[i]->form + "'");
    if (bs.size() != ps.size())
      fail(ErrorCode::TokenMismatch, "sentence " + std::to_string(k + 1) + " token " +
                                         std::to_string(n + 1) + ": base '" +
                                         (n < bs.size() ? bs[n]->form : "<absent>") +
                                         "' vs predicted '" +
                                         (n < ps.size() ? ps[n]->form : "<absent>") + "'");
  }

  Document out = base;
  if (!out.mentions.empty()) {
    warn(std::string(kWarnReplacedEntities) + std::to_string(out.mentions.size()) +
         " existing mentions replaced by predictions");
    out.mentions.clear();
    out.clusters.clear();
  }

  // Per-sentence node mapping from predicted ids to output ids.
  std::vector<std::map<NodeId, std::optional<NodeId>>> node_map(predicted.sentences.size());
  for (std::size_t k = 0; k < predicted.sentences.size(); ++k) {
    for (const Token& t : predicted.sentences[k].tokens)
      if (!t.is_empty_node()) node_map[k][t.id] = t.id;

    if (!policy.copy_empty_nodes) {
      for (const Token& t : predicted.sentences[k].tokens)
        if (t.is_empty_node()) node_map[k][t.id] = std::nullopt;
      continue;
    }

    std::map<int, int> next_sub;  // anchor -> last used sub-index in the output
    for (const Token& t : out.sentences[k].tokens)
      if (t.is_empty_node()) next_sub[t.id.token] = std::max(next_sub[t.id.token], t.id.sub);

    bool added = false;
    for (const Token& t : predicted.sentences[k].tokens) {
      if (!t.is_empty_node()) continue;
      Token copy = t;
      copy.id = NodeId{t.id.token, ++next_sub[t.id.token]};
      node_map[k][t.id] = copy.id;
      out.sentences[k].tokens.push_back(std::move(copy));
      added = true;
    }
    if (added)
      std::sort(out.sentences[k].tokens.begin(), out.sentences[k].tokens.end(),
                [](const Token& a, const Token& b) { return a.id < b.id; });
  }

  for (const Mention* m : mentions_in_document_order(predicted)) {
    std::size_t k = static_cast<std::size_t>(m->sentence);
    auto start = node_map[k].at(m->start);
    auto end = node_map[k].at(m->end);
    if (!start || !end) {
      warn(std::string(kWarnDroppedZeroMention) + "sentence " + std::to_string(k + 1) + " span [" +
           to_string(m->start) + ", " + to_string(m->end) + "]");
      continue;
    }

    // Re-derive the head position: find the head node in the predicted span,
    // map it, and locate it among the output span's nodes.
    const Sentence& pred_sent = predicted.sentences[k];
    const Sentence& out_sent = out.sentences[k];
    std::optional<NodeId> head_node;
    int seen = 0;
    for (const Token& t : pred_sent.tokens)
      if (m->start <= t.id && t.id <= m->end && ++seen == m->head) head_node = t.id;
    std::optional<int> head_pos;
    if (head_node) {
      if (auto mapped = node_map[k].at(*head_node)) {
        int pos = 0;
        for (const Token& t : out_sent.tokens) {
          if (*start <= t.id && t.id <= *end) {
            ++pos;
            if (t.id == *mapped) {
              head_pos = pos;
              break;
            }
          }
        }
      }
    }
    add_mention_in_place(out, m->cluster_id, m->sentence, *start, *end, head_pos, m->role);
  }

  for (const auto& [cid, cluster] : predicted.clusters) {
    auto it = out.clusters.find(cid);
    if (it != out.clusters.end()) it->second.etype = cluster.etype;
  }
  normalize_ids(out);
  return out;
}

// Single-pair merge with report accounting. Under the abort policy a token
// mismatch also fails the file; the distinction matters only for callers
// looping over many pairs.
inline RunReport run_merge(const fs::path& base_path, const fs::path& pred_path,
                           const fs::path& out_path, const MergePolicy& policy,
                           std::vector<std::string>* warnings = nullptr) {
  auto started = std::chrono::steady_clock::now();
  std::vector<detail::FileOutcome> outcomes(1);
  try {
    Document base = parse_conllu(read_file(base_path));
    Document predicted = parse_conllu(read_file(pred_path));
    Document merged = merge_predictions(base, predicted, policy, warnings);
    atomic_write_file(out_path, serialize_conllu(merged));
    outcomes[0].ok = true;
  } catch (const Error& e) {
    outcomes[0].failure = FileFailure{base_path.string(), failure_class(e.code()), e.what()};
  } catch (const std::exception& e) {
    outcomes[0].failure = FileFailure{base_path.string(), "parse-error", e.what()};
  }
  return detail::aggregate(outcomes, started);
}

}  // namespace corefud
