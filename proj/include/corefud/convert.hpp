#pragma once

// Conversion of an aligned document into an entity-annotated document.
// Three stages run in a fixed order: identity chains become clusters and
// mentions, appositive constructions become role-attributed mentions, and
// coreferent traces become empty nodes carrying zero mentions. Cluster ids
// are then renumbered in order of first mention appearance so output is
// byte-stable.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corefud/alignment.hpp"
#include "corefud/error.hpp"
#include "corefud/model.hpp"

namespace corefud {

enum class ApposLinking { merge_into_head_chain, separate_cluster };

struct ConversionConfig {
  bool include_non_coref_zeros = false;
  ApposLinking appos_linking = ApposLinking::merge_into_head_chain;
  bool omit_unannotated_docs = true;  // consumed by the batch pipeline
  bool enable_zero_insertion = true;  // off reproduces the zero-less output
};

struct ConversionReport {
  long long mentions_emitted = 0;
  long long clusters_emitted = 0;
  long long zeros_inserted = 0;
  long long zeros_skipped = 0;
  long long appos_constructions = 0;
  std::vector<std::string> warnings;
};

// Warning prefixes are stable so reports can be reconciled mechanically.
inline constexpr std::string_view kWarnDuplicateSpan = "duplicate-span: ";
inline constexpr std::string_view kWarnDroppedEmptySpan = "dropped-empty-span: ";
inline constexpr std::string_view kWarnMergedPart = "merged-appos-part: ";
inline constexpr std::string_view kWarnMultipleHead = "multiple-head: ";
inline constexpr std::string_view kWarnRoleConflict = "role-conflict: ";
inline constexpr std::string_view kWarnReplacedEntities = "replaced-entities: ";
inline constexpr std::string_view kWarnDroppedZeroMention = "dropped-zero-mention: ";

// Partial conversion result threaded through the stages.
struct ConversionState {
  Document doc;
  ConversionReport report;
  std::map<std::string, std::string> chain_cluster;  // source chain id -> working cluster id
  int next_cluster = 1;

  struct PendingZeroSpan {  // trace-only span awaiting empty-node insertion
    int sentence = 0;
    int first_leaf = 0;
    int last_leaf = 0;
    std::string cluster_id;
    ApposRole role = ApposRole::none;
  };
  std::vector<PendingZeroSpan> pending_zero_spans;
};

namespace detail {

// Inclusive surface-token range covered by leaves [first, last], or nullopt
// when the range covers traces only.
inline std::optional<std::pair<NodeId, NodeId>> surface_range(const AlignedSentence& sent, int first,
                                                              int last) {
  int surface_before = 0;
  int lo = 0, hi = 0;
  for (int i = 0; i <= last && i < static_cast<int>(sent.leaves.size()); ++i) {
    if (sent.leaves[static_cast<std::size_t>(i)].trace) continue;
    ++surface_before;
    if (i >= first) {
      if (lo == 0) lo = surface_before;
      hi = surface_before;
    }
  }
  if (lo == 0) return std::nullopt;
  return std::make_pair(NodeId{lo, 0}, NodeId{hi, 0});
}

inline std::string span_location(const std::string& doc_id, int sentence, const OntoSpan& span) {
  return "doc '" + doc_id + "' sentence " + std::to_string(sentence + 1) + " ID '" + span.coref_id +
         "' leaves " + std::to_string(span.first_leaf) + ".." + std::to_string(span.last_leaf);
}

inline std::string& chain_cluster_id(ConversionState& state, const std::string& coref_id) {
  auto [it, inserted] = state.chain_cluster.try_emplace(coref_id);
  if (inserted) it->second = "e" + std::to_string(state.next_cluster++);
  return it->second;
}

inline std::string fresh_cluster_id(ConversionState& state) {
  return "e" + std::to_string(state.next_cluster++);
}

inline Mention* find_mention_by_span(Document& doc, int sentence, NodeId start, NodeId end) {
  for (auto& [_, m] : doc.mentions)
    if (m.sentence == sentence && m.start == start && m.end == end) return &m;
  return nullptr;
}

// Adds a converted span as a mention, or attaches to the mention that
// already occupies the exact same span. A span listed in two different
// chains is an ingestion error: merging the chains silently would be wrong
// and two clusters cannot share one mention.
inline void attach_or_add(ConversionState& state, int sentence, NodeId start, NodeId end,
                          const std::string& cluster_id, ApposRole role,
                          const std::string& location) {
  if (Mention* existing = find_mention_by_span(state.doc, sentence, start, end)) {
    if (existing->cluster_id != cluster_id && role == ApposRole::none)
      fail(ErrorCode::DuplicateMention,
           "span at " + location + " belongs to two chains; a span may belong to only one cluster");
    if (existing->role == ApposRole::none && role != ApposRole::none) {
      existing->role = role;
      state.report.warnings.push_back(std::string(kWarnMergedPart) + location);
    } else if (existing->role != role) {
      state.report.warnings.push_back(std::string(kWarnRoleConflict) + location);
    } else {
      state.report.warnings.push_back(std::string(kWarnDuplicateSpan) + location);
    }
    return;
  }
  add_mention_in_place(state.doc, cluster_id, sentence, start, end, std::nullopt, role);
}

// Routes one converted span: a surface mention, a pending zero span, or a
// dropped-with-warning span, depending on coverage and configuration.
inline void emit_span(ConversionState& state, const AlignedDocument& aligned,
                      const ConversionConfig& config, int sentence, const OntoSpan& span,
                      const std::string& cluster_id, ApposRole role) {
  const AlignedSentence& sent = aligned.sentences[static_cast<std::size_t>(sentence)];
  auto range = surface_range(sent, span.first_leaf, span.last_leaf);
  if (!range) {
    if (config.enable_zero_insertion) {
      state.pending_zero_spans.push_back(
          {sentence, span.first_leaf, span.last_leaf, cluster_id, role});
    } else {
      state.report.warnings.push_back(std::string(kWarnDroppedEmptySpan) +
                                      span_location(aligned.doc_id, sentence, span));
    }
    return;
  }
  attach_or_add(state, sentence, range->first, range->second, cluster_id, role,
                span_location(aligned.doc_id, sentence, span));
}

}  // namespace detail

// Builds the document skeleton: surface tokens only, source POS tags in XPOS.
inline ConversionState begin_conversion(const AlignedDocument& aligned) {
  ConversionState state;
  state.doc.id = aligned.doc_id;
  for (const AlignedSentence& asent : aligned.sentences) {
    Sentence sent;
    int index = 0;
    for (const AlignedLeaf& leaf : asent.leaves) {
      if (leaf.trace) continue;
      Token tok;
      tok.id = NodeId{++index, 0};
      tok.form = leaf.form;
      tok.xpos = leaf.pos.empty() ? "_" : leaf.pos;
      sent.tokens.push_back(std::move(tok));
    }
    state.doc.sentences.push_back(std::move(sent));
  }
  return state;
}

// Stage 1: every identity span becomes a mention; spans sharing a source
// chain id share one cluster. Trace-only spans are deferred to zero
// insertion (or dropped with a warning when that is disabled).
inline void convert_ident_chains(const AlignedDocument& aligned, const ConversionConfig& config,
                                 ConversionState& state) {
  for (std::size_t s = 0; s < aligned.sentences.size(); ++s) {
    std::vector<const OntoSpan*> work;
    for (const OntoSpan& span : aligned.sentences[s].spans) work.push_back(&span);
    for (std::size_t i = 0; i < work.size(); ++i) {
      const OntoSpan& span = *work[i];
      for (const OntoSpan& child : span.children) work.push_back(&child);
      if (span.type != OntoTag::ident) continue;
      const std::string& cluster = detail::chain_cluster_id(state, span.coref_id);
      detail::emit_span(state, aligned, config, static_cast<int>(s), span, cluster,
                        ApposRole::none);
    }
  }
}

// Stage 2: each appositive construction yields a whole-span mention plus its
// head and attribute parts. Under merge_into_head_chain the construction
// joins the cluster of an identity mention whose span equals the head's;
// otherwise (or without a match) it forms a fresh cluster.
inline void convert_appositives(const AlignedDocument& aligned, const ConversionConfig& config,
                                ConversionState& state) {
  for (std::size_t s = 0; s < aligned.sentences.size(); ++s) {
    const AlignedSentence& sent = aligned.sentences[s];
    std::vector<const OntoSpan*> work;
    for (const OntoSpan& span : sent.spans) work.push_back(&span);
    for (std::size_t i = 0; i < work.size(); ++i) {
      const OntoSpan& span = *work[i];
      for (const OntoSpan& child : span.children) work.push_back(&child);
      if (span.type != OntoTag::appos || span.subtype != OntoSubtype::none) continue;

      std::vector<const OntoSpan*> heads;
      std::vector<const OntoSpan*> attribs;
      for (const OntoSpan& child : span.children) {
        if (child.subtype == OntoSubtype::head) heads.push_back(&child);
        else if (child.subtype == OntoSubtype::attrib) attribs.push_back(&child);
      }
      if (heads.empty())
        fail(ErrorCode::MissingHead, "appositive construction without a HEAD part at " +
                                         detail::span_location(aligned.doc_id, static_cast<int>(s), span));
      if (heads.size() > 1)
        state.report.warnings.push_back(
            std::string(kWarnMultipleHead) +
            detail::span_location(aligned.doc_id, static_cast<int>(s), span));
      const OntoSpan& head = *heads.front();

      std::string cluster_id;
      if (config.appos_linking == ApposLinking::merge_into_head_chain) {
        if (auto range = detail::surface_range(sent, head.first_leaf, head.last_leaf)) {
          // Match against existing identity mentions; pick the lowest cluster
          // if several share the span.
          std::optional<long long> best;
          for (const auto& [_, m] : state.doc.mentions) {
            if (m.sentence == static_cast<int>(s) && m.start == range->first &&
                m.end == range->second) {
              auto num = cluster_numeric(m.cluster_id);
              if (num && (!best || *num < *best)) {
                best = *num;
                cluster_id = m.cluster_id;
              }
            }
          }
        } else {
          for (const ConversionState::PendingZeroSpan& p : state.pending_zero_spans) {
            if (p.sentence == static_cast<int>(s) && p.first_leaf == head.first_leaf &&
                p.last_leaf == head.last_leaf) {
              cluster_id = p.cluster_id;
              break;
            }
          }
        }
      }
      if (cluster_id.empty()) cluster_id = detail::fresh_cluster_id(state);

      detail::emit_span(state, aligned, config, static_cast<int>(s), span, cluster_id,
                        ApposRole::span);
      detail::emit_span(state, aligned, config, static_cast<int>(s), head, cluster_id,
                        ApposRole::head);
      for (const OntoSpan* attrib : attribs)
        detail::emit_span(state, aligned, config, static_cast<int>(s), *attrib, cluster_id,
                          ApposRole::attrib);
      ++state.report.appos_constructions;
    }
  }
}

namespace detail {

inline bool leaf_inside_any_span(const std::vector<OntoSpan>& spans, int leaf) {
  for (const OntoSpan& span : spans) {
    if (leaf >= span.first_leaf && leaf <= span.last_leaf) return true;
    if (leaf_inside_any_span(span.children, leaf)) return true;
  }
  return false;
}

}  // namespace detail

// Stage 3: traces inside at least one span (or all traces, when configured)
// become empty nodes. The node id is (k, j) with k the number of surface
// tokens before the trace and j counting insertions at that anchor.
// Trace-only spans then become mentions over their empty nodes.
inline void insert_zeros(const AlignedDocument& aligned, const ConversionConfig& config,
                         ConversionState& state) {
  std::map<std::pair<int, int>, NodeId> node_of_leaf;  // (sentence, leaf) -> inserted node

  for (std::size_t s = 0; s < aligned.sentences.size(); ++s) {
    const AlignedSentence& sent = aligned.sentences[s];
    std::map<int, int> inserted_at;  // anchor -> count
    std::map<int, std::vector<Token>> new_nodes;  // anchor -> nodes in insertion order
    int surface_before = 0;
    for (std::size_t i = 0; i < sent.leaves.size(); ++i) {
      const AlignedLeaf& leaf = sent.leaves[i];
      if (!leaf.trace) {
        ++surface_before;
        continue;
      }
      bool wanted = config.enable_zero_insertion &&
                    (config.include_non_coref_zeros ||
                     detail::leaf_inside_any_span(sent.spans, static_cast<int>(i)));
      if (!wanted) {
        ++state.report.zeros_skipped;
        continue;
      }
      int anchor = surface_before;
      int sub = ++inserted_at[anchor];
      Token tok;
      tok.id = NodeId{anchor, sub};
      tok.form = "_";
      tok.misc = "TraceForm=" + leaf.form;
      new_nodes[anchor].push_back(std::move(tok));
      node_of_leaf[{static_cast<int>(s), static_cast<int>(i)}] = NodeId{anchor, sub};
      ++state.report.zeros_inserted;
    }

    if (new_nodes.empty()) continue;
    Sentence& out = state.doc.sentences[s];
    std::vector<Token> rebuilt;
    if (auto it = new_nodes.find(0); it != new_nodes.end())
      for (Token& t : it->second) rebuilt.push_back(std::move(t));
    for (Token& t : out.tokens) {
      int anchor = t.id.token;
      rebuilt.push_back(std::move(t));
      if (auto it = new_nodes.find(anchor); it != new_nodes.end())
        for (Token& n : it->second) rebuilt.push_back(std::move(n));
    }
    out.tokens = std::move(rebuilt);
  }

  for (const ConversionState::PendingZeroSpan& pending : state.pending_zero_spans) {
    NodeId first, last;
    bool any = false;
    for (int leaf = pending.first_leaf; leaf <= pending.last_leaf; ++leaf) {
      auto it = node_of_leaf.find({pending.sentence, leaf});
      if (it == node_of_leaf.end()) continue;
      if (!any) first = it->second;
      last = it->second;
      any = true;
    }
    const std::string location = "doc '" + aligned.doc_id + "' sentence " +
                                 std::to_string(pending.sentence + 1) + " leaves " +
                                 std::to_string(pending.first_leaf) + ".." +
                                 std::to_string(pending.last_leaf);
    if (!any) {
      state.report.warnings.push_back(std::string(kWarnDroppedEmptySpan) + location);
      continue;
    }
    detail::attach_or_add(state, pending.sentence, first, last, pending.cluster_id, pending.role,
                          location);
  }
}

struct Conversion {
  Document document;
  ConversionReport report;
};

// Full pipeline for one document. Deterministic for fixed input and config.
inline Conversion convert(const AlignedDocument& aligned, const ConversionConfig& config) {
  ConversionState state = begin_conversion(aligned);
  convert_ident_chains(aligned, config, state);
  convert_appositives(aligned, config, state);
  insert_zeros(aligned, config, state);

  // Heads are assigned after zero insertion so span lengths are final; the
  // converter has no head source, so every mention gets the default.
  for (auto& [_, m] : state.doc.mentions) {
    const Sentence& sent = state.doc.sentences[static_cast<std::size_t>(m.sentence)];
    m.head = sent.nodes_in_range(m.start, m.end);
  }

  normalize_ids(state.doc);
  for (std::size_t k = 0; k < state.doc.sentences.size(); ++k)
    state.doc.sentences[k].sent_id = state.doc.id + "-s" + std::to_string(k + 1);

  state.report.mentions_emitted = static_cast<long long>(state.doc.mentions.size());
  state.report.clusters_emitted = static_cast<long long>(state.doc.clusters.size());
  return {std::move(state.doc), std::move(state.report)};
}

}  // namespace corefud
