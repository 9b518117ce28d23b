#pragma once

// Corpus statistics and scheme validation. Statistics count surface tokens
// only; empty nodes are tallied separately so figures are comparable with
// and without zero insertion. Validation returns violations as data, never
// throws.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corefud/model.hpp"
#include "corefud/strings.hpp"

namespace corefud {

struct LabelCounts {
  long long head = 0;
  long long attrib = 0;
  long long span = 0;

  long long& by_role(ApposRole role) {
    switch (role) {
      case ApposRole::head: return head;
      case ApposRole::attrib: return attrib;
      default: return span;
    }
  }

  LabelCounts& operator+=(const LabelCounts& o) {
    head += o.head;
    attrib += o.attrib;
    span += o.span;
    return *this;
  }

  bool operator==(const LabelCounts&) const = default;
};

struct CorpusStats {
  long long total_tokens = 0;       // surface tokens only
  long long total_empty_nodes = 0;
  long long total_sentences = 0;
  long long tokens_in_entity = 0;   // surface tokens covered by at least one mention
  long long single_token_mentions = 0;
  long long nested_tokens = 0;      // surface tokens covered by two or more mentions
  long long nested_mentions = 0;    // mentions strictly inside another mention
  LabelCounts label_tokens;         // distinct surface tokens per appositive label
  LabelCounts label_mentions;       // mentions per appositive label

  CorpusStats& operator+=(const CorpusStats& o) {
    total_tokens += o.total_tokens;
    total_empty_nodes += o.total_empty_nodes;
    total_sentences += o.total_sentences;
    tokens_in_entity += o.tokens_in_entity;
    single_token_mentions += o.single_token_mentions;
    nested_tokens += o.nested_tokens;
    nested_mentions += o.nested_mentions;
    label_tokens += o.label_tokens;
    label_mentions += o.label_mentions;
    return *this;
  }

  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) { return a += b; }

  bool operator==(const CorpusStats&) const = default;
};

inline CorpusStats compute_stats(const Document& doc) {
  CorpusStats stats;
  stats.total_sentences = static_cast<long long>(doc.sentences.size());
  for (const Sentence& sent : doc.sentences)
    for (const Token& tok : sent.tokens)
      (tok.is_empty_node() ? stats.total_empty_nodes : stats.total_tokens) += 1;

  // Per-sentence mention lists.
  std::vector<std::vector<const Mention*>> per_sentence(doc.sentences.size());
  for (const auto& [_, m] : doc.mentions)
    if (m.sentence >= 0 && m.sentence < static_cast<int>(doc.sentences.size()))
      per_sentence[static_cast<std::size_t>(m.sentence)].push_back(&m);

  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    const Sentence& sent = doc.sentences[k];
    const std::vector<const Mention*>& mentions = per_sentence[k];

    for (const Token& tok : sent.tokens) {
      if (tok.is_empty_node()) continue;
      int cover = 0;
      bool head = false, attrib = false, span = false;
      for (const Mention* m : mentions) {
        if (m->start <= tok.id && tok.id <= m->end) {
          ++cover;
          if (m->role == ApposRole::head) head = true;
          if (m->role == ApposRole::attrib) attrib = true;
          if (m->role == ApposRole::span) span = true;
        }
      }
      if (cover >= 1) ++stats.tokens_in_entity;
      if (cover >= 2) ++stats.nested_tokens;
      if (head) ++stats.label_tokens.head;
      if (attrib) ++stats.label_tokens.attrib;
      if (span) ++stats.label_tokens.span;
    }

    for (const Mention* m : mentions) {
      if (sent.nodes_in_range(m->start, m->end) == 1) ++stats.single_token_mentions;
      if (m->role != ApposRole::none) stats.label_mentions.by_role(m->role) += 1;
      for (const Mention* outer : mentions) {
        if (outer == m) continue;
        if (nesting_relation(*m, *outer) == Nesting::a_inside_b) {
          ++stats.nested_mentions;
          break;
        }
      }
    }
  }
  return stats;
}

template <typename Range>
inline CorpusStats compute_stats(const Range& docs) {
  CorpusStats stats;
  for (const Document& doc : docs) stats += compute_stats(doc);
  return stats;
}

enum class ViolationCode {
  MultiClusterMention,
  DanglingClusterRef,
  CrossSentenceSpan,
  CrossingMentions,
  EmptyCluster,
  NonCanonicalIds,
};

constexpr std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::MultiClusterMention: return "MultiClusterMention";
    case ViolationCode::DanglingClusterRef: return "DanglingClusterRef";
    case ViolationCode::CrossSentenceSpan: return "CrossSentenceSpan";
    case ViolationCode::CrossingMentions: return "CrossingMentions";
    case ViolationCode::EmptyCluster: return "EmptyCluster";
    case ViolationCode::NonCanonicalIds: return "NonCanonicalIds";
  }
  return "UnknownViolation";
}

struct Violation {
  ViolationCode code = ViolationCode::MultiClusterMention;
  std::string doc_id;
  std::string sent_id;  // empty for document-level findings
  std::string item;     // mention, cluster or node id
  std::string detail;
};

inline std::string to_string(const Violation& v) {
  std::string out(to_string(v.code));
  out += " [doc " + (v.doc_id.empty() ? std::string("?") : v.doc_id);
  if (!v.sent_id.empty()) out += ", sentence " + v.sent_id;
  if (!v.item.empty()) out += ", " + v.item;
  out += "] " + v.detail;
  return out;
}

// Scheme checks: every mention in exactly one cluster, cluster/mention maps
// consistent, spans sentence-internal, no crossing pair, no empty cluster,
// cluster ids canonical ("e1".."eN", dense).
inline std::vector<Violation> validate(const Document& doc) {
  std::vector<Violation> out;
  auto sent_label = [&](int index) {
    const Sentence* s = doc.sentence_at(index);
    if (s == nullptr) return std::to_string(index);
    return s->sent_id.empty() ? std::to_string(index + 1) : s->sent_id;
  };

  // Membership count per mention across all cluster lists.
  std::map<std::string, std::vector<std::string>> listed_in;
  for (const auto& [cid, cluster] : doc.clusters) {
    for (const std::string& mid : cluster.mention_ids) listed_in[mid].push_back(cid);
    if (cluster.mention_ids.empty())
      out.push_back({ViolationCode::EmptyCluster, doc.id, "", cid, "cluster has no mentions"});
    if (cluster.id != cid)
      out.push_back({ViolationCode::DanglingClusterRef, doc.id, "", cid,
                     "cluster keyed '" + cid + "' reports id '" + cluster.id + "'"});
  }
  for (const auto& [mid, owners] : listed_in) {
    auto mit = doc.mentions.find(mid);
    if (mit == doc.mentions.end()) {
      out.push_back({ViolationCode::DanglingClusterRef, doc.id, "", mid,
                     "cluster " + owners.front() + " lists unknown mention"});
      continue;
    }
    if (owners.size() > 1)
      out.push_back({ViolationCode::MultiClusterMention, doc.id, sent_label(mit->second.sentence),
                     mid, "mention listed in clusters " + join(owners, ", ")});
    for (const std::string& owner : owners)
      if (owner != mit->second.cluster_id && owners.size() == 1)
        out.push_back({ViolationCode::MultiClusterMention, doc.id,
                       sent_label(mit->second.sentence), mid,
                       "mention claims " + mit->second.cluster_id + " but is listed in " + owner});
  }
  for (const auto& [mid, m] : doc.mentions) {
    auto cit = doc.clusters.find(m.cluster_id);
    if (cit == doc.clusters.end()) {
      out.push_back({ViolationCode::DanglingClusterRef, doc.id, sent_label(m.sentence), mid,
                     "mention references missing cluster " + m.cluster_id});
    } else if (std::find(cit->second.mention_ids.begin(), cit->second.mention_ids.end(), mid) ==
               cit->second.mention_ids.end()) {
      out.push_back({ViolationCode::DanglingClusterRef, doc.id, sent_label(m.sentence), mid,
                     "cluster " + m.cluster_id + " does not list this mention"});
    }

    const Sentence* sent = doc.sentence_at(m.sentence);
    if (sent == nullptr) {
      out.push_back({ViolationCode::CrossSentenceSpan, doc.id, std::to_string(m.sentence), mid,
                     "mention references a missing sentence"});
    } else if (m.end < m.start || sent->find(m.start) == nullptr || sent->find(m.end) == nullptr) {
      out.push_back({ViolationCode::CrossSentenceSpan, doc.id, sent_label(m.sentence), mid,
                     "span [" + to_string(m.start) + ", " + to_string(m.end) +
                         "] not contained in the sentence"});
    }
  }

  // Crossing pairs, per sentence.
  std::vector<const Mention*> ordered = mentions_in_document_order(doc);
  for (std::size_t i = 0; i < ordered.size(); ++i)
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      if (ordered[j]->sentence != ordered[i]->sentence) break;
      if (nesting_relation(*ordered[i], *ordered[j]) == Nesting::crossing)
        out.push_back({ViolationCode::CrossingMentions, doc.id, sent_label(ordered[i]->sentence),
                       ordered[i]->id, "crosses mention " + ordered[j]->id});
    }

  // Canonical cluster ids: "e1".."eN" with no gaps.
  std::set<long long> numbers;
  bool shape_ok = true;
  for (const auto& [cid, _] : doc.clusters) {
    if (!cluster_id_canonical_shape(cid)) {
      out.push_back({ViolationCode::NonCanonicalIds, doc.id, "", cid, "cluster id not of shape e<k>"});
      shape_ok = false;
      continue;
    }
    numbers.insert(*cluster_numeric(cid));
  }
  if (shape_ok && !numbers.empty() &&
      (*numbers.begin() != 1 || *numbers.rbegin() != static_cast<long long>(numbers.size())))
    out.push_back({ViolationCode::NonCanonicalIds, doc.id, "", "",
                   "cluster ids not dense from e1 to e" + std::to_string(numbers.size())});
  return out;
}

// Aligned plain-text tables: token/sentence totals and the appositive-label
// distribution, followed by notes on the counting conventions.
inline std::string render_stats_text(const CorpusStats& stats) {
  struct Row {
    std::string label, col1, col2;
  };
  auto table = [](const std::vector<Row>& rows) {
    std::size_t w0 = 0, w1 = 0;
    for (const Row& r : rows) {
      w0 = std::max(w0, r.label.size());
      w1 = std::max(w1, r.col1.size());
    }
    std::string out;
    for (const Row& r : rows) {
      out += r.label + std::string(w0 - r.label.size() + 2, ' ');
      out += r.col1 + std::string(w1 - r.col1.size() + 2, ' ');
      out += r.col2;
      out += "\n";
    }
    return out;
  };

  std::vector<Row> t1 = {
      {"", "# of tokens", "# of sentences"},
      {"Total", with_thousands(stats.total_tokens), with_thousands(stats.total_sentences)},
      {"Part of an entity", with_thousands(stats.tokens_in_entity), "-"},
      {"Single token entity", with_thousands(stats.single_token_mentions), "-"},
      {"Nested entity", with_thousands(stats.nested_tokens), "-"},
  };
  std::vector<Row> t2 = {
      {"", "# of tokens", "# of mentions"},
      {"HEAD", with_thousands(stats.label_tokens.head), with_thousands(stats.label_mentions.head)},
      {"ATTRIB", with_thousands(stats.label_tokens.attrib),
       with_thousands(stats.label_mentions.attrib)},
      {"APPOS", with_thousands(stats.label_tokens.span), with_thousands(stats.label_mentions.span)},
  };

  std::string out = table(t1);
  out += "\n";
  out += table(t2);
  out += "\n";
  out += "empty nodes: " + with_thousands(stats.total_empty_nodes) + " (excluded from token counts)\n";
  out += "nested mentions: " + with_thousands(stats.nested_mentions) +
         " (mention-level count of the Nested entity row)\n";
  out += "note: token counts are distinct-token counts; a token under several mentions"
         " is counted once per row\n";
  return out;
}

}  // namespace corefud
