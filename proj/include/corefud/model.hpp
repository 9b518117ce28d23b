#pragma once

// In-memory model for coreference-annotated documents: sentences of CoNLL-U
// tokens (surface tokens plus empty nodes), mention spans, and entity
// clusters. Every mention belongs to exactly one cluster; clusters may span
// sentences, mention spans may not.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefud/error.hpp"
#include "corefud/ids.hpp"
#include "corefud/strings.hpp"

namespace corefud {

// Address of a node within a sentence. Surface tokens are (k, 0) with k
// starting at 1; empty nodes are (k, j) with j >= 1, anchored after surface
// token k ((0, j) sits before the first token). (0, 0) is invalid.
struct NodeId {
  int token = 0;
  int sub = 0;

  bool valid() const { return token > 0 || sub >= 1; }
  bool is_empty_node() const { return sub >= 1; }

  auto operator<=>(const NodeId&) const = default;
};

inline std::string to_string(NodeId id) {
  std::string out = std::to_string(id.token);
  if (id.sub >= 1) {
    out.push_back('.');
    out += std::to_string(id.sub);
  }
  return out;
}

// One CoNLL-U node. Columns other than ID, FORM and the Entity part of MISC
// are carried verbatim; `misc` holds the MISC column minus any Entity
// attribute (which is derived from the mention layer on output).
struct Token {
  NodeId id;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  std::string head = "_";
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";

  bool is_empty_node() const { return id.is_empty_node(); }

  bool operator==(const Token&) const = default;
};

// A multiword-token range line ("n-m" ID), kept verbatim and re-emitted
// before surface token `anchor`.
struct MwtLine {
  int anchor = 0;
  std::string line;

  bool operator==(const MwtLine&) const = default;
};

struct Sentence {
  std::string sent_id;
  std::vector<std::string> comments;  // verbatim "#..." lines, sent_id excluded
  std::vector<Token> tokens;          // surface tokens and empty nodes in NodeId order
  std::vector<MwtLine> mwt_lines;

  const Token* find(NodeId id) const {
    for (const Token& t : tokens)
      if (t.id == id) return &t;
    return nullptr;
  }

  int surface_size() const {
    int n = 0;
    for (const Token& t : tokens)
      if (!t.is_empty_node()) ++n;
    return n;
  }

  // Number of nodes present in the inclusive range [a, b].
  int nodes_in_range(NodeId a, NodeId b) const {
    int n = 0;
    for (const Token& t : tokens)
      if (a <= t.id && t.id <= b) ++n;
    return n;
  }

  bool operator==(const Sentence&) const = default;
};

enum class ApposRole { none, head, attrib, span };

constexpr std::string_view to_string(ApposRole role) {
  switch (role) {
    case ApposRole::none: return "none";
    case ApposRole::head: return "head";
    case ApposRole::attrib: return "attrib";
    case ApposRole::span: return "span";
  }
  return "none";
}

// A contiguous node span in one sentence referring to an entity. `head` is
// the 1-based position of the head node among the nodes the span covers and
// defaults to the last one when nothing better is known.
struct Mention {
  std::string id;
  std::string cluster_id;
  int sentence = 0;  // index into Document::sentences
  NodeId start;
  NodeId end;
  int head = 1;
  ApposRole role = ApposRole::none;
};

// Mention identity is positional; the generated ids are handles only.
inline bool same_content(const Mention& a, const Mention& b) {
  return a.cluster_id == b.cluster_id && a.sentence == b.sentence && a.start == b.start &&
         a.end == b.end && a.head == b.head && a.role == b.role;
}

struct EntityCluster {
  std::string id;  // "e" + positive integer
  std::string etype = "_";
  std::vector<std::string> mention_ids;  // document order
};

struct Document {
  std::string id;
  std::vector<std::string> header_comments;  // only populated for sentence-less files
  std::vector<Sentence> sentences;
  std::map<std::string, EntityCluster> clusters;
  std::map<std::string, Mention> mentions;

  const Sentence* sentence_at(int index) const {
    if (index < 0 || index >= static_cast<int>(sentences.size())) return nullptr;
    return &sentences[static_cast<std::size_t>(index)];
  }
};

// Document order of mentions: by sentence, then span start, then longer
// spans first (the outer of two nested spans precedes the inner), then
// numeric cluster id.
inline bool mention_before(const Mention& a, const Mention& b) {
  if (a.sentence != b.sentence) return a.sentence < b.sentence;
  if (a.start != b.start) return a.start < b.start;
  if (a.end != b.end) return b.end < a.end;
  auto ca = cluster_numeric(a.cluster_id);
  auto cb = cluster_numeric(b.cluster_id);
  if (ca && cb && *ca != *cb) return *ca < *cb;
  if (a.cluster_id != b.cluster_id) return a.cluster_id < b.cluster_id;
  return static_cast<int>(a.role) < static_cast<int>(b.role);
}

inline std::vector<const Mention*> mentions_in_document_order(const Document& doc) {
  std::vector<const Mention*> out;
  out.reserve(doc.mentions.size());
  for (const auto& [_, m] : doc.mentions) out.push_back(&m);
  std::sort(out.begin(), out.end(),
            [](const Mention* a, const Mention* b) { return mention_before(*a, *b); });
  return out;
}

namespace detail {

inline int numeric_suffix_max(const std::map<std::string, Mention>& mentions) {
  long long mx = 0;
  for (const auto& [key, _] : mentions) {
    if (key.size() >= 2 && key[0] == 'm')
      if (auto n = parse_digits(std::string_view(key).substr(1))) mx = std::max(mx, *n);
  }
  return static_cast<int>(mx);
}

}  // namespace detail

// Core mutation used by parsers and the converter. The public add_mention
// below wraps it in a pure value interface.
inline Mention& add_mention_in_place(Document& doc, const std::string& cluster_id, int sentence,
                                     NodeId start, NodeId end, std::optional<int> head,
                                     ApposRole role) {
  if (!cluster_id_well_formed(cluster_id))
    fail(ErrorCode::MalformedEntity, "bad cluster id shape: '" + cluster_id + "'");
  const Sentence* sent = doc.sentence_at(sentence);
  if (sent == nullptr)
    fail(ErrorCode::SpanOutOfRange, "no sentence with index " + std::to_string(sentence));
  if (!start.valid() || !end.valid() || end < start)
    fail(ErrorCode::SpanOutOfRange,
         "bad span [" + to_string(start) + ", " + to_string(end) + "]");
  if (sent->find(start) == nullptr || sent->find(end) == nullptr)
    fail(ErrorCode::SpanOutOfRange, "span endpoint missing in sentence " + std::to_string(sentence) +
                                        ": [" + to_string(start) + ", " + to_string(end) + "]");
  for (const auto& [_, m] : doc.mentions)
    if (m.cluster_id == cluster_id && m.sentence == sentence && m.start == start && m.end == end)
      fail(ErrorCode::DuplicateMention, "span [" + to_string(start) + ", " + to_string(end) +
                                            "] already a mention of " + cluster_id);
  int span_len = sent->nodes_in_range(start, end);
  int head_pos = head.value_or(span_len);
  if (head_pos < 1 || head_pos > span_len)
    fail(ErrorCode::BadHead, "head " + std::to_string(head_pos) + " outside span of length " +
                                 std::to_string(span_len));

  Mention m;
  m.id = "m" + std::to_string(detail::numeric_suffix_max(doc.mentions) + 1);
  m.cluster_id = cluster_id;
  m.sentence = sentence;
  m.start = start;
  m.end = end;
  m.head = head_pos;
  m.role = role;

  auto [it, inserted] = doc.clusters.try_emplace(cluster_id);
  if (inserted) it->second.id = cluster_id;
  it->second.mention_ids.push_back(m.id);
  return doc.mentions.emplace(m.id, std::move(m)).first->second;
}

inline Document add_mention(Document doc, const std::string& cluster_id, int sentence, NodeId start,
                            NodeId end, std::optional<int> head = std::nullopt,
                            ApposRole role = ApposRole::none) {
  add_mention_in_place(doc, cluster_id, sentence, start, end, head, role);
  return doc;
}

enum class Nesting { disjoint, equal, a_inside_b, b_inside_a, crossing };

constexpr std::string_view to_string(Nesting n) {
  switch (n) {
    case Nesting::disjoint: return "disjoint";
    case Nesting::equal: return "equal";
    case Nesting::a_inside_b: return "a_inside_b";
    case Nesting::b_inside_a: return "b_inside_a";
    case Nesting::crossing: return "crossing";
  }
  return "disjoint";
}

// Interval algebra on inclusive spans; mentions in different sentences are
// disjoint by definition.
inline Nesting nesting_relation(const Mention& a, const Mention& b) {
  if (a.sentence != b.sentence) return Nesting::disjoint;
  if (a.end < b.start || b.end < a.start) return Nesting::disjoint;
  if (a.start == b.start && a.end == b.end) return Nesting::equal;
  if (b.start <= a.start && a.end <= b.end) return Nesting::a_inside_b;
  if (a.start <= b.start && b.end <= a.end) return Nesting::b_inside_a;
  return Nesting::crossing;
}

inline const EntityCluster& cluster_of(const Document& doc, const std::string& mention_id) {
  auto mit = doc.mentions.find(mention_id);
  if (mit == doc.mentions.end())
    fail(ErrorCode::UnknownMention, "no mention with id '" + mention_id + "'");
  auto cit = doc.clusters.find(mit->second.cluster_id);
  if (cit == doc.clusters.end())
    fail(ErrorCode::UnknownMention,
         "mention '" + mention_id + "' references missing cluster " + mit->second.cluster_id);
  return cit->second;
}

// Renames clusters to e1..eN in order of first mention appearance (document
// order) and mentions to m1..mM in document order. Gives byte-stable output
// regardless of construction order.
inline void normalize_ids(Document& doc) {
  std::vector<const Mention*> ordered = mentions_in_document_order(doc);

  std::map<std::string, std::string> cluster_rename;
  std::vector<std::string> cluster_order;
  for (const Mention* m : ordered) {
    if (cluster_rename.emplace(m->cluster_id, "").second) cluster_order.push_back(m->cluster_id);
  }
  // Mention-less clusters keep deterministic positions at the end.
  for (const auto& [cid, _] : doc.clusters) {
    if (cluster_rename.emplace(cid, "").second) cluster_order.push_back(cid);
  }
  for (std::size_t i = 0; i < cluster_order.size(); ++i)
    cluster_rename[cluster_order[i]] = "e" + std::to_string(i + 1);

  std::map<std::string, EntityCluster> new_clusters;
  for (const auto& old_id : cluster_order) {
    EntityCluster c;
    c.id = cluster_rename[old_id];
    auto it = doc.clusters.find(old_id);
    c.etype = it != doc.clusters.end() ? it->second.etype : "_";
    new_clusters.emplace(c.id, std::move(c));
  }

  std::map<std::string, Mention> new_mentions;
  int next = 1;
  for (const Mention* m : ordered) {
    Mention renamed = *m;
    renamed.id = "m" + std::to_string(next++);
    renamed.cluster_id = cluster_rename[m->cluster_id];
    new_clusters[renamed.cluster_id].mention_ids.push_back(renamed.id);
    new_mentions.emplace(renamed.id, std::move(renamed));
  }

  doc.clusters = std::move(new_clusters);
  doc.mentions = std::move(new_mentions);
}

// Structural equality: sentences byte-for-byte, clusters by id/etype with
// their mention lists compared by content. Generated mention ids are
// deliberately ignored.
inline bool structurally_equal(const Document& a, const Document& b) {
  if (a.id != b.id || a.header_comments != b.header_comments || a.sentences != b.sentences)
    return false;
  if (a.clusters.size() != b.clusters.size() || a.mentions.size() != b.mentions.size())
    return false;
  auto ita = a.clusters.begin();
  auto itb = b.clusters.begin();
  for (; ita != a.clusters.end(); ++ita, ++itb) {
    const EntityCluster& ca = ita->second;
    const EntityCluster& cb = itb->second;
    if (ca.id != cb.id || ca.etype != cb.etype || ca.mention_ids.size() != cb.mention_ids.size())
      return false;
    for (std::size_t i = 0; i < ca.mention_ids.size(); ++i) {
      auto ma = a.mentions.find(ca.mention_ids[i]);
      auto mb = b.mentions.find(cb.mention_ids[i]);
      if (ma == a.mentions.end() || mb == b.mentions.end()) return false;
      if (!same_content(ma->second, mb->second)) return false;
    }
  }
  return true;
}

}  // namespace corefud
