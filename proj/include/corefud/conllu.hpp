#pragma once

// Reader and writer for the CoNLL-U dialect carrying entity annotations and
// empty nodes. Ten tab-separated columns; comments start with '#'; sentence
// blocks are separated by exactly one blank line. Entity brackets live in
// MISC ("Entity=..."); a "# global.Entity" header announces the field
// inventory once per entity-bearing file. The writer is canonical: parsing
// its output and serializing again reproduces the bytes.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "corefud/entity.hpp"
#include "corefud/error.hpp"
#include "corefud/model.hpp"
#include "corefud/strings.hpp"

namespace corefud {
namespace detail {

struct MiscSplit {
  std::optional<std::string> entity;
  std::string rest = "_";
};

inline MiscSplit split_misc(const std::string& misc, const std::string& where) {
  MiscSplit out;
  if (misc == "_") return out;
  std::vector<std::string> keep;
  for (const std::string& part : split(misc, '|')) {
    if (part.starts_with("Entity=")) {
      if (out.entity)
        fail(ErrorCode::MalformedEntity, "multiple Entity attributes at " + where);
      out.entity = part.substr(7);
    } else {
      keep.push_back(part);
    }
  }
  out.rest = keep.empty() ? "_" : join(keep, "|");
  return out;
}

inline std::string canonical_misc(const std::optional<std::string>& entity, const std::string& rest) {
  if (!entity || entity->empty()) return rest;
  if (rest == "_" || rest.empty()) return "Entity=" + *entity;
  return "Entity=" + *entity + "|" + rest;
}

struct NodeEvents {
  NodeId node;
  std::vector<EntityEvent> events;
};

struct SentenceBlock {
  Sentence sent;
  std::vector<NodeEvents> events;
};

struct RawMention {
  std::string cluster_id;
  int sentence = 0;
  NodeId start;
  NodeId end;
  std::optional<int> head;
  std::optional<std::string> etype;
  std::optional<std::string> other;
};

inline ApposRole role_from_other(const std::optional<std::string>& other, const std::string& where) {
  if (!other) return ApposRole::none;
  if (*other == "Appos:head") return ApposRole::head;
  if (*other == "Appos:attrib") return ApposRole::attrib;
  if (*other == "Appos:span") return ApposRole::span;
  fail(ErrorCode::MalformedEntity, "unsupported Entity 'other' field '" + *other + "' at " + where);
}

inline bool block_touches_cluster(const SentenceBlock& block, const std::string& cluster_id) {
  for (const NodeEvents& ne : block.events)
    for (const EntityEvent& ev : ne.events)
      if (ev.cluster_id == cluster_id) return true;
  return false;
}

}  // namespace detail

inline Document parse_conllu(std::string_view text) {
  Document doc;
  bool saw_newdoc = false;

  std::vector<detail::SentenceBlock> blocks;
  detail::SentenceBlock cur;
  bool cur_has_content = false;
  int last_surface = 0;
  int last_sub = 0;

  auto where = [&](int line_no) { return "line " + std::to_string(line_no); };

  auto flush = [&](bool at_eof, int line_no) {
    if (!cur_has_content) return;
    if (cur.sent.tokens.empty()) {
      if (at_eof && blocks.empty() && cur.sent.sent_id.empty()) {
        doc.header_comments = std::move(cur.sent.comments);
      } else {
        fail(ErrorCode::MalformedLine, "comment block without token lines near " + where(line_no));
      }
    } else {
      blocks.push_back(std::move(cur));
    }
    cur = detail::SentenceBlock{};
    cur_has_content = false;
    last_surface = 0;
    last_sub = 0;
  };

  std::vector<std::string> lines = split(text, '\n');
  // A trailing newline produces one empty tail element, not an extra blank.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string line = lines[li];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int line_no = static_cast<int>(li) + 1;

    if (trim(line).empty()) {
      flush(false, line_no);
      continue;
    }

    if (line[0] == '#') {
      if (line.starts_with("# newdoc id = ")) {
        if (saw_newdoc)
          fail(ErrorCode::MultipleDocuments, "second document boundary at " + where(line_no));
        if (!blocks.empty() || cur_has_content)
          fail(ErrorCode::MultipleDocuments,
               "document boundary after sentence content at " + where(line_no));
        doc.id = line.substr(14);
        saw_newdoc = true;
      } else if (line.starts_with("# global.Entity = ")) {
        if (line.substr(18) != kEntityFieldInventory)
          fail(ErrorCode::MalformedEntity, "unsupported entity field inventory at " + where(line_no) +
                                               ": '" + line.substr(18) + "'");
      } else if (line.starts_with("# sent_id = ") && cur.sent.sent_id.empty()) {
        cur.sent.sent_id = line.substr(12);
        cur_has_content = true;
      } else {
        cur.sent.comments.push_back(line);
        cur_has_content = true;
      }
      continue;
    }

    // token line
    cur_has_content = true;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10)
      fail(ErrorCode::MalformedLine, "expected 10 tab-separated columns at " + where(line_no));
    for (const std::string& c : cols)
      if (c.empty()) fail(ErrorCode::MalformedLine, "empty column at " + where(line_no));

    const std::string& id_col = cols[0];
    std::size_t dot = id_col.find('.');
    std::size_t dash = id_col.find('-');

    if (dash != std::string::npos) {  // multiword token range, verbatim pass-through
      auto first = parse_digits(std::string_view(id_col).substr(0, dash), 9);
      auto second = parse_digits(std::string_view(id_col).substr(dash + 1), 9);
      if (!first || !second || *second < *first)
        fail(ErrorCode::MalformedLine, "bad token range id '" + id_col + "' at " + where(line_no));
      if (*first != last_surface + 1)
        fail(ErrorCode::BadTokenNumbering,
             "token range '" + id_col + "' does not anchor at the next token (" + where(line_no) + ")");
      detail::MiscSplit misc = detail::split_misc(cols[9], where(line_no));
      if (misc.entity)
        fail(ErrorCode::MalformedEntity,
             "Entity annotation on a multiword token range at " + where(line_no));
      cur.sent.mwt_lines.push_back({static_cast<int>(*first), line});
      continue;
    }

    Token tok;
    if (dot != std::string::npos) {  // empty node
      auto anchor = parse_digits(std::string_view(id_col).substr(0, dot), 9);
      auto sub = parse_digits(std::string_view(id_col).substr(dot + 1), 9);
      if (!anchor || !sub || *sub < 1)
        fail(ErrorCode::MalformedLine, "bad empty node id '" + id_col + "' at " + where(line_no));
      if (*anchor != last_surface)
        fail(ErrorCode::BadTokenNumbering, "empty node '" + id_col +
                                               "' not anchored at the preceding token (" +
                                               where(line_no) + ")");
      if (*sub != last_sub + 1)
        fail(ErrorCode::BadTokenNumbering,
             "empty node '" + id_col + "' out of sequence at " + where(line_no));
      last_sub = static_cast<int>(*sub);
      tok.id = NodeId{static_cast<int>(*anchor), static_cast<int>(*sub)};
    } else {  // surface token
      auto index = parse_digits(id_col, 9);
      if (!index || *index < 1)
        fail(ErrorCode::MalformedLine, "bad token id '" + id_col + "' at " + where(line_no));
      if (*index != last_surface + 1)
        fail(ErrorCode::BadTokenNumbering, *index <= last_surface
                                               ? "duplicate token id '" + id_col + "' at " + where(line_no)
                                               : "gap before token id '" + id_col + "' at " + where(line_no));
      last_surface = static_cast<int>(*index);
      last_sub = 0;
      tok.id = NodeId{static_cast<int>(*index), 0};
    }

    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    tok.xpos = cols[4];
    tok.feats = cols[5];
    tok.head = cols[6];
    tok.deprel = cols[7];
    tok.deps = cols[8];
    if (tok.is_empty_node() && (tok.head != "_" || tok.deprel != "_"))
      fail(ErrorCode::MalformedLine,
           "empty node '" + id_col + "' must not carry HEAD/DEPREL (" + where(line_no) + ")");

    detail::MiscSplit misc = detail::split_misc(cols[9], where(line_no));
    tok.misc = misc.rest;
    if (misc.entity) {
      std::vector<EntityEvent> events = parse_entity_attr(*misc.entity);
      cur.events.push_back({tok.id, std::move(events)});
    }
    cur.sent.tokens.push_back(std::move(tok));
  }
  flush(true, static_cast<int>(lines.size()));

  // Reconstruct mentions from bracket events, per sentence.
  std::vector<detail::RawMention> raw;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    struct OpenRec {
      NodeId node;
      std::optional<std::string> etype;
      std::optional<int> head;
      std::optional<std::string> other;
    };
    std::map<std::string, std::vector<OpenRec>> stacks;
    const std::string sent_label =
        "sentence " + (blocks[k].sent.sent_id.empty() ? std::to_string(k + 1) : blocks[k].sent.sent_id);

    for (const detail::NodeEvents& ne : blocks[k].events) {
      for (const EntityEvent& ev : ne.events) {
        switch (ev.kind) {
          case EntityEventKind::open:
            stacks[ev.cluster_id].push_back({ne.node, ev.etype, ev.head, ev.other});
            break;
          case EntityEventKind::close: {
            auto it = stacks.find(ev.cluster_id);
            if (it == stacks.end() || it->second.empty())
              fail(ErrorCode::UnknownClose, "close of " + ev.cluster_id + " with no open bracket in " +
                                                sent_label);
            OpenRec rec = it->second.back();
            it->second.pop_back();
            raw.push_back({ev.cluster_id, static_cast<int>(k), rec.node, ne.node, rec.head,
                           rec.etype, rec.other});
            break;
          }
          case EntityEventKind::single:
            raw.push_back({ev.cluster_id, static_cast<int>(k), ne.node, ne.node, ev.head, ev.etype,
                           ev.other});
            break;
        }
      }
    }
    for (const auto& [cluster_id, stack] : stacks) {
      if (stack.empty()) continue;
      bool continues_later = false;
      for (std::size_t j = k + 1; j < blocks.size() && !continues_later; ++j)
        continues_later = detail::block_touches_cluster(blocks[j], cluster_id);
      if (continues_later)
        fail(ErrorCode::CrossSentenceMention,
             "bracket for " + cluster_id + " left open at end of " + sent_label +
                 " and continued in a later sentence");
      fail(ErrorCode::UnbalancedBracket,
           "bracket for " + cluster_id + " opened but never closed in " + sent_label);
    }
  }

  for (detail::SentenceBlock& block : blocks) doc.sentences.push_back(std::move(block.sent));

  std::sort(raw.begin(), raw.end(), [](const detail::RawMention& a, const detail::RawMention& b) {
    if (a.sentence != b.sentence) return a.sentence < b.sentence;
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return b.end < a.end;
    auto ca = cluster_numeric(a.cluster_id);
    auto cb = cluster_numeric(b.cluster_id);
    if (ca && cb && *ca != *cb) return *ca < *cb;
    return a.cluster_id < b.cluster_id;
  });

  std::set<std::tuple<std::string, int, NodeId, NodeId>> seen;
  int next_mention = 1;
  for (const detail::RawMention& rm : raw) {
    const Sentence& sent = doc.sentences[static_cast<std::size_t>(rm.sentence)];
    const std::string where_m = "mention of " + rm.cluster_id + " in sentence " +
                                (sent.sent_id.empty() ? std::to_string(rm.sentence + 1) : sent.sent_id);
    if (!seen.emplace(rm.cluster_id, rm.sentence, rm.start, rm.end).second)
      fail(ErrorCode::DuplicateMention, "duplicate " + where_m);

    int span_len = sent.nodes_in_range(rm.start, rm.end);
    Mention m;
    m.id = "m" + std::to_string(next_mention++);
    m.cluster_id = rm.cluster_id;
    m.sentence = rm.sentence;
    m.start = rm.start;
    m.end = rm.end;
    m.head = rm.head.value_or(span_len);
    if (m.head < 1 || m.head > span_len)
      fail(ErrorCode::BadHead, "head " + std::to_string(m.head) + " outside " + where_m +
                                   " of length " + std::to_string(span_len));
    m.role = detail::role_from_other(rm.other, where_m);

    auto [cit, inserted] = doc.clusters.try_emplace(rm.cluster_id);
    if (inserted) cit->second.id = rm.cluster_id;
    if (rm.etype && *rm.etype != "_" && cit->second.etype == "_") cit->second.etype = *rm.etype;
    cit->second.mention_ids.push_back(m.id);
    doc.mentions.emplace(m.id, std::move(m));
  }

  return doc;
}

namespace detail {

// Entity payload per node for one sentence. Canonical event order on a node:
// closes in reverse order of their opens, then opens (longer spans first,
// ties by numeric cluster id), then singles (by numeric cluster id).
inline std::map<NodeId, std::string> entity_payloads(const Document& doc, const Sentence& sent,
                                                     const std::vector<const Mention*>& mentions) {
  for (const Mention* m : mentions) {
    if (sent.find(m->start) == nullptr || sent.find(m->end) == nullptr)
      fail(ErrorCode::SpanOutOfRange, "mention " + m->id + " endpoint missing in sentence");
  }
  for (std::size_t i = 0; i < mentions.size(); ++i)
    for (std::size_t j = i + 1; j < mentions.size(); ++j)
      if (nesting_relation(*mentions[i], *mentions[j]) == Nesting::crossing)
        fail(ErrorCode::CrossingMentions,
             "mentions [" + to_string(mentions[i]->start) + ", " + to_string(mentions[i]->end) +
                 "] and [" + to_string(mentions[j]->start) + ", " + to_string(mentions[j]->end) +
                 "] cross; bracket encoding cannot express crossing spans");

  auto cluster_rank = [&](const Mention* m) -> long long {
    auto n = cluster_numeric(m->cluster_id);
    return n ? *n : 0;
  };
  auto make_event = [&](const Mention* m, EntityEventKind kind) {
    EntityEvent ev;
    ev.kind = kind;
    ev.cluster_id = m->cluster_id;
    int span_len = sent.nodes_in_range(m->start, m->end);
    std::string etype = "_";
    if (auto it = doc.clusters.find(m->cluster_id); it != doc.clusters.end()) etype = it->second.etype;
    if (m->role != ApposRole::none) ev.other = "Appos:" + std::string(to_string(m->role));
    if (ev.other || m->head != span_len) ev.head = m->head;
    if (ev.head || etype != "_") ev.etype = etype;
    return ev;
  };

  std::map<const Mention*, int> open_seq;
  int next_seq = 0;
  std::map<NodeId, std::string> payloads;
  for (const Token& tok : sent.tokens) {
    std::vector<EntityEvent> events;

    std::vector<const Mention*> closing;
    for (const Mention* m : mentions)
      if (m->end == tok.id && m->start < m->end) closing.push_back(m);
    std::sort(closing.begin(), closing.end(),
              [&](const Mention* a, const Mention* b) { return open_seq[a] > open_seq[b]; });
    for (const Mention* m : closing) events.push_back(close_event(m->cluster_id));

    std::vector<const Mention*> opening;
    for (const Mention* m : mentions)
      if (m->start == tok.id && m->start < m->end) opening.push_back(m);
    std::sort(opening.begin(), opening.end(), [&](const Mention* a, const Mention* b) {
      if (a->end != b->end) return b->end < a->end;
      return cluster_rank(a) < cluster_rank(b);
    });
    for (const Mention* m : opening) {
      open_seq[m] = next_seq++;
      events.push_back(make_event(m, EntityEventKind::open));
    }

    std::vector<const Mention*> singles;
    for (const Mention* m : mentions)
      if (m->start == tok.id && m->end == tok.id) singles.push_back(m);
    std::sort(singles.begin(), singles.end(),
              [&](const Mention* a, const Mention* b) { return cluster_rank(a) < cluster_rank(b); });
    for (const Mention* m : singles) events.push_back(make_event(m, EntityEventKind::single));

    if (!events.empty()) payloads[tok.id] = serialize_entity_attr(events);
  }
  return payloads;
}

}  // namespace detail

inline std::string serialize_conllu(const Document& doc) {
  std::string out;
  if (!doc.id.empty()) out += "# newdoc id = " + doc.id + "\n";
  if (!doc.mentions.empty())
    out += "# global.Entity = " + std::string(kEntityFieldInventory) + "\n";
  for (const std::string& c : doc.header_comments) out += c + "\n";

  std::vector<std::vector<const Mention*>> per_sentence(doc.sentences.size());
  for (const Mention* m : mentions_in_document_order(doc)) {
    if (doc.sentence_at(m->sentence) == nullptr)
      fail(ErrorCode::SpanOutOfRange,
           "mention " + m->id + " references missing sentence " + std::to_string(m->sentence));
    per_sentence[static_cast<std::size_t>(m->sentence)].push_back(m);
  }

  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    const Sentence& sent = doc.sentences[k];
    if (k > 0) out += "\n";
    std::map<NodeId, std::string> payloads = detail::entity_payloads(doc, sent, per_sentence[k]);

    if (!sent.sent_id.empty()) out += "# sent_id = " + sent.sent_id + "\n";
    for (const std::string& c : sent.comments) out += c + "\n";

    for (const Token& tok : sent.tokens) {
      if (!tok.is_empty_node())
        for (const MwtLine& mwt : sent.mwt_lines)
          if (mwt.anchor == tok.id.token) out += mwt.line + "\n";

      std::optional<std::string> entity;
      if (auto it = payloads.find(tok.id); it != payloads.end()) entity = it->second;
      out += to_string(tok.id);
      out.push_back('\t');
      out += tok.form;
      out.push_back('\t');
      out += tok.lemma;
      out.push_back('\t');
      out += tok.upos;
      out.push_back('\t');
      out += tok.xpos;
      out.push_back('\t');
      out += tok.feats;
      out.push_back('\t');
      out += tok.head;
      out.push_back('\t');
      out += tok.deprel;
      out.push_back('\t');
      out += tok.deps;
      out.push_back('\t');
      out += detail::canonical_misc(entity, tok.misc);
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace corefud
