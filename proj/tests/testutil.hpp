#pragma once

// Shared fixtures, generators and brute-force oracles for the test suites.
// Oracles deliberately materialize node sets instead of reusing the interval
// arithmetic they are checking.

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "corefud/corefud.hpp"

namespace testutil {

using namespace corefud;

inline std::filesystem::path data_dir() { return std::filesystem::path(COREFUD_TEST_DATA_DIR); }

inline Sentence make_sentence(int surface_tokens, std::string sent_id = "") {
  Sentence sent;
  sent.sent_id = std::move(sent_id);
  for (int i = 1; i <= surface_tokens; ++i) {
    Token tok;
    tok.id = NodeId{i, 0};
    tok.form = "w" + std::to_string(i);
    sent.tokens.push_back(std::move(tok));
  }
  return sent;
}

// Inserts an empty node (anchor, sub) at its proper position.
inline void add_empty_node(Sentence& sent, int anchor, int sub) {
  Token tok;
  tok.id = NodeId{anchor, sub};
  tok.form = "_";
  auto it = sent.tokens.begin();
  while (it != sent.tokens.end() && it->id < tok.id) ++it;
  sent.tokens.insert(it, std::move(tok));
}

inline Document make_doc(const std::vector<int>& sentence_sizes, std::string doc_id = "d1") {
  Document doc;
  doc.id = std::move(doc_id);
  for (std::size_t k = 0; k < sentence_sizes.size(); ++k)
    doc.sentences.push_back(
        make_sentence(sentence_sizes[k], doc.id + "-s" + std::to_string(k + 1)));
  return doc;
}

// ---------------------------------------------------------------------------
// Brute-force oracles

inline std::set<NodeId> node_set(const Sentence& sent, NodeId start, NodeId end) {
  std::set<NodeId> out;
  for (const Token& t : sent.tokens)
    if (start <= t.id && t.id <= end) out.insert(t.id);
  return out;
}

// Set-based span relation: compare the materialized node sets.
inline Nesting oracle_nesting(const Document& doc, const Mention& a, const Mention& b) {
  if (a.sentence != b.sentence) return Nesting::disjoint;
  const Sentence& sent = doc.sentences[static_cast<std::size_t>(a.sentence)];
  std::set<NodeId> sa = node_set(sent, a.start, a.end);
  std::set<NodeId> sb = node_set(sent, b.start, b.end);
  std::set<NodeId> inter;
  for (NodeId n : sa)
    if (sb.count(n)) inter.insert(n);
  if (inter.empty()) return Nesting::disjoint;
  if (sa == sb) return Nesting::equal;
  if (inter == sa) return Nesting::a_inside_b;
  if (inter == sb) return Nesting::b_inside_a;
  return Nesting::crossing;
}

// Coverage-set statistics oracle: per-token mention sets plus pairwise
// subset comparisons over materialized node sets.
inline CorpusStats oracle_stats(const Document& doc) {
  CorpusStats stats;
  stats.total_sentences = static_cast<long long>(doc.sentences.size());
  for (const Sentence& sent : doc.sentences)
    for (const Token& tok : sent.tokens)
      (tok.is_empty_node() ? stats.total_empty_nodes : stats.total_tokens) += 1;

  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    const Sentence& sent = doc.sentences[k];
    std::vector<const Mention*> mentions;
    for (const auto& [_, m] : doc.mentions)
      if (m.sentence == static_cast<int>(k)) mentions.push_back(&m);

    std::map<const Mention*, std::set<NodeId>> span_nodes;
    for (const Mention* m : mentions) span_nodes[m] = node_set(sent, m->start, m->end);

    for (const Token& tok : sent.tokens) {
      if (tok.is_empty_node()) continue;
      std::set<const Mention*> covering;
      for (const Mention* m : mentions)
        if (span_nodes[m].count(tok.id)) covering.insert(m);
      if (covering.size() >= 1) ++stats.tokens_in_entity;
      if (covering.size() >= 2) ++stats.nested_tokens;
      bool head = false, attrib = false, span = false;
      for (const Mention* m : covering) {
        if (m->role == ApposRole::head) head = true;
        if (m->role == ApposRole::attrib) attrib = true;
        if (m->role == ApposRole::span) span = true;
      }
      if (head) ++stats.label_tokens.head;
      if (attrib) ++stats.label_tokens.attrib;
      if (span) ++stats.label_tokens.span;
    }

    for (const Mention* m : mentions) {
      if (span_nodes[m].size() == 1) ++stats.single_token_mentions;
      if (m->role == ApposRole::head) ++stats.label_mentions.head;
      if (m->role == ApposRole::attrib) ++stats.label_mentions.attrib;
      if (m->role == ApposRole::span) ++stats.label_mentions.span;
      for (const Mention* outer : mentions) {
        if (outer == m) continue;
        const std::set<NodeId>& sm = span_nodes[m];
        const std::set<NodeId>& so = span_nodes[outer];
        bool strict_subset = sm.size() < so.size() &&
                             std::all_of(sm.begin(), sm.end(),
                                         [&](NodeId n) { return so.count(n) > 0; });
        if (strict_subset) {
          ++stats.nested_mentions;
          break;
        }
      }
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Random documents

struct DocGen {
  std::mt19937 rng;

  explicit DocGen(unsigned seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

  NodeId random_node(const Sentence& sent) {
    return sent.tokens[static_cast<std::size_t>(uniform(0, static_cast<int>(sent.tokens.size()) - 1))].id;
  }

  ApposRole random_role() {
    int r = uniform(0, 9);
    if (r < 7) return ApposRole::none;
    if (r == 7) return ApposRole::head;
    if (r == 8) return ApposRole::attrib;
    return ApposRole::span;
  }

  // Random document: up to 4 sentences of up to 10 tokens, a few empty
  // nodes, up to 6 mentions. Crossing pairs allowed unless forbidden.
  Document random_doc(bool allow_crossing) {
    int n_sent = uniform(allow_crossing ? 0 : 1, 4);
    std::vector<int> sizes;
    for (int i = 0; i < n_sent; ++i) sizes.push_back(uniform(1, 10));
    Document doc = make_doc(sizes);
    for (Sentence& sent : doc.sentences) {
      int empties = uniform(0, 2);
      for (int e = 0; e < empties; ++e) {
        int anchor = uniform(0, sent.surface_size());
        int next = 1;
        for (const Token& t : sent.tokens)
          if (t.id.token == anchor && t.id.sub >= next) next = t.id.sub + 1;
        add_empty_node(sent, anchor, next);
      }
    }

    int wanted = uniform(0, 6);
    for (int i = 0; i < wanted && n_sent > 0; ++i) {
      int s = uniform(0, n_sent - 1);
      const Sentence& sent = doc.sentences[static_cast<std::size_t>(s)];
      NodeId a = random_node(sent);
      NodeId b = random_node(sent);
      if (b < a) std::swap(a, b);
      std::string cluster = "e" + std::to_string(uniform(1, 4));
      Mention probe;
      probe.sentence = s;
      probe.start = a;
      probe.end = b;
      if (!allow_crossing) {
        bool crosses = false;
        for (const auto& [_, m] : doc.mentions)
          if (nesting_relation(probe, m) == Nesting::crossing) crosses = true;
        if (crosses) continue;
      }
      int span_len = sent.nodes_in_range(a, b);
      std::optional<int> head;
      if (chance(0.3)) head = uniform(1, span_len);
      try {
        add_mention_in_place(doc, cluster, s, a, b, head, random_role());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DuplicateMention) throw;
      }
    }
    return doc;
  }
};

}  // namespace testutil
