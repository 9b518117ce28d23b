#pragma once

// Joins a parsed coreference file with its parse trees into one
// sentence-segmented representation. The coreference token stream indexes
// the trace-inclusive leaf sequence; sentence boundaries come from tree
// boundaries; surface forms must match position by position.

#include <string>
#include <vector>

#include "corefud/error.hpp"
#include "corefud/ontonotes.hpp"
#include "corefud/ptb.hpp"

namespace corefud {

struct AlignedLeaf {
  std::string form;
  std::string pos;
  bool trace = false;
};

struct AlignedSentence {
  std::vector<AlignedLeaf> leaves;  // traces included
  std::vector<OntoSpan> spans;      // leaf indices local to this sentence
};

struct AlignedDocument {
  std::string doc_id;
  std::vector<AlignedSentence> sentences;
};

namespace detail {

inline void reindex_span(const OntoSpan& span, int sentence_start, OntoSpan& out) {
  out = span;
  out.first_leaf = span.first_leaf - sentence_start;
  out.last_leaf = span.last_leaf - sentence_start;
  out.children.clear();
  for (const OntoSpan& child : span.children) {
    OntoSpan local;
    reindex_span(child, sentence_start, local);
    out.children.push_back(std::move(local));
  }
}

}  // namespace detail

inline AlignedDocument align(const OntoDocument& coref, const std::vector<PtbTree>& trees) {
  AlignedDocument out;
  out.doc_id = coref.doc_id;

  // Global leaf sequence and per-sentence boundaries.
  std::vector<int> sentence_of;    // global leaf index -> sentence
  std::vector<int> sentence_start; // sentence -> first global leaf index
  std::size_t total_leaves = 0;
  for (std::size_t s = 0; s < trees.size(); ++s) {
    std::vector<const PtbTree*> leaves;
    collect_leaves(trees[s], leaves);
    sentence_start.push_back(static_cast<int>(total_leaves));
    AlignedSentence sent;
    for (const PtbTree* leaf : leaves) {
      sent.leaves.push_back({leaf->form, leaf->label, leaf->is_trace()});
      sentence_of.push_back(static_cast<int>(s));
    }
    total_leaves += leaves.size();
    out.sentences.push_back(std::move(sent));
  }

  if (total_leaves != coref.tokens.size())
    fail(ErrorCode::LengthMismatch,
         "parse trees have " + std::to_string(total_leaves) + " leaves but the coreference file has " +
             std::to_string(coref.tokens.size()) + " tokens");

  std::size_t global = 0;
  for (const AlignedSentence& sent : out.sentences) {
    for (const AlignedLeaf& leaf : sent.leaves) {
      if (!leaf.trace && leaf.form != coref.tokens[global])
        fail(ErrorCode::FormMismatch, "token " + std::to_string(global) + ": parse leaf '" +
                                          leaf.form + "' vs coreference token '" +
                                          coref.tokens[global] + "'");
      ++global;
    }
  }

  for (const OntoSpan& span : coref.spans) {
    if (span.first_leaf < 0 || span.last_leaf >= static_cast<int>(total_leaves))
      fail(ErrorCode::LengthMismatch,
           "span for ID '" + span.coref_id + "' exceeds the leaf sequence");
    int s_first = sentence_of[static_cast<std::size_t>(span.first_leaf)];
    int s_last = sentence_of[static_cast<std::size_t>(span.last_leaf)];
    if (s_first != s_last)
      fail(ErrorCode::SpanStraddlesSentences,
           "span for ID '" + span.coref_id + "' covers leaves " + std::to_string(span.first_leaf) +
               ".." + std::to_string(span.last_leaf) + " across sentence boundary");
    OntoSpan local;
    detail::reindex_span(span, sentence_start[static_cast<std::size_t>(s_first)], local);
    out.sentences[static_cast<std::size_t>(s_first)].spans.push_back(std::move(local));
  }
  return out;
}

}  // namespace corefud
