#pragma once

// Penn-Treebank-style phrase structure trees. Terminals are (pos form)
// pairs; a leaf with pos "-NONE-" is a trace (empty category). Each
// top-level tree may be wrapped in one extra pair of parentheses, which is
// unwrapped. Non-whitespace tokens never contain raw parentheses (the PTB
// convention writes them as -LRB-/-RRB-).

#include <string>
#include <string_view>
#include <vector>

#include "corefud/error.hpp"

namespace corefud {

struct PtbTree {
  std::string label;            // constituent label, or POS for terminals
  std::string form;             // only for terminals
  std::vector<PtbTree> children;

  bool terminal() const { return children.empty(); }
  bool is_trace() const { return terminal() && label == "-NONE-"; }

  bool operator==(const PtbTree&) const = default;
};

inline void collect_leaves(const PtbTree& tree, std::vector<const PtbTree*>& out) {
  if (tree.terminal()) {
    out.push_back(&tree);
    return;
  }
  for (const PtbTree& child : tree.children) collect_leaves(child, out);
}

inline std::vector<const PtbTree*> leaves_of(const std::vector<PtbTree>& trees) {
  std::vector<const PtbTree*> out;
  for (const PtbTree& t : trees) collect_leaves(t, out);
  return out;
}

namespace detail {

inline bool ptb_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

constexpr int kMaxTreeDepth = 4096;

}  // namespace detail

inline std::vector<PtbTree> parse_ptb(std::string_view text) {
  std::vector<PtbTree> roots;

  // Explicit stack of partially built nodes; frames carry pending atoms so a
  // node can be classified as terminal or constituent when it closes.
  struct Frame {
    std::string label;
    bool label_set = false;
    std::vector<std::string> atoms;  // non-label bare tokens inside this node
    std::vector<PtbTree> children;
  };
  std::vector<Frame> stack;

  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (detail::ptb_space(c)) {
      ++pos;
      continue;
    }
    if (c == '(') {
      ++pos;
      if (static_cast<int>(stack.size()) >= detail::kMaxTreeDepth)
        fail(ErrorCode::UnbalancedParens, "tree nesting exceeds supported depth");
      stack.emplace_back();
      continue;
    }
    if (c == ')') {
      ++pos;
      if (stack.empty()) fail(ErrorCode::UnbalancedParens, "unmatched ')'");
      Frame frame = std::move(stack.back());
      stack.pop_back();

      PtbTree node;
      node.label = frame.label;
      if (!frame.label_set && frame.children.empty() && frame.atoms.empty())
        fail(ErrorCode::EmptyTree, "empty '()' constituent");
      if (frame.children.empty()) {
        if (frame.atoms.size() == 1) {
          node.form = std::move(frame.atoms[0]);  // terminal: (pos form)
        } else if (frame.atoms.empty()) {
          fail(ErrorCode::EmptyTree, "constituent '" + frame.label + "' has no children");
        } else {
          fail(ErrorCode::UnbalancedParens,
               "too many bare tokens under '" + frame.label + "'");
        }
      } else {
        if (!frame.atoms.empty())
          fail(ErrorCode::UnbalancedParens,
               "bare token '" + frame.atoms[0] + "' mixed with subtrees under '" + frame.label + "'");
        node.children = std::move(frame.children);
      }

      if (stack.empty()) {
        // Unwrap the conventional extra parenthesis pair around each tree.
        if (node.label.empty() && node.form.empty() && node.children.size() == 1)
          roots.push_back(std::move(node.children[0]));
        else
          roots.push_back(std::move(node));
      } else {
        stack.back().children.push_back(std::move(node));
      }
      continue;
    }
    // bare atom
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && !detail::ptb_space(text[pos]))
      ++pos;
    std::string atom(text.substr(start, pos - start));
    if (stack.empty())
      fail(ErrorCode::UnbalancedParens, "token '" + atom + "' outside any tree");
    if (!stack.back().label_set) {
      stack.back().label = std::move(atom);
      stack.back().label_set = true;
    } else {
      stack.back().atoms.push_back(std::move(atom));
    }
  }
  if (!stack.empty()) fail(ErrorCode::UnbalancedParens, "unmatched '('");
  return roots;
}

// Canonical one-space rendering; parse_ptb is its left inverse.
inline void print_ptb(const PtbTree& tree, std::string& out) {
  out.push_back('(');
  out += tree.label;
  if (tree.terminal()) {
    out.push_back(' ');
    out += tree.form;
  } else {
    for (const PtbTree& child : tree.children) {
      out.push_back(' ');
      print_ptb(child, out);
    }
  }
  out.push_back(')');
}

inline std::string print_ptb(const PtbTree& tree) {
  std::string out;
  print_ptb(tree, out);
  return out;
}

}  // namespace corefud
