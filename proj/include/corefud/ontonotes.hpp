#pragma once

// Reader for OntoNotes-style coreference files: SGML-lite markup over a
// whitespace-tokenized text. One outer document element carries the document
// id; COREF elements carry ID, TYPE (IDENT or APPOS) and an optional SUBTYPE
// (HEAD or ATTRIB, only inside an APPOS span). COREF elements nest and never
// cross. Other elements are transparent containers. Token positions index
// the trace-inclusive leaf sequence of the companion parse file.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corefud/error.hpp"
#include "corefud/strings.hpp"

namespace corefud {

enum class OntoTag { ident, appos };

enum class OntoSubtype { none, head, attrib };

struct OntoSpan {
  std::string coref_id;
  OntoTag type = OntoTag::ident;
  OntoSubtype subtype = OntoSubtype::none;
  int first_leaf = 0;  // inclusive, 0-based
  int last_leaf = 0;   // inclusive
  std::vector<OntoSpan> children;
};

struct OntoDocument {
  std::string doc_id;
  std::vector<std::string> tokens;  // trace-inclusive token stream
  std::vector<OntoSpan> spans;      // forest of top-level coreference spans
};

namespace detail {

inline std::string decode_sgml_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    if (raw[i] == '&') {
      if (raw.substr(i, 5) == "&amp;") { out.push_back('&'); i += 5; continue; }
      if (raw.substr(i, 4) == "&lt;") { out.push_back('<'); i += 4; continue; }
      if (raw.substr(i, 4) == "&gt;") { out.push_back('>'); i += 4; continue; }
    }
    out.push_back(raw[i++]);
  }
  return out;
}

struct SgmlTag {
  bool closing = false;
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
};

inline bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-' || c == '.';
}

// Parses the tag starting at pos (value[pos] == '<'); advances past '>'.
inline SgmlTag scan_tag(std::string_view text, std::size_t& pos) {
  SgmlTag tag;
  std::size_t start = pos;
  ++pos;  // '<'
  if (pos < text.size() && text[pos] == '/') {
    tag.closing = true;
    ++pos;
  }
  std::size_t name_start = pos;
  while (pos < text.size() && is_name_char(text[pos])) ++pos;
  if (pos == name_start)
    fail(ErrorCode::UnclosedTag, "malformed tag at offset " + std::to_string(start));
  tag.name = std::string(text.substr(name_start, pos - name_start));

  while (true) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
    if (pos >= text.size())
      fail(ErrorCode::UnclosedTag, "tag '" + tag.name + "' not terminated before end of input");
    if (text[pos] == '>') {
      ++pos;
      return tag;
    }
    if (tag.closing)
      fail(ErrorCode::UnclosedTag, "close tag '" + tag.name + "' carries attributes");
    std::size_t key_start = pos;
    while (pos < text.size() && is_name_char(text[pos])) ++pos;
    if (pos == key_start)
      fail(ErrorCode::UnclosedTag, "malformed attribute in tag '" + tag.name + "'");
    std::string key(text.substr(key_start, pos - key_start));
    if (pos >= text.size() || text[pos] != '=')
      fail(ErrorCode::UnclosedTag, "attribute '" + key + "' in tag '" + tag.name + "' lacks a value");
    ++pos;
    if (pos >= text.size() || (text[pos] != '"' && text[pos] != '\''))
      fail(ErrorCode::UnclosedTag, "attribute '" + key + "' in tag '" + tag.name + "' lacks quotes");
    char quote = text[pos++];
    std::size_t val_start = pos;
    while (pos < text.size() && text[pos] != quote) ++pos;
    if (pos >= text.size())
      fail(ErrorCode::UnclosedTag, "unterminated attribute value in tag '" + tag.name + "'");
    tag.attrs.emplace_back(std::move(key), decode_sgml_entities(text.substr(val_start, pos - val_start)));
    ++pos;  // closing quote
  }
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace detail

inline OntoDocument parse_onto_coref(std::string_view text) {
  OntoDocument doc;

  struct OpenElement {
    std::string name;
    bool is_coref = false;
    OntoSpan span;  // only meaningful for COREF elements
    int start_leaf = 0;
  };
  std::vector<OpenElement> stack;
  std::vector<std::size_t> coref_stack;  // indices of COREF entries in `stack`
  bool root_seen = false;
  bool root_closed = false;

  auto nearest_coref = [&]() -> const OntoSpan* {
    return coref_stack.empty() ? nullptr : &stack[coref_stack.back()].span;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos;
      continue;
    }
    if (c != '<') {
      // one whitespace-delimited token
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != '<' && text[pos] != ' ' && text[pos] != '\t' &&
             text[pos] != '\n' && text[pos] != '\r')
        ++pos;
      if (stack.empty())
        fail(ErrorCode::BadAttr, root_closed ? "text after the document element was closed"
                                             : "text outside the document element");
      doc.tokens.push_back(detail::decode_sgml_entities(text.substr(start, pos - start)));
      continue;
    }

    detail::SgmlTag tag = detail::scan_tag(text, pos);
    if (!tag.closing) {
      if (root_closed) fail(ErrorCode::BadAttr, "element after the document element was closed");
      OpenElement elem;
      elem.name = tag.name;
      elem.start_leaf = static_cast<int>(doc.tokens.size());
      if (!root_seen) {
        // Outermost element is the document element; its id names the document.
        if (tag.name == "COREF")
          fail(ErrorCode::BadAttr, "COREF cannot be the document element");
        for (const auto& [key, value] : tag.attrs) {
          std::string k = detail::lower(key);
          if (k == "id" || k == "docno") {
            doc.doc_id = value;
            break;
          }
        }
        if (doc.doc_id.empty())
          fail(ErrorCode::BadAttr, "document element '" + tag.name + "' lacks an id attribute");
        root_seen = true;
      } else if (tag.name == "COREF") {
        elem.is_coref = true;
        std::string id, type, subtype;
        bool have_type = false, have_subtype = false;
        for (const auto& [key, value] : tag.attrs) {
          if (key == "ID") id = value;
          else if (key == "TYPE") { type = value; have_type = true; }
          else if (key == "SUBTYPE") { subtype = value; have_subtype = true; }
        }
        if (id.empty()) fail(ErrorCode::BadAttr, "COREF element lacks an ID attribute");
        if (!have_type) fail(ErrorCode::BadAttr, "COREF element lacks a TYPE attribute");
        if (type == "IDENT") elem.span.type = OntoTag::ident;
        else if (type == "APPOS") elem.span.type = OntoTag::appos;
        else fail(ErrorCode::BadAttr, "unknown COREF TYPE '" + type + "'");
        if (have_subtype) {
          if (subtype == "HEAD") elem.span.subtype = OntoSubtype::head;
          else if (subtype == "ATTRIB") elem.span.subtype = OntoSubtype::attrib;
          else fail(ErrorCode::BadAttr, "unknown COREF SUBTYPE '" + subtype + "'");
          const OntoSpan* enclosing = nearest_coref();
          if (enclosing == nullptr || enclosing->type != OntoTag::appos)
            fail(ErrorCode::BadAttr, "SUBTYPE '" + subtype + "' outside an APPOS span");
        }
        elem.span.coref_id = id;
      }
      stack.push_back(std::move(elem));
      if (stack.back().is_coref) coref_stack.push_back(stack.size() - 1);
      continue;
    }

    // closing tag
    if (stack.empty())
      fail(ErrorCode::CrossingTags, "close tag </" + tag.name + "> with no open element");
    if (stack.back().name != tag.name)
      fail(ErrorCode::CrossingTags, "close tag </" + tag.name + "> does not match open element <" +
                                        stack.back().name + ">; elements must nest");
    OpenElement elem = std::move(stack.back());
    stack.pop_back();
    if (elem.is_coref) {
      coref_stack.pop_back();
      if (static_cast<int>(doc.tokens.size()) == elem.start_leaf)
        fail(ErrorCode::BadAttr, "COREF element with ID '" + elem.span.coref_id + "' covers no tokens");
      elem.span.first_leaf = elem.start_leaf;
      elem.span.last_leaf = static_cast<int>(doc.tokens.size()) - 1;
      if (!coref_stack.empty())
        stack[coref_stack.back()].span.children.push_back(std::move(elem.span));
      else
        doc.spans.push_back(std::move(elem.span));
    }
    if (stack.empty()) root_closed = true;
  }

  if (!stack.empty())
    fail(ErrorCode::UnclosedTag, "element <" + stack.back().name + "> not closed before end of input");
  if (!root_seen) fail(ErrorCode::BadAttr, "input contains no document element");
  return doc;
}

}  // namespace corefud
