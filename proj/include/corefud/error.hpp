#pragma once

// Error codes and the exception type used across the library. Every failure
// that callers are expected to handle carries one of these codes; messages
// add location detail.

#include <stdexcept>
#include <string>
#include <string_view>

namespace corefud {

enum class ErrorCode {
  // document model
  SpanOutOfRange,
  DuplicateMention,
  BadHead,
  UnknownMention,
  // entity annotation and CoNLL-U
  MalformedEntity,
  BadOrdering,
  UnbalancedBracket,
  UnknownClose,
  BadTokenNumbering,
  CrossSentenceMention,
  CrossingMentions,
  MalformedLine,
  MultipleDocuments,
  // coreference SGML
  CrossingTags,
  BadAttr,
  UnclosedTag,
  // phrase-structure trees
  UnbalancedParens,
  EmptyTree,
  // layer alignment
  LengthMismatch,
  FormMismatch,
  SpanStraddlesSentences,
  // conversion
  MissingHead,
  // pipeline
  TokenMismatch,
  SentenceCountMismatch,
  ManifestUnreadable,
  OutDirUnwritable,
  BadConfig,
  IoError,
  Timeout,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::DuplicateMention: return "DuplicateMention";
    case ErrorCode::BadHead: return "BadHead";
    case ErrorCode::UnknownMention: return "UnknownMention";
    case ErrorCode::MalformedEntity: return "MalformedEntity";
    case ErrorCode::BadOrdering: return "BadOrdering";
    case ErrorCode::UnbalancedBracket: return "UnbalancedBracket";
    case ErrorCode::UnknownClose: return "UnknownClose";
    case ErrorCode::BadTokenNumbering: return "BadTokenNumbering";
    case ErrorCode::CrossSentenceMention: return "CrossSentenceMention";
    case ErrorCode::CrossingMentions: return "CrossingMentions";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::MultipleDocuments: return "MultipleDocuments";
    case ErrorCode::CrossingTags: return "CrossingTags";
    case ErrorCode::BadAttr: return "BadAttr";
    case ErrorCode::UnclosedTag: return "UnclosedTag";
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::FormMismatch: return "FormMismatch";
    case ErrorCode::SpanStraddlesSentences: return "SpanStraddlesSentences";
    case ErrorCode::MissingHead: return "MissingHead";
    case ErrorCode::TokenMismatch: return "TokenMismatch";
    case ErrorCode::SentenceCountMismatch: return "SentenceCountMismatch";
    case ErrorCode::ManifestUnreadable: return "ManifestUnreadable";
    case ErrorCode::OutDirUnwritable: return "OutDirUnwritable";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Timeout: return "Timeout";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace corefud
