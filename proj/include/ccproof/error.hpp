#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccproof {

enum class ErrorKind {
  UnbalancedParens,
  EmptyExpression,
  ArityMismatch,
  SyntaxError,
  UnknownId,
  UnknownTerm,
  UnknownAxiom,
  PendingMerges,
  NotEquivalent,
  NoFinitePath,
  TooLarge,
  BoundOverflow,
  GenerationFailed,
};

std::string_view to_string(ErrorKind kind);

// Library-wide exception. The kind doubles as the CLI's error taxonomy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnbalancedParens: return "UnbalancedParens";
    case ErrorKind::EmptyExpression: return "EmptyExpression";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::UnknownTerm: return "UnknownTerm";
    case ErrorKind::UnknownAxiom: return "UnknownAxiom";
    case ErrorKind::PendingMerges: return "PendingMerges";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::NoFinitePath: return "NoFinitePath";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BoundOverflow: return "BoundOverflow";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

}  // namespace ccproof
