#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cogrowth {

enum class ErrorCode {
  Parse,
  InvalidAlphabet,
  EmptyGenerator,
  NotCyclicallyReduced,
  CyclicOrTrivialSubgroup,
  InvalidGraph,
  FoldingViolation,
  Precondition,
  DeterminismViolation,
  NonIntegerCensus,
  CensusOverflow,
  DecompositionViolation,
  EntryOverflow,
  ConvergenceFailure,
  CertificateFailure,
};

std::string_view to_string(ErrorCode code);

/// Base exception of the library. Every failure mode named by an operation
/// carries its own code so callers (the CLI in particular) can map it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based position inside the offending input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::Parse, what + " (line " + std::to_string(line) +
                                    ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cogrowth
