#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ocs {

enum class ErrorCode {
  // core model
  OutOfRange,
  EmptyStack,
  FormMismatch,
  SizeMismatch,
  NotABijection,
  DuplicateQuality,
  QualityNotPresent,
  NotFound,
  InvariantViolation,
  // taxonomy
  SyntaxError,
  UnknownParent,
  CyclicParent,
  DuplicateId,
  DuplicatePrimaryName,
  UnknownId,
  NotUnderCardAction,
  // method language
  UnknownAction,
  UnknownCard,
  CardNotAvailable,
  DuplicateStartCard,
  CyclicList,
  MalformedTerminal,
  MultipleHeads,
  DanglingLink,
  NodeNotInList,
  NotImplemented,
  UnresolvedReference,
  // simulator
  EmptyStartState,
  ParticipantMismatch,
  UnknownCardInAssertion,
  // name index
  NameTooShort,
  EmptyNameSet,
  // service
  EmptyCatalog,
  CatalogInvalid,
  UnknownSession,
  StepRejected,
  NothingToUndo,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A syntax error in one of the line-oriented input formats. Line and column
/// are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::SyntaxError,
              "line " + std::to_string(line) +
                  (column ? ", col " + std::to_string(column) : std::string()) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ocs
