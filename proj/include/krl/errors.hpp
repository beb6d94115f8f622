#pragma once

#include <stdexcept>
#include <string>

namespace krl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A constructed object violates a property it is supposed to have by
// construction. Signals a broken fixture rather than bad user input.
struct VerificationFailed : Error {
  using Error::Error;
};

struct InvalidSource : Error {
  using Error::Error;
};

struct SearchBudgetExceeded : Error {
  using Error::Error;
};

struct ComposabilityError : Error {
  using Error::Error;
};

struct NotAlexandroff : Error {
  using Error::Error;
};

struct InvalidClosedPart : Error {
  using Error::Error;
};

struct SizeLimitExceeded : Error {
  using Error::Error;
};

// Precondition of the implication change construction that does not hold.
// `clause` is the stable report identifier, `witness` the offending element.
struct HypothesisFailed : Error {
  HypothesisFailed(std::string clause, std::string witness, const std::string& message)
      : Error("HypothesisFailed: " + message), clause(std::move(clause)), witness(std::move(witness)) {}
  std::string clause;
  std::string witness;
};

struct ParseError : Error {
  ParseError(int line, int column, const std::string& message, const std::string& file = {})
      : Error((file.empty() ? "" : file + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line(line), column(column), message(message), file(file) {}
  int line;
  int column;
  std::string message;
  std::string file;
};

struct IncompleteTable : Error {
  using Error::Error;
};

struct UnknownElement : Error {
  using Error::Error;
};

}  // namespace krl
