#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace malont {

enum class ErrorCode {
  InvalidTerm,
  InvalidQuad,
  Syntax,
  DuplicateName,
  UnresolvedReference,
  CyclicHierarchy,
  AsymmetricInverse,
  InvalidOntology,
  MissingSchema,
  UnsupportedFeature,
  UnknownPrefix,
  DanglingReference,
  UnknownName,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `line` is 1-based and 0 when the
// error has no source position.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace malont
