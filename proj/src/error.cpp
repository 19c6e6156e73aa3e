#include "malont/error.hpp"

namespace malont {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTerm: return "invalid-term";
    case ErrorCode::InvalidQuad: return "invalid-quad";
    case ErrorCode::Syntax: return "syntax-error";
    case ErrorCode::DuplicateName: return "duplicate-name";
    case ErrorCode::UnresolvedReference: return "unresolved-reference";
    case ErrorCode::CyclicHierarchy: return "cyclic-hierarchy";
    case ErrorCode::AsymmetricInverse: return "asymmetric-inverse";
    case ErrorCode::InvalidOntology: return "invalid-ontology";
    case ErrorCode::MissingSchema: return "missing-schema";
    case ErrorCode::UnsupportedFeature: return "unsupported-feature";
    case ErrorCode::UnknownPrefix: return "unknown-prefix";
    case ErrorCode::DanglingReference: return "dangling-reference";
    case ErrorCode::UnknownName: return "unknown-name";
    case ErrorCode::Io: return "io-error";
  }
  return "unknown-error";
}

namespace {
std::string format_message(ErrorCode code, const std::string& message, std::size_t line) {
  std::string out(to_string(code));
  if (line != 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(format_message(code, message, line)), code_(code), line_(line) {}

}  // namespace malont
