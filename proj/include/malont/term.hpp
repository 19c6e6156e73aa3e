#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace malont {

struct Iri {
  std::string text;
  bool operator==(const Iri&) const = default;
};

struct Literal {
  std::string lexical;
  std::string datatype;
  bool operator==(const Literal&) const = default;
};

// An RDF node: an absolute IRI or a typed literal. Construction through the
// factories validates and normalizes; an untyped literal becomes xsd:string.
class Term {
 public:
  static Term iri(std::string text);
  static Term literal(std::string lexical, std::string datatype = {});

  bool is_iri() const noexcept { return std::holds_alternative<Iri>(value_); }
  bool is_literal() const noexcept { return std::holds_alternative<Literal>(value_); }

  // Precondition: is_iri().
  const std::string& iri_text() const { return std::get<Iri>(value_).text; }
  // Precondition: is_literal().
  const std::string& lexical() const { return std::get<Literal>(value_).lexical; }
  const std::string& datatype() const { return std::get<Literal>(value_).datatype; }

  bool operator==(const Term&) const = default;

 private:
  explicit Term(std::variant<Iri, Literal> v) : value_(std::move(v)) {}
  std::variant<Iri, Literal> value_;
};

// True when `text` is usable as IRI text: non-empty, no whitespace, no angle brackets.
bool is_valid_iri_text(std::string_view text) noexcept;

// N-Triples surface form of a term.
std::string canonical_term(const Term& term);

// Backslash-escapes the characters `\`, `"`, newline, carriage return and tab.
std::string escape_literal(std::string_view lexical);

// Total order: bytewise comparison of canonical forms.
std::strong_ordering term_order(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// One statement in a named graph. subject, predicate and graph are IRIs.
struct Quad {
  Term subject;
  Term predicate;
  Term object;
  Term graph;

  bool operator==(const Quad&) const = default;
};

// Builds a quad after checking position rules and the reserved graph set.
Quad make_quad(Term subject, Term predicate, Term object, Term graph);

// Throws Error(InvalidQuad) when the quad breaks a position or graph rule.
void validate_quad(const Quad& quad);

// Ordering on (graph, subject, predicate, object).
std::strong_ordering quad_order(const Quad& a, const Quad& b);

// Concatenation of the four canonical term strings in s, p, o, g order.
std::string quad_key(const Quad& quad);

enum class ProvenanceKind { Schema, Annotation, Inference };

std::string_view to_string(ProvenanceKind kind);

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Schema;
  std::string doc_id;
  std::vector<std::string> annotation_ids;
  std::string rule_id;
  std::vector<std::string> premise_keys;

  static Provenance schema();
  static Provenance annotation(std::string doc_id, std::vector<std::string> annotation_ids);
  static Provenance inference(std::string rule_id, std::vector<std::string> premise_keys);

  bool operator==(const Provenance&) const = default;
};

// Rule id given to inferred-graph quads loaded from a file; their premises are
// not recoverable, so the non-empty premise requirement is waived for it.
inline constexpr std::string_view kImportedRule = "imported";

// Throws Error(InvalidQuad) when the record breaks its kind's field rules.
void validate_provenance(const Provenance& prov);

}  // namespace malont
