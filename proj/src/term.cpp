#include "malont/term.hpp"

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

bool is_valid_iri_text(std::string_view text) noexcept {
  if (text.empty()) return false;
  for (char c : text) {
    switch (c) {
      case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
      case '<': case '>':
        return false;
      default:
        break;
    }
  }
  return true;
}

Term Term::iri(std::string text) {
  if (!is_valid_iri_text(text)) {
    throw Error(ErrorCode::InvalidTerm, "malformed IRI '" + text + "'");
  }
  return Term(Iri{std::move(text)});
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (datatype.empty()) datatype = std::string(vocab::kXsdString);
  if (!is_valid_iri_text(datatype)) {
    throw Error(ErrorCode::InvalidTerm, "malformed datatype IRI '" + datatype + "'");
  }
  return Term(Literal{std::move(lexical), std::move(datatype)});
}

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char c : lexical) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::string canonical_term(const Term& term) {
  if (term.is_iri()) {
    if (!is_valid_iri_text(term.iri_text())) {
      throw Error(ErrorCode::InvalidTerm, "malformed IRI '" + term.iri_text() + "'");
    }
    return "<" + term.iri_text() + ">";
  }
  std::string out = "\"" + escape_literal(term.lexical()) + "\"";
  if (term.datatype() != vocab::kXsdString) {
    out += "^^<" + term.datatype() + ">";
  }
  return out;
}

std::strong_ordering term_order(const Term& a, const Term& b) {
  return canonical_term(a).compare(canonical_term(b)) <=> 0;
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::hash<std::string> h;
  if (t.is_iri()) return h(t.iri_text());
  return h(t.lexical()) * 31 + h(t.datatype()) + 0x9e3779b9;
}

namespace {

bool is_reserved_graph(std::string_view g) {
  if (g == vocab::kSchemaGraph || g == vocab::kInferredGraph) return true;
  return g.size() > vocab::kDocGraphPrefix.size() && g.starts_with(vocab::kDocGraphPrefix);
}

}  // namespace

void validate_quad(const Quad& quad) {
  if (!quad.subject.is_iri()) throw Error(ErrorCode::InvalidQuad, "subject must be an IRI");
  if (!quad.predicate.is_iri()) throw Error(ErrorCode::InvalidQuad, "predicate must be an IRI");
  if (!quad.graph.is_iri()) throw Error(ErrorCode::InvalidQuad, "graph must be an IRI");
  if (!is_reserved_graph(quad.graph.iri_text())) {
    throw Error(ErrorCode::InvalidQuad, "graph <" + quad.graph.iri_text() +
                                            "> is not a schema, inferred or document graph");
  }
}

Quad make_quad(Term subject, Term predicate, Term object, Term graph) {
  Quad q{std::move(subject), std::move(predicate), std::move(object), std::move(graph)};
  validate_quad(q);
  return q;
}

std::strong_ordering quad_order(const Quad& a, const Quad& b) {
  if (auto c = term_order(a.graph, b.graph); c != 0) return c;
  if (auto c = term_order(a.subject, b.subject); c != 0) return c;
  if (auto c = term_order(a.predicate, b.predicate); c != 0) return c;
  return term_order(a.object, b.object);
}

std::string quad_key(const Quad& quad) {
  return canonical_term(quad.subject) + canonical_term(quad.predicate) +
         canonical_term(quad.object) + canonical_term(quad.graph);
}

std::string_view to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::Schema: return "schema";
    case ProvenanceKind::Annotation: return "annotation";
    case ProvenanceKind::Inference: return "inference";
  }
  return "unknown";
}

Provenance Provenance::schema() { return Provenance{}; }

Provenance Provenance::annotation(std::string doc_id, std::vector<std::string> annotation_ids) {
  Provenance p;
  p.kind = ProvenanceKind::Annotation;
  p.doc_id = std::move(doc_id);
  p.annotation_ids = std::move(annotation_ids);
  return p;
}

Provenance Provenance::inference(std::string rule_id, std::vector<std::string> premise_keys) {
  Provenance p;
  p.kind = ProvenanceKind::Inference;
  p.rule_id = std::move(rule_id);
  p.premise_keys = std::move(premise_keys);
  return p;
}

void validate_provenance(const Provenance& prov) {
  switch (prov.kind) {
    case ProvenanceKind::Annotation:
      if (prov.doc_id.empty()) throw Error(ErrorCode::InvalidQuad, "annotation provenance without doc-id");
      break;
    case ProvenanceKind::Inference:
      if (prov.rule_id.empty()) throw Error(ErrorCode::InvalidQuad, "inference provenance without rule-id");
      if (prov.premise_keys.empty() && prov.rule_id != kImportedRule) {
        throw Error(ErrorCode::InvalidQuad, "inference provenance without premises");
      }
      break;
    case ProvenanceKind::Schema:
      if (!prov.doc_id.empty() || !prov.rule_id.empty()) {
        throw Error(ErrorCode::InvalidQuad, "schema provenance carries doc-id or rule-id");
      }
      break;
  }
}

}  // namespace malont
