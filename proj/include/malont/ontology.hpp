#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "malont/term.hpp"

namespace malont {

struct ClassDef {
  std::string name;
  std::optional<std::string> superclass;
  std::string label;

  bool operator==(const ClassDef&) const = default;
};

struct ObjectPropertyDef {
  std::string name;
  std::vector<std::string> domains;
  std::string range;
  std::optional<std::string> inverse;
  std::string label;

  bool operator==(const ObjectPropertyDef&) const = default;
};

enum class DatatypeRange { String, Integer };

std::string_view to_string(DatatypeRange range);
// xsd IRI of the range.
std::string_view datatype_iri(DatatypeRange range);

struct DatatypePropertyDef {
  std::string name;
  std::vector<std::string> domains;
  DatatypeRange range = DatatypeRange::String;
  std::string label;

  bool operator==(const DatatypePropertyDef&) const = default;
};

// Classes and properties of a schema. Definitions are kept in declaration
// order; the vectors may hold invalid content until validate_ontology says
// otherwise.
struct Ontology {
  std::vector<ClassDef> classes;
  std::vector<ObjectPropertyDef> object_properties;
  std::vector<DatatypePropertyDef> datatype_properties;

  const ClassDef* find_class(std::string_view name) const;
  const ObjectPropertyDef* find_object_property(std::string_view name) const;
  const DatatypePropertyDef* find_datatype_property(std::string_view name) const;

  // True when `sub` equals `super` or reaches it through superclass links.
  bool is_subclass_of(std::string_view sub, std::string_view super) const;
};

// Definition-set equality, insensitive to declaration and domain order.
bool same_definitions(const Ontology& a, const Ontology& b);

// The MALOnt subset: 29 classes, 11 object properties, 3 datatype properties.
const Ontology& builtin_malont();

enum class ViolationKind {
  InvalidName,
  DuplicateName,
  UnresolvedReference,
  CyclicHierarchy,
  AsymmetricInverse,
  EmptyDomain,
};

std::string_view to_string(ViolationKind kind);

struct OntologyViolation {
  ViolationKind kind;
  std::string definition;
  std::string detail;

  // e.g. "asymmetric-inverse(P,Q)".
  std::string to_string() const;
  bool operator==(const OntologyViolation&) const = default;
};

std::vector<OntologyViolation> validate_ontology(const Ontology& o);

// Reads `.mos` declarations without cross-reference validation. Throws
// Error(Syntax) with the line number.
Ontology parse_schema_declarations(std::string_view text);

// Parses the line-oriented `.mos` schema language. Forward references are
// allowed; the result is validated and the first violation is thrown.
Ontology parse_schema(std::string_view text);

// Writes `o` in the `.mos` language such that parse_schema reads it back.
std::string write_schema(const Ontology& o);

// Schema triples in the schema graph. Throws Error(InvalidOntology) when `o`
// does not validate.
std::vector<Quad> reify(const Ontology& o);

// Rebuilds an ontology from reified schema-graph quads (other graphs are
// ignored). Returns an empty ontology when there are none.
Ontology ontology_from_quads(const std::vector<Quad>& quads);

}  // namespace malont
