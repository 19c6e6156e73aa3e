#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "malont/ontology.hpp"
#include "malont/term.hpp"

namespace malont {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct EntityAnnotation {
  std::string id;
  std::string type;
  std::vector<Span> spans;
  std::string surface;
};

struct RelationAnnotation {
  std::string id;
  std::string type;
  std::string arg1;
  std::string arg2;
};

struct AttributeAnnotation {
  std::string id;
  std::string type;
  std::string target;
  std::optional<std::string> value;  // absent for flag attributes
};

struct AnnotationDoc {
  std::string doc_id;
  std::vector<EntityAnnotation> entities;
  std::vector<RelationAnnotation> relations;
  std::vector<AttributeAnnotation> attributes;
  std::vector<std::string> warnings;

  const EntityAnnotation* find_entity(std::string_view id) const;
};

// Parses a brat standoff file. Offsets count Unicode code points. When
// `doc_text` is given it is authoritative for surfaces; a mismatch is a
// warning. E, M, N, * and # records are skipped with a warning each.
// Throws Error(Syntax) for malformed T/R/A lines and
// Error(DanglingReference) for arguments naming no entity.
AnnotationDoc parse_ann(std::string_view ann_text, std::optional<std::string_view> doc_text,
                        std::string_view doc_id);

struct MappingConfig {
  std::map<std::string, std::string> entity_map;
  std::map<std::string, std::string> relation_map;
  std::map<std::string, std::string> attribute_map;

  // Mapped name, falling back to the annotation type itself.
  std::string entity_class(const std::string& type) const;
  std::string relation_property(const std::string& type) const;
  std::string attribute_property(const std::string& type) const;
};

// `entity|relation|attribute <AnnType> -> <Name>` lines, `#` comments.
// Throws Error(Syntax) or Error(UnknownName) when a target is not defined
// with the right kind in `o`.
MappingConfig parse_mapping(std::string_view text, const Ontology& o);

// kg:<ClassName>--<slug>. The slug lowercases ASCII, collapses every run of
// characters outside [a-z0-9] to '-', and trims dashes; an empty slug becomes
// 'x' followed by the surface's UTF-8 byte length in lowercase hex.
Term mint_instance_iri(std::string_view class_name, std::string_view surface);

struct EmitResult {
  std::vector<std::pair<Quad, Provenance>> quads;
  std::size_t skipped_entities = 0;
  std::size_t skipped_relations = 0;
  std::size_t skipped_attributes = 0;
  std::vector<std::string> warnings;
};

// Instance quads for one document, all in its document graph.
EmitResult emit_triples(const AnnotationDoc& doc, const MappingConfig& mapping, const Ontology& o);

}  // namespace malont
