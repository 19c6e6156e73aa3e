#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "malont/store.hpp"
#include "malont/term.hpp"

namespace malont {

// Parses one term in canonical (N-Triples) form: `<iri>`, `"lex"` or
// `"lex"^^<dt>`. Inverse of canonical_term.
Term parse_term(std::string_view text);

// One `<s> <p> o <g> .` line per quad, sorted by (graph, subject,
// predicate, object), each newline-terminated.
std::string export_nquads(const Store& store);

// Parses N-Quads. Blank lines and `#` comment lines are ignored. Throws
// Error(Syntax) with the line number, or Error(UnsupportedFeature) for blank
// nodes and language tags.
std::vector<Quad> import_nquads(std::string_view text);

// Imports into `store`, deriving provenance from the graph: schema graph ->
// schema, document graph -> annotation with the doc-id, inferred graph ->
// inference with rule "imported". Returns the number of new quads.
std::size_t load_nquads(Store& store, std::string_view text);

// Provenance sidecar: header line then one row per record, columns
// quad_key, kind, doc_id, annotation_ids, rule_id, premise_keys
// (TAB-separated, list cells comma-joined), in export order.
std::string export_provenance_tsv(const Store& store);

}  // namespace malont
