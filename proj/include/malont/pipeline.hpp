#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "malont/brat.hpp"
#include "malont/ontology.hpp"
#include "malont/reasoner.hpp"
#include "malont/store.hpp"

namespace malont {

// Throws Error(Io) when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// "builtin" or a `.mos` path.
Ontology load_ontology(const std::string& source);

struct CorpusDocument {
  std::string doc_id;  // file stem
  std::string ann;
  std::optional<std::string> text;
};

// Every `<id>.ann` in `dir` with its optional `<id>.txt`, sorted by doc-id.
// Throws Error(Io) when the directory is unreadable.
std::vector<CorpusDocument> read_corpus(const std::filesystem::path& dir);

struct BuildSummary {
  std::size_t docs = 0;
  std::size_t failed_docs = 0;
  std::size_t entities = 0;
  std::size_t relations = 0;
  std::size_t asserted_quads = 0;
  std::size_t inferred_quads = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;  // "<doc-id>: <message>"

  std::string to_text() const;
};

// Reifies `o` into `store`, ingests every document (a document that fails
// to parse is recorded and skipped), then materializes when asked.
BuildSummary build_graph(Store& store, const Ontology& o, const std::vector<CorpusDocument>& corpus,
                         const MappingConfig& mapping, bool run_materialize);

// Path of the provenance sidecar written next to an N-Quads file.
std::filesystem::path provenance_path(const std::filesystem::path& nquads_path);

}  // namespace malont
