#include "malont/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

Ontology load_ontology(const std::string& source) {
  if (source == "builtin") return builtin_malont();
  return parse_schema(read_file(source));
}

std::vector<CorpusDocument> read_corpus(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, "corpus directory '" + dir.string() + "' not readable");
  std::vector<CorpusDocument> docs;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".ann") continue;
    CorpusDocument d;
    d.doc_id = entry.path().stem().string();
    d.ann = read_file(entry.path());
    fs::path txt = entry.path();
    txt.replace_extension(".txt");
    if (fs::is_regular_file(txt)) d.text = read_file(txt);
    docs.push_back(std::move(d));
  }
  if (ec) throw Error(ErrorCode::Io, "cannot list '" + dir.string() + "': " + ec.message());
  std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return docs;
}

BuildSummary build_graph(Store& store, const Ontology& o, const std::vector<CorpusDocument>& corpus,
                         const MappingConfig& mapping, bool run_materialize) {
  BuildSummary summary;
  for (const Quad& q : reify(o)) store.insert(q, Provenance::schema());

  for (const auto& doc : corpus) {
    ++summary.docs;
    try {
      AnnotationDoc parsed = parse_ann(doc.ann, doc.text, doc.doc_id);
      EmitResult emitted = emit_triples(parsed, mapping, o);
      for (auto& [quad, prov] : emitted.quads) {
        if (store.insert(quad, std::move(prov))) ++summary.asserted_quads;
      }
      summary.entities += parsed.entities.size() - emitted.skipped_entities;
      summary.relations += parsed.relations.size() - emitted.skipped_relations;
      for (auto& w : parsed.warnings) summary.warnings.push_back(doc.doc_id + ": " + w);
      for (auto& w : emitted.warnings) summary.warnings.push_back(std::move(w));
    } catch (const Error& e) {
      ++summary.failed_docs;
      summary.failures.push_back(doc.doc_id + ": " + e.what());
    }
  }

  if (run_materialize) summary.inferred_quads = materialize(store, o).added_quads;
  return summary;
}

std::string BuildSummary::to_text() const {
  std::ostringstream out;
  out << "docs\t" << docs << '\n'
      << "failed_docs\t" << failed_docs << '\n'
      << "entities\t" << entities << '\n'
      << "relations\t" << relations << '\n'
      << "asserted_quads\t" << asserted_quads << '\n'
      << "inferred_quads\t" << inferred_quads << '\n'
      << "warnings\t" << warnings.size() << '\n';
  return out.str();
}

fs::path provenance_path(const fs::path& nquads_path) {
  fs::path p = nquads_path;
  p.replace_extension(".prov.tsv");
  return p;
}

}  // namespace malont
