#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "malont/error.hpp"
#include "malont/nquads.hpp"
#include "malont/ontology.hpp"
#include "malont/pipeline.hpp"
#include "malont/query.hpp"
#include "malont/reasoner.hpp"

namespace malont::cli {

namespace {

int fail(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << '\n';
  return e.code() == ErrorCode::Io ? kEnvironmentFailure : kContentFailure;
}

// Reads a KG file; Io errors map to exit 2, content errors to exit 1.
std::optional<int> load_kg(Store& store, const std::string& path, std::ostream& err) {
  try {
    load_nquads(store, read_file(path));
  } catch (const Error& e) {
    return fail(err, e);
  }
  return std::nullopt;
}

int ontology_check(bool builtin, const std::string& path, std::ostream& out, std::ostream& err) {
  Ontology o;
  if (builtin) {
    o = builtin_malont();
  } else {
    if (path.empty()) {
      err << "error: give --builtin or a schema path\n";
      return kEnvironmentFailure;
    }
    try {
      o = parse_schema_declarations(read_file(path));
    } catch (const Error& e) {
      return fail(err, e);
    }
  }
  auto violations = validate_ontology(o);
  for (const auto& v : violations) out << v.to_string() << '\n';
  if (!violations.empty()) return kContentFailure;
  out << "ok: " << o.classes.size() << " classes, " << o.object_properties.size() << " object properties, "
      << o.datatype_properties.size() << " datatype properties\n";
  return kOk;
}

struct BuildOptions {
  std::string ontology = "builtin";
  std::string corpus;
  std::string mapping;
  std::string output;
  bool no_materialize = false;
};

int kg_build(const BuildOptions& opts, std::ostream& err) {
  Ontology o;
  MappingConfig mapping;
  std::vector<CorpusDocument> corpus;
  try {
    o = load_ontology(opts.ontology);
    if (!opts.mapping.empty()) mapping = parse_mapping(read_file(opts.mapping), o);
    corpus = read_corpus(opts.corpus);
  } catch (const Error& e) {
    return fail(err, e);
  }

  Store store;
  BuildSummary summary = build_graph(store, o, corpus, mapping, !opts.no_materialize);
  try {
    write_file(opts.output, export_nquads(store));
    write_file(provenance_path(opts.output), export_provenance_tsv(store));
  } catch (const Error& e) {
    return fail(err, e);
  }
  for (const auto& f : summary.failures) err << "failed: " << f << '\n';
  for (const auto& w : summary.warnings) err << "warning: " << w << '\n';
  err << summary.to_text();
  return summary.failed_docs == 0 ? kOk : kContentFailure;
}

int kg_query(const std::string& kg_path, const std::string& query_path, std::ostream& out, std::ostream& err) {
  std::string query_text;
  try {
    query_text = read_file(query_path);
  } catch (const Error& e) {
    return fail(err, e);
  }
  Store store;
  if (auto code = load_kg(store, kg_path, err)) return *code;
  SelectQuery query;
  try {
    query = parse_query(query_text);
  } catch (const Error& e) {
    return fail(err, e);
  }
  for (const auto& w : query.warnings) err << "warning: " << w << '\n';
  out << serialize_results(evaluate(store, query));
  return kOk;
}

int kg_validate(const std::string& kg_path, std::ostream& out, std::ostream& err) {
  Store store;
  if (auto code = load_kg(store, kg_path, err)) return *code;
  const Ontology o = ontology_from_quads(store.quads());
  auto violations = validate_instances(store, o);
  for (const auto& v : violations) out << v.to_string() << '\n';
  err << violations.size() << " violation(s)\n";
  return violations.empty() ? kOk : kContentFailure;
}

int kg_export(const std::string& kg_path, const std::string& output, bool prov, std::ostream& out,
              std::ostream& err) {
  if (prov && output.empty()) {
    err << "error: --prov needs -o to place the sidecar\n";
    return kEnvironmentFailure;
  }
  Store store;
  if (auto code = load_kg(store, kg_path, err)) return *code;
  const std::string text = export_nquads(store);
  if (output.empty()) {
    out << text;
    return kOk;
  }
  try {
    write_file(output, text);
    if (prov) write_file(provenance_path(output), export_provenance_tsv(store));
  } catch (const Error& e) {
    return fail(err, e);
  }
  return kOk;
}

int kg_stats(const std::string& kg_path, std::ostream& out, std::ostream& err) {
  Store store;
  if (auto code = load_kg(store, kg_path, err)) return *code;
  out << store.stats().to_tsv();
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Malware threat-intelligence knowledge graph tool", "malont"};
  app.require_subcommand(1);

  auto* ontology = app.add_subcommand("ontology", "Schema commands");
  ontology->require_subcommand(1);
  auto* check = ontology->add_subcommand("check", "Validate a schema");
  bool builtin = false;
  std::string schema_path;
  check->add_flag("--builtin", builtin, "Check the built-in MALOnt schema");
  check->add_option("schema", schema_path, "Schema file (.mos)");

  auto* kg = app.add_subcommand("kg", "Knowledge graph commands");
  kg->require_subcommand(1);

  BuildOptions build;
  auto* build_cmd = kg->add_subcommand("build", "Build a KG from an annotated corpus");
  build_cmd->add_option("--ontology", build.ontology, "'builtin' or a .mos path")->capture_default_str();
  build_cmd->add_option("--corpus", build.corpus, "Directory of .ann/.txt pairs")->required();
  build_cmd->add_option("--mapping", build.mapping, "Annotation-type mapping file (.map)");
  build_cmd->add_flag("--no-materialize", build.no_materialize, "Skip inference");
  build_cmd->add_option("-o,--output", build.output, "Output N-Quads path")->required();

  std::string kg_path, query_path, export_path;
  bool prov = false;
  auto* query_cmd = kg->add_subcommand("query", "Run a SELECT query");
  query_cmd->add_option("--kg", kg_path, "KG N-Quads file")->required();
  query_cmd->add_option("--query", query_path, "Query file")->required();

  auto* validate_cmd = kg->add_subcommand("validate", "Check instances against domain and range");
  validate_cmd->add_option("--kg", kg_path, "KG N-Quads file")->required();

  auto* export_cmd = kg->add_subcommand("export", "Re-serialize a KG canonically");
  export_cmd->add_option("--kg", kg_path, "KG N-Quads file")->required();
  export_cmd->add_option("-o,--output", export_path, "Output path (default: stdout)");
  export_cmd->add_flag("--prov", prov, "Also write the provenance sidecar");

  auto* stats_cmd = kg->add_subcommand("stats", "Print store statistics");
  stats_cmd->add_option("--kg", kg_path, "KG N-Quads file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kEnvironmentFailure;
  }

  if (check->parsed()) return ontology_check(builtin, schema_path, out, err);
  if (build_cmd->parsed()) return kg_build(build, err);
  if (query_cmd->parsed()) return kg_query(kg_path, query_path, out, err);
  if (validate_cmd->parsed()) return kg_validate(kg_path, out, err);
  if (export_cmd->parsed()) return kg_export(kg_path, export_path, prov, out, err);
  if (stats_cmd->parsed()) return kg_stats(kg_path, out, err);
  return kEnvironmentFailure;
}

}  // namespace malont::cli
