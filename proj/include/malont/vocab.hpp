#pragma once

#include <string>
#include <string_view>

// Namespaces and well-known IRIs used across the engine.
namespace malont::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kMalont = "https://malont.example/ontology#";
inline constexpr std::string_view kKg = "https://malont.example/kg#";

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kOwlInverseOf = "http://www.w3.org/2002/07/owl#inverseOf";
inline constexpr std::string_view kOwlNamedIndividual = "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";

// Reserved graphs.
inline constexpr std::string_view kSchemaGraph = "https://malont.example/kg#graph--schema";
inline constexpr std::string_view kInferredGraph = "https://malont.example/kg#graph--inferred";
inline constexpr std::string_view kDocGraphPrefix = "https://malont.example/kg#graph--doc--";

inline std::string malont(std::string_view local) { return std::string(kMalont) + std::string(local); }
inline std::string kg(std::string_view local) { return std::string(kKg) + std::string(local); }
inline std::string doc_graph(std::string_view doc_id) {
  return std::string(kDocGraphPrefix) + std::string(doc_id);
}

}  // namespace malont::vocab
