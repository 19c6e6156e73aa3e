#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "malont/store.hpp"
#include "malont/term.hpp"

namespace malont {

struct Variable {
  std::string name;
  bool operator==(const Variable&) const = default;
};

using PatternNode = std::variant<Variable, Term>;

struct TriplePattern {
  PatternNode subject;
  PatternNode predicate;
  PatternNode object;
  bool operator==(const TriplePattern&) const = default;
};

struct SelectQuery {
  std::vector<std::string> projected;
  bool distinct = false;
  std::vector<TriplePattern> patterns;
  // Projected variables that no pattern binds; they yield empty cells.
  std::vector<std::string> warnings;
};

// Fixed prefix table: rdf, rdfs, owl, xsd, malont, kg.
const std::map<std::string, std::string, std::less<>>& prefix_table();

// Parses the SELECT subset:
//   Query   := 'SELECT' 'DISTINCT'? Var+ 'WHERE' '{' (Pattern '.'?)* '}'
//   Pattern := Node Pred Node ; Pred := Var | 'a' | PrefixedName
//   Node    := Var | PrefixedName | Literal
// Throws Error(Syntax) with line:column, Error(UnknownPrefix), or
// Error(UnsupportedFeature) naming constructs such as FILTER or OPTIONAL.
SelectQuery parse_query(std::string_view text);

struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<Term>>> rows;
};

// Evaluates the basic graph pattern over the union of all graphs (a triple
// stored in several graphs is one solution). Rows are sorted by term order
// across columns, unbound cells first.
ResultTable evaluate(const Store& store, const SelectQuery& query);

// TSV: `?v1<TAB>?v2` header, then one canonical-term row per line.
std::string serialize_results(const ResultTable& table);

}  // namespace malont
