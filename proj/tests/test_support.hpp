#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the reasoner or the query evaluator; the oracles work on plain
// canonical strings.

#include <algorithm>
#include <array>
#include <functional>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "malont/ontology.hpp"
#include "malont/query.hpp"
#include "malont/store.hpp"
#include "malont/term.hpp"
#include "malont/vocab.hpp"

namespace malont::testing {

inline std::filesystem::path data_dir() { return MALONT_TEST_DATA_DIR; }
inline std::filesystem::path fixture_a_dir() { return data_dir() / "fixture_a"; }
inline std::filesystem::path query_path(const std::string& name) { return data_dir() / "queries" / name; }

inline Term iri(std::string_view text) { return Term::iri(std::string(text)); }
inline Term m(std::string_view local) { return Term::iri(vocab::malont(local)); }
inline Term k(std::string_view local) { return Term::iri(vocab::kg(local)); }
inline Term type_iri() { return iri(vocab::kRdfType); }
inline Term doc_graph(std::string_view id) { return Term::iri(vocab::doc_graph(id)); }
inline Term inferred_graph() { return iri(vocab::kInferredGraph); }

using CanonQuad = std::tuple<std::string, std::string, std::string, std::string>;  // s p o g

inline std::set<CanonQuad> canonical_set(const std::vector<Quad>& quads) {
  std::set<CanonQuad> out;
  for (const auto& q : quads)
    out.emplace(canonical_term(q.subject), canonical_term(q.predicate), canonical_term(q.object),
                canonical_term(q.graph));
  return out;
}

inline void insert_schema(Store& store, const Ontology& o) {
  for (const auto& q : reify(o)) store.insert(q, Provenance::schema());
}

// Repeats every rule over the whole quad set until nothing changes. A
// conclusion is new when its (s, p, o) is absent from every graph; new
// conclusions land in the inferred graph.
inline std::set<CanonQuad> naive_materialize(std::set<CanonQuad> quads, const Ontology& o,
                                             std::size_t* rounds = nullptr) {
  auto angle = [](std::string_view s) { return "<" + std::string(s) + ">"; };
  const std::string type = angle(vocab::kRdfType);
  const std::string sub = angle(vocab::kRdfsSubClassOf);
  const std::string inferred = angle(vocab::kInferredGraph);
  auto is_iri = [](const std::string& c) { return !c.empty() && c.front() == '<'; };

  struct Prop {
    std::optional<std::string> inverse, single_domain, range;
  };
  std::map<std::string, Prop> props;
  for (const auto& p : o.object_properties) {
    Prop info;
    if (p.inverse) info.inverse = angle(vocab::malont(*p.inverse));
    if (p.domains.size() == 1) info.single_domain = angle(vocab::malont(p.domains[0]));
    info.range = angle(vocab::malont(p.range));
    props[angle(vocab::malont(p.name))] = info;
  }
  for (const auto& p : o.datatype_properties) {
    Prop info;
    if (p.domains.size() == 1) info.single_domain = angle(vocab::malont(p.domains[0]));
    props[angle(vocab::malont(p.name))] = info;
  }

  std::size_t count = 0;
  while (true) {
    ++count;
    std::set<std::tuple<std::string, std::string, std::string>> triples;
    for (const auto& [s, p, obj, g] : quads) triples.emplace(s, p, obj);
    std::set<std::tuple<std::string, std::string, std::string>> fresh;
    auto conclude = [&](const std::string& s, const std::string& p, const std::string& obj) {
      if (!triples.contains({s, p, obj})) fresh.emplace(s, p, obj);
    };
    for (const auto& [s, p, obj, g] : quads) {
      for (const auto& [s2, p2, o2, g2] : quads) {
        if (p == sub && p2 == sub && obj == s2) conclude(s, sub, o2);
        if (p == type && p2 == sub && obj == s2) conclude(s, type, o2);
      }
      if (auto it = props.find(p); it != props.end()) {
        if (it->second.inverse && is_iri(obj)) conclude(obj, *it->second.inverse, s);
        if (it->second.single_domain) conclude(s, type, *it->second.single_domain);
        if (it->second.range && is_iri(obj)) conclude(obj, type, *it->second.range);
      }
    }
    if (fresh.empty()) break;
    for (const auto& [s, p, obj] : fresh) quads.emplace(s, p, obj, inferred);
  }
  if (rounds) *rounds = count;
  return quads;
}

// Rows of canonical cells ("" for unbound), from enumerating every tuple of
// distinct stored triples in written pattern order.
inline std::vector<std::vector<std::string>> brute_force_select(const Store& store, const SelectQuery& q) {
  std::vector<std::array<std::string, 3>> triples;
  {
    std::set<std::array<std::string, 3>> seen;
    for (const auto& quad : store.quads()) {
      seen.insert({canonical_term(quad.subject), canonical_term(quad.predicate), canonical_term(quad.object)});
    }
    triples.assign(seen.begin(), seen.end());
  }
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> binding;

  auto node_ok = [&](const PatternNode& n, const std::string& value, std::vector<std::string>& added) {
    if (const auto* t = std::get_if<Term>(&n)) return canonical_term(*t) == value;
    const std::string& name = std::get<Variable>(n).name;
    auto it = binding.find(name);
    if (it != binding.end()) return it->second == value;
    binding[name] = value;
    added.push_back(name);
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == q.patterns.size()) {
      std::vector<std::string> row;
      for (const auto& v : q.projected) {
        auto it = binding.find(v);
        row.push_back(it == binding.end() ? std::string{} : it->second);
      }
      rows.push_back(std::move(row));
      return;
    }
    const TriplePattern& tp = q.patterns[depth];
    for (const auto& t : triples) {
      std::vector<std::string> added;
      bool ok = node_ok(tp.subject, t[0], added) && node_ok(tp.predicate, t[1], added) &&
                node_ok(tp.object, t[2], added);
      if (ok) rec(depth + 1);
      for (const auto& a : added) binding.erase(a);
    }
  };
  rec(0);
  std::sort(rows.begin(), rows.end());
  if (q.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

inline std::vector<std::vector<std::string>> table_cells(const ResultTable& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : t.rows) {
    std::vector<std::string> row;
    for (const auto& c : r) row.push_back(c ? canonical_term(*c) : std::string{});
    rows.push_back(std::move(row));
  }
  return rows;
}

// Random instance quads over the built-in ontology: a handful of subjects,
// typing to random classes, random object and datatype property edges.
inline Store random_instance_store(std::mt19937& rng, std::size_t max_instance_quads, bool with_schema = true) {
  const Ontology& o = builtin_malont();
  Store store;
  if (with_schema) insert_schema(store, o);
  std::uniform_int_distribution<std::size_t> count_dist(0, max_instance_quads);
  const std::size_t n = count_dist(rng);
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
  const std::vector<Term> graphs{doc_graph("d1"), doc_graph("d2"), inferred_graph()};
  auto entity = [&] { return k("e" + std::to_string(pick(8))); };
  for (std::size_t i = 0; i < n; ++i) {
    const Term g = graphs[pick(graphs.size())];
    const std::size_t kind = pick(3);
    Quad q{entity(), type_iri(), entity(), g};
    if (kind == 0) {
      q.object = m(o.classes[pick(o.classes.size())].name);
    } else if (kind == 1) {
      q.predicate = m(o.object_properties[pick(o.object_properties.size())].name);
      if (pick(10) == 0) q.object = Term::literal("oops");
    } else {
      q.predicate = m(o.datatype_properties[pick(o.datatype_properties.size())].name);
      q.object = pick(2) ? Term::literal(std::to_string(pick(3000)), std::string(vocab::kXsdInteger))
                         : Term::literal("v" + std::to_string(pick(3)));
    }
    store.insert(q, Provenance::annotation("d", {"T" + std::to_string(i)}));
  }
  return store;
}

// Small-vocabulary store so random joins hit often.
inline Store random_query_store(std::mt19937& rng, std::size_t max_quads) {
  Store store;
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
  const std::vector<Term> graphs{doc_graph("d0"), doc_graph("d1"), inferred_graph()};
  const std::size_t n = pick(max_quads + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Term s = k("e" + std::to_string(pick(6)));
    Term p = pick(4) == 0 ? type_iri() : k("p" + std::to_string(pick(3)));
    Term o = k("e" + std::to_string(pick(6)));
    if (pick(5) == 0) o = Term::literal("v" + std::to_string(pick(2)));
    store.insert(Quad{s, p, o, graphs[pick(graphs.size())]}, Provenance::annotation("d", {}));
  }
  return store;
}

inline SelectQuery random_query(std::mt19937& rng, std::size_t max_patterns) {
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
  const std::vector<std::string> vars{"a", "b", "c", "d"};
  auto node = [&](int position) -> PatternNode {
    if (pick(10) < 6) return Variable{vars[pick(vars.size())]};
    if (position == 1) return pick(4) == 0 ? type_iri() : k("p" + std::to_string(pick(4)));
    if (position == 2 && pick(5) == 0) return Term::literal("v" + std::to_string(pick(3)));
    return k("e" + std::to_string(pick(7)));
  };
  SelectQuery q;
  q.distinct = pick(2) == 0;
  const std::size_t n = 1 + pick(max_patterns);
  for (std::size_t i = 0; i < n; ++i) q.patterns.push_back(TriplePattern{node(0), node(1), node(2)});
  for (const auto& v : vars)
    if (pick(2) == 0) q.projected.push_back(v);
  if (q.projected.empty()) q.projected.push_back(vars[pick(vars.size())]);
  return q;
}

}  // namespace malont::testing
