#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "malont/term.hpp"

namespace malont {

using TermId = std::uint32_t;
using QuadIndex = std::uint32_t;

// Interns terms; each distinct term gets a dense id and a cached canonical form.
class TermDictionary {
 public:
  TermId intern(const Term& term);
  std::optional<TermId> find(const Term& term) const;
  std::optional<TermId> find_iri(std::string_view iri) const;

  const Term& term(TermId id) const { return terms_[id]; }
  const std::string& canonical(TermId id) const { return canonical_[id]; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<Term> terms_;
  std::vector<std::string> canonical_;
  std::unordered_map<std::string, TermId> ids_;
};

struct QuadIds {
  TermId s = 0, p = 0, o = 0, g = 0;
  bool operator==(const QuadIds&) const = default;
};

struct QuadPattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;
  std::optional<Term> graph;
};

struct StatsReport {
  std::size_t quads = 0;
  std::size_t subjects = 0;
  std::size_t instances = 0;
  std::size_t classes = 0;
  std::size_t object_properties = 0;
  std::size_t datatype_properties = 0;
  std::map<std::string, std::size_t> per_graph;  // graph IRI -> quad count

  // `key<TAB>value` lines.
  std::string to_tsv() const;
};

// In-memory quad set with provenance and four access paths: subject,
// (predicate, object), object and graph, plus a predicate path for scans.
// Single writer, many readers: callers serialize insert against reads.
class Store {
 public:
  // Returns true iff the quad was absent. The provenance record is appended
  // either way. Throws Error(InvalidQuad) on a malformed quad or record.
  bool insert(const Quad& quad, Provenance prov);

  // Records an inference with premises given as quad indices. Returns the
  // index of the new quad, or nullopt if the quad already existed (in which
  // case nothing is recorded).
  std::optional<QuadIndex> insert_inferred(const QuadIds& quad, std::string_view rule_id,
                                           std::vector<QuadIndex> premises);

  // Stored quads agreeing with every concrete position, sorted by quad_order.
  std::vector<Quad> match(const QuadPattern& pattern) const;

  bool contains(const Quad& quad) const;
  std::vector<Provenance> provenance(const Quad& quad) const;
  std::vector<Provenance> provenance(QuadIndex index) const;

  // All quads sorted by quad_order.
  std::vector<Quad> quads() const;
  std::vector<QuadIndex> sorted_indices() const;
  std::size_t size() const { return quads_.size(); }
  bool empty() const { return quads_.empty(); }

  StatsReport stats() const;

  // Id-level access for the reasoner and the query engine.
  TermDictionary& dictionary() { return dict_; }
  const TermDictionary& dictionary() const { return dict_; }
  TermId intern(const Term& t) { return dict_.intern(t); }
  Quad quad(QuadIndex i) const;
  const QuadIds& ids(QuadIndex i) const { return quads_[i]; }
  std::span<const QuadIds> all_ids() const { return quads_; }
  std::optional<QuadIndex> find(const QuadIds& q) const;

  std::span<const QuadIndex> by_subject(TermId s) const;
  std::span<const QuadIndex> by_predicate(TermId p) const;
  std::span<const QuadIndex> by_predicate_object(TermId p, TermId o) const;
  std::span<const QuadIndex> by_object(TermId o) const;
  std::span<const QuadIndex> by_graph(TermId g) const;

  // True when (s, p, o) is stored in any graph.
  bool contains_triple(TermId s, TermId p, TermId o) const;
  // The first-inserted quad carrying (s, p, o); graph copies of a triple
  // share this representative.
  std::optional<QuadIndex> triple_representative(TermId s, TermId p, TermId o) const;

 private:
  struct StoredProvenance {
    Provenance record;
    std::vector<QuadIndex> premises;
  };

  struct QuadIdsHash {
    std::size_t operator()(const QuadIds& q) const noexcept;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<TermId, TermId>& p) const noexcept;
  };
  struct TripleHash {
    std::size_t operator()(const std::tuple<TermId, TermId, TermId>& t) const noexcept;
  };

  QuadIndex add(const QuadIds& q);
  Provenance expand(const StoredProvenance& sp) const;

  TermDictionary dict_;
  std::vector<QuadIds> quads_;
  std::vector<std::vector<StoredProvenance>> provenance_;
  std::unordered_map<QuadIds, QuadIndex, QuadIdsHash> index_;
  std::unordered_map<std::tuple<TermId, TermId, TermId>, QuadIndex, TripleHash> triples_;
  std::unordered_map<TermId, std::vector<QuadIndex>> by_subject_;
  std::unordered_map<TermId, std::vector<QuadIndex>> by_predicate_;
  std::unordered_map<std::pair<TermId, TermId>, std::vector<QuadIndex>, PairHash> by_predicate_object_;
  std::unordered_map<TermId, std::vector<QuadIndex>> by_object_;
  std::unordered_map<TermId, std::vector<QuadIndex>> by_graph_;
};

}  // namespace malont
