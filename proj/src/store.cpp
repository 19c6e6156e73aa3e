#include "malont/store.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

TermId TermDictionary::intern(const Term& term) {
  std::string canon = canonical_term(term);
  auto [it, inserted] = ids_.try_emplace(canon, static_cast<TermId>(terms_.size()));
  if (inserted) {
    terms_.push_back(term);
    canonical_.push_back(std::move(canon));
  }
  return it->second;
}

std::optional<TermId> TermDictionary::find(const Term& term) const {
  auto it = ids_.find(canonical_term(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<TermId> TermDictionary::find_iri(std::string_view iri) const {
  std::string canon;
  canon.reserve(iri.size() + 2);
  canon += '<';
  canon += iri;
  canon += '>';
  auto it = ids_.find(canon);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t Store::QuadIdsHash::operator()(const QuadIds& q) const noexcept {
  std::uint64_t h = q.s;
  h = h * 0x9E3779B97F4A7C15ULL + q.p;
  h = h * 0x9E3779B97F4A7C15ULL + q.o;
  h = h * 0x9E3779B97F4A7C15ULL + q.g;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::size_t Store::PairHash::operator()(const std::pair<TermId, TermId>& p) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(p.first) << 32) | p.second;
  h *= 0x9E3779B97F4A7C15ULL;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

std::size_t Store::TripleHash::operator()(const std::tuple<TermId, TermId, TermId>& t) const noexcept {
  std::uint64_t h = std::get<0>(t);
  h = h * 0x9E3779B97F4A7C15ULL + std::get<1>(t);
  h = h * 0x9E3779B97F4A7C15ULL + std::get<2>(t);
  return static_cast<std::size_t>(h ^ (h >> 29));
}

QuadIndex Store::add(const QuadIds& q) {
  const auto idx = static_cast<QuadIndex>(quads_.size());
  quads_.push_back(q);
  provenance_.emplace_back();
  index_.emplace(q, idx);
  triples_.try_emplace({q.s, q.p, q.o}, idx);
  by_subject_[q.s].push_back(idx);
  by_predicate_[q.p].push_back(idx);
  by_predicate_object_[{q.p, q.o}].push_back(idx);
  by_object_[q.o].push_back(idx);
  by_graph_[q.g].push_back(idx);
  return idx;
}

bool Store::insert(const Quad& quad, Provenance prov) {
  validate_quad(quad);
  validate_provenance(prov);
  QuadIds ids{dict_.intern(quad.subject), dict_.intern(quad.predicate), dict_.intern(quad.object),
              dict_.intern(quad.graph)};
  bool fresh = false;
  QuadIndex idx;
  if (auto it = index_.find(ids); it != index_.end()) {
    idx = it->second;
  } else {
    idx = add(ids);
    fresh = true;
  }
  provenance_[idx].push_back(StoredProvenance{std::move(prov), {}});
  return fresh;
}

std::optional<QuadIndex> Store::insert_inferred(const QuadIds& quad, std::string_view rule_id,
                                                std::vector<QuadIndex> premises) {
  if (index_.contains(quad)) return std::nullopt;
  const QuadIndex idx = add(quad);
  Provenance record;
  record.kind = ProvenanceKind::Inference;
  record.rule_id = std::string(rule_id);
  provenance_[idx].push_back(StoredProvenance{std::move(record), std::move(premises)});
  return idx;
}

Quad Store::quad(QuadIndex i) const {
  const QuadIds& q = quads_[i];
  return Quad{dict_.term(q.s), dict_.term(q.p), dict_.term(q.o), dict_.term(q.g)};
}

std::optional<QuadIndex> Store::find(const QuadIds& q) const {
  auto it = index_.find(q);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {
template <typename Map, typename Key>
std::span<const QuadIndex> lookup(const Map& map, const Key& key) {
  auto it = map.find(key);
  if (it == map.end()) return {};
  return it->second;
}
}  // namespace

std::span<const QuadIndex> Store::by_subject(TermId s) const { return lookup(by_subject_, s); }
std::span<const QuadIndex> Store::by_predicate(TermId p) const { return lookup(by_predicate_, p); }
std::span<const QuadIndex> Store::by_predicate_object(TermId p, TermId o) const {
  return lookup(by_predicate_object_, std::pair{p, o});
}
std::span<const QuadIndex> Store::by_object(TermId o) const { return lookup(by_object_, o); }
std::span<const QuadIndex> Store::by_graph(TermId g) const { return lookup(by_graph_, g); }

bool Store::contains_triple(TermId s, TermId p, TermId o) const {
  return triples_.contains({s, p, o});
}

std::optional<QuadIndex> Store::triple_representative(TermId s, TermId p, TermId o) const {
  auto it = triples_.find({s, p, o});
  if (it == triples_.end()) return std::nullopt;
  return it->second;
}

bool Store::contains(const Quad& quad) const {
  auto s = dict_.find(quad.subject), p = dict_.find(quad.predicate), o = dict_.find(quad.object),
       g = dict_.find(quad.graph);
  if (!s || !p || !o || !g) return false;
  return index_.contains(QuadIds{*s, *p, *o, *g});
}

Provenance Store::expand(const StoredProvenance& sp) const {
  Provenance out = sp.record;
  for (QuadIndex premise : sp.premises) out.premise_keys.push_back(quad_key(quad(premise)));
  return out;
}

std::vector<Provenance> Store::provenance(QuadIndex index) const {
  std::vector<Provenance> out;
  for (const auto& sp : provenance_[index]) out.push_back(expand(sp));
  return out;
}

std::vector<Provenance> Store::provenance(const Quad& quad) const {
  auto s = dict_.find(quad.subject), p = dict_.find(quad.predicate), o = dict_.find(quad.object),
       g = dict_.find(quad.graph);
  if (!s || !p || !o || !g) return {};
  auto idx = find(QuadIds{*s, *p, *o, *g});
  if (!idx) return {};
  return provenance(*idx);
}

std::vector<QuadIndex> Store::sorted_indices() const {
  std::vector<QuadIndex> order(quads_.size());
  for (QuadIndex i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [this](QuadIndex i) {
    const QuadIds& q = quads_[i];
    return std::tie(dict_.canonical(q.g), dict_.canonical(q.s), dict_.canonical(q.p),
                    dict_.canonical(q.o));
  };
  std::sort(order.begin(), order.end(), [&](QuadIndex a, QuadIndex b) { return key(a) < key(b); });
  return order;
}

std::vector<Quad> Store::quads() const {
  std::vector<Quad> out;
  out.reserve(quads_.size());
  for (QuadIndex i : sorted_indices()) out.push_back(quad(i));
  return out;
}

std::vector<Quad> Store::match(const QuadPattern& pattern) const {
  std::optional<TermId> s, p, o, g;
  auto resolve = [&](const std::optional<Term>& t, std::optional<TermId>& out) {
    if (!t) return true;
    out = dict_.find(*t);
    return out.has_value();
  };
  if (!resolve(pattern.subject, s) || !resolve(pattern.predicate, p) || !resolve(pattern.object, o) ||
      !resolve(pattern.graph, g)) {
    return {};
  }

  std::optional<std::span<const QuadIndex>> candidates;
  auto consider = [&](std::span<const QuadIndex> list) {
    if (!candidates || list.size() < candidates->size()) candidates = list;
  };
  if (s) consider(by_subject(*s));
  if (p && o) consider(by_predicate_object(*p, *o));
  if (o) consider(by_object(*o));
  if (p) consider(by_predicate(*p));
  if (g) consider(by_graph(*g));

  auto accepts = [&](const QuadIds& q) {
    return (!s || q.s == *s) && (!p || q.p == *p) && (!o || q.o == *o) && (!g || q.g == *g);
  };

  std::vector<QuadIndex> hits;
  if (candidates) {
    for (QuadIndex i : *candidates)
      if (accepts(quads_[i])) hits.push_back(i);
  } else {
    for (QuadIndex i = 0; i < quads_.size(); ++i) hits.push_back(i);
  }

  auto key = [this](QuadIndex i) {
    const QuadIds& q = quads_[i];
    return std::tie(dict_.canonical(q.g), dict_.canonical(q.s), dict_.canonical(q.p),
                    dict_.canonical(q.o));
  };
  std::sort(hits.begin(), hits.end(), [&](QuadIndex a, QuadIndex b) { return key(a) < key(b); });
  std::vector<Quad> out;
  out.reserve(hits.size());
  for (QuadIndex i : hits) out.push_back(quad(i));
  return out;
}

StatsReport Store::stats() const {
  StatsReport r;
  r.quads = quads_.size();
  r.subjects = by_subject_.size();
  for (const auto& [g, list] : by_graph_) r.per_graph[dict_.term(g).iri_text()] = list.size();

  const auto type = dict_.find_iri(vocab::kRdfType);
  if (!type) return r;
  auto count_typed = [&](std::string_view cls, std::optional<TermId> graph) -> std::size_t {
    auto c = dict_.find_iri(cls);
    if (!c) return 0;
    std::set<TermId> subjects;
    for (QuadIndex i : by_predicate_object(*type, *c))
      if (!graph || quads_[i].g == *graph) subjects.insert(quads_[i].s);
    return subjects.size();
  };
  r.instances = count_typed(vocab::kOwlNamedIndividual, std::nullopt);
  if (auto schema = dict_.find_iri(vocab::kSchemaGraph); schema && by_graph_.contains(*schema)) {
    r.classes = count_typed(vocab::kOwlClass, schema);
    r.object_properties = count_typed(vocab::kOwlObjectProperty, schema);
    r.datatype_properties = count_typed(vocab::kOwlDatatypeProperty, schema);
  }
  return r;
}

std::string StatsReport::to_tsv() const {
  std::ostringstream out;
  out << "quads\t" << quads << '\n'
      << "subjects\t" << subjects << '\n'
      << "instances\t" << instances << '\n'
      << "classes\t" << classes << '\n'
      << "object_properties\t" << object_properties << '\n'
      << "datatype_properties\t" << datatype_properties << '\n';
  for (const auto& [graph, count] : per_graph) out << "graph:<" << graph << ">\t" << count << '\n';
  return out.str();
}

}  // namespace malont
