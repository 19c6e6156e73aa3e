#include "malont/reasoner.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

namespace {

constexpr std::array<InferenceRule, 5> kRules{{
    {kRuleInverse, "(s P o) and P owl:inverseOf Q gives (o Q s)"},
    {kRuleSubclassTransitive, "rdfs:subClassOf is transitive"},
    {kRuleTypeInheritance, "instances of a class are instances of its superclasses"},
    {kRuleDomainTyping, "the subject of a single-domain property is typed with that domain"},
    {kRuleRangeTyping, "the object of an object property is typed with its range"},
}};

struct PropertyInfo {
  std::optional<TermId> inverse;
  std::optional<TermId> single_domain;
  std::optional<TermId> range;  // object properties only
};

struct Derivation {
  TermId s, p, o;
  std::string_view rule;
  std::vector<QuadIndex> premises;
};

}  // namespace

std::span<const InferenceRule> inference_rules() { return kRules; }

InferenceReport materialize(Store& store, const Ontology& o) {
  {
    auto schema = store.dictionary().find_iri(vocab::kSchemaGraph);
    if (!schema || store.by_graph(*schema).empty()) {
      throw Error(ErrorCode::MissingSchema, "store has no schema graph; insert reify(ontology) first");
    }
  }

  auto iri = [&](std::string_view text) { return store.intern(Term::iri(std::string(text))); };
  const TermId type = iri(vocab::kRdfType);
  const TermId sub_class_of = iri(vocab::kRdfsSubClassOf);
  const TermId inferred = iri(vocab::kInferredGraph);

  std::unordered_map<TermId, PropertyInfo> properties;
  for (const auto& p : o.object_properties) {
    PropertyInfo info;
    if (p.inverse) info.inverse = iri(vocab::malont(*p.inverse));
    if (p.domains.size() == 1) info.single_domain = iri(vocab::malont(p.domains.front()));
    info.range = iri(vocab::malont(p.range));
    properties[iri(vocab::malont(p.name))] = info;
  }
  for (const auto& p : o.datatype_properties) {
    PropertyInfo info;
    if (p.domains.size() == 1) info.single_domain = iri(vocab::malont(p.domains.front()));
    properties[iri(vocab::malont(p.name))] = info;
  }

  InferenceReport report;
  for (const auto& rule : kRules) report.per_rule[std::string(rule.id)] = 0;

  std::vector<QuadIndex> delta(store.size());
  for (QuadIndex i = 0; i < delta.size(); ++i) delta[i] = i;

  std::vector<Derivation> pending;
  while (!delta.empty()) {
    ++report.iterations;
    std::vector<QuadIndex> next;
    for (QuadIndex qi : delta) {
      const QuadIds q = store.ids(qi);
      pending.clear();

      if (q.p == sub_class_of) {
        for (QuadIndex i : store.by_subject(q.o))
          if (store.ids(i).p == sub_class_of)
            pending.push_back({q.s, sub_class_of, store.ids(i).o, kRuleSubclassTransitive, {qi, i}});
        for (QuadIndex i : store.by_predicate_object(sub_class_of, q.s))
          pending.push_back({store.ids(i).s, sub_class_of, q.o, kRuleSubclassTransitive, {i, qi}});
        for (QuadIndex i : store.by_predicate_object(type, q.s))
          pending.push_back({store.ids(i).s, type, q.o, kRuleTypeInheritance, {i, qi}});
      }
      if (q.p == type) {
        for (QuadIndex i : store.by_subject(q.o))
          if (store.ids(i).p == sub_class_of)
            pending.push_back({q.s, type, store.ids(i).o, kRuleTypeInheritance, {qi, i}});
      }
      if (auto it = properties.find(q.p); it != properties.end()) {
        const PropertyInfo& info = it->second;
        const bool object_is_iri = store.dictionary().term(q.o).is_iri();
        if (info.inverse && object_is_iri)
          pending.push_back({q.o, *info.inverse, q.s, kRuleInverse, {qi}});
        if (info.single_domain)
          pending.push_back({q.s, type, *info.single_domain, kRuleDomainTyping, {qi}});
        if (info.range && object_is_iri)
          pending.push_back({q.o, type, *info.range, kRuleRangeTyping, {qi}});
      }

      for (auto& d : pending) {
        if (store.contains_triple(d.s, d.p, d.o)) continue;
        if (auto added = store.insert_inferred(QuadIds{d.s, d.p, d.o, inferred}, d.rule, std::move(d.premises))) {
          next.push_back(*added);
          ++report.added_quads;
          ++report.per_rule[std::string(d.rule)];
        }
      }
    }
    delta = std::move(next);
  }
  return report;
}

bool is_integer_lexical(std::string_view lexical) {
  if (!lexical.empty() && (lexical.front() == '+' || lexical.front() == '-')) lexical.remove_prefix(1);
  return !lexical.empty() && std::all_of(lexical.begin(), lexical.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string ConformanceViolation::to_string() const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  std::string out = violated == ViolatedPosition::Domain ? "violation(domain)" : "violation(range)";
  out += " " + canonical_term(quad.subject) + " " + canonical_term(quad.predicate) + " " +
         canonical_term(quad.object) + " " + canonical_term(quad.graph);
  out += " expected={" + join(expected_classes) + "} actual={" + join(actual_types) + "}";
  if (!detail.empty()) out += " " + detail;
  return out;
}

std::vector<ConformanceViolation> validate_instances(const Store& store, const Ontology& o) {
  std::vector<ConformanceViolation> out;
  const auto& dict = store.dictionary();
  const auto type = dict.find_iri(vocab::kRdfType);

  auto types_of = [&](TermId subject) {
    std::vector<std::string> names;
    if (!type) return names;
    for (QuadIndex i : store.by_subject(subject)) {
      const QuadIds& q = store.ids(i);
      if (q.p != *type) continue;
      const Term& t = dict.term(q.o);
      if (t.is_iri() && t.iri_text().starts_with(vocab::kMalont)) {
        names.push_back(t.iri_text().substr(vocab::kMalont.size()));
      }
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
  };
  auto conforms = [&](const std::vector<std::string>& actual, const std::vector<std::string>& expected) {
    for (const auto& a : actual)
      for (const auto& e : expected)
        if (o.is_subclass_of(a, e)) return true;
    return false;
  };

  for (QuadIndex qi : store.sorted_indices()) {
    const QuadIds& ids = store.ids(qi);
    const Term& pred = dict.term(ids.p);
    if (!pred.iri_text().starts_with(vocab::kMalont)) continue;
    const std::string name = pred.iri_text().substr(vocab::kMalont.size());
    const ObjectPropertyDef* op = o.find_object_property(name);
    const DatatypePropertyDef* dp = op ? nullptr : o.find_datatype_property(name);
    if (op == nullptr && dp == nullptr) continue;

    const std::vector<std::string>& domains = op ? op->domains : dp->domains;
    auto subject_types = types_of(ids.s);
    if (!conforms(subject_types, domains)) {
      out.push_back({store.quad(qi), ViolatedPosition::Domain, domains, subject_types, {}});
    }

    const Term& object = dict.term(ids.o);
    if (op) {
      if (object.is_literal()) {
        out.push_back({store.quad(qi), ViolatedPosition::Range, {op->range}, {object.datatype()},
                       "literal object for object property"});
      } else if (auto object_types = types_of(ids.o); !conforms(object_types, {op->range})) {
        out.push_back({store.quad(qi), ViolatedPosition::Range, {op->range}, object_types, {}});
      }
    } else {
      const std::string expected(to_string(dp->range));
      if (!object.is_literal()) {
        out.push_back({store.quad(qi), ViolatedPosition::Range, {expected}, {}, "IRI object for datatype property"});
      } else if (object.datatype() != datatype_iri(dp->range)) {
        out.push_back({store.quad(qi), ViolatedPosition::Range, {expected}, {object.datatype()},
                       "datatype mismatch"});
      } else if (dp->range == DatatypeRange::Integer && !is_integer_lexical(object.lexical())) {
        out.push_back({store.quad(qi), ViolatedPosition::Range, {expected}, {object.datatype()},
                       "invalid integer lexical '" + object.lexical() + "'"});
      }
    }
  }
  return out;
}

}  // namespace malont
