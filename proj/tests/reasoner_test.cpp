#include <gtest/gtest.h>

#include <random>

#include "malont/error.hpp"
#include "malont/ontology.hpp"
#include "malont/reasoner.hpp"
#include "malont/store.hpp"
#include "malont/vocab.hpp"
#include "test_support.hpp"

using namespace malont;
using namespace malont::testing;

namespace {

Store schema_store() {
  Store store;
  insert_schema(store, builtin_malont());
  return store;
}

void add(Store& store, const Term& s, const Term& p, const Term& o, std::string_view doc = "d1") {
  store.insert(Quad{s, p, o, doc_graph(doc)}, Provenance::annotation(std::string(doc), {"T1"}));
}

Quad inferred(const Term& s, const Term& p, const Term& o) { return Quad{s, p, o, inferred_graph()}; }

}  // namespace

TEST(Materialize, InverseProperty) {
  Store store = schema_store();
  add(store, k("TrojanHorse--plugx"), m("hasFamily"), k("MalwareFamily--plugx-family"));
  materialize(store, builtin_malont());
  const Quad q = inferred(k("MalwareFamily--plugx-family"), m("hasMember"), k("TrojanHorse--plugx"));
  ASSERT_TRUE(store.contains(q));
  auto prov = store.provenance(q);
  ASSERT_EQ(prov.size(), 1u);
  EXPECT_EQ(prov[0].kind, ProvenanceKind::Inference);
  EXPECT_EQ(prov[0].rule_id, kRuleInverse);
  EXPECT_EQ(prov[0].premise_keys,
            std::vector<std::string>{quad_key(Quad{k("TrojanHorse--plugx"), m("hasFamily"),
                                                   k("MalwareFamily--plugx-family"), doc_graph("d1")})});
}

TEST(Materialize, SubclassTransitivity) {
  Store store = schema_store();
  materialize(store, builtin_malont());
  const Quad q = inferred(m("SHA256"), iri(vocab::kRdfsSubClassOf), m("Indicator"));
  ASSERT_TRUE(store.contains(q));
  EXPECT_EQ(store.provenance(q)[0].rule_id, kRuleSubclassTransitive);
  EXPECT_EQ(store.provenance(q)[0].premise_keys.size(), 2u);
}

TEST(Materialize, TypeInheritance) {
  Store store = schema_store();
  add(store, k("TrojanHorse--plugx"), type_iri(), m("TrojanHorse"));
  materialize(store, builtin_malont());
  EXPECT_TRUE(store.contains(inferred(k("TrojanHorse--plugx"), type_iri(), m("Malware"))));
}

TEST(Materialize, DomainAndRangeTyping) {
  Store store = schema_store();
  add(store, k("x"), m("targets"), k("y"));
  const InferenceReport report = materialize(store, builtin_malont());
  EXPECT_TRUE(store.contains(inferred(k("x"), type_iri(), m("Campaign"))));
  EXPECT_TRUE(store.contains(inferred(k("y"), type_iri(), m("Organization"))));
  EXPECT_EQ(report.per_rule.at(std::string(kRuleDomainTyping)), 1u);
  EXPECT_EQ(report.per_rule.at(std::string(kRuleRangeTyping)), 1u);
}

TEST(Materialize, MultiDomainPropertyTypesOnlyTheObject) {
  Store store = schema_store();
  add(store, k("g"), m("usesDropper"), k("d"));
  materialize(store, builtin_malont());
  QuadPattern p;
  p.subject = k("g");
  p.predicate = type_iri();
  EXPECT_TRUE(store.match(p).empty());
  EXPECT_TRUE(store.contains(inferred(k("d"), type_iri(), m("Dropper"))));
  EXPECT_TRUE(store.contains(inferred(k("d"), type_iri(), m("Malware"))));
}

TEST(Materialize, DatatypePropertyDomain) {
  Store store = schema_store();
  add(store, k("Dropper--chm"), m("deliveredIn"), Term::literal("spear-phishing"));
  materialize(store, builtin_malont());
  EXPECT_TRUE(store.contains(inferred(k("Dropper--chm"), type_iri(), m("Dropper"))));
}

TEST(Materialize, AssertedTripleIsNotDuplicated) {
  Store store = schema_store();
  add(store, k("x"), m("targets"), k("y"));
  add(store, k("x"), type_iri(), m("Campaign"), "d2");
  materialize(store, builtin_malont());
  EXPECT_FALSE(store.contains(inferred(k("x"), type_iri(), m("Campaign"))));
}

TEST(Materialize, MissingSchema) {
  Store store;
  add(store, k("x"), m("targets"), k("y"));
  try {
    materialize(store, builtin_malont());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingSchema);
  }
  EXPECT_EQ(store.size(), 1u);
}

TEST(Materialize, AgreesWithNaiveOracle) {
  std::mt19937 rng(2024);
  for (int round = 0; round < 120; ++round) {
    Store store = random_instance_store(rng, 60);
    const auto before = canonical_set(store.quads());
    std::size_t naive_rounds = 0;
    const auto expected = naive_materialize(before, builtin_malont(), &naive_rounds);
    const InferenceReport report = materialize(store, builtin_malont());
    const auto after = canonical_set(store.quads());
    ASSERT_EQ(after, expected) << "round " << round;
    EXPECT_EQ(report.added_quads, after.size() - before.size());
    EXPECT_GE(report.iterations, 1u);
    EXPECT_LE(report.iterations, naive_rounds);
    std::size_t per_rule_total = 0;
    for (const auto& [rule, n] : report.per_rule) per_rule_total += n;
    EXPECT_EQ(per_rule_total, report.added_quads);
  }
}

TEST(Materialize, IdempotentAndMonotone) {
  std::mt19937 rng(99);
  for (int round = 0; round < 40; ++round) {
    Store store = random_instance_store(rng, 40);
    const auto before = canonical_set(store.quads());
    materialize(store, builtin_malont());
    const auto once = canonical_set(store.quads());
    EXPECT_TRUE(std::includes(once.begin(), once.end(), before.begin(), before.end()));
    const InferenceReport again = materialize(store, builtin_malont());
    EXPECT_EQ(again.added_quads, 0u);
    EXPECT_EQ(canonical_set(store.quads()), once);
  }
}

TEST(Materialize, PremisesAreStoredQuads) {
  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    Store store = random_instance_store(rng, 50);
    materialize(store, builtin_malont());
    std::set<std::string> keys;
    for (const auto& q : store.quads()) keys.insert(quad_key(q));
    QuadPattern p;
    p.graph = inferred_graph();
    for (const auto& q : store.match(p)) {
      for (const auto& prov : store.provenance(q)) {
        if (prov.kind != ProvenanceKind::Inference || prov.rule_id == kImportedRule) continue;
        ASSERT_FALSE(prov.premise_keys.empty());
        for (const auto& key : prov.premise_keys) EXPECT_TRUE(keys.contains(key));
      }
    }
  }
}

TEST(InferenceRules, ClosedSet) {
  auto rules = inference_rules();
  ASSERT_EQ(rules.size(), 5u);
  EXPECT_EQ(rules[0].id, kRuleInverse);
  EXPECT_EQ(rules[4].id, kRuleRangeTyping);
}

TEST(ValidateInstances, DomainViolation) {
  Store store = schema_store();
  add(store, k("Location--russia"), type_iri(), m("Location"));
  add(store, k("MalwareFamily--plugx-family"), type_iri(), m("MalwareFamily"));
  add(store, k("Location--russia"), m("hasFamily"), k("MalwareFamily--plugx-family"));
  auto v = validate_instances(store, builtin_malont());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].violated, ViolatedPosition::Domain);
  EXPECT_EQ(v[0].expected_classes, std::vector<std::string>{"Malware"});
  EXPECT_EQ(v[0].actual_types, std::vector<std::string>{"Location"});
  EXPECT_EQ(v[0].to_string().rfind("violation(domain) <https://malont.example/kg#Location--russia>", 0), 0u);
}

TEST(ValidateInstances, SubclassConforms) {
  Store store = schema_store();
  add(store, k("t"), type_iri(), m("TrojanHorse"));
  add(store, k("f"), type_iri(), m("MalwareFamily"));
  add(store, k("t"), m("hasFamily"), k("f"));
  EXPECT_TRUE(validate_instances(store, builtin_malont()).empty());
}

TEST(ValidateInstances, IntegerLexical) {
  Store store = schema_store();
  add(store, k("s"), type_iri(), m("Software"));
  add(store, k("s"), m("hasReleaseYear"), Term::literal("twenty-seventeen", std::string(vocab::kXsdInteger)));
  auto v = validate_instances(store, builtin_malont());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].violated, ViolatedPosition::Range);
  EXPECT_NE(v[0].detail.find("twenty-seventeen"), std::string::npos);
}

TEST(ValidateInstances, ObjectPropertyWithLiteral) {
  Store store = schema_store();
  add(store, k("c"), type_iri(), m("Campaign"));
  add(store, k("c"), m("targets"), Term::literal("somebody"));
  auto v = validate_instances(store, builtin_malont());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].violated, ViolatedPosition::Range);
}

TEST(ValidateInstances, MaterializedFixtureIsClean) {
  Store store = schema_store();
  add(store, k("x"), m("targets"), k("y"));
  add(store, k("s"), m("hasReleaseYear"), Term::literal("2017", std::string(vocab::kXsdInteger)));
  EXPECT_EQ(validate_instances(store, builtin_malont()).size(), 3u);
  materialize(store, builtin_malont());
  EXPECT_TRUE(validate_instances(store, builtin_malont()).empty());
}

TEST(IntegerLexical, Forms) {
  EXPECT_TRUE(is_integer_lexical("2017"));
  EXPECT_TRUE(is_integer_lexical("-3"));
  EXPECT_TRUE(is_integer_lexical("+0"));
  EXPECT_FALSE(is_integer_lexical(""));
  EXPECT_FALSE(is_integer_lexical("-"));
  EXPECT_FALSE(is_integer_lexical("1.5"));
}
