#include <gtest/gtest.h>

#include <random>
#include <set>

#include "malont/brat.hpp"
#include "malont/error.hpp"
#include "malont/ontology.hpp"
#include "malont/pipeline.hpp"
#include "malont/store.hpp"
#include "malont/vocab.hpp"
#include "test_support.hpp"

using namespace malont;
using namespace malont::testing;

namespace {

std::vector<Quad> linear_scan(const Store& store, const QuadPattern& p) {
  std::vector<Quad> out;
  for (const auto& q : store.quads()) {
    if (p.subject && !(*p.subject == q.subject)) continue;
    if (p.predicate && !(*p.predicate == q.predicate)) continue;
    if (p.object && !(*p.object == q.object)) continue;
    if (p.graph && !(*p.graph == q.graph)) continue;
    out.push_back(q);
  }
  return out;
}

}  // namespace

TEST(Store, InsertAndProvenance) {
  Store store;
  const Quad q{k("a"), type_iri(), m("Malware"), doc_graph("d1")};
  EXPECT_TRUE(store.insert(q, Provenance::annotation("d1", {"T1"})));
  EXPECT_FALSE(store.insert(q, Provenance::annotation("d1", {"T2"})));
  EXPECT_EQ(store.size(), 1u);
  EXPECT_TRUE(store.contains(q));
  auto prov = store.provenance(q);
  ASSERT_EQ(prov.size(), 2u);
  EXPECT_EQ(prov[0].annotation_ids, std::vector<std::string>{"T1"});
  EXPECT_EQ(prov[1].annotation_ids, std::vector<std::string>{"T2"});
}

TEST(Store, SameTripleInTwoGraphsIsTwoQuads) {
  Store store;
  store.insert(Quad{k("a"), type_iri(), m("Malware"), doc_graph("d1")}, Provenance::annotation("d1", {"T1"}));
  store.insert(Quad{k("a"), type_iri(), m("Malware"), doc_graph("d2")}, Provenance::annotation("d2", {"T1"}));
  EXPECT_EQ(store.size(), 2u);
}

TEST(Store, RejectsMalformedInput) {
  Store store;
  EXPECT_THROW(store.insert(Quad{Term::literal("x"), type_iri(), m("C"), doc_graph("d")},
                            Provenance::annotation("d", {})),
               Error);
  EXPECT_THROW(store.insert(Quad{k("a"), type_iri(), m("C"), k("elsewhere")}, Provenance::schema()), Error);
  Provenance bad = Provenance::inference("R1-inverse", {});
  EXPECT_THROW(store.insert(Quad{k("a"), type_iri(), m("C"), inferred_graph()}, bad), Error);
  EXPECT_TRUE(store.empty());
}

TEST(Store, MatchBuiltinClasses) {
  Store store;
  insert_schema(store, builtin_malont());
  QuadPattern p;
  p.predicate = type_iri();
  p.object = iri(vocab::kOwlClass);
  EXPECT_EQ(store.match(p).size(), 29u);
  EXPECT_EQ(store.match(QuadPattern{}).size(), 136u);
}

TEST(Store, MatchAgreesWithLinearScan) {
  std::mt19937 rng(7);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (int round = 0; round < 120; ++round) {
    Store store = random_query_store(rng, 200);
    const auto all = store.quads();
    for (int trial = 0; trial < 20; ++trial) {
      QuadPattern p;
      // Mix concrete values from stored quads with values that are absent.
      const Quad* ref = all.empty() ? nullptr : &all[pick(all.size())];
      if (pick(2)) p.subject = ref && pick(4) ? ref->subject : k("absent");
      if (pick(2)) p.predicate = ref && pick(4) ? ref->predicate : k("p9");
      if (pick(2)) p.object = ref && pick(4) ? ref->object : Term::literal("v9");
      if (pick(3) == 0) p.graph = ref && pick(4) ? ref->graph : doc_graph("zz");
      ASSERT_EQ(store.match(p), linear_scan(store, p));
    }
  }
}

TEST(Store, QuadsAreSorted) {
  std::mt19937 rng(11);
  Store store = random_query_store(rng, 200);
  auto qs = store.quads();
  for (std::size_t i = 1; i < qs.size(); ++i) EXPECT_EQ(quad_order(qs[i - 1], qs[i]), std::strong_ordering::less);
}

TEST(Store, StatsEmpty) {
  Store store;
  StatsReport s = store.stats();
  EXPECT_EQ(s.quads, 0u);
  EXPECT_EQ(s.subjects, 0u);
  EXPECT_EQ(s.instances, 0u);
  EXPECT_EQ(s.classes, 0u);
  EXPECT_TRUE(s.per_graph.empty());
}

TEST(Store, StatsBuiltinSchema) {
  Store store;
  insert_schema(store, builtin_malont());
  StatsReport s = store.stats();
  EXPECT_EQ(s.quads, 136u);
  EXPECT_EQ(s.classes, 29u);
  EXPECT_EQ(s.object_properties, 11u);
  EXPECT_EQ(s.datatype_properties, 3u);
  EXPECT_EQ(s.instances, 0u);
  EXPECT_EQ(s.subjects, 29u + 11u + 3u);
  EXPECT_EQ(s.per_graph.at(std::string(vocab::kSchemaGraph)), 136u);
  EXPECT_NE(s.to_tsv().find("classes\t29\n"), std::string::npos);
}

TEST(Store, StatsInstancesMatchAnnotatedEntities) {
  Store store;
  const auto corpus = read_corpus(fixture_a_dir());
  build_graph(store, builtin_malont(), corpus, MappingConfig{}, true);
  // Count distinct minted IRIs straight from the annotation files.
  std::set<std::string> minted;
  for (const auto& doc : corpus) {
    AnnotationDoc parsed = parse_ann(doc.ann, doc.text, doc.doc_id);
    for (const auto& e : parsed.entities) minted.insert(mint_instance_iri(e.type, e.surface).iri_text());
  }
  EXPECT_EQ(store.stats().instances, minted.size());
}
