#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "malont/ontology.hpp"
#include "malont/store.hpp"

namespace malont {

struct InferenceRule {
  std::string_view id;
  std::string_view description;
};

inline constexpr std::string_view kRuleInverse = "R1-inverse";
inline constexpr std::string_view kRuleSubclassTransitive = "R2-subclass-transitive";
inline constexpr std::string_view kRuleTypeInheritance = "R3-type-inheritance";
inline constexpr std::string_view kRuleDomainTyping = "R4-domain-typing";
inline constexpr std::string_view kRuleRangeTyping = "R5-range-typing";

// The closed rule set, in id order.
std::span<const InferenceRule> inference_rules();

struct InferenceReport {
  std::size_t added_quads = 0;
  std::size_t iterations = 0;
  std::map<std::string, std::size_t> per_rule;
};

// Forward-chains the five rules to fixpoint. Conclusions whose triple is
// already stored in any graph are not added; new ones go to the inferred
// graph with the first derivation as provenance. Throws Error(MissingSchema)
// when the store holds no schema-graph quads.
//
//   R1  (s P o), P inverseOf Q             => (o Q s)
//   R2  (a subClassOf b), (b subClassOf c) => (a subClassOf c)
//   R3  (x type C), (C subClassOf D)       => (x type D)
//   R4  (s P o), P has exactly one domain D => (s type D)
//   R5  (s P o), P object property, range R => (o type R)
InferenceReport materialize(Store& store, const Ontology& o);

enum class ViolatedPosition { Domain, Range };

struct ConformanceViolation {
  Quad quad;
  ViolatedPosition violated;
  std::vector<std::string> expected_classes;
  std::vector<std::string> actual_types;
  std::string detail;

  std::string to_string() const;
};

// Checks every quad that uses a declared property against domain and range.
// Membership in a subclass of an expected class counts as conformant.
std::vector<ConformanceViolation> validate_instances(const Store& store, const Ontology& o);

// True when `lexical` is a valid xsd:integer lexical form.
bool is_integer_lexical(std::string_view lexical);

}  // namespace malont
