#include "malont/ontology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

std::string_view to_string(DatatypeRange range) {
  return range == DatatypeRange::Integer ? "integer" : "string";
}

std::string_view datatype_iri(DatatypeRange range) {
  return range == DatatypeRange::Integer ? vocab::kXsdInteger : vocab::kXsdString;
}

const ClassDef* Ontology::find_class(std::string_view name) const {
  for (const auto& c : classes)
    if (c.name == name) return &c;
  return nullptr;
}

const ObjectPropertyDef* Ontology::find_object_property(std::string_view name) const {
  for (const auto& p : object_properties)
    if (p.name == name) return &p;
  return nullptr;
}

const DatatypePropertyDef* Ontology::find_datatype_property(std::string_view name) const {
  for (const auto& p : datatype_properties)
    if (p.name == name) return &p;
  return nullptr;
}

bool Ontology::is_subclass_of(std::string_view sub, std::string_view super) const {
  std::string_view current = sub;
  // Bounded walk; a cyclic hierarchy cannot loop forever.
  for (std::size_t steps = 0; steps <= classes.size(); ++steps) {
    if (current == super) return true;
    const ClassDef* c = find_class(current);
    if (c == nullptr || !c->superclass) return false;
    current = *c->superclass;
  }
  return false;
}

namespace {

template <typename T>
std::vector<T> sorted_by_name(std::vector<T> defs) {
  for (auto& d : defs) {
    if constexpr (requires { d.domains; }) std::sort(d.domains.begin(), d.domains.end());
  }
  std::sort(defs.begin(), defs.end(), [](const T& a, const T& b) { return a.name < b.name; });
  return defs;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

}  // namespace

bool same_definitions(const Ontology& a, const Ontology& b) {
  return sorted_by_name(a.classes) == sorted_by_name(b.classes) &&
         sorted_by_name(a.object_properties) == sorted_by_name(b.object_properties) &&
         sorted_by_name(a.datatype_properties) == sorted_by_name(b.datatype_properties);
}

const Ontology& builtin_malont() {
  static const Ontology instance = [] {
    Ontology o;
    auto cls = [&](std::string name, std::optional<std::string> super = std::nullopt) {
      o.classes.push_back(ClassDef{name, std::move(super), name});
    };
    cls("Malware");
    cls("TrojanHorse", "Malware");
    cls("Dropper", "Malware");
    cls("Ransomware", "Malware");
    cls("Spyware", "Malware");
    cls("MalwareFamily");
    cls("MalwareCharacteristics");
    cls("Attacker");
    cls("AttackerGroup");
    cls("ExploitTarget");
    cls("Indicator");
    cls("File", "Indicator");
    cls("Email", "Indicator");
    cls("Hash", "Indicator");
    cls("Address", "Indicator");
    for (const char* h : {"MD5", "SHA1", "SHA224", "SHA256", "SHA512", "SSDEEP"}) cls(h, "Hash");
    for (const char* c : {"Location", "Software", "Vulnerability", "Campaign", "Organization",
                          "Person", "Host", "Information"}) {
      cls(c);
    }

    auto obj = [&](std::string name, std::vector<std::string> domains, std::string range,
                   std::optional<std::string> inverse = std::nullopt) {
      o.object_properties.push_back(
          ObjectPropertyDef{name, std::move(domains), std::move(range), std::move(inverse), name});
    };
    obj("hasFamily", {"Malware"}, "MalwareFamily", "hasMember");
    obj("hasMember", {"MalwareFamily"}, "Malware", "hasFamily");
    obj("indicates", {"Indicator"}, "Malware", "indicatedBy");
    obj("indicatedBy", {"Malware"}, "Indicator", "indicates");
    obj("hasVulnerability", {"ExploitTarget", "Software"}, "Vulnerability");
    obj("hasAttachment", {"Email"}, "File");
    obj("usesDropper", {"Attacker", "Malware", "Campaign", "AttackerGroup"}, "Dropper");
    obj("usesTrojan", {"AttackerGroup"}, "TrojanHorse");
    obj("hasTargetLocation", {"Malware"}, "Location");
    obj("hasCharacteristics", {"Malware"}, "MalwareCharacteristics");
    obj("targets", {"Campaign"}, "Organization");

    auto data = [&](std::string name, std::vector<std::string> domains, DatatypeRange range) {
      o.datatype_properties.push_back(DatatypePropertyDef{name, std::move(domains), range, name});
    };
    data("hasVersion", {"Software"}, DatatypeRange::String);
    data("hasReleaseYear", {"Software"}, DatatypeRange::Integer);
    data("deliveredIn", {"Dropper"}, DatatypeRange::String);
    return o;
  }();
  return instance;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::InvalidName: return "invalid-name";
    case ViolationKind::DuplicateName: return "duplicate-name";
    case ViolationKind::UnresolvedReference: return "unresolved-reference";
    case ViolationKind::CyclicHierarchy: return "cyclic-hierarchy";
    case ViolationKind::AsymmetricInverse: return "asymmetric-inverse";
    case ViolationKind::EmptyDomain: return "empty-domain";
  }
  return "unknown";
}

std::string OntologyViolation::to_string() const {
  std::string out(malont::to_string(kind));
  out += "(" + definition;
  if (!detail.empty()) out += (kind == ViolationKind::AsymmetricInverse ? "," : ": ") + detail;
  return out + ")";
}

std::vector<OntologyViolation> validate_ontology(const Ontology& o) {
  std::vector<OntologyViolation> out;
  auto report = [&](ViolationKind k, std::string def, std::string detail = {}) {
    out.push_back(OntologyViolation{k, std::move(def), std::move(detail)});
  };

  std::map<std::string, int> name_counts;
  auto note_name = [&](const std::string& name) {
    if (!is_identifier(name)) report(ViolationKind::InvalidName, name);
    ++name_counts[name];
  };
  for (const auto& c : o.classes) note_name(c.name);
  for (const auto& p : o.object_properties) note_name(p.name);
  for (const auto& p : o.datatype_properties) note_name(p.name);
  for (const auto& [name, count] : name_counts)
    if (count > 1) report(ViolationKind::DuplicateName, name);

  auto check_class_ref = [&](const std::string& def, std::string_view role, const std::string& ref) {
    if (o.find_class(ref) == nullptr) {
      report(ViolationKind::UnresolvedReference, def, std::string(role) + " " + ref);
    }
  };

  for (const auto& c : o.classes)
    if (c.superclass) check_class_ref(c.name, "superclass", *c.superclass);

  // A class is on a cycle when walking its superclass chain returns to it.
  std::set<std::string> reported_cycles;
  for (const auto& c : o.classes) {
    std::vector<std::string> chain{c.name};
    const ClassDef* cur = &c;
    bool cyclic = false;
    while (cur->superclass) {
      const std::string& next = *cur->superclass;
      if (next == c.name) {
        cyclic = true;
        break;
      }
      if (std::find(chain.begin(), chain.end(), next) != chain.end()) break;
      chain.push_back(next);
      cur = o.find_class(next);
      if (cur == nullptr) break;
    }
    if (cyclic) {
      const std::string smallest = *std::min_element(chain.begin(), chain.end());
      if (reported_cycles.insert(smallest).second) {
        report(ViolationKind::CyclicHierarchy, smallest);
      }
    }
  }

  for (const auto& p : o.object_properties) {
    if (p.domains.empty()) report(ViolationKind::EmptyDomain, p.name);
    for (const auto& d : p.domains) check_class_ref(p.name, "domain", d);
    check_class_ref(p.name, "range", p.range);
    if (p.inverse) {
      const ObjectPropertyDef* q = o.find_object_property(*p.inverse);
      if (q == nullptr) {
        report(ViolationKind::UnresolvedReference, p.name, "inverse " + *p.inverse);
      } else if (!q->inverse || *q->inverse != p.name) {
        report(ViolationKind::AsymmetricInverse, p.name, q->name);
      }
    }
  }

  for (const auto& p : o.datatype_properties) {
    if (p.domains.empty()) report(ViolationKind::EmptyDomain, p.name);
    for (const auto& d : p.domains) check_class_ref(p.name, "domain", d);
  }
  return out;
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.emplace_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ErrorCode error_code_for(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::InvalidName: return ErrorCode::Syntax;
    case ViolationKind::DuplicateName: return ErrorCode::DuplicateName;
    case ViolationKind::UnresolvedReference: return ErrorCode::UnresolvedReference;
    case ViolationKind::CyclicHierarchy: return ErrorCode::CyclicHierarchy;
    case ViolationKind::AsymmetricInverse: return ErrorCode::AsymmetricInverse;
    case ViolationKind::EmptyDomain: return ErrorCode::Syntax;
  }
  return ErrorCode::InvalidOntology;
}

}  // namespace

namespace {

Ontology parse_declarations(std::string_view text, std::unordered_map<std::string, std::size_t>& decl_line) {
  Ontology o;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto syntax = [&](const std::string& why) { return Error(ErrorCode::Syntax, why, line_no); };
  auto name_token = [&](const std::string& tok, std::string_view what) {
    if (!is_identifier(tok)) throw syntax("invalid " + std::string(what) + " name '" + tok + "'");
    return tok;
  };

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (keyword == "class") {
      if (tokens.size() != 2 && !(tokens.size() == 4 && tokens[2] == ":")) {
        throw syntax("expected 'class <Name> [: <SuperName>]'");
      }
      ClassDef c;
      c.name = name_token(tokens[1], "class");
      c.label = c.name;
      if (tokens.size() == 4) c.superclass = name_token(tokens[3], "superclass");
      decl_line.emplace(c.name, line_no);
      o.classes.push_back(std::move(c));
      continue;
    }

    if (keyword != "objprop" && keyword != "dataprop") {
      throw syntax("unknown declaration '" + keyword + "'");
    }
    if (tokens.size() < 2) throw syntax("missing property name");
    std::string name = name_token(tokens[1], "property");
    std::map<std::string, std::string> attrs;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      auto eq = tokens[i].find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == tokens[i].size()) {
        throw syntax("expected key=value, got '" + tokens[i] + "'");
      }
      std::string key = tokens[i].substr(0, eq);
      if (!attrs.emplace(key, tokens[i].substr(eq + 1)).second) throw syntax("repeated key '" + key + "'");
    }
    const bool is_obj = keyword == "objprop";
    for (const auto& [key, value] : attrs) {
      if (key != "domain" && key != "range" && !(is_obj && key == "inverse")) {
        throw syntax("unexpected key '" + key + "' for " + keyword);
      }
    }
    if (!attrs.contains("domain")) throw syntax("missing domain=");
    if (!attrs.contains("range")) throw syntax("missing range=");
    std::vector<std::string> domains;
    for (const auto& d : split_list(attrs["domain"])) domains.push_back(name_token(d, "domain class"));

    if (is_obj) {
      ObjectPropertyDef p;
      p.name = name;
      p.label = name;
      p.domains = std::move(domains);
      p.range = name_token(attrs["range"], "range class");
      if (attrs.contains("inverse")) p.inverse = name_token(attrs["inverse"], "inverse property");
      o.object_properties.push_back(std::move(p));
    } else {
      DatatypePropertyDef p;
      p.name = name;
      p.label = name;
      p.domains = std::move(domains);
      const std::string& range = attrs["range"];
      if (range == "string") {
        p.range = DatatypeRange::String;
      } else if (range == "integer") {
        p.range = DatatypeRange::Integer;
      } else {
        throw syntax("unsupported datatype range '" + range + "' (expected string or integer)");
      }
      o.datatype_properties.push_back(std::move(p));
    }
    decl_line.emplace(name, line_no);
  }
  return o;
}

}  // namespace

Ontology parse_schema_declarations(std::string_view text) {
  std::unordered_map<std::string, std::size_t> decl_line;
  return parse_declarations(text, decl_line);
}

Ontology parse_schema(std::string_view text) {
  std::unordered_map<std::string, std::size_t> decl_line;
  Ontology o = parse_declarations(text, decl_line);
  auto violations = validate_ontology(o);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::size_t line = 0;
    if (auto it = decl_line.find(v.definition); it != decl_line.end()) line = it->second;
    throw Error(error_code_for(v.kind), v.to_string(), line);
  }
  return o;
}

std::string write_schema(const Ontology& o) {
  std::ostringstream out;
  auto join = [](const std::vector<std::string>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
    return s;
  };
  for (const auto& c : o.classes) {
    out << "class " << c.name;
    if (c.superclass) out << " : " << *c.superclass;
    out << '\n';
  }
  for (const auto& p : o.object_properties) {
    out << "objprop " << p.name << " domain=" << join(p.domains) << " range=" << p.range;
    if (p.inverse) out << " inverse=" << *p.inverse;
    out << '\n';
  }
  for (const auto& p : o.datatype_properties) {
    out << "dataprop " << p.name << " domain=" << join(p.domains) << " range=" << to_string(p.range)
        << '\n';
  }
  return out.str();
}

std::vector<Quad> reify(const Ontology& o) {
  if (auto violations = validate_ontology(o); !violations.empty()) {
    throw Error(ErrorCode::InvalidOntology, violations.front().to_string());
  }
  const Term graph = Term::iri(std::string(vocab::kSchemaGraph));
  const Term type = Term::iri(std::string(vocab::kRdfType));
  const Term label = Term::iri(std::string(vocab::kRdfsLabel));
  const Term domain = Term::iri(std::string(vocab::kRdfsDomain));
  const Term range = Term::iri(std::string(vocab::kRdfsRange));
  auto m = [](const std::string& name) { return Term::iri(vocab::malont(name)); };

  std::vector<Quad> out;
  auto emit = [&](const Term& s, const Term& p, Term obj) { out.push_back(Quad{s, p, std::move(obj), graph}); };

  for (const auto& c : o.classes) {
    const Term s = m(c.name);
    emit(s, type, Term::iri(std::string(vocab::kOwlClass)));
    emit(s, label, Term::literal(c.label));
    if (c.superclass) emit(s, Term::iri(std::string(vocab::kRdfsSubClassOf)), m(*c.superclass));
  }
  for (const auto& p : o.object_properties) {
    const Term s = m(p.name);
    emit(s, type, Term::iri(std::string(vocab::kOwlObjectProperty)));
    emit(s, label, Term::literal(p.label));
    for (const auto& d : p.domains) emit(s, domain, m(d));
    emit(s, range, m(p.range));
    if (p.inverse) emit(s, Term::iri(std::string(vocab::kOwlInverseOf)), m(*p.inverse));
  }
  for (const auto& p : o.datatype_properties) {
    const Term s = m(p.name);
    emit(s, type, Term::iri(std::string(vocab::kOwlDatatypeProperty)));
    emit(s, label, Term::literal(p.label));
    for (const auto& d : p.domains) emit(s, domain, m(d));
    emit(s, range, Term::iri(std::string(datatype_iri(p.range))));
  }
  return out;
}

Ontology ontology_from_quads(const std::vector<Quad>& quads) {
  struct Facts {
    std::set<std::string> types;
    std::string label;
    std::vector<std::string> super, domains, ranges, inverses;
  };
  std::map<std::string, Facts> by_name;

  auto local = [](const Term& t) -> std::optional<std::string> {
    if (!t.is_iri() || !t.iri_text().starts_with(vocab::kMalont)) return std::nullopt;
    return t.iri_text().substr(vocab::kMalont.size());
  };

  for (const auto& q : quads) {
    if (!q.graph.is_iri() || q.graph.iri_text() != vocab::kSchemaGraph) continue;
    auto name = local(q.subject);
    if (!name) continue;
    Facts& f = by_name[*name];
    const std::string& p = q.predicate.iri_text();
    if (p == vocab::kRdfType && q.object.is_iri()) {
      f.types.insert(q.object.iri_text());
    } else if (p == vocab::kRdfsLabel && q.object.is_literal()) {
      f.label = q.object.lexical();
    } else if (q.object.is_iri()) {
      auto obj = local(q.object);
      if (p == vocab::kRdfsRange) {
        f.ranges.push_back(obj ? *obj : q.object.iri_text());
      } else if (obj) {
        if (p == vocab::kRdfsSubClassOf) f.super.push_back(*obj);
        else if (p == vocab::kRdfsDomain) f.domains.push_back(*obj);
        else if (p == vocab::kOwlInverseOf) f.inverses.push_back(*obj);
      }
    }
  }

  Ontology o;
  for (auto& [name, f] : by_name) {
    std::string label = f.label.empty() ? name : f.label;
    std::sort(f.domains.begin(), f.domains.end());
    if (f.types.contains(std::string(vocab::kOwlClass))) {
      std::optional<std::string> super;
      if (!f.super.empty()) super = f.super.front();
      o.classes.push_back(ClassDef{name, super, label});
    } else if (f.types.contains(std::string(vocab::kOwlObjectProperty))) {
      std::optional<std::string> inverse;
      if (!f.inverses.empty()) inverse = f.inverses.front();
      o.object_properties.push_back(ObjectPropertyDef{
          name, f.domains, f.ranges.empty() ? std::string{} : f.ranges.front(), inverse, label});
    } else if (f.types.contains(std::string(vocab::kOwlDatatypeProperty))) {
      DatatypeRange range = DatatypeRange::String;
      if (!f.ranges.empty() && f.ranges.front() == vocab::kXsdInteger) range = DatatypeRange::Integer;
      o.datatype_properties.push_back(DatatypePropertyDef{name, f.domains, range, label});
    }
  }
  return o;
}

}  // namespace malont
