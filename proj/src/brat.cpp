#include "malont/brat.hpp"

#include <charconv>
#include <set>
#include <unordered_map>

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

const EntityAnnotation* AnnotationDoc::find_entity(std::string_view id) const {
  for (const auto& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

std::optional<std::size_t> parse_offset(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Byte offset of every code point boundary, including the end.
std::vector<std::size_t> code_point_offsets(std::string_view text) {
  std::vector<std::size_t> out;
  out.reserve(text.size() + 1);
  for (std::size_t i = 0; i < text.size(); ++i)
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) out.push_back(i);
  out.push_back(text.size());
  return out;
}

}  // namespace

AnnotationDoc parse_ann(std::string_view ann_text, std::optional<std::string_view> doc_text,
                        std::string_view doc_id) {
  if (doc_id.empty()) throw Error(ErrorCode::Syntax, "empty doc-id");
  AnnotationDoc doc;
  doc.doc_id = std::string(doc_id);

  std::vector<std::size_t> boundaries;
  if (doc_text) boundaries = code_point_offsets(*doc_text);

  std::set<std::string> ids;
  std::unordered_map<std::string, std::size_t> reference_lines;  // relation/attribute id -> line
  std::size_t line_no = 0;
  auto syntax = [&](const std::string& why) { return Error(ErrorCode::Syntax, why, line_no); };
  auto claim_id = [&](std::string_view id) {
    if (id.size() < 2) throw syntax("malformed id '" + std::string(id) + "'");
    if (!ids.insert(std::string(id)).second) throw syntax("duplicate id '" + std::string(id) + "'");
  };

  for (std::string_view raw : split(ann_text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    const char kind = line.front();
    if (kind == 'E' || kind == 'M' || kind == 'N' || kind == '#' || kind == '*') {
      doc.warnings.push_back("line " + std::to_string(line_no) + ": skipped '" + std::string(1, kind) +
                             "' record");
      continue;
    }
    auto fields = split(line, '\t');

    if (kind == 'T') {
      if (fields.size() != 3) throw syntax("entity line needs 3 tab-separated fields");
      EntityAnnotation e;
      e.id = std::string(fields[0]);
      claim_id(e.id);
      const std::string_view head = fields[1];
      const std::size_t space = head.find(' ');
      if (space == std::string_view::npos || space == 0) throw syntax("entity line missing type or offsets");
      e.type = std::string(head.substr(0, space));
      for (std::string_view fragment : split(head.substr(space + 1), ';')) {
        auto parts = split(fragment, ' ');
        if (parts.size() != 2) throw syntax("span must be '<start> <end>'");
        auto start = parse_offset(parts[0]);
        auto end = parse_offset(parts[1]);
        if (!start || !end) throw syntax("non-numeric offset in '" + std::string(fragment) + "'");
        if (*start >= *end) throw syntax("span start must be below end");
        if (!e.spans.empty() && *start < e.spans.back().end) throw syntax("spans overlap or are not ascending");
        e.spans.push_back(Span{*start, *end});
      }
      e.surface = std::string(fields[2]);

      if (doc_text) {
        const std::size_t length = boundaries.size() - 1;
        if (e.spans.back().end > length) {
          doc.warnings.push_back("line " + std::to_string(line_no) + ": span of " + e.id +
                                 " exceeds document length");
        } else {
          std::string from_doc;
          for (std::size_t i = 0; i < e.spans.size(); ++i) {
            if (i) from_doc += ' ';
            const std::size_t b = boundaries[e.spans[i].start];
            from_doc += doc_text->substr(b, boundaries[e.spans[i].end] - b);
          }
          if (from_doc != e.surface) {
            doc.warnings.push_back("line " + std::to_string(line_no) + ": surface of " + e.id +
                                   " differs from document text");
            e.surface = std::move(from_doc);
          }
        }
      }
      if (e.surface.empty()) throw syntax("empty entity surface");
      doc.entities.push_back(std::move(e));
    } else if (kind == 'R') {
      if (fields.size() == 3 && fields[2].empty()) fields.pop_back();
      if (fields.size() != 2) throw syntax("relation line needs 2 tab-separated fields");
      auto parts = split(fields[1], ' ');
      if (parts.size() != 3 || parts[0].empty()) throw syntax("relation must be '<Type> Arg1:<id> Arg2:<id>'");
      if (!parts[1].starts_with("Arg1:") || !parts[2].starts_with("Arg2:")) {
        throw syntax("relation arguments must be Arg1:<id> Arg2:<id>");
      }
      RelationAnnotation r;
      r.id = std::string(fields[0]);
      claim_id(r.id);
      r.type = std::string(parts[0]);
      r.arg1 = std::string(parts[1].substr(5));
      r.arg2 = std::string(parts[2].substr(5));
      reference_lines[r.id] = line_no;
      doc.relations.push_back(std::move(r));
    } else if (kind == 'A') {
      if (fields.size() != 2) throw syntax("attribute line needs 2 tab-separated fields");
      auto parts = split(fields[1], ' ');
      if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
        throw syntax("attribute must be '<Type> <id>[ <value>]'");
      }
      AttributeAnnotation a;
      a.id = std::string(fields[0]);
      claim_id(a.id);
      a.type = std::string(parts[0]);
      a.target = std::string(parts[1]);
      if (parts.size() == 3) a.value = std::string(parts[2]);
      reference_lines[a.id] = line_no;
      doc.attributes.push_back(std::move(a));
    } else {
      doc.warnings.push_back("line " + std::to_string(line_no) + ": skipped unknown record");
    }
  }

  auto check_ref = [&](const std::string& owner, const std::string& ref) {
    if (doc.find_entity(ref) == nullptr) {
      throw Error(ErrorCode::DanglingReference, owner + " references undefined entity '" + ref + "'",
                  reference_lines[owner]);
    }
  };
  for (const auto& r : doc.relations) {
    check_ref(r.id, r.arg1);
    check_ref(r.id, r.arg2);
  }
  for (const auto& a : doc.attributes) check_ref(a.id, a.target);
  return doc;
}

std::string MappingConfig::entity_class(const std::string& type) const {
  auto it = entity_map.find(type);
  return it == entity_map.end() ? type : it->second;
}

std::string MappingConfig::relation_property(const std::string& type) const {
  auto it = relation_map.find(type);
  return it == relation_map.end() ? type : it->second;
}

std::string MappingConfig::attribute_property(const std::string& type) const {
  auto it = attribute_map.find(type);
  return it == attribute_map.end() ? type : it->second;
}

MappingConfig parse_mapping(std::string_view text, const Ontology& o) {
  MappingConfig m;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> tokens;
    for (std::string_view tok : split(line, ' ')) {
      while (!tok.empty() && (tok.back() == '\r' || tok.back() == '\t')) tok.remove_suffix(1);
      while (!tok.empty() && tok.front() == '\t') tok.remove_prefix(1);
      if (!tok.empty()) tokens.emplace_back(tok);
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 4 || tokens[2] != "->") {
      throw Error(ErrorCode::Syntax, "expected '<kind> <AnnType> -> <Name>'", line_no);
    }
    const std::string& kind = tokens[0];
    const std::string& target = tokens[3];
    std::map<std::string, std::string>* dest = nullptr;
    bool known = false;
    if (kind == "entity") {
      dest = &m.entity_map;
      known = o.find_class(target) != nullptr;
    } else if (kind == "relation") {
      dest = &m.relation_map;
      known = o.find_object_property(target) != nullptr;
    } else if (kind == "attribute") {
      dest = &m.attribute_map;
      known = o.find_datatype_property(target) != nullptr;
    } else {
      throw Error(ErrorCode::Syntax, "unknown mapping kind '" + kind + "'", line_no);
    }
    if (!known) {
      throw Error(ErrorCode::UnknownName, "'" + target + "' is not a " + kind + " target in the ontology",
                  line_no);
    }
    if (!dest->emplace(tokens[1], target).second) {
      throw Error(ErrorCode::Syntax, "annotation type '" + tokens[1] + "' mapped twice", line_no);
    }
  }
  return m;
}

Term mint_instance_iri(std::string_view class_name, std::string_view surface) {
  std::string slug;
  bool pending_dash = false;
  for (char raw : surface) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      if (pending_dash && !slug.empty()) slug += '-';
      pending_dash = false;
      slug += c;
    } else {
      pending_dash = true;
    }
  }
  if (slug.empty()) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    std::size_t n = surface.size();
    do {
      hex.insert(hex.begin(), kHex[n % 16]);
      n /= 16;
    } while (n != 0);
    slug = "x" + hex;
  }
  return Term::iri(vocab::kg(std::string(class_name) + "--" + slug));
}

EmitResult emit_triples(const AnnotationDoc& doc, const MappingConfig& mapping, const Ontology& o) {
  EmitResult out;
  const Term graph = Term::iri(vocab::doc_graph(doc.doc_id));
  const Term type = Term::iri(std::string(vocab::kRdfType));
  const Term label = Term::iri(std::string(vocab::kRdfsLabel));
  const Term individual = Term::iri(std::string(vocab::kOwlNamedIndividual));

  std::unordered_map<std::string, Term> iris;
  for (const auto& e : doc.entities) {
    const std::string cls = mapping.entity_class(e.type);
    if (o.find_class(cls) == nullptr) {
      ++out.skipped_entities;
      out.warnings.push_back(doc.doc_id + ": entity " + e.id + " has unknown class '" + cls + "'");
      continue;
    }
    Term iri = mint_instance_iri(cls, e.surface);
    auto prov = Provenance::annotation(doc.doc_id, {e.id});
    out.quads.emplace_back(make_quad(iri, type, Term::iri(vocab::malont(cls)), graph), prov);
    out.quads.emplace_back(make_quad(iri, type, individual, graph), prov);
    out.quads.emplace_back(make_quad(iri, label, Term::literal(e.surface), graph), prov);
    iris.emplace(e.id, std::move(iri));
  }

  for (const auto& r : doc.relations) {
    const std::string prop = mapping.relation_property(r.type);
    auto a = iris.find(r.arg1);
    auto b = iris.find(r.arg2);
    if (o.find_object_property(prop) == nullptr || a == iris.end() || b == iris.end()) {
      ++out.skipped_relations;
      out.warnings.push_back(doc.doc_id + ": relation " + r.id + " skipped (unknown property '" + prop +
                             "' or skipped argument)");
      continue;
    }
    out.quads.emplace_back(make_quad(a->second, Term::iri(vocab::malont(prop)), b->second, graph),
                           Provenance::annotation(doc.doc_id, {r.id, r.arg1, r.arg2}));
  }

  for (const auto& attr : doc.attributes) {
    const std::string prop = mapping.attribute_property(attr.type);
    const DatatypePropertyDef* def = o.find_datatype_property(prop);
    auto target = iris.find(attr.target);
    if (!attr.value) {
      ++out.skipped_attributes;
      out.warnings.push_back(doc.doc_id + ": flag attribute " + attr.id + " carries no value");
      continue;
    }
    if (def == nullptr || target == iris.end()) {
      ++out.skipped_attributes;
      out.warnings.push_back(doc.doc_id + ": attribute " + attr.id + " skipped (unknown property '" + prop +
                             "' or skipped target)");
      continue;
    }
    out.quads.emplace_back(
        make_quad(target->second, Term::iri(vocab::malont(prop)),
                  Term::literal(*attr.value, std::string(datatype_iri(def->range))), graph),
        Provenance::annotation(doc.doc_id, {attr.id, attr.target}));
  }
  return out;
}

}  // namespace malont
