#include "malont/nquads.hpp"

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Syntax, why + " (column " + std::to_string(pos_ + 1) + ")", line_no_);
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  std::string iri() {
    if (peek() != '<') {
      if (s_.substr(pos_, 2) == "_:") {
        throw Error(ErrorCode::UnsupportedFeature, "blank node", line_no_);
      }
      fail("expected '<'");
    }
    const std::size_t start = ++pos_;
    while (!at_end() && s_[pos_] != '>') {
      const char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '<' || c == '\n' || c == '\r') fail("invalid character in IRI");
      ++pos_;
    }
    if (at_end()) fail("unterminated IRI");
    std::string out(s_.substr(start, pos_ - start));
    ++pos_;
    if (out.empty()) fail("empty IRI");
    return out;
  }

  Term term() {
    if (peek() != '"') return Term::iri(iri());
    ++pos_;
    std::string lexical;
    while (true) {
      if (at_end()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        switch (s_[pos_++]) {
          case '\\': lexical += '\\'; break;
          case '"': lexical += '"'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 't': lexical += '\t'; break;
          default: fail("unsupported escape sequence");
        }
        continue;
      }
      lexical += c;
    }
    if (peek() == '@') throw Error(ErrorCode::UnsupportedFeature, "language-tagged literal", line_no_);
    std::string datatype;
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      datatype = iri();
    }
    return Term::literal(std::move(lexical), std::move(datatype));
  }

  // Whitespace, then '.', then nothing.
  void expect_terminator() {
    const std::size_t before = pos_;
    skip_space();
    if (peek() != '.' || pos_ == before) fail("missing terminal ' .'");
    ++pos_;
    skip_space();
    if (!at_end()) fail("trailing characters after ' .'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
};

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_no);
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

}  // namespace

Term parse_term(std::string_view text) {
  LineReader r(text, 0);
  Term t = r.term();
  if (!r.at_end()) r.fail("trailing characters after term");
  return t;
}

std::string export_nquads(const Store& store) {
  const auto& dict = store.dictionary();
  std::string out;
  for (QuadIndex i : store.sorted_indices()) {
    const QuadIds& q = store.ids(i);
    out += dict.canonical(q.s);
    out += ' ';
    out += dict.canonical(q.p);
    out += ' ';
    out += dict.canonical(q.o);
    out += ' ';
    out += dict.canonical(q.g);
    out += " .\n";
  }
  return out;
}

std::vector<Quad> import_nquads(std::string_view text) {
  std::vector<Quad> out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    LineReader r(line, line_no);
    r.skip_space();
    if (r.at_end() || r.peek() == '#') return;
    Term s = Term::iri(r.iri());
    r.skip_space();
    Term p = Term::iri(r.iri());
    r.skip_space();
    Term o = r.term();
    r.skip_space();
    if (r.peek() != '<') r.fail("expected graph IRI");
    Term g = Term::iri(r.iri());
    r.expect_terminator();
    Quad q{std::move(s), std::move(p), std::move(o), std::move(g)};
    try {
      validate_quad(q);
    } catch (const Error& e) {
      throw Error(ErrorCode::Syntax, e.what(), line_no);
    }
    out.push_back(std::move(q));
  });
  return out;
}

std::size_t load_nquads(Store& store, std::string_view text) {
  std::size_t added = 0;
  for (const Quad& q : import_nquads(text)) {
    const std::string& g = q.graph.iri_text();
    Provenance prov;
    if (g == vocab::kSchemaGraph) {
      prov = Provenance::schema();
    } else if (g.starts_with(vocab::kDocGraphPrefix)) {
      prov = Provenance::annotation(g.substr(vocab::kDocGraphPrefix.size()), {});
    } else {
      prov = Provenance::inference(std::string(kImportedRule), {});
    }
    if (store.insert(q, std::move(prov))) ++added;
  }
  return added;
}

std::string export_provenance_tsv(const Store& store) {
  std::string out = "quad_key\tkind\tdoc_id\tannotation_ids\trule_id\tpremise_keys\n";
  for (QuadIndex i : store.sorted_indices()) {
    const std::string key = quad_key(store.quad(i));
    for (const Provenance& p : store.provenance(i)) {
      out += key;
      out += '\t';
      out += to_string(p.kind);
      out += '\t' + p.doc_id + '\t' + join(p.annotation_ids) + '\t' + p.rule_id + '\t' + join(p.premise_keys) +
             '\n';
    }
  }
  return out;
}

}  // namespace malont
