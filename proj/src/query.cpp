#include "malont/query.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "malont/error.hpp"
#include "malont/vocab.hpp"

namespace malont {

const std::map<std::string, std::string, std::less<>>& prefix_table() {
  static const std::map<std::string, std::string, std::less<>> table{
      {"rdf", std::string(vocab::kRdf)},       {"rdfs", std::string(vocab::kRdfs)},
      {"owl", std::string(vocab::kOwl)},       {"xsd", std::string(vocab::kXsd)},
      {"malont", std::string(vocab::kMalont)}, {"kg", std::string(vocab::kKg)},
  };
  return table;
}

namespace {

enum class Tok { Word, Var, PName, Literal, DataType, LBrace, RBrace, Dot, End };

struct Token {
  Tok kind;
  std::string text;    // word, variable name, local part, literal value
  std::string prefix;  // PName only
  std::size_t line = 1, column = 1;
};

constexpr std::array<std::string_view, 24> kUnsupportedKeywords{
    "FILTER", "OPTIONAL", "UNION",  "MINUS",  "BIND",      "VALUES", "GRAPH",    "SERVICE",
    "PREFIX", "BASE",     "ORDER",  "GROUP",  "HAVING",    "LIMIT",  "OFFSET",   "CONSTRUCT",
    "ASK",    "DESCRIBE", "REDUCED", "FROM",  "NOT",       "EXISTS", "INSERT",   "DELETE"};

bool is_name_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9'); }
bool is_local_char(char c) { return is_name_char(c) || c == '-'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (c == '{' || c == '}' || c == '.') {
        t.kind = c == '{' ? Tok::LBrace : c == '}' ? Tok::RBrace : Tok::Dot;
        advance();
      } else if (c == '?') {
        advance();
        if (pos_ >= text_.size() || !is_name_start(text_[pos_])) fail("expected variable name after '?'");
        t.kind = Tok::Var;
        t.text = read_while(is_name_char);
      } else if (c == '"') {
        t.kind = Tok::Literal;
        t.text = read_string();
      } else if (c == '^') {
        if (text_.substr(pos_, 2) != "^^") fail("expected '^^'");
        advance();
        advance();
        t.kind = Tok::DataType;
      } else if (is_name_start(c) || c == ':') {
        std::string word = read_while(is_name_char);
        if (pos_ < text_.size() && text_[pos_] == ':') {
          advance();
          t.kind = Tok::PName;
          t.prefix = std::move(word);
          t.text = read_local();
          if (t.text.empty()) fail("empty local name after '" + t.prefix + ":'");
        } else {
          t.kind = Tok::Word;
          t.text = std::move(word);
        }
      } else if (c == '*') {
        throw Error(ErrorCode::UnsupportedFeature, "SELECT * " + where(t.line, t.column));
      } else if (c == '<') {
        throw Error(ErrorCode::UnsupportedFeature, "IRI reference " + where(t.line, t.column));
      } else if (c == '@') {
        throw Error(ErrorCode::UnsupportedFeature, "language tag " + where(t.line, t.column));
      } else if (c == '(' ) {
        throw Error(ErrorCode::UnsupportedFeature, "expression " + where(t.line, t.column));
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

  static std::string where(std::size_t line, std::size_t column) {
    return "at " + std::to_string(line) + ":" + std::to_string(column);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Syntax, why + " " + where(line_, column_), line_);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  template <typename Pred>
  std::string read_while(Pred pred) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  // Local part: name characters and '-', with '.' allowed only between them.
  std::string read_local() {
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (is_local_char(c)) {
        out += c;
        advance();
      } else if (c == '.' && !out.empty() && pos_ + 1 < text_.size() && is_local_char(text_[pos_ + 1])) {
        out += c;
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  std::string read_string() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string literal");
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\n' || c == '\r') fail("line break inside string literal");
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) fail("unterminated escape");
        switch (text_[pos_]) {
          case '\\': out += '\\'; break;
          case '"': out += '"'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          default: fail(std::string("unknown escape '\\") + text_[pos_] + "'");
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SelectQuery run() {
    SelectQuery q;
    expect_word("SELECT");
    if (peek().kind == Tok::Word && peek().text == "DISTINCT") {
      q.distinct = true;
      next();
    }
    while (peek().kind == Tok::Var) q.projected.push_back(next().text);
    if (q.projected.empty()) fail("expected at least one projected variable");
    expect_word("WHERE");
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      q.patterns.push_back(pattern());
      if (peek().kind == Tok::Dot) next();
    }
    next();
    if (peek().kind != Tok::End) fail("unexpected content after '}'");

    std::set<std::string> bound;
    for (const auto& p : q.patterns)
      for (const PatternNode* n : {&p.subject, &p.predicate, &p.object})
        if (auto* v = std::get_if<Variable>(n)) bound.insert(v->name);
    for (const auto& v : q.projected)
      if (!bound.contains(v)) q.warnings.push_back("?" + v + " is not bound by any pattern");
    return q;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& why) const {
    const Token& t = peek();
    throw Error(ErrorCode::Syntax, why + " " + Lexer::where(t.line, t.column), t.line);
  }

  void check_unsupported(const Token& t) const {
    if (t.kind != Tok::Word) return;
    std::string upper = t.text;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (auto kw : kUnsupportedKeywords) {
      if (upper == kw) {
        throw Error(ErrorCode::UnsupportedFeature, std::string(kw) + " " + Lexer::where(t.line, t.column), t.line);
      }
    }
  }

  void expect_word(std::string_view word) {
    check_unsupported(peek());
    if (peek().kind != Tok::Word || peek().text != word) fail("expected '" + std::string(word) + "'");
    next();
  }

  void expect(Tok kind, std::string_view what) {
    check_unsupported(peek());
    if (peek().kind != kind) fail("expected " + std::string(what));
    next();
  }

  Term resolve(const Token& t) const {
    const auto& table = prefix_table();
    auto it = table.find(t.prefix);
    if (it == table.end()) {
      throw Error(ErrorCode::UnknownPrefix, "'" + t.prefix + ":' " + Lexer::where(t.line, t.column), t.line);
    }
    return Term::iri(it->second + t.text);
  }

  PatternNode node(bool predicate_position) {
    check_unsupported(peek());
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var: return Variable{next().text};
      case Tok::PName: return resolve(next());
      case Tok::Word:
        if (predicate_position && t.text == "a") {
          next();
          return Term::iri(std::string(vocab::kRdfType));
        }
        fail("unexpected '" + t.text + "'");
      case Tok::Literal: {
        if (predicate_position) fail("literal in predicate position");
        std::string lexical = next().text;
        std::string datatype;
        if (peek().kind == Tok::DataType) {
          next();
          if (peek().kind != Tok::PName) fail("expected datatype prefixed name after '^^'");
          datatype = resolve(next()).iri_text();
        }
        return Term::literal(std::move(lexical), std::move(datatype));
      }
      default:
        fail(predicate_position ? "expected predicate" : "expected term or variable");
    }
  }

  TriplePattern pattern() {
    PatternNode s = node(false);
    PatternNode p = node(true);
    PatternNode o = node(false);
    return TriplePattern{std::move(s), std::move(p), std::move(o)};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

constexpr TermId kUnbound = std::numeric_limits<TermId>::max();

// One position of a compiled pattern: a variable slot or a constant id.
struct Slot {
  bool is_var = false;
  std::size_t var = 0;
  TermId constant = 0;
};

struct CompiledPattern {
  std::array<Slot, 3> slots;  // s, p, o
};

class Evaluator {
 public:
  Evaluator(const Store& store, std::vector<CompiledPattern> patterns, std::size_t var_count,
            std::vector<std::optional<std::size_t>> projection)
      : store_(store),
        patterns_(std::move(patterns)),
        bindings_(var_count, kUnbound),
        used_(patterns_.size(), false),
        projection_(std::move(projection)) {}

  std::vector<std::vector<TermId>> run() {
    search(0);
    return std::move(rows_);
  }

 private:
  TermId value(const Slot& s) const { return s.is_var ? bindings_[s.var] : s.constant; }

  // Candidate quads for a pattern under the current bindings; `all` is set
  // when nothing narrows the scan.
  std::span<const QuadIndex> candidates(const CompiledPattern& cp, bool& all) const {
    const TermId s = value(cp.slots[0]), p = value(cp.slots[1]), o = value(cp.slots[2]);
    std::optional<std::span<const QuadIndex>> best;
    auto consider = [&](std::span<const QuadIndex> list) {
      if (!best || list.size() < best->size()) best = list;
    };
    if (s != kUnbound) consider(store_.by_subject(s));
    if (p != kUnbound && o != kUnbound) consider(store_.by_predicate_object(p, o));
    if (o != kUnbound) consider(store_.by_object(o));
    if (p != kUnbound) consider(store_.by_predicate(p));
    all = !best.has_value();
    return best.value_or(std::span<const QuadIndex>{});
  }

  void search(std::size_t depth) {
    if (depth == patterns_.size()) {
      emit();
      return;
    }
    // Most selective remaining pattern first; ties keep written order.
    std::size_t pick = patterns_.size();
    std::size_t pick_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (used_[i]) continue;
      bool all = false;
      const std::size_t n = candidates(patterns_[i], all).size();
      const std::size_t size = all ? store_.size() : n;
      if (size < pick_size) {
        pick = i;
        pick_size = size;
      }
    }
    used_[pick] = true;
    const CompiledPattern& cp = patterns_[pick];
    bool all = false;
    auto list = candidates(cp, all);
    if (all) {
      for (QuadIndex i = 0; i < store_.size(); ++i) try_quad(cp, i, depth);
    } else {
      for (QuadIndex i : list) try_quad(cp, i, depth);
    }
    used_[pick] = false;
  }

  void try_quad(const CompiledPattern& cp, QuadIndex qi, std::size_t depth) {
    const QuadIds& q = store_.ids(qi);
    if (store_.triple_representative(q.s, q.p, q.o) != qi) return;
    const std::array<TermId, 3> values{q.s, q.p, q.o};
    std::array<std::size_t, 3> newly{};
    std::size_t newly_count = 0;
    bool ok = true;
    for (std::size_t k = 0; k < 3 && ok; ++k) {
      const Slot& slot = cp.slots[k];
      if (!slot.is_var) {
        ok = slot.constant == values[k];
      } else if (bindings_[slot.var] == kUnbound) {
        bindings_[slot.var] = values[k];
        newly[newly_count++] = slot.var;
      } else {
        ok = bindings_[slot.var] == values[k];
      }
    }
    if (ok) search(depth + 1);
    for (std::size_t k = 0; k < newly_count; ++k) bindings_[newly[k]] = kUnbound;
  }

  void emit() {
    std::vector<TermId> row;
    row.reserve(projection_.size());
    for (const auto& p : projection_) row.push_back(p ? bindings_[*p] : kUnbound);
    rows_.push_back(std::move(row));
  }

  const Store& store_;
  std::vector<CompiledPattern> patterns_;
  std::vector<TermId> bindings_;
  std::vector<bool> used_;
  std::vector<std::optional<std::size_t>> projection_;
  std::vector<std::vector<TermId>> rows_;
};

}  // namespace

SelectQuery parse_query(std::string_view text) { return Parser(Lexer(text).run()).run(); }

ResultTable evaluate(const Store& store, const SelectQuery& query) {
  ResultTable table;
  for (const auto& v : query.projected) table.header.push_back(v);

  std::map<std::string, std::size_t> slots;
  std::vector<CompiledPattern> compiled;
  bool satisfiable = true;
  for (const auto& tp : query.patterns) {
    CompiledPattern cp;
    std::size_t k = 0;
    for (const PatternNode* n : {&tp.subject, &tp.predicate, &tp.object}) {
      Slot& slot = cp.slots[k++];
      if (const auto* v = std::get_if<Variable>(n)) {
        slot.is_var = true;
        slot.var = slots.try_emplace(v->name, slots.size()).first->second;
      } else if (auto id = store.dictionary().find(std::get<Term>(*n))) {
        slot.constant = *id;
      } else {
        satisfiable = false;
      }
    }
    compiled.push_back(cp);
  }
  if (!satisfiable) return table;

  std::vector<std::optional<std::size_t>> projection;
  for (const auto& v : query.projected) {
    auto it = slots.find(v);
    projection.push_back(it == slots.end() ? std::nullopt : std::optional<std::size_t>(it->second));
  }

  auto rows = Evaluator(store, std::move(compiled), slots.size(), std::move(projection)).run();

  const auto& dict = store.dictionary();
  static const std::string kEmpty;
  auto cell = [&](TermId id) -> const std::string& { return id == kUnbound ? kEmpty : dict.canonical(id); };
  auto less = [&](const std::vector<TermId>& a, const std::vector<TermId>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      if (int c = cell(a[i]).compare(cell(b[i])); c != 0) return c < 0;
    }
    return false;
  };
  std::sort(rows.begin(), rows.end(), less);
  if (query.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  table.rows.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::optional<Term>> out;
    out.reserve(r.size());
    for (TermId id : r) out.push_back(id == kUnbound ? std::nullopt : std::optional<Term>(dict.term(id)));
    table.rows.push_back(std::move(out));
  }
  return table;
}

std::string serialize_results(const ResultTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "\t?" : "?") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      if (row[i]) out += canonical_term(*row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace malont
