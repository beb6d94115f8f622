#include "krl/frontend.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "krl/errors.hpp"

namespace krl {

namespace {

enum class Shape { names, single, order_pair, binary, pair, mapping, functor };

struct SectionRule {
  std::string_view key;
  Shape shape;
};

// Canonical section order per kind.
const std::vector<SectionRule>& rules_for(DocKind k) {
  static const std::vector<SectionRule> lattice = {
      {"powerset", Shape::names}, {"elements", Shape::names}, {"order", Shape::order_pair}};
  static const std::vector<SectionRule> ia = {
      {"functor", Shape::functor}, {"elements", Shape::names}, {"order", Shape::order_pair},
      {"imp", Shape::binary},      {"separator", Shape::names}, {"k", Shape::single},
      {"s", Shape::single}};
  static const std::vector<SectionRule> aks = {
      {"functor", Shape::functor}, {"pi", Shape::names}, {"perp", Shape::pair},   {"push", Shape::binary},
      {"app", Shape::binary},      {"qp", Shape::names}, {"K", Shape::single},    {"S", Shape::single}};
  static const std::vector<SectionRule> interior = {{"map", Shape::mapping}};
  static const std::vector<SectionRule> morphism = {
      {"map", Shape::mapping}, {"hint-h", Shape::mapping}, {"hint-t", Shape::single}, {"hint-r", Shape::single}};
  switch (k) {
    case DocKind::lattice: return lattice;
    case DocKind::ia: return ia;
    case DocKind::aks: return aks;
    case DocKind::interior: return interior;
    case DocKind::morphism: return morphism;
  }
  return lattice;
}

const SectionRule* find_rule(DocKind k, std::string_view key) {
  for (const auto& r : rules_for(k))
    if (r.key == key) return &r;
  return nullptr;
}

// ------------------------------------------------------------------ lexer

enum class Tok { word, quoted, arrow, leq, semi };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

bool word_char(char c) {
  return !(c == ' ' || c == '\t' || c == '\r' || c == ';' || c == '"' || c == '{' || c == '}' || c == '#');
}

std::vector<Token> lex_line(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == ';') {
      out.push_back({Tok::semi, ";", col});
      ++i;
    } else if (c == '"') {
      auto j = line.find('"', i + 1);
      if (j == std::string_view::npos) throw ParseError(lineno, col, "unterminated string");
      out.push_back({Tok::quoted, std::string(line.substr(i + 1, j - i - 1)), col});
      i = j + 1;
    } else if (c == '{') {
      auto j = line.find('}', i);
      if (j == std::string_view::npos) throw ParseError(lineno, col, "expected '}'");
      std::string inner(line.substr(i + 1, j - i - 1));
      std::string norm = "{";
      std::size_t k = 0;
      while (k < inner.size()) {
        while (k < inner.size() && (inner[k] == ' ' || inner[k] == '\t' || inner[k] == ',')) ++k;
        std::size_t e = k;
        while (e < inner.size() && inner[e] != ' ' && inner[e] != '\t' && inner[e] != ',') ++e;
        if (e > k) {
          if (norm.size() > 1) norm += ' ';
          norm += inner.substr(k, e - k);
        }
        k = e;
      }
      out.push_back({Tok::word, norm + "}", col});
      i = j + 1;
    } else if (c == '}') {
      throw ParseError(lineno, col, "unexpected '}'");
    } else if (line.substr(i, 2) == "->") {
      out.push_back({Tok::arrow, "->", col});
      i += 2;
    } else if (line.substr(i, 2) == "<=") {
      out.push_back({Tok::leq, "<=", col});
      i += 2;
    } else {
      std::size_t j = i;
      while (j < line.size() && word_char(line[j]) && line.substr(j, 2) != "->" && line.substr(j, 2) != "<=") ++j;
      out.push_back({Tok::word, std::string(line.substr(i, j - i)), col});
      i = j;
    }
  }
  return out;
}

bool is_name(const Token& t) { return t.kind == Tok::word || t.kind == Tok::quoted; }

std::string shape_hint(Shape s) {
  switch (s) {
    case Shape::names: return "element names";
    case Shape::single: return "one element name";
    case Shape::order_pair: return "'a <= b'";
    case Shape::binary: return "'a b -> c'";
    case Shape::pair: return "'a b'";
    case Shape::mapping: return "'a -> b'";
    case Shape::functor: return "'A \"name\"' or 'K \"name\"'";
  }
  return {};
}

// Checks one row against its shape and keeps only the names.
Row shape_row(const std::vector<Token>& toks, Shape s, int lineno) {
  Row row;
  row.pos = {lineno, toks.front().column};
  auto fail = [&](const Token& t) {
    throw ParseError(lineno, t.column, fmt::format("unexpected '{}', expected {}", t.text, shape_hint(s)));
  };
  auto short_row = [&]() {
    throw ParseError(lineno, toks.back().column, fmt::format("incomplete row, expected {}", shape_hint(s)));
  };
  auto expect = [&](std::initializer_list<bool> name_slots) {
    std::size_t k = 0;
    for (bool is_name_slot : name_slots) {
      if (k >= toks.size()) short_row();
      if (is_name_slot) {
        if (!is_name(toks[k])) fail(toks[k]);
        row.tokens.push_back(toks[k].text);
      }
      ++k;
    }
    if (k < toks.size()) fail(toks[k]);
  };
  switch (s) {
    case Shape::names:
      for (const auto& t : toks) {
        if (!is_name(t)) fail(t);
        row.tokens.push_back(t.text);
      }
      break;
    case Shape::single: expect({true}); break;
    case Shape::order_pair:
      expect({true, false, true});
      if (toks[1].kind != Tok::leq) fail(toks[1]);
      break;
    case Shape::binary:
      expect({true, true, false, true});
      if (toks[2].kind != Tok::arrow) fail(toks[2]);
      break;
    case Shape::pair: expect({true, true}); break;
    case Shape::mapping:
      expect({true, false, true});
      if (toks[1].kind != Tok::arrow) fail(toks[1]);
      break;
    case Shape::functor:
      expect({true, true});
      if (row.tokens[0] != "A" && row.tokens[0] != "K") fail(toks[0]);
      break;
  }
  return row;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// ------------------------------------------------------- document checks

struct Names {
  std::map<std::string, std::size_t> rank;
  std::string what;

  void require(const Row& row, std::size_t k) const {
    if (!rank.count(row.tokens[k]))
      throw UnknownElement(
          fmt::format("{}:{}: unknown element '{}' in {}", row.pos.line, row.pos.column, row.tokens[k], what));
  }
  void require_all(const Section* s) const {
    if (!s) return;
    for (const auto& row : s->rows)
      for (std::size_t k = 0; k < row.tokens.size(); ++k) require(row, k);
  }
};

Names declare(const SpecDocument& d, const Section* s) {
  Names n;
  n.what = fmt::format("'{}'", d.name);
  if (!s) return n;
  for (const auto& row : s->rows)
    for (const auto& t : row.tokens)
      if (!n.rank.emplace(t, n.rank.size()).second)
        throw ParseError(row.pos.line, row.pos.column, fmt::format("duplicate element '{}'", t));
  return n;
}

void check_single(const Section* s, const Names& n) {
  if (s && s->rows.size() != 1)
    throw ParseError(s->pos.line, s->pos.column, fmt::format("section '{}' expects one element", s->key));
  n.require_all(s);
}

// Every pair of declared names has exactly one row in a binary table.
void check_table(const SpecDocument& d, const Section* s, const Names& n) {
  if (!s) return;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : s->rows) {
    for (std::size_t k = 0; k < 3; ++k) n.require(row, k);
    if (!seen.emplace(row.tokens[0], row.tokens[1]).second)
      throw ParseError(row.pos.line, row.pos.column,
                       fmt::format("duplicate {} entry for ({}, {})", s->key, row.tokens[0], row.tokens[1]));
  }
  std::vector<std::string> ordered(n.rank.size());
  for (const auto& [name, r] : n.rank) ordered[r] = name;
  for (const auto& a : ordered)
    for (const auto& b : ordered)
      if (!seen.count({a, b}))
        throw IncompleteTable(fmt::format("{} table of '{}' misses pair ({}, {})", s->key, d.name, a, b));
}

void check_mapping_unique(const Section* s) {
  if (!s) return;
  std::set<std::string> seen;
  for (const auto& row : s->rows)
    if (!seen.insert(row.tokens[0]).second)
      throw ParseError(row.pos.line, row.pos.column, fmt::format("duplicate {} entry for {}", s->key, row.tokens[0]));
}

void require_section(const SpecDocument& d, std::string_view key) {
  if (!d.section(key))
    throw ParseError(d.pos.line, d.pos.column, fmt::format("'{}' is missing section '{}'", d.name, key));
}

void forbid_others(const SpecDocument& d, std::string_view only) {
  for (const auto& s : d.sections)
    if (s.key != only)
      throw ParseError(s.pos.line, s.pos.column,
                       fmt::format("section '{}' cannot be combined with '{}'", s.key, only));
}

void check_document(const SpecDocument& d) {
  switch (d.kind) {
    case DocKind::lattice: {
      if (d.section("powerset")) {
        forbid_others(d, "powerset");
        declare(d, d.section("powerset"));
        return;
      }
      require_section(d, "elements");
      auto n = declare(d, d.section("elements"));
      if (n.rank.empty()) throw ParseError(d.pos.line, d.pos.column, "a lattice needs at least one element");
      n.require_all(d.section("order"));
      return;
    }
    case DocKind::ia: {
      if (auto* f = d.section("functor")) {
        forbid_others(d, "functor");
        if (f->rows.size() != 1 || f->rows[0].tokens[0] != "A")
          throw ParseError(f->pos.line, f->pos.column, "an ia functor section reads 'functor: A \"aks\"'");
        return;
      }
      for (auto key : {"elements", "imp", "separator"}) require_section(d, key);
      auto n = declare(d, d.section("elements"));
      if (n.rank.empty()) throw ParseError(d.pos.line, d.pos.column, "an algebra needs at least one element");
      n.require_all(d.section("order"));
      n.require_all(d.section("separator"));
      check_single(d.section("k"), n);
      check_single(d.section("s"), n);
      check_table(d, d.section("imp"), n);
      return;
    }
    case DocKind::aks: {
      if (auto* f = d.section("functor")) {
        forbid_others(d, "functor");
        if (f->rows.size() != 1 || f->rows[0].tokens[0] != "K")
          throw ParseError(f->pos.line, f->pos.column, "an aks functor section reads 'functor: K \"ia\"'");
        return;
      }
      for (auto key : {"pi", "push", "app", "qp", "K", "S"}) require_section(d, key);
      auto n = declare(d, d.section("pi"));
      if (n.rank.empty()) throw ParseError(d.pos.line, d.pos.column, "an AKS needs at least one element");
      n.require_all(d.section("perp"));
      n.require_all(d.section("qp"));
      check_single(d.section("K"), n);
      check_single(d.section("S"), n);
      check_table(d, d.section("push"), n);
      check_table(d, d.section("app"), n);
      return;
    }
    case DocKind::interior:
      require_section(d, "map");
      check_mapping_unique(d.section("map"));
      return;
    case DocKind::morphism:
      require_section(d, "map");
      check_mapping_unique(d.section("map"));
      check_mapping_unique(d.section("hint-h"));
      if (auto* t = d.section("hint-t"); t && t->rows.size() != 1)
        throw ParseError(t->pos.line, t->pos.column, "section 'hint-t' expects one element");
      if (auto* r = d.section("hint-r"); r && r->rows.size() != 1)
        throw ParseError(r->pos.line, r->pos.column, "section 'hint-r' expects one element");
      return;
  }
}

// ----------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SourceFile run() {
    std::size_t start = 0;
    int lineno = 0;
    while (start <= text_.size()) {
      auto end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++lineno;
      line(text_.substr(start, end - start), lineno);
      start = end + 1;
    }
    finish_document();
    return std::move(file_);
  }

 private:
  void line(std::string_view raw, int lineno) {
    auto toks = lex_line(raw, lineno);
    if (toks.empty()) return;
    const bool indented = raw[0] == ' ' || raw[0] == '\t';
    if (indented) {
      if (!section_) throw ParseError(lineno, toks[0].column, "continuation line outside a section");
      rows(toks, 0, lineno);
      return;
    }
    const auto& head = toks[0];
    if (head.kind == Tok::word && (head.text == "structure" || head.text == "interior" || head.text == "morphism")) {
      finish_document();
      header(toks, lineno);
      return;
    }
    if (head.kind == Tok::word && head.text == "include") {
      if (doc_) throw ParseError(lineno, head.column, "include must precede the first document");
      if (toks.size() != 2 || toks[1].kind != Tok::quoted)
        throw ParseError(lineno, head.column, "expected 'include \"path\"'");
      file_.includes.push_back(toks[1].text);
      return;
    }
    if (!doc_)
      throw ParseError(lineno, head.column, "expected 'structure', 'interior', 'morphism' or 'include'");
    // Section line: key ':' rows
    if (head.kind != Tok::word) throw ParseError(lineno, head.column, "expected a section name");
    std::string key = head.text;
    std::size_t first = 1;
    if (!key.empty() && key.back() == ':') {
      key.pop_back();
    } else {
      throw ParseError(lineno, head.column + static_cast<int>(key.size()), "expected ':' after section name");
    }
    const SectionRule* rule = find_rule(doc_->kind, key);
    if (!rule) {
      std::string expected;
      for (const auto& r : rules_for(doc_->kind)) expected += (expected.empty() ? "" : ", ") + std::string(r.key);
      throw ParseError(lineno, head.column,
                       fmt::format("unknown section '{}' for {}; expected one of {}", key,
                                   kind_name(doc_->kind), expected));
    }
    if (doc_->section(key)) throw ParseError(lineno, head.column, fmt::format("duplicate section '{}'", key));
    doc_->sections.push_back({key, {lineno, head.column}, {}});
    section_ = &doc_->sections.back();
    shape_ = rule->shape;
    rows(toks, first, lineno);
  }

  void rows(const std::vector<Token>& toks, std::size_t from, int lineno) {
    std::vector<Token> cur;
    auto flush = [&]() {
      if (cur.empty()) return;
      Row r = shape_row(cur, shape_, lineno);
      if (shape_ == Shape::names && !section_->rows.empty()) {
        auto& all = section_->rows.front().tokens;
        all.insert(all.end(), r.tokens.begin(), r.tokens.end());
      } else {
        section_->rows.push_back(std::move(r));
      }
      cur.clear();
    };
    for (std::size_t k = from; k < toks.size(); ++k) {
      if (toks[k].kind == Tok::semi) {
        flush();
      } else {
        cur.push_back(toks[k]);
      }
    }
    flush();
  }

  void header(const std::vector<Token>& t, int lineno) {
    SpecDocument d;
    d.pos = {lineno, t[0].column};
    auto bad = [&](const char* expected) { throw ParseError(lineno, t[0].column, std::string("expected ") + expected); };
    auto word = [&](std::size_t k, std::string_view w) { return k < t.size() && t[k].kind == Tok::word && t[k].text == w; };
    auto str = [&](std::size_t k) { return k < t.size() && t[k].kind == Tok::quoted; };
    if (t[0].text == "structure") {
      if (t.size() != 3 || t[1].kind != Tok::word || !str(2)) bad("'structure lattice|ia|aks \"name\"'");
      if (t[1].text == "lattice") d.kind = DocKind::lattice;
      else if (t[1].text == "ia") d.kind = DocKind::ia;
      else if (t[1].text == "aks") d.kind = DocKind::aks;
      else throw ParseError(lineno, t[1].column, fmt::format("unknown structure kind '{}', expected lattice, ia or aks", t[1].text));
      d.name = t[2].text;
    } else if (t[0].text == "interior") {
      d.kind = DocKind::interior;
      std::size_t k = 1;
      d.name = "iota";
      if (str(k)) d.name = t[k++].text;
      if (!word(k, "on") || !str(k + 1) || t.size() != k + 2) bad("'interior [\"name\"] on \"structure\"'");
      d.on = t[k + 1].text;
    } else {
      d.kind = DocKind::morphism;
      if (t.size() != 7 || !(word(1, "ia") || word(1, "aks")) || !str(2) || !word(3, "from") || !str(4) ||
          !word(5, "to") || !str(6))
        bad("'morphism ia|aks \"name\" from \"source\" to \"target\"'");
      d.flavor = t[1].text;
      d.name = t[2].text;
      d.from = t[4].text;
      d.to = t[6].text;
    }
    if (d.name.empty()) bad("a nonempty name");
    doc_ = std::move(d);
    section_ = nullptr;
  }

  void finish_document() {
    if (!doc_) return;
    check_document(*doc_);
    file_.documents.push_back(std::move(*doc_));
    doc_.reset();
    section_ = nullptr;
  }

  std::string_view text_;
  SourceFile file_;
  std::optional<SpecDocument> doc_;
  Section* section_ = nullptr;
  Shape shape_ = Shape::names;
};

// ---------------------------------------------------------------- emitter

std::string emit_name(const std::string& t) {
  bool plain = !t.empty() && t.find("->") == std::string::npos && t.find("<=") == std::string::npos;
  if (plain && t.front() == '{') return t;
  for (char c : t)
    if (!word_char(c)) plain = false;
  return plain ? t : quoted(t);
}

std::string emit_row(const Row& r, Shape s) {
  std::vector<std::string> n;
  for (const auto& t : r.tokens) n.push_back(emit_name(t));
  switch (s) {
    case Shape::names: return fmt::format("{}", fmt::join(n, " "));
    case Shape::single: return n[0];
    case Shape::order_pair: return n[0] + " <= " + n[1];
    case Shape::binary: return n[0] + " " + n[1] + " -> " + n[2];
    case Shape::pair: return n[0] + " " + n[1];
    case Shape::mapping: return n[0] + " -> " + n[1];
    case Shape::functor: return r.tokens[0] + " " + quoted(r.tokens[1]);
  }
  return {};
}

std::map<std::string, std::size_t> declared_rank(const SpecDocument& d) {
  std::map<std::string, std::size_t> rank;
  for (auto key : {"elements", "pi", "powerset"})
    if (auto* s = d.section(key))
      for (const auto& row : s->rows)
        for (const auto& t : row.tokens) rank.emplace(t, rank.size());
  return rank;
}

}  // namespace

std::string_view kind_name(DocKind k) {
  switch (k) {
    case DocKind::lattice: return "lattice";
    case DocKind::ia: return "ia";
    case DocKind::aks: return "aks";
    case DocKind::interior: return "interior";
    case DocKind::morphism: return "morphism";
  }
  return "?";
}

const Section* SpecDocument::section(std::string_view key) const {
  for (const auto& s : sections)
    if (s.key == key) return &s;
  return nullptr;
}

SpecDocument SpecDocument::canonical() const {
  SpecDocument out = *this;
  out.pos = {};
  out.sections.clear();
  const auto rank = declared_rank(*this);
  // Declared names by declaration order; anything else shortest first.
  auto key_less = [&](const std::string& a, const std::string& b) {
    auto ia = rank.find(a), ib = rank.find(b);
    if (ia != rank.end() && ib != rank.end()) return ia->second < ib->second;
    if ((ia != rank.end()) != (ib != rank.end())) return ia != rank.end();
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };
  auto row_less = [&](const Row& x, const Row& y) {
    return std::lexicographical_compare(x.tokens.begin(), x.tokens.end(), y.tokens.begin(), y.tokens.end(), key_less);
  };
  for (const auto& rule : rules_for(kind)) {
    const Section* s = section(rule.key);
    if (!s) continue;
    Section c{s->key, {}, {}};
    for (const auto& r : s->rows) c.rows.push_back({r.tokens, {}});
    if (rule.shape == Shape::names) {
      std::vector<std::string> all;
      for (const auto& r : c.rows) all.insert(all.end(), r.tokens.begin(), r.tokens.end());
      // Declarations keep their order: it fixes the element ids.
      if (rule.key != "elements" && rule.key != "pi" && rule.key != "powerset")
        std::sort(all.begin(), all.end(), key_less);
      c.rows.clear();
      if (!all.empty()) c.rows.push_back({all, {}});
    } else {
      std::sort(c.rows.begin(), c.rows.end(), row_less);
    }
    out.sections.push_back(std::move(c));
  }
  return out;
}

bool SpecDocument::operator==(const SpecDocument& other) const {
  const auto a = canonical(), b = other.canonical();
  if (a.kind != b.kind || a.name != b.name || a.flavor != b.flavor || a.on != b.on || a.from != b.from ||
      a.to != b.to || a.sections.size() != b.sections.size())
    return false;
  for (std::size_t i = 0; i < a.sections.size(); ++i) {
    const auto &x = a.sections[i], &y = b.sections[i];
    if (x.key != y.key || x.rows.size() != y.rows.size()) return false;
    for (std::size_t j = 0; j < x.rows.size(); ++j)
      if (x.rows[j].tokens != y.rows[j].tokens) return false;
  }
  return true;
}

SourceFile parse_source(std::string_view text) { return Parser(text).run(); }

SpecDocument parse_spec(std::string_view text) {
  auto f = parse_source(text);
  if (!f.includes.empty()) throw ParseError(1, 1, "a single document cannot include other files");
  if (f.documents.size() != 1)
    throw ParseError(1, 1, fmt::format("expected exactly one document, found {}", f.documents.size()));
  return std::move(f.documents.front());
}

std::string emit_spec(const SpecDocument& doc) {
  const auto d = doc.canonical();
  std::string out;
  switch (d.kind) {
    case DocKind::lattice:
    case DocKind::ia:
    case DocKind::aks: out = fmt::format("structure {} {}\n", kind_name(d.kind), quoted(d.name)); break;
    case DocKind::interior: out = fmt::format("interior {} on {}\n", quoted(d.name), quoted(d.on)); break;
    case DocKind::morphism:
      out = fmt::format("morphism {} {} from {} to {}\n", d.flavor, quoted(d.name), quoted(d.from), quoted(d.to));
      break;
  }
  for (const auto& s : d.sections) {
    const Shape shape = find_rule(d.kind, s.key)->shape;
    if (s.rows.size() <= 4 || shape == Shape::names) {
      std::vector<std::string> rows;
      for (const auto& r : s.rows) rows.push_back(emit_row(r, shape));
      out += s.key + ":";
      if (!rows.empty()) out += " " + fmt::format("{}", fmt::join(rows, " ; "));
      out += "\n";
    } else {
      out += s.key + ":\n";
      for (const auto& r : s.rows) out += "  " + emit_row(r, shape) + "\n";
    }
  }
  return out;
}

std::string emit_source(const SourceFile& file) {
  std::string out;
  for (const auto& inc : file.includes) out += "include " + quoted(inc) + "\n";
  for (const auto& d : file.documents) {
    if (!out.empty()) out += "\n";
    out += emit_spec(d);
  }
  return out;
}

// ------------------------------------------------- documents from objects

namespace {

Row names_row(std::vector<std::string> t) { return Row{std::move(t), {}}; }

std::vector<std::string> element_names(const FiniteLattice& L) {
  std::vector<std::string> n;
  for (ElementId a = 0; a < L.size(); ++a) n.push_back(L.name(a));
  return n;
}

// Covering pairs a < b.
Section order_section(const FiniteLattice& L) {
  Section s{"order", {}, {}};
  for (ElementId a = 0; a < L.size(); ++a)
    for (ElementId b = 0; b < L.size(); ++b) {
      if (a == b || !L.leq(a, b)) continue;
      bool cover = true;
      for (ElementId c = 0; c < L.size() && cover; ++c)
        if (c != a && c != b && L.leq(a, c) && L.leq(c, b)) cover = false;
      if (cover) s.rows.push_back(names_row({L.name(a), L.name(b)}));
    }
  return s;
}

}  // namespace

SpecDocument document_from_lattice(const std::string& name, const FiniteLattice& L) {
  SpecDocument d;
  d.kind = DocKind::lattice;
  d.name = name;
  if (L.is_powerset()) {
    d.sections.push_back({"powerset", {}, {names_row(L.base_names())}});
    return d;
  }
  d.sections.push_back({"elements", {}, {names_row(element_names(L))}});
  auto order = order_section(L);
  if (!order.rows.empty()) d.sections.push_back(std::move(order));
  return d;
}

SpecDocument document_from_algebra(const ImplicativeAlgebra& A) {
  const auto& L = A.lattice();
  SpecDocument d;
  d.kind = DocKind::ia;
  d.name = A.name;
  d.sections.push_back({"elements", {}, {names_row(element_names(L))}});
  auto order = order_section(L);
  if (!order.rows.empty()) d.sections.push_back(std::move(order));
  Section imp{"imp", {}, {}};
  for (ElementId a = 0; a < A.size(); ++a)
    for (ElementId b = 0; b < A.size(); ++b) imp.rows.push_back(names_row({L.name(a), L.name(b), L.name(A.imp(a, b))}));
  d.sections.push_back(std::move(imp));
  std::vector<std::string> sep;
  for (ElementId a : members(A.separator)) sep.push_back(L.name(a));
  d.sections.push_back({"separator", {}, sep.empty() ? std::vector<Row>{} : std::vector<Row>{names_row(sep)}});
  d.sections.push_back({"k", {}, {names_row({L.name(A.k)})}});
  d.sections.push_back({"s", {}, {names_row({L.name(A.s)})}});
  return d;
}

SpecDocument document_from_aks(const Aks& K) {
  SpecDocument d;
  d.kind = DocKind::aks;
  d.name = K.name();
  const auto n = static_cast<ElementId>(K.size());
  d.sections.push_back({"pi", {}, {names_row(K.names())}});
  Section perp{"perp", {}, {}}, push{"push", {}, {}}, app{"app", {}, {}};
  for (ElementId t = 0; t < n; ++t)
    for (ElementId p = 0; p < n; ++p) {
      if (K.perp(t, p)) perp.rows.push_back(names_row({K.element_name(t), K.element_name(p)}));
      push.rows.push_back(names_row({K.element_name(t), K.element_name(p), K.element_name(K.push(t, p))}));
      app.rows.push_back(names_row({K.element_name(t), K.element_name(p), K.element_name(K.app(t, p))}));
    }
  d.sections.push_back(std::move(perp));
  d.sections.push_back(std::move(push));
  d.sections.push_back(std::move(app));
  std::vector<std::string> qp;
  for (ElementId p = 0; p < n; ++p)
    if (K.qp() >> p & 1) qp.push_back(K.element_name(p));
  d.sections.push_back({"qp", {}, qp.empty() ? std::vector<Row>{} : std::vector<Row>{names_row(qp)}});
  d.sections.push_back({"K", {}, {names_row({K.element_name(K.K())})}});
  d.sections.push_back({"S", {}, {names_row({K.element_name(K.S())})}});
  return d;
}

SpecDocument document_from_functor_A(const std::string& name, const std::string& aks_name) {
  SpecDocument d;
  d.kind = DocKind::ia;
  d.name = name;
  d.sections.push_back({"functor", {}, {names_row({"A", aks_name})}});
  return d;
}

SpecDocument document_from_interior(const InteriorOperator& i, const std::string& on) {
  SpecDocument d;
  d.kind = DocKind::interior;
  d.name = i.name;
  d.on = on;
  Section map{"map", {}, {}};
  for (ElementId a = 0; a < i.table.size(); ++a) map.rows.push_back(names_row({i.lattice->name(a), i.lattice->name(i(a))}));
  d.sections.push_back(std::move(map));
  return d;
}

SpecDocument document_from_morphism(const MorphismSpec& f, const std::optional<DensityCertificate>& cert) {
  SpecDocument d;
  d.kind = DocKind::morphism;
  Section map{"map", {}, {}}, h{"hint-h", {}, {}};
  std::string t, r;
  if (auto* m = std::get_if<IaMorphism>(&f)) {
    d.flavor = "ia";
    d.name = m->name;
    d.from = m->source->name;
    d.to = m->target->name;
    for (ElementId a = 0; a < m->map.size(); ++a)
      map.rows.push_back(names_row({m->source->element_name(a), m->target->element_name((*m)(a))}));
    if (cert) {
      for (ElementId b = 0; b < cert->h.size(); ++b)
        if (cert->h[b] != kNoElement)
          h.rows.push_back(names_row({m->target->element_name(b), m->source->element_name(cert->h[b])}));
      t = m->target->element_name(cert->t);
      r = m->target->element_name(cert->r);
    }
  } else {
    const auto& g = std::get<AksMorphism>(f);
    d.flavor = "aks";
    d.name = g.name;
    d.from = g.source->name();
    d.to = g.target->name();
    for (ElementId p = 0; p < g.map.size(); ++p)
      map.rows.push_back(names_row({g.source->element_name(p), g.target->element_name(g(p))}));
    if (cert) {
      for (ElementId R = 0; R < cert->h.size(); ++R)
        if (cert->h[R] != kNoElement) h.rows.push_back(names_row({g.target->format(R), g.source->format(cert->h[R])}));
      t = g.target->element_name(cert->t);
      r = g.target->element_name(cert->r);
    }
  }
  d.sections.push_back(std::move(map));
  if (cert) {
    d.sections.push_back(std::move(h));
    d.sections.push_back({"hint-t", {}, {names_row({t})}});
    d.sections.push_back({"hint-r", {}, {names_row({r})}});
  }
  return d;
}

}  // namespace krl
