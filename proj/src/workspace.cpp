#include "veq/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "veq/error.hpp"

namespace veq {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Errors already carrying a source location pass through outer builders.
class LocatedError : public Error {
 public:
  using Error::Error;
};

enum class Tok { Word, Sym, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
  bool quoted = false;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' || c == '+' || c == '/' ||
         c == '*' || c == '^' || c == '!' || c == '?' || c == '@' || c == '$' || c == '&';
}

[[noreturn]] void parse_fail(const std::string& file, std::size_t line, std::size_t col, const std::string& msg) {
  throw LocatedError(ErrorKind::ParseError, file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::Newline, "newline", line, col, false});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::Sym, "", line, col, false};
    if (c == '"') {
      advance(1);
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\n') parse_fail(file, t.line, t.column, "unterminated string");
        if (src[i] == '\\' && i + 1 < src.size()) advance(1);
        t.text += src[i];
        advance(1);
      }
      if (i >= src.size()) parse_fail(file, t.line, t.column, "unterminated string");
      advance(1);
      t.kind = Tok::Word;
      t.quoted = true;
      out.push_back(t);
      continue;
    }
    const std::string two = src.substr(i, 2);
    if (two == "->" || two == "<=" || two == "-|") {
      t.text = two;
      advance(2);
      out.push_back(t);
      continue;
    }
    if (std::string("{}[](),;:=~.|").find(c) != std::string::npos) {
      t.text = std::string(1, c);
      advance(1);
      out.push_back(t);
      continue;
    }
    if (!word_char(c)) parse_fail(file, line, col, std::string("unexpected character '") + c + "'");
    t.kind = Tok::Word;
    while (i < src.size() && word_char(src[i])) {
      if (src[i] == '-' && i + 1 < src.size() && (src[i + 1] == '>' || src[i + 1] == '|')) break;
      t.text += src[i];
      advance(1);
    }
    out.push_back(t);
  }
  out.push_back({Tok::End, "end of input", line, col, false});
  return out;
}

const std::vector<std::pair<std::string, DefKind>>& keywords() {
  static const std::vector<std::pair<std::string, DefKind>> k{
      {"set", DefKind::Set},           {"fun", DefKind::Fun},         {"system", DefKind::System},
      {"cosystem", DefKind::Cosystem}, {"algebra", DefKind::Algebra}, {"group", DefKind::Group},
      {"theory", DefKind::Theory},     {"thmor", DefKind::Thmor},     {"category", DefKind::Category},
      {"functor", DefKind::Functor},   {"adjunction", DefKind::Adjunction}, {"series", DefKind::Series}};
  return k;
}

std::optional<DefKind> keyword(const Token& t) {
  if (t.kind != Tok::Word || t.quoted) return std::nullopt;
  for (const auto& [w, k] : keywords())
    if (w == t.text) return k;
  return std::nullopt;
}

std::vector<std::string> term_var_names() {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 16; ++i) names.push_back(default_var_name(i));
  return names;
}

}  // namespace

std::string to_string(const SourceLocation& at) {
  return at.file + ":" + std::to_string(at.line) + ":" + std::to_string(at.column);
}

std::string to_string(DefKind k) {
  for (const auto& [w, kind] : keywords())
    if (kind == k) return w;
  return "?";
}

std::string quote_label(const std::string& label) {
  bool plain = !label.empty() && !keyword(Token{Tok::Word, label, 0, 0, false});
  for (std::size_t i = 0; i < label.size() && plain; ++i) {
    plain = word_char(label[i]);
    if (label[i] == '-' && i + 1 < label.size() && (label[i + 1] == '>' || label[i + 1] == '|')) plain = false;
  }
  if (plain) return label;
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// ---- parser ----

class Parser {
 public:
  Parser(Workspace& ws, std::string file) : ws_(ws), file_(std::move(file)) {}

  void run(const std::string& text) {
    split(lex(text, file_));
    for (const auto& d : decls_) {
      if (ws_.find(d.kind, d.name) || pending_index(d.kind, d.name) != &d)
        throw LocatedError(ErrorKind::ResolutionError, to_string(d.at) + ": " + to_string(d.kind) + " '" + d.name +
                                                           "' is already defined");
    }
    for (const auto& d : decls_) build(d);
  }

 private:
  struct Decl {
    DefKind kind;
    std::string name;
    SourceLocation at;
    std::vector<Token> tokens;  // after the name
  };

  enum class State { Pending, Building, Done };

  Workspace& ws_;
  std::string file_;
  std::vector<Decl> decls_;
  std::map<std::pair<int, std::string>, State> state_;
  const std::vector<Token>* toks_ = nullptr;
  std::size_t pos_ = 0;
  Token end_;

  // Splits the token stream into declarations and normalizes separators:
  // newlines inside braces become ';', inside () and [] they vanish.
  void split(const std::vector<Token>& toks) {
    std::size_t i = 0;
    while (toks[i].kind != Tok::End) {
      if (toks[i].kind == Tok::Newline || (toks[i].kind == Tok::Sym && toks[i].text == ";")) {
        ++i;
        continue;
      }
      auto kind = keyword(toks[i]);
      if (!kind) {
        std::string expected;
        for (const auto& [w, k] : keywords()) expected += (expected.empty() ? "" : ", ") + w;
        parse_fail(file_, toks[i].line, toks[i].column, "expected one of {" + expected + "}, found '" + toks[i].text + "'");
      }
      Decl d{*kind, "", {file_, toks[i].line, toks[i].column}, {}};
      ++i;
      if (toks[i].kind != Tok::Word)
        parse_fail(file_, toks[i].line, toks[i].column, "expected a name after '" + to_string(*kind) + "'");
      d.name = toks[i].text;
      ++i;
      std::vector<const Token*> stack;
      while (toks[i].kind != Tok::End) {
        const Token& t = toks[i];
        if (t.kind == Tok::Newline || (t.kind == Tok::Sym && t.text == ";")) {
          if (stack.empty()) break;
          if (stack.back()->text == "{") {
            Token sep = t;
            sep.kind = Tok::Sym;
            sep.text = ";";
            d.tokens.push_back(sep);
          } else if (t.kind == Tok::Sym) {
            d.tokens.push_back(t);
          }
          ++i;
          continue;
        }
        if (t.kind == Tok::Sym && (t.text == "{" || t.text == "(" || t.text == "[")) stack.push_back(&t);
        if (t.kind == Tok::Sym && (t.text == "}" || t.text == ")" || t.text == "]")) {
          const char* open = t.text == "}" ? "{" : t.text == ")" ? "(" : "[";
          if (stack.empty() || stack.back()->text != open)
            parse_fail(file_, t.line, t.column, "unbalanced '" + t.text + "'");
          stack.pop_back();
        }
        d.tokens.push_back(t);
        ++i;
      }
      if (!stack.empty())
        parse_fail(file_, stack.back()->line, stack.back()->column, "unclosed '" + stack.back()->text + "' in " + d.name);
      decls_.push_back(std::move(d));
    }
  }

  const Decl* pending_index(DefKind kind, const std::string& name) const {
    for (const auto& d : decls_)
      if (d.kind == kind && d.name == name) return &d;
    return nullptr;
  }

  // Builds a declaration referenced before its own position.
  bool need(DefKind kind, const std::string& name) {
    if (ws_.find(kind, name)) return true;
    const Decl* d = pending_index(kind, name);
    if (!d) return false;
    auto& st = state_[{static_cast<int>(kind), name}];
    if (st == State::Building)
      throw LocatedError(ErrorKind::ResolutionError, to_string(d->at) + ": " + to_string(kind) + " '" + name +
                                                         "' depends on itself");
    const auto saved_toks = toks_;
    const auto saved_pos = pos_;
    build(*d);
    toks_ = saved_toks;
    pos_ = saved_pos;
    return true;
  }

  void require(DefKind kind, const std::string& name) {
    if (!need(kind, name)) fail(ErrorKind::ResolutionError, "unknown " + to_string(kind) + " '" + name + "'");
  }

  void build(const Decl& d) {
    auto& st = state_[{static_cast<int>(d.kind), d.name}];
    if (st == State::Done) return;
    st = State::Building;
    toks_ = &d.tokens;
    pos_ = 0;
    end_ = Token{Tok::End, "end of declaration", d.at.line, d.at.column, false};
    try {
      switch (d.kind) {
        case DefKind::Set: build_set(d); break;
        case DefKind::Fun: build_fun(d); break;
        case DefKind::System: build_system(d, false); break;
        case DefKind::Cosystem: build_system(d, true); break;
        case DefKind::Algebra: build_algebra(d); break;
        case DefKind::Group: build_group(d); break;
        case DefKind::Theory: build_theory(d); break;
        case DefKind::Thmor: build_thmor(d); break;
        case DefKind::Category: build_category(d); break;
        case DefKind::Functor: build_functor(d); break;
        case DefKind::Adjunction: build_adjunction(d); break;
        case DefKind::Series: build_series(d); break;
      }
      if (peek().kind != Tok::End) error("expected end of declaration");
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      throw LocatedError(e.kind(), to_string(d.at) + ": " + to_string(d.kind) + " " + d.name + ": " + e.detail());
    }
    ws_.add(d.kind, d.name, d.at);
    st = State::Done;
  }

  // ---- token helpers ----

  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_->size() ? (*toks_)[pos_ + ahead] : end_;
  }
  [[noreturn]] void error(const std::string& expected) const {
    const Token& t = peek();
    parse_fail(file_, t.line, t.column, expected + ", found '" + t.text + "'");
  }
  bool at_sym(const std::string& s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
  }
  bool accept(const std::string& s) {
    if (!at_sym(s)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) error("expected '" + s + "'");
  }
  std::string word(const std::string& what = "a name") {
    if (peek().kind != Tok::Word) error("expected " + what);
    return (*toks_)[pos_++].text;
  }
  void keyword_word(const std::string& kw) {
    if (peek().kind != Tok::Word || peek().quoted || peek().text != kw) error("expected '" + kw + "'");
    ++pos_;
  }
  bool at_word(const std::string& kw) const {
    return peek().kind == Tok::Word && !peek().quoted && peek().text == kw;
  }
  std::size_t natural(const std::string& what) {
    const std::string w = word(what);
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      error("expected " + what);
    return std::stoul(w);
  }

  // Items between open and close separated by ',' or ';'.
  void items(const std::string& open, const std::string& close, const std::function<void()>& item) {
    expect(open);
    while (true) {
      while (accept(",") || accept(";")) {
      }
      if (accept(close)) return;
      item();
      if (!at_sym(",") && !at_sym(";") && !at_sym(close)) error("expected ',', ';' or '" + close + "'");
    }
  }

  // Raw term text up to a delimiter at bracket depth 0.
  std::string term_text(const std::set<std::string>& stops) {
    std::string out;
    int depth = 0;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Sym && depth == 0 && stops.count(t.text)) break;
      if (t.kind == Tok::Sym && t.text == "(") ++depth;
      if (t.kind == Tok::Sym && t.text == ")") {
        if (depth == 0) break;
        --depth;
      }
      if (t.kind == Tok::Sym && t.text != "(" && t.text != ")" && t.text != ",") error("unexpected symbol in term");
      out += t.text;
      ++pos_;
    }
    if (out.empty()) error("expected a term");
    return out;
  }

  // "[a b c]" with optional commas.
  std::vector<std::string> word_list() {
    std::vector<std::string> out;
    expect("[");
    while (!accept("]")) {
      if (accept(",")) continue;
      out.push_back(word("an element"));
    }
    return out;
  }

  std::vector<std::string> label_list() {
    std::vector<std::string> labels;
    items("{", "}", [&] { labels.push_back(word("an element")); });
    return labels;
  }

  FinSet set_ref_or_literal() {
    if (at_sym("{")) return FinSet(label_list());
    const std::string name = word("a set");
    require(DefKind::Set, name);
    return ws_.set(name).set;
  }

  // An arrow name, possibly a poset arrow a<=b.
  std::string arrow_name() {
    std::string n = word("an arrow");
    if (accept("<=")) n += "<=" + word("an element");
    return n;
  }

  std::vector<Rational> rationals(const std::set<std::string>& stops) {
    std::vector<Rational> out;
    while (peek().kind == Tok::Word) {
      out.push_back(parse_rational(word()));
      if (!accept(",")) break;
    }
    if (!stops.empty() && !(peek().kind == Tok::Sym && stops.count(peek().text))) error("expected a rational number");
    return out;
  }

  // ---- declarations ----

  void build_set(const Decl& d) {
    expect("=");
    ws_.sets_[d.name] = SetDef{FinSet(label_list())};
  }

  void build_fun(const Decl& d) {
    expect(":");
    FunDef f{word("a set"), "", FinFunction()};
    expect("->");
    f.cod = word("a set");
    require(DefKind::Set, f.dom);
    require(DefKind::Set, f.cod);
    expect("=");
    std::vector<std::pair<std::string, std::string>> pairs;
    items("{", "}", [&] {
      std::string x = word("an element");
      expect("->");
      pairs.emplace_back(x, word("an element"));
    });
    f.fn = FinFunction::from_labels(ws_.set(f.dom).set, ws_.set(f.cod).set, pairs);
    ws_.funs_[d.name] = std::move(f);
  }

  ArrowChain chain() {
    ArrowChain c{word("an arrow")};
    while (accept(".")) c.push_back(word("an arrow"));
    return c;
  }

  void build_system(const Decl& d, bool co) {
    keyword_word("on");
    SystemDef s{word("an object"), {}};
    if (!need(DefKind::Set, s.on) && !need(DefKind::Category, s.on))
      fail(ErrorKind::ResolutionError, "unknown set or category '" + s.on + "'");
    items("{", "}", [&] {
      auto l = chain();
      expect("~");
      s.equations.emplace_back(l, chain());
    });
    if (s.equations.empty()) fail(ErrorKind::EmptyList, "a system needs at least one equation");
    for (const auto& [l, r] : s.equations)
      for (const auto* side : {&l, &r})
        for (const auto& n : *side)
          if (!need(DefKind::Fun, n) && !need(DefKind::Functor, n))
            fail(ErrorKind::ResolutionError, "unknown function or functor '" + n + "'");
    (co ? ws_.cosystems_ : ws_.systems_)[d.name] = std::move(s);
  }

  void build_algebra(const Decl& d) {
    keyword_word("on");
    FinSet carrier = set_ref_or_literal();
    std::vector<OpSymbol> ops;
    std::vector<std::vector<std::size_t>> tables;
    items("{", "}", [&] {
      OpSymbol op{word("an operation"), 0};
      expect(":");
      op.arity = natural("an arity");
      expect("=");
      std::vector<std::size_t> table;
      for (const auto& w : word_list()) table.push_back(carrier.at(w));
      ops.push_back(op);
      tables.push_back(std::move(table));
    });
    FiniteAlgebra a{d.name, Signature(ops), carrier, tables};
    a.validate();
    ws_.algebras_[d.name] = AlgebraDef{std::make_shared<const FiniteAlgebra>(std::move(a))};
  }

  void build_group(const Decl& d) {
    if (accept("=")) {
      keyword_word("builtin");
      const std::string which = word("a group name");
      for (auto& g : group_corpus())
        if (g.name() == which) {
          ws_.groups_[d.name] = GroupDef{std::make_shared<const FiniteGroup>(std::move(g)), which};
          return;
        }
      fail(ErrorKind::ResolutionError, "no builtin group '" + which + "'");
    }
    keyword_word("on");
    FinSet carrier = set_ref_or_literal();
    std::vector<std::size_t> flat;
    items("{", "}", [&] {
      keyword_word("mul");
      expect("=");
      for (const auto& w : word_list()) flat.push_back(carrier.at(w));
    });
    const std::size_t n = carrier.size();
    if (flat.size() != n * n) fail(ErrorKind::InvariantError, "Cayley table needs " + std::to_string(n * n) + " entries");
    std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) mul[a][b] = flat[a * n + b];
    ws_.groups_[d.name] =
        GroupDef{std::make_shared<const FiniteGroup>(FiniteGroup::from_table(d.name, carrier.labels(), mul)), {}};
  }

  void build_theory(const Decl& d) {
    auto t = std::make_shared<TheoryPresentation>();
    t->name = d.name;
    std::vector<OpSymbol> ops;
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> raw;
    items("{", "}", [&] {
      if (at_word("op")) {
        ++pos_;
        do {
          OpSymbol op{word("an operation"), 0};
          expect(":");
          op.arity = natural("an arity");
          ops.push_back(op);
        } while (accept(","));
        return;
      }
      keyword_word("axiom");
      std::string label;
      if (peek().kind == Tok::Word && at_sym(":", 1)) {
        label = word();
        expect(":");
      }
      std::string lhs = term_text({"="});
      expect("=");
      raw.push_back({label, {lhs, term_text({";", ",", "}"})}});
    });
    t->signature = Signature(ops);
    std::size_t n = 0;
    for (const auto& [label, sides] : raw) {
      VarContext ctx{term_var_names()};
      Axiom ax{parse_term(sides.first, &t->signature, ctx), parse_term(sides.second, &t->signature, ctx), 0, label};
      ax.context = std::max(ax.lhs.var_bound(), ax.rhs.var_bound());
      if (ax.label.empty()) ax.label = "ax" + std::to_string(++n);
      t->axioms.push_back(std::move(ax));
    }
    t->validate();
    ws_.theories_[d.name] = TheoryDef{t};
  }

  void build_thmor(const Decl& d) {
    expect(":");
    const std::string src = word("a theory");
    expect("->");
    const std::string tgt = word("a theory");
    require(DefKind::Theory, src);
    require(DefKind::Theory, tgt);
    TheoryMorphism m{d.name, ws_.theory(src).theory, ws_.theory(tgt).theory, {}};
    items("{", "}", [&] {
      const std::string sym = word("an operation");
      expect("->");
      VarContext ctx{term_var_names()};
      m.images.emplace_back(sym, parse_term(term_text({";", ",", "}"}), &m.target->signature, ctx));
    });
    m.validate();
    ws_.thmors_[d.name] = ThmorDef{std::move(m)};
  }

  void build_category(const Decl& d) {
    if (accept("=")) {
      keyword_word("poset");
      auto elems = label_list();
      FinSet carrier(elems);
      const std::size_t n = elems.size();
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
      if (at_sym("{"))
        items("{", "}", [&] {
          const std::size_t a = carrier.at(word("an element"));
          expect("<=");
          leq[a][carrier.at(word("an element"))] = true;
        });
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (leq[i][k] && leq[k][j]) leq[i][j] = true;
      ws_.categories_[d.name] = CategoryDef{make_poset(d.name, elems, leq), true};
      return;
    }
    CategoryBuilder b(d.name);
    std::map<std::string, std::size_t> arrows;
    std::vector<std::tuple<std::string, std::string, std::string>> composites;
    std::vector<std::string> objects;
    items("{", "}", [&] {
      if (at_word("objects")) {
        ++pos_;
        do {
          objects.push_back(word("an object"));
          arrows["1_" + objects.back()] = b.add_object(objects.back());
        } while (accept(","));
        return;
      }
      if (at_word("arrow")) {
        ++pos_;
        const std::string name = word("an arrow");
        expect(":");
        FinSet objs(objects);
        const std::size_t s = objs.at(word("an object"));
        expect("->");
        const std::size_t t = objs.at(word("an object"));
        if (arrows.count(name)) fail(ErrorKind::InvariantError, "arrow '" + name + "' declared twice");
        arrows[name] = b.add_arrow(name, s, t);
        return;
      }
      const std::string g = word("'objects', 'arrow' or a composite");
      expect(".");
      const std::string f = word("an arrow");
      expect("=");
      composites.emplace_back(g, f, word("an arrow"));
    });
    auto arrow = [&](const std::string& n) {
      auto it = arrows.find(n);
      if (it == arrows.end()) fail(ErrorKind::ResolutionError, "unknown arrow '" + n + "'");
      return it->second;
    };
    for (const auto& [g, f, h] : composites) b.set_composite(arrow(g), arrow(f), arrow(h));
    ws_.categories_[d.name] = CategoryDef{b.finish(), false};
  }

  void build_functor(const Decl& d) {
    expect(":");
    const std::string src = word("a category");
    expect("->");
    const std::string tgt = word("a category");
    require(DefKind::Category, src);
    require(DefKind::Category, tgt);
    const CatPtr c = ws_.category(src).category;
    const CatPtr e = ws_.category(tgt).category;
    expect("=");
    std::vector<std::size_t> objs(c->object_count(), npos);
    std::vector<std::size_t> arrs(c->arrow_count(), npos);
    bool arrow_part = false;
    expect("{");
    while (true) {
      while (accept(",") || accept(";")) {
      }
      if (accept("}")) break;
      if (accept("|")) {
        arrow_part = true;
        continue;
      }
      if (!arrow_part) {
        const std::size_t x = c->objects().at(word("an object"));
        expect("->");
        objs[x] = e->objects().at(word("an object"));
      } else {
        const std::string a = arrow_name();
        expect("->");
        const std::string b = arrow_name();
        auto ia = c->find_arrow(a);
        auto ib = e->find_arrow(b);
        if (!ia) fail(ErrorKind::ResolutionError, "no arrow '" + a + "' in " + src);
        if (!ib) fail(ErrorKind::ResolutionError, "no arrow '" + b + "' in " + tgt);
        arrs[*ia] = *ib;
      }
      if (!at_sym(",") && !at_sym(";") && !at_sym("}") && !at_sym("|")) error("expected ',', ';', '|' or '}'");
    }
    for (std::size_t o = 0; o < objs.size(); ++o)
      if (objs[o] == npos) fail(ErrorKind::InvariantError, "no image for object " + c->object(o));
    Functor f;
    if (!arrow_part && is_poset_category(*e)) {
      f = monotone_functor(d.name, c, e, objs);
    } else {
      for (std::size_t o = 0; o < objs.size(); ++o) arrs[c->id(o)] = e->id(objs[o]);
      for (std::size_t a = 0; a < arrs.size(); ++a)
        if (arrs[a] == npos) fail(ErrorKind::InvariantError, "no image for arrow " + c->arrow_name(a));
      f = Functor{d.name, c, e, objs, arrs};
      f.validate();
    }
    ws_.functors_[d.name] = FunctorDef{std::move(f)};
  }

  void build_adjunction(const Decl& d) {
    expect("=");
    const std::string left = word("a functor");
    expect("-|");
    const std::string right = word("a functor");
    require(DefKind::Functor, left);
    require(DefKind::Functor, right);
    auto adj = poset_adjunction(ws_.functor(left).functor, ws_.functor(right).functor);
    if (!adj) fail(ErrorKind::AdjunctionInvalid, left + " is not left adjoint to " + right);
    ws_.adjunctions_[d.name] = AdjunctionDef{left, right, *adj};
  }

  void build_series(const Decl& d) {
    expect("=");
    SeriesDef s;
    if (at_sym("[")) {
      ++pos_;
      s.first = rationals({"]"});
      expect("]");
      s.form = SeriesDef::Form::List;
      s.series = TruncatedSeries(s.first);
      if (at_word("prec")) {
        ++pos_;
        s.series = s.series.truncate(natural("a precision"));
      }
      ws_.series_[d.name] = std::move(s);
      return;
    }
    const std::string form = word("'[', 'rec' or 'ratfun'");
    if (form != "rec" && form != "ratfun") error("expected 'rec' or 'ratfun'");
    expect("(");
    s.first = rationals({";"});
    expect(";");
    s.second = rationals({")"});
    expect(")");
    keyword_word("prec");
    const std::size_t prec = natural("a precision");
    if (form == "rec") {
      s.form = SeriesDef::Form::Recurrence;
      s.series = expand_recurrence(s.first, s.second, prec);
    } else {
      s.form = SeriesDef::Form::Rational;
      s.series = expand_rational(s.first, s.second, prec);
    }
    ws_.series_[d.name] = std::move(s);
  }
};

// ---- workspace ----

void Workspace::add(DefKind kind, const std::string& name, const SourceLocation& at) {
  entries_.push_back({kind, name, at});
}

const Workspace::Entry* Workspace::find(DefKind kind, const std::string& name) const {
  for (const auto& e : entries_)
    if (e.kind == kind && e.name == name) return &e;
  return nullptr;
}

const Workspace::Entry& Workspace::require(DefKind kind, const std::string& name) const {
  const Entry* e = find(kind, name);
  if (!e) fail(ErrorKind::ResolutionError, "no " + to_string(kind) + " named '" + name + "'");
  return *e;
}

void Workspace::load(const std::string& text, const std::string& file) {
  Workspace copy = *this;
  Parser p(copy, file);
  p.run(text);
  *this = std::move(copy);
}

namespace {

std::string join_labels(const std::vector<std::string>& labels, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? sep : "") + quote_label(labels[i]);
  return out;
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out;
}

std::string chain_text(const ArrowChain& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "." : "") + c[i];
  return out;
}

}  // namespace

std::string Workspace::print() const {
  std::string out;
  for (const auto& e : entries_) {
    const std::string head = to_string(e.kind) + " " + e.name;
    switch (e.kind) {
      case DefKind::Set:
        out += head + " = {" + join_labels(set(e.name).set.labels()) + "}\n";
        break;
      case DefKind::Fun: {
        const auto& f = fun(e.name);
        out += head + " : " + f.dom + " -> " + f.cod + " = {";
        for (std::size_t x = 0; x < f.fn.dom().size(); ++x)
          out += (x ? ", " : "") + quote_label(f.fn.dom().label(x)) + " -> " + quote_label(f.fn.cod().label(f.fn(x)));
        out += "}\n";
        break;
      }
      case DefKind::System:
      case DefKind::Cosystem: {
        const auto& s = e.kind == DefKind::System ? system(e.name) : cosystem(e.name);
        out += head + " on " + s.on + " {";
        for (std::size_t i = 0; i < s.equations.size(); ++i)
          out += (i ? "; " : " ") + chain_text(s.equations[i].first) + " ~ " + chain_text(s.equations[i].second);
        out += " }\n";
        break;
      }
      case DefKind::Algebra: {
        const auto& a = *algebra(e.name).algebra;
        out += head + " on {" + join_labels(a.carrier.labels()) + "} {\n";
        for (std::size_t k = 0; k < a.signature.size(); ++k) {
          out += "  " + a.signature.ops()[k].name + ":" + std::to_string(a.signature.ops()[k].arity) + " = [";
          for (std::size_t i = 0; i < a.tables[k].size(); ++i)
            out += (i ? " " : "") + quote_label(a.carrier.label(a.tables[k][i]));
          out += "]\n";
        }
        out += "}\n";
        break;
      }
      case DefKind::Group: {
        const auto& g = group(e.name);
        if (g.builtin) {
          out += head + " = builtin " + *g.builtin + "\n";
          break;
        }
        const auto& gr = *g.group;
        out += head + " on {" + join_labels(gr.carrier().labels()) + "} { mul = [";
        for (std::size_t i = 0; i < gr.size() * gr.size(); ++i)
          out += (i ? " " : "") + quote_label(gr.carrier().label(gr.algebra().tables[0][i]));
        out += "] }\n";
        break;
      }
      case DefKind::Theory: {
        const auto& t = *theory(e.name).theory;
        out += head + " {\n";
        if (t.signature.size()) {
          out += "  op ";
          for (std::size_t k = 0; k < t.signature.size(); ++k)
            out += (k ? ", " : "") + t.signature.ops()[k].name + ":" + std::to_string(t.signature.ops()[k].arity);
          out += "\n";
        }
        for (const auto& ax : t.axioms)
          out += "  axiom " + quote_label(ax.label) + ": " + veq::to_string(ax.lhs) + " = " + veq::to_string(ax.rhs) + "\n";
        out += "}\n";
        break;
      }
      case DefKind::Thmor: {
        const auto& m = thmor(e.name).morphism;
        out += head + " : " + m.source->name + " -> " + m.target->name + " {";
        for (std::size_t i = 0; i < m.images.size(); ++i)
          out += (i ? "; " : " ") + m.images[i].first + " -> " + veq::to_string(m.images[i].second);
        out += " }\n";
        break;
      }
      case DefKind::Category: {
        const auto& c = category(e.name);
        const auto& cat = *c.category;
        if (c.poset) {
          out += head + " = poset {" + join_labels(cat.objects().labels()) + "} {";
          bool first = true;
          for (std::size_t a = 0; a < cat.arrow_count(); ++a) {
            if (cat.is_identity(a)) continue;
            out += (first ? " " : "; ") + quote_label(cat.object(cat.src(a))) + " <= " + quote_label(cat.object(cat.tgt(a)));
            first = false;
          }
          out += " }\n";
          break;
        }
        out += head + " {\n";
        if (cat.object_count()) out += "  objects " + join_labels(cat.objects().labels()) + "\n";
        for (std::size_t a = 0; a < cat.arrow_count(); ++a)
          if (!cat.is_identity(a))
            out += "  arrow " + quote_label(cat.arrow_name(a)) + " : " + quote_label(cat.object(cat.src(a))) + " -> " +
                   quote_label(cat.object(cat.tgt(a))) + "\n";
        for (std::size_t g = 0; g < cat.arrow_count(); ++g)
          for (std::size_t f = 0; f < cat.arrow_count(); ++f)
            if (!cat.is_identity(g) && !cat.is_identity(f) && cat.tgt(f) == cat.src(g))
              out += "  " + quote_label(cat.arrow_name(g)) + "." + quote_label(cat.arrow_name(f)) + " = " +
                     quote_label(cat.arrow_name(cat.compose(g, f))) + "\n";
        out += "}\n";
        break;
      }
      case DefKind::Functor: {
        const auto& f = functor(e.name).functor;
        out += head + " : " + f.src->name() + " -> " + f.tgt->name() + " = {";
        for (std::size_t o = 0; o < f.on_objects.size(); ++o)
          out += (o ? ", " : "") + quote_label(f.src->object(o)) + " -> " + quote_label(f.tgt->object(f.obj(o)));
        if (!is_poset_category(*f.tgt)) {
          out += " |";
          bool first = true;
          for (std::size_t a = 0; a < f.on_arrows.size(); ++a) {
            if (f.src->is_identity(a)) continue;
            out += (first ? " " : ", ") + quote_label(f.src->arrow_name(a)) + " -> " + quote_label(f.tgt->arrow_name(f(a)));
            first = false;
          }
        }
        out += "}\n";
        break;
      }
      case DefKind::Adjunction: {
        const auto& a = adjunction(e.name);
        out += head + " = " + a.left + " -| " + a.right + "\n";
        break;
      }
      case DefKind::Series: {
        const auto& s = series(e.name);
        const std::string prec = " prec " + std::to_string(s.series.precision());
        switch (s.form) {
          case SeriesDef::Form::List:
            out += head + " = [" + join_rationals(s.first) + "]";
            if (s.series.precision() != s.first.size()) out += prec;
            out += "\n";
            break;
          case SeriesDef::Form::Recurrence:
            out += head + " = rec(" + join_rationals(s.first) + "; " + join_rationals(s.second) + ")" + prec + "\n";
            break;
          case SeriesDef::Form::Rational:
            out += head + " = ratfun(" + join_rationals(s.first) + "; " + join_rationals(s.second) + ")" + prec + "\n";
            break;
        }
        break;
      }
    }
  }
  return out;
}

std::size_t Workspace::check() const {
  std::size_t n = 0;
  for (const auto& e : entries_) {
    try {
      switch (e.kind) {
        case DefKind::Set:
          break;
        case DefKind::Fun: {
          const auto& f = fun(e.name);
          if (!(f.fn.dom() == set(f.dom).set) || !(f.fn.cod() == set(f.cod).set))
            fail(ErrorKind::InvariantError, "function does not match its declared sets");
          break;
        }
        case DefKind::System:
        case DefKind::Cosystem: {
          const auto& s = e.kind == DefKind::System ? system(e.name) : cosystem(e.name);
          if (s.equations.empty()) fail(ErrorKind::EmptyList, "system without equations");
          break;
        }
        case DefKind::Algebra:
          algebra(e.name).algebra->validate();
          break;
        case DefKind::Group:
          (void)FiniteGroup(group(e.name).group->algebra());
          break;
        case DefKind::Theory:
          theory(e.name).theory->validate();
          break;
        case DefKind::Thmor:
          thmor(e.name).morphism.validate();
          break;
        case DefKind::Category:
          break;
        case DefKind::Functor:
          functor(e.name).functor.validate();
          break;
        case DefKind::Adjunction:
          adjunction(e.name).adjunction.validate();
          break;
        case DefKind::Series:
          if (series(e.name).series.precision() == 0) fail(ErrorKind::PrecisionExhausted, "empty series");
          break;
      }
    } catch (const Error& err) {
      throw Error(ErrorKind::InvariantError, to_string(e.at) + ": " + to_string(e.kind) + " " + e.name + ": " + err.detail());
    }
    ++n;
  }
  return n;
}

bool operator==(const Workspace& a, const Workspace& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    if (a.entries_[i].kind != b.entries_[i].kind || a.entries_[i].name != b.entries_[i].name) return false;
  auto axioms_equal = [](const TheoryPresentation& x, const TheoryPresentation& y) {
    if (!(x.signature == y.signature) || x.axioms.size() != y.axioms.size()) return false;
    for (std::size_t i = 0; i < x.axioms.size(); ++i)
      if (!(x.axioms[i].lhs == y.axioms[i].lhs) || !(x.axioms[i].rhs == y.axioms[i].rhs) ||
          x.axioms[i].label != y.axioms[i].label)
        return false;
    return true;
  };
  for (const auto& e : a.entries_) {
    const auto& n = e.name;
    bool same = true;
    switch (e.kind) {
      case DefKind::Set: same = a.set(n).set == b.set(n).set; break;
      case DefKind::Fun:
        same = a.fun(n).dom == b.fun(n).dom && a.fun(n).cod == b.fun(n).cod && a.fun(n).fn == b.fun(n).fn;
        break;
      case DefKind::System:
        same = a.system(n).on == b.system(n).on && a.system(n).equations == b.system(n).equations;
        break;
      case DefKind::Cosystem:
        same = a.cosystem(n).on == b.cosystem(n).on && a.cosystem(n).equations == b.cosystem(n).equations;
        break;
      case DefKind::Algebra: same = *a.algebra(n).algebra == *b.algebra(n).algebra; break;
      case DefKind::Group: same = *a.group(n).group == *b.group(n).group; break;
      case DefKind::Theory: same = axioms_equal(*a.theory(n).theory, *b.theory(n).theory); break;
      case DefKind::Thmor: {
        const auto& x = a.thmor(n).morphism;
        const auto& y = b.thmor(n).morphism;
        same = x.source->name == y.source->name && x.target->name == y.target->name && x.images.size() == y.images.size();
        for (std::size_t i = 0; same && i < x.images.size(); ++i)
          same = x.images[i].first == y.images[i].first && x.images[i].second == y.images[i].second;
        break;
      }
      case DefKind::Category:
        same = *a.category(n).category == *b.category(n).category && a.category(n).poset == b.category(n).poset;
        break;
      case DefKind::Functor: same = a.functor(n).functor == b.functor(n).functor; break;
      case DefKind::Adjunction:
        same = a.adjunction(n).left == b.adjunction(n).left && a.adjunction(n).right == b.adjunction(n).right;
        break;
      case DefKind::Series: same = a.series(n).series == b.series(n).series; break;
    }
    if (!same) return false;
  }
  return true;
}

}  // namespace veq
