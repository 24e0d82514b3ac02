#include "veq/term.hpp"

#include <algorithm>
#include <cctype>

#include "veq/error.hpp"

namespace veq {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

bool occurs(std::size_t v, const Term& t, const Substitution& bindings);

Term resolve(const Term& t, const Substitution& bindings) {
  if (t.is_var()) {
    auto it = bindings.find(t.var_index());
    if (it == bindings.end()) return t;
    return resolve(it->second, bindings);
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(resolve(a, bindings));
  return Term::app(t.symbol(), std::move(args));
}

bool occurs(std::size_t v, const Term& t, const Substitution& bindings) {
  if (t.is_var()) {
    if (t.var_index() == v) return true;
    auto it = bindings.find(t.var_index());
    return it != bindings.end() && occurs(v, it->second, bindings);
  }
  for (const auto& a : t.args())
    if (occurs(v, a, bindings)) return true;
  return false;
}

Term walk(const Term& t, const Substitution& bindings) {
  Term cur = t;
  while (cur.is_var()) {
    auto it = bindings.find(cur.var_index());
    if (it == bindings.end()) break;
    cur = it->second;
  }
  return cur;
}

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    cur.push_back(i);
    collect_positions(t.args()[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

Signature::Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ops_[i].name == ops_[j].name)
        fail(ErrorKind::InvariantError, "duplicate operation symbol '" + ops_[i].name + "'");
}

std::optional<std::size_t> Signature::find(const std::string& name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

const OpSymbol* Signature::lookup(const std::string& name) const {
  auto i = find(name);
  return i ? &ops_[*i] : nullptr;
}

Term Term::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->var = index;
  n->var_bound = index + 1;
  n->hash = mix(0x51ed27, index);
  return Term(std::move(n));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  if (symbol.empty()) fail(ErrorKind::InvalidArgument, "operation symbol must be non-empty");
  auto n = std::make_shared<Node>();
  n->hash = std::hash<std::string>{}(symbol);
  for (const auto& a : args) {
    n->size += a.size();
    n->depth = std::max(n->depth, a.depth() + 1);
    n->var_bound = std::max(n->var_bound, a.var_bound());
    n->hash = mix(n->hash, a.hash());
  }
  n->hash = mix(n->hash, args.size());
  n->symbol = std::move(symbol);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  if (a.is_var() || b.is_var()) return a.is_var() && b.is_var() && a.var_index() == b.var_index();
  return a.symbol() == b.symbol() && a.args() == b.args();
}

bool operator<(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.is_var() != b.is_var()) return a.is_var();
  if (a.is_var()) return a.var_index() < b.var_index();
  if (a.symbol() != b.symbol()) return a.symbol() < b.symbol();
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size();
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (a.args()[i] < b.args()[i]) return true;
    if (b.args()[i] < a.args()[i]) return false;
  }
  return false;
}

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  if (t.is_var()) {
    auto it = s.find(t.var_index());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute(a, s));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.symbol(), std::move(args)) : t;
}

Substitution compose(const Substitution& after, const Substitution& before) {
  Substitution out;
  for (const auto& [v, t] : before) out.emplace(v, substitute(t, after));
  for (const auto& [v, t] : after) out.emplace(v, t);
  return normalized(out);
}

Substitution normalized(const Substitution& s) {
  Substitution out;
  for (const auto& [v, t] : s)
    if (!(t.is_var() && t.var_index() == v)) out.emplace(v, t);
  return out;
}

bool match(const Term& pattern, const Term& subject, Substitution& into) {
  if (pattern.is_var()) {
    auto [it, inserted] = into.emplace(pattern.var_index(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol() ||
      pattern.args().size() != subject.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match(pattern.args()[i], subject.args()[i], into)) return false;
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution bindings;
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [l, r] = work.back();
    work.pop_back();
    l = walk(l, bindings);
    r = walk(r, bindings);
    if (l == r) continue;
    if (l.is_var() || r.is_var()) {
      const Term& v = l.is_var() ? l : r;
      const Term& t = l.is_var() ? r : l;
      if (occurs(v.var_index(), t, bindings)) return std::nullopt;
      bindings.emplace(v.var_index(), t);
      continue;
    }
    if (l.symbol() != r.symbol() || l.args().size() != r.args().size()) return std::nullopt;
    // Pushed in reverse so arguments are decomposed left to right.
    for (std::size_t i = l.args().size(); i-- > 0;) work.emplace_back(l.args()[i], r.args()[i]);
  }
  Substitution out;
  for (const auto& [v, t] : bindings) out.emplace(v, resolve(t, bindings));
  return normalized(out);
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p) {
    if (cur->is_var() || i >= cur->args().size()) fail(ErrorKind::InvalidArgument, "position outside term");
    cur = &cur->args()[i];
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  std::function<Term(const Term&, std::size_t)> go = [&](const Term& cur, std::size_t depth) -> Term {
    if (depth == p.size()) return replacement;
    if (cur.is_var() || p[depth] >= cur.args().size())
      fail(ErrorKind::InvalidArgument, "position outside term");
    auto args = cur.args();
    args[p[depth]] = go(cur.args()[p[depth]], depth + 1);
    return Term::app(cur.symbol(), std::move(args));
  };
  return go(t, 0);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

bool well_formed(const Term& t, const Signature& sig, std::size_t context) {
  if (t.is_var()) return t.var_index() < context;
  const auto* op = sig.lookup(t.symbol());
  if (!op || op->arity != t.args().size()) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return well_formed(a, sig, context); });
}

void collect_vars(const Term& t, std::vector<bool>& seen) {
  if (t.is_var()) {
    if (seen.size() <= t.var_index()) seen.resize(t.var_index() + 1, false);
    seen[t.var_index()] = true;
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, seen);
}

std::string default_var_name(std::size_t i) {
  static const char* names[] = {"x", "y", "z", "u", "v", "w"};
  if (i < 6) return names[i];
  return "x" + std::to_string(i);
}

std::string to_string(const Term& t, const std::vector<std::string>& var_names) {
  if (t.is_var())
    return t.var_index() < var_names.size() ? var_names[t.var_index()] : default_var_name(t.var_index());
  if (t.args().empty()) return t.symbol();
  std::string out = t.symbol() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args()[i], var_names);
  }
  return out + ")";
}

std::string to_string(const Substitution& s, const std::vector<std::string>& var_names) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += to_string(Term::var(v), var_names) + "->" + to_string(t, var_names);
  }
  return out + "}";
}

std::size_t VarContext::index_of(const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  names.push_back(name);
  return names.size() - 1;
}

namespace {

class TermParser {
 public:
  TermParser(const std::string& text, const Signature* sig, VarContext& ctx) : text_(text), sig_(sig), ctx_(ctx) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::ParseError, "term '" + text_ + "' column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  Term term() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) error("expected an identifier");
    std::string name = text_.substr(start, pos_ - start);
    skip_ws();
    std::vector<Term> args;
    bool applied = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      applied = true;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(term());
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            break;
          }
          error("expected ',' or ')'");
        }
      }
    }
    if (sig_) {
      const auto* op = sig_->lookup(name);
      if (op) {
        if (op->arity != args.size())
          error("'" + name + "' expects " + std::to_string(op->arity) + " argument(s)");
        return Term::app(name, std::move(args));
      }
      if (applied) error("'" + name + "' is not an operation of the signature");
      return Term::var(ctx_.index_of(name));
    }
    if (applied) return Term::app(name, std::move(args));
    if (name[0] >= 'u' && name[0] <= 'z') return Term::var(ctx_.index_of(name));
    return Term::app(name);
  }

  const std::string& text_;
  const Signature* sig_;
  VarContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const std::string& text, const Signature* sig, VarContext& ctx) {
  return TermParser(text, sig, ctx).parse();
}

}  // namespace veq
