#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace veq {

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

/// One-sorted signature; symbol names are distinct.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops);

  const std::vector<OpSymbol>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  std::optional<std::size_t> find(const std::string& name) const;
  const OpSymbol* lookup(const std::string& name) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<OpSymbol> ops_;
};

/// Immutable first-order term: a variable (by index) or an operation symbol
/// applied to arguments. Nodes are shared; size, depth and hash are cached.
class Term {
 public:
  /// The variable with index 0.
  Term() : Term(var(0)) {}
  static Term var(std::size_t index);
  static Term app(std::string symbol, std::vector<Term> args = {});

  bool is_var() const noexcept { return node_->symbol.empty(); }
  std::size_t var_index() const noexcept { return node_->var; }
  const std::string& symbol() const noexcept { return node_->symbol; }
  const std::vector<Term>& args() const noexcept { return node_->args; }

  std::size_t size() const noexcept { return node_->size; }
  std::size_t depth() const noexcept { return node_->depth; }
  std::size_t hash() const noexcept { return node_->hash; }
  /// One more than the largest variable index occurring, 0 for ground terms.
  std::size_t var_bound() const noexcept { return node_->var_bound; }

  friend bool operator==(const Term& a, const Term& b);
  /// Total order: by size, then structure. Used for deterministic output.
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node {
    std::size_t var = 0;
    std::string symbol;
    std::vector<Term> args;
    std::size_t size = 1;
    std::size_t depth = 0;
    std::size_t var_bound = 0;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

using Substitution = std::map<std::size_t, Term>;
using Position = std::vector<std::size_t>;

/// Simultaneous substitution; variables outside s are unchanged.
Term substitute(const Term& t, const Substitution& s);
/// (after ∘ before): apply before, then after.
Substitution compose(const Substitution& after, const Substitution& before);
/// Drops trivial bindings x ↦ x.
Substitution normalized(const Substitution& s);

/// One-way matching: σ with substitute(pattern, σ) == subject, extending `into`.
bool match(const Term& pattern, const Term& subject, Substitution& into);
/// Syntactic most general unifier with occurs check; idempotent.
std::optional<Substitution> unify(const Term& a, const Term& b);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);
/// All positions in preorder.
std::vector<Position> positions(const Term& t);

bool well_formed(const Term& t, const Signature& sig, std::size_t context);
void collect_vars(const Term& t, std::vector<bool>& seen);

/// Default variable names x, y, z, u, v, w, x6, x7, ...
std::string default_var_name(std::size_t i);
/// Prefix notation, e.g. mul(x,inv(y)); constants print bare.
std::string to_string(const Term& t, const std::vector<std::string>& var_names = {});
std::string to_string(const Substitution& s, const std::vector<std::string>& var_names = {});

/// Variable naming for parsing: names are assigned indices in order of first use.
struct VarContext {
  std::vector<std::string> names;
  std::size_t index_of(const std::string& name);
};

/// Parses prefix terms. With a signature, identifiers naming its symbols are
/// operations and all others are variables. Without one, an identifier
/// applied to arguments is an operation, bare identifiers starting with
/// u..z are variables, and other bare identifiers are constants.
Term parse_term(const std::string& text, const Signature* sig, VarContext& ctx);

}  // namespace veq
