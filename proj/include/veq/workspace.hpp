#pragma once

// Workspace files: named sets, functions, systems, algebras, groups,
// theories, theory morphisms, categories, functors, adjunctions and series
// in one declarative language.
//
//   set A = {a, b, c}
//   fun p : A -> B = {a -> x, b -> y, c -> y}
//   system E on A { p ~ q; r.s ~ t }
//   cosystem K on B { p ~ q }
//   algebra SL on {0, 1} { mul:2 = [0 0 0 1] }
//   group Z2 on {e, a} { mul = [e a a e] }
//   group S3 = builtin S3
//   theory Mon { op mul:2; op e:0; axiom assoc: mul(mul(x,y),z) = mul(x,mul(y,z)) }
//   thmor P : Mon -> Mon { mul -> mul(y,x); e -> e }
//   category P = poset {0, 1, 2} { 0 <= 1; 1 <= 2 }
//   category C { objects a, b; arrow f : a -> b; arrow g : b -> a; f.g = 1_b; g.f = 1_a }
//   functor F : P -> Q = {0 -> 1, 1 -> 2 | 0<=1 -> 1<=2}
//   adjunction A = H -| G
//   series fib = rec(0, 1; 1, 1) prec 64
//
// Declarations end at a newline or ';'. Inside braces newlines separate
// items. '#' starts a comment. Labels that are not plain words are quoted.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "veq/algebra.hpp"
#include "veq/category.hpp"
#include "veq/finset.hpp"
#include "veq/groups.hpp"
#include "veq/series.hpp"
#include "veq/theories.hpp"

namespace veq {

struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::string to_string(const SourceLocation& at);

enum class DefKind { Set, Fun, System, Cosystem, Algebra, Group, Theory, Thmor, Category, Functor, Adjunction, Series };

std::string to_string(DefKind k);

struct SetDef {
  FinSet set;
};

struct FunDef {
  std::string dom;
  std::string cod;
  FinFunction fn;
};

/// Composite written g.f (g after f); a single name is a chain of one.
using ArrowChain = std::vector<std::string>;

struct SystemDef {
  std::string on;
  std::vector<std::pair<ArrowChain, ArrowChain>> equations;
};

struct AlgebraDef {
  AlgebraPtr algebra;
};

struct GroupDef {
  GroupPtr group;
  std::optional<std::string> builtin;
};

struct TheoryDef {
  TheoryPtr theory;
};

struct ThmorDef {
  TheoryMorphism morphism;
};

struct CategoryDef {
  CatPtr category;
  bool poset = false;
};

struct FunctorDef {
  Functor functor;
};

struct AdjunctionDef {
  std::string left;
  std::string right;
  Adjunction adjunction;
};

struct SeriesDef {
  enum class Form { List, Recurrence, Rational };
  Form form = Form::List;
  std::vector<Rational> first;   // coefficients, initial terms, or numerator
  std::vector<Rational> second;  // recurrence coefficients or denominator
  TruncatedSeries series{std::vector<Rational>{0}};
};

/// Definitions keep their declaration order for printing.
class Workspace {
 public:
  struct Entry {
    DefKind kind;
    std::string name;
    SourceLocation at;
  };

  /// Parses and appends one source; throws ParseError, ResolutionError or
  /// InvariantError with the location of the offending definition.
  void load(const std::string& text, const std::string& file = "<input>");

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry* find(DefKind kind, const std::string& name) const;
  const Entry& require(DefKind kind, const std::string& name) const;

  const SetDef& set(const std::string& name) const { return get(sets_, DefKind::Set, name); }
  const FunDef& fun(const std::string& name) const { return get(funs_, DefKind::Fun, name); }
  const SystemDef& system(const std::string& name) const { return get(systems_, DefKind::System, name); }
  const SystemDef& cosystem(const std::string& name) const { return get(cosystems_, DefKind::Cosystem, name); }
  const AlgebraDef& algebra(const std::string& name) const { return get(algebras_, DefKind::Algebra, name); }
  const GroupDef& group(const std::string& name) const { return get(groups_, DefKind::Group, name); }
  const TheoryDef& theory(const std::string& name) const { return get(theories_, DefKind::Theory, name); }
  const ThmorDef& thmor(const std::string& name) const { return get(thmors_, DefKind::Thmor, name); }
  const CategoryDef& category(const std::string& name) const { return get(categories_, DefKind::Category, name); }
  const FunctorDef& functor(const std::string& name) const { return get(functors_, DefKind::Functor, name); }
  const AdjunctionDef& adjunction(const std::string& name) const {
    return get(adjunctions_, DefKind::Adjunction, name);
  }
  const SeriesDef& series(const std::string& name) const { return get(series_, DefKind::Series, name); }

  /// Canonical source text; load(print()) gives an equal workspace.
  std::string print() const;
  /// Re-runs every definition's invariant checks; returns the count checked.
  std::size_t check() const;

  friend bool operator==(const Workspace& a, const Workspace& b);

 private:
  friend class Parser;
  template <class T>
  const T& get(const std::map<std::string, T>& m, DefKind kind, const std::string& name) const {
    auto it = m.find(name);
    if (it == m.end()) fail(ErrorKind::ResolutionError, "no " + to_string(kind) + " named '" + name + "'");
    return it->second;
  }
  void add(DefKind kind, const std::string& name, const SourceLocation& at);

  std::vector<Entry> entries_;
  std::map<std::string, SetDef> sets_;
  std::map<std::string, FunDef> funs_;
  std::map<std::string, SystemDef> systems_;
  std::map<std::string, SystemDef> cosystems_;
  std::map<std::string, AlgebraDef> algebras_;
  std::map<std::string, GroupDef> groups_;
  std::map<std::string, TheoryDef> theories_;
  std::map<std::string, ThmorDef> thmors_;
  std::map<std::string, CategoryDef> categories_;
  std::map<std::string, FunctorDef> functors_;
  std::map<std::string, AdjunctionDef> adjunctions_;
  std::map<std::string, SeriesDef> series_;
};

/// Quotes a label unless it is a plain word.
std::string quote_label(const std::string& label);

}  // namespace veq
