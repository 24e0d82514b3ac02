#pragma once

// Finite categories given by explicit composition tables, with functors,
// natural transformations, adjunctions, posets and finite limit searches.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "veq/finset.hpp"

namespace veq {

class FiniteCategory {
 public:
  struct Arrow {
    std::string name;
    std::size_t src = 0;
    std::size_t tgt = 0;
  };

  const std::string& name() const noexcept { return name_; }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const FinSet& objects() const noexcept { return objects_; }
  const std::string& object(std::size_t o) const { return objects_.label(o); }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  const std::string& arrow_name(std::size_t a) const { return arrows_.at(a).name; }
  std::size_t src(std::size_t a) const { return arrows_.at(a).src; }
  std::size_t tgt(std::size_t a) const { return arrows_.at(a).tgt; }
  std::size_t id(std::size_t o) const { return identities_.at(o); }
  bool is_identity(std::size_t a) const { return identities_.at(src(a)) == a; }

  /// g∘f; throws DomainMismatch unless tgt(f) = src(g).
  std::size_t compose(std::size_t g, std::size_t f) const;
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const { return homs_[a * object_count() + b]; }
  std::optional<std::size_t> inverse(std::size_t f) const;
  bool is_iso(std::size_t f) const { return inverse(f).has_value(); }

  std::optional<std::size_t> find_object(const std::string& label) const { return objects_.index_of(label); }
  std::optional<std::size_t> find_arrow(const std::string& label) const;

  friend bool operator==(const FiniteCategory& a, const FiniteCategory& b);

 private:
  friend class CategoryBuilder;
  std::string name_;
  FinSet objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> comp_;  // g * arrows + f, npos when not composable
  std::vector<std::vector<std::size_t>> homs_;
  std::map<std::string, std::size_t> arrow_index_;
};

using CatPtr = std::shared_ptr<const FiniteCategory>;

/// Accumulates objects, arrows and composites. Identity arrows "1_<obj>" are
/// added with each object and composites with identities are implicit.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name) : name_(std::move(name)) {}
  std::size_t add_object(const std::string& label);
  std::size_t add_arrow(const std::string& name, std::size_t src, std::size_t tgt);
  std::size_t identity(std::size_t o) const { return identities_.at(o); }
  std::size_t arrow_count() const { return arrows_.size(); }
  void set_composite(std::size_t g, std::size_t f, std::size_t h);
  /// Validates totality, associativity and unit laws; throws InvariantError.
  CatPtr finish();

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<FiniteCategory::Arrow> arrows_;
  std::vector<std::size_t> identities_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp_;
};

/// Category presented by a transitive, antisymmetric, reflexive relation:
/// arrows "a<=b" for a ≠ b, identities "1_a".
CatPtr make_poset(const std::string& name, const std::vector<std::string>& elements,
                  const std::vector<std::vector<bool>>& leq);
/// Discrete category on the labels.
CatPtr make_discrete(const std::string& name, const std::vector<std::string>& elements);
/// True when every hom-set has at most one arrow and only identities are isos.
bool is_poset_category(const FiniteCategory& c);

struct Functor {
  std::string name;
  CatPtr src;
  CatPtr tgt;
  std::vector<std::size_t> on_objects;
  std::vector<std::size_t> on_arrows;

  /// Sources, targets, identities, composites. Throws InvariantError.
  void validate() const;
  std::size_t operator()(std::size_t arrow) const { return on_arrows.at(arrow); }
  std::size_t obj(std::size_t o) const { return on_objects.at(o); }
};

bool same_category(const CatPtr& a, const CatPtr& b);
bool operator==(const Functor& f, const Functor& g);
Functor identity_functor(const CatPtr& c);
/// g∘f
Functor compose(const Functor& g, const Functor& f);
/// Functor between posets from a monotone map on elements.
Functor monotone_functor(const std::string& name, const CatPtr& p, const CatPtr& q, const std::vector<std::size_t>& map);
/// Functor sending everything to one object and its identity.
Functor constant_functor(const CatPtr& c, const CatPtr& d, std::size_t object);
/// Every functor c -> d, by backtracking; throws BoundsTooLarge past `limit`.
std::vector<Functor> all_functors(const CatPtr& c, const CatPtr& d, std::size_t limit = 100000);

struct NatTrans {
  Functor from;
  Functor to;
  std::vector<std::size_t> components;

  void validate() const;
};

/// Every natural transformation from -> to.
std::vector<NatTrans> all_nat_trans(const Functor& from, const Functor& to, std::size_t limit = 100000);

/// left ⊣ right with unit: 1 -> right∘left and counit: left∘right -> 1.
struct Adjunction {
  Functor left;   // B -> A
  Functor right;  // A -> B
  NatTrans unit;
  NatTrans counit;

  /// Throws AdjunctionInvalid when a triangle identity fails.
  void validate() const;
};

/// The adjunction h ⊣ g between posets if it exists (b ≤ g h b, h g a ≤ a).
std::optional<Adjunction> poset_adjunction(const Functor& h, const Functor& g);

struct BinaryProduct {
  std::size_t apex = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

bool is_binary_product(const FiniteCategory& c, const BinaryProduct& p, std::size_t x, std::size_t y);
std::optional<BinaryProduct> find_binary_product(const FiniteCategory& c, std::size_t x, std::size_t y);
/// e: E -> X equalizes f, g: X -> Y universally.
bool is_equalizer(const FiniteCategory& c, std::size_t e, std::size_t f, std::size_t g);
std::optional<std::size_t> find_equalizer(const FiniteCategory& c, std::size_t f, std::size_t g);

std::string to_string(const FiniteCategory& c);
std::string to_string(const Functor& f);

}  // namespace veq
