#pragma once

// Finite posets with monotone maps and finite categories with functors as
// computational categories. Both use CatPtr objects and Functor arrows;
// a poset is a category with at most one arrow per hom-set and no
// non-identity isos.

#include "veq/category.hpp"
#include "veq/equations.hpp"

namespace veq {

/// leq[a][b] iff hom(a, b) is non-empty.
std::vector<std::vector<bool>> poset_order(const FiniteCategory& p);

/// Subcategory on the marked objects and arrows (identities of marked
/// objects are added) with its inclusion. Throws InvariantError when the
/// marked arrows are not closed under composition or leave the objects.
Functor subcategory(const CatPtr& c, const std::vector<bool>& objects, const std::vector<bool>& arrows,
                    const std::string& name);
/// Full subcategory on the marked objects.
Functor full_subcategory(const CatPtr& c, const std::vector<bool>& objects, const std::string& name);

/// Product of finite categories with its projections; objects "(a,b)".
Cone<CatPtr, Functor> product_category(std::span<const CatPtr> factors);

class FinPosCategory final : public CompCategory<CatPtr, Functor> {
 public:
  std::string name() const override { return "FinPos"; }
  CatPtr source(const Functor& f) const override { return f.src; }
  CatPtr target(const Functor& f) const override { return f.tgt; }
  bool same_object(const CatPtr& a, const CatPtr& b) const override { return same_category(a, b); }
  bool equal(const Functor& f, const Functor& g) const override { return f == g; }
  Functor compose(const Functor& g, const Functor& f) const override { return veq::compose(g, f); }
  Functor identity(const CatPtr& a) const override { return identity_functor(a); }
  Capabilities capabilities() const override { return {true, true, true, true, true, true, true, true, true}; }

  bool is_mono(const Functor& f) const override;
  Functor equalizer(const Functor& p, const Functor& q) const override;
  Functor intersect(std::span<const Functor> monos) const override;
  Cone<CatPtr, Functor> product(std::span<const CatPtr> objs) const override;
  Functor tuple(const Cone<CatPtr, Functor>& cone, std::span<const Functor> legs) const override;
  /// Quotient of the underlying set, then the generated preorder with its
  /// cycles collapsed.
  Functor coequalizer(const Functor& p, const Functor& q) const override;
  Cone<CatPtr, Functor> coproduct(std::span<const CatPtr> objs) const override;
  Functor cotuple(const Cone<CatPtr, Functor>& cocone, std::span<const Functor> legs) const override;
  std::pair<Functor, Functor> cokernel_pair(const Functor& f) const override;
  Square<Functor> pullback(const Functor& f, const Functor& m) const override;
  std::optional<Functor> factor_through(const Functor& f, const Functor& g) const override;
  std::optional<Functor> factor_after(const Functor& f, const Functor& e) const override;
};

/// Finite categories. Coequalizers, coproducts and cokernel pairs are not
/// supplied.
class FinCatCategory final : public CompCategory<CatPtr, Functor> {
 public:
  std::string name() const override { return "FinCat"; }
  CatPtr source(const Functor& f) const override { return f.src; }
  CatPtr target(const Functor& f) const override { return f.tgt; }
  bool same_object(const CatPtr& a, const CatPtr& b) const override { return same_category(a, b); }
  bool equal(const Functor& f, const Functor& g) const override { return f == g; }
  Functor compose(const Functor& g, const Functor& f) const override { return veq::compose(g, f); }
  Functor identity(const CatPtr& a) const override { return identity_functor(a); }
  Capabilities capabilities() const override {
    Capabilities c;
    c.equalizers = c.intersections = c.products = c.pullbacks = c.mono_test = c.factorization = true;
    return c;
  }

  /// Injective on arrows.
  bool is_mono(const Functor& f) const override;
  /// Subcategory where the functors agree on objects and arrows.
  Functor equalizer(const Functor& p, const Functor& q) const override;
  Functor intersect(std::span<const Functor> monos) const override;
  Cone<CatPtr, Functor> product(std::span<const CatPtr> objs) const override { return product_category(objs); }
  Functor tuple(const Cone<CatPtr, Functor>& cone, std::span<const Functor> legs) const override;
  Square<Functor> pullback(const Functor& f, const Functor& m) const override;
  std::optional<Functor> factor_through(const Functor& f, const Functor& g) const override;
  std::optional<Functor> factor_after(const Functor& f, const Functor& e) const override;
};

}  // namespace veq
