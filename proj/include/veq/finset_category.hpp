#pragma once

#include "veq/equations.hpp"
#include "veq/finset.hpp"

namespace veq {

/// Finite sets and total functions. Supplies every capability.
class FinSetCategory final : public CompCategory<FinSet, FinFunction> {
 public:
  std::string name() const override { return "FinSet"; }
  FinSet source(const FinFunction& f) const override { return f.dom(); }
  FinSet target(const FinFunction& f) const override { return f.cod(); }
  bool same_object(const FinSet& a, const FinSet& b) const override { return a == b; }
  bool equal(const FinFunction& f, const FinFunction& g) const override { return f == g; }
  FinFunction compose(const FinFunction& g, const FinFunction& f) const override { return veq::compose(g, f); }
  FinFunction identity(const FinSet& a) const override { return FinFunction::identity(a); }
  Capabilities capabilities() const override {
    return {true, true, true, true, true, true, true, true, true};
  }

  bool is_mono(const FinFunction& f) const override { return f.injective(); }
  FinFunction equalizer(const FinFunction& p, const FinFunction& q) const override {
    return veq::equalizer(p, q).inclusion;
  }
  FinFunction intersect(std::span<const FinFunction> monos) const override;
  Cone<FinSet, FinFunction> product(std::span<const FinSet> objs) const override;
  FinFunction tuple(const Cone<FinSet, FinFunction>& cone, std::span<const FinFunction> legs) const override;
  FinFunction coequalizer(const FinFunction& p, const FinFunction& q) const override {
    return veq::coequalizer(p, q);
  }
  Cone<FinSet, FinFunction> coproduct(std::span<const FinSet> objs) const override;
  FinFunction cotuple(const Cone<FinSet, FinFunction>& cocone, std::span<const FinFunction> legs) const override;
  std::pair<FinFunction, FinFunction> cokernel_pair(const FinFunction& f) const override {
    return veq::cokernel_pair(f);
  }
  Square<FinFunction> pullback(const FinFunction& f, const FinFunction& m) const override {
    auto sq = veq::pullback(f, m);
    return {sq.first, sq.second};
  }
  std::optional<FinFunction> factor_through(const FinFunction& f, const FinFunction& g) const override {
    return veq::factor_through(f, g);
  }
  std::optional<FinFunction> factor_after(const FinFunction& f, const FinFunction& e) const override;
};

}  // namespace veq
