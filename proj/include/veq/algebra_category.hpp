#pragma once

#include "veq/algebra.hpp"
#include "veq/equations.hpp"

namespace veq {

struct AlgHom {
  AlgebraPtr dom;
  AlgebraPtr cod;
  std::vector<std::size_t> map;

  FinFunction as_function() const { return FinFunction(dom->carrier, cod->carrier, map); }
};

/// Finite Σ-algebras of one signature. Coequalizers are quotients by the
/// generated congruence; coproducts and cokernel pairs are not supplied.
class FinAlgCategory final : public CompCategory<AlgebraPtr, AlgHom> {
 public:
  std::string name() const override { return "FinAlg"; }
  AlgebraPtr source(const AlgHom& f) const override { return f.dom; }
  AlgebraPtr target(const AlgHom& f) const override { return f.cod; }
  bool same_object(const AlgebraPtr& a, const AlgebraPtr& b) const override { return a == b || *a == *b; }
  bool equal(const AlgHom& f, const AlgHom& g) const override;
  AlgHom compose(const AlgHom& g, const AlgHom& f) const override;
  AlgHom identity(const AlgebraPtr& a) const override;
  Capabilities capabilities() const override {
    Capabilities c;
    c.equalizers = c.intersections = c.products = c.coequalizers = c.pullbacks = true;
    c.mono_test = c.factorization = true;
    return c;
  }

  bool is_mono(const AlgHom& f) const override { return f.as_function().injective(); }
  AlgHom equalizer(const AlgHom& p, const AlgHom& q) const override;
  AlgHom intersect(std::span<const AlgHom> monos) const override;
  Cone<AlgebraPtr, AlgHom> product(std::span<const AlgebraPtr> objs) const override;
  AlgHom tuple(const Cone<AlgebraPtr, AlgHom>& cone, std::span<const AlgHom> legs) const override;
  AlgHom coequalizer(const AlgHom& p, const AlgHom& q) const override;
  Square<AlgHom> pullback(const AlgHom& f, const AlgHom& m) const override;
  std::optional<AlgHom> factor_through(const AlgHom& f, const AlgHom& g) const override;
  std::optional<AlgHom> factor_after(const AlgHom& f, const AlgHom& e) const override;

  /// Subalgebra on a closed mask with its inclusion.
  AlgHom sub(const AlgebraPtr& a, const std::vector<bool>& mask) const;
};

}  // namespace veq
