#include "veq/finset_category.hpp"

namespace veq {

FinFunction FinSetCategory::intersect(std::span<const FinFunction> monos) const {
  if (monos.empty()) fail(ErrorKind::EmptyList, "intersection of an empty list");
  std::vector<SubobjectMono> subs;
  for (const auto& m : monos) {
    if (!m.injective()) fail(ErrorKind::InvalidArgument, "intersect expects monos, got " + to_string(m));
    subs.push_back(image(m));
  }
  return veq::intersect(subs).inclusion;
}

Cone<FinSet, FinFunction> FinSetCategory::product(std::span<const FinSet> objs) const {
  auto cone = veq::product(objs);
  return {cone.apex, cone.projections};
}

FinFunction FinSetCategory::tuple(const Cone<FinSet, FinFunction>& cone, std::span<const FinFunction> legs) const {
  return veq::tuple(ProductCone{cone.apex, cone.legs}, legs);
}

Cone<FinSet, FinFunction> FinSetCategory::coproduct(std::span<const FinSet> objs) const {
  auto cocone = veq::coproduct(objs);
  return {cocone.apex, cocone.coprojections};
}

FinFunction FinSetCategory::cotuple(const Cone<FinSet, FinFunction>& cocone,
                                    std::span<const FinFunction> legs) const {
  return veq::cotuple(CoproductCocone{cocone.apex, cocone.legs}, legs);
}

std::optional<FinFunction> FinSetCategory::factor_after(const FinFunction& f, const FinFunction& e) const {
  if (!(f.dom() == e.dom())) fail(ErrorKind::DomainMismatch, "compared arrows have different domains");
  const std::size_t unset = f.cod().size();
  std::vector<std::size_t> table(e.cod().size(), unset);
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    auto& slot = table[e(x)];
    if (slot != unset && slot != f(x)) return std::nullopt;
    slot = f(x);
  }
  for (auto& y : table) {
    if (y != unset) continue;
    if (f.cod().empty()) return std::nullopt;
    y = 0;
  }
  return FinFunction(e.cod(), f.cod(), std::move(table));
}

}  // namespace veq
