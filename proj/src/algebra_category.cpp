#include "veq/algebra_category.hpp"

#include "veq/error.hpp"

namespace veq {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}

bool FinAlgCategory::equal(const AlgHom& f, const AlgHom& g) const {
  return same_object(f.dom, g.dom) && same_object(f.cod, g.cod) && f.map == g.map;
}

AlgHom FinAlgCategory::compose(const AlgHom& g, const AlgHom& f) const {
  if (!same_object(f.cod, g.dom)) fail(ErrorKind::DomainMismatch, "composite of non-composable homomorphisms");
  std::vector<std::size_t> map(f.map.size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = g.map[f.map[x]];
  return {f.dom, g.cod, std::move(map)};
}

AlgHom FinAlgCategory::identity(const AlgebraPtr& a) const {
  std::vector<std::size_t> map(a->size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = x;
  return {a, a, std::move(map)};
}

AlgHom FinAlgCategory::sub(const AlgebraPtr& a, const std::vector<bool>& mask) const {
  auto s = restrict_to(*a, mask);
  return {std::make_shared<const FiniteAlgebra>(std::move(s.algebra)), a, s.inclusion.table()};
}

AlgHom FinAlgCategory::equalizer(const AlgHom& p, const AlgHom& q) const {
  if (!same_object(p.dom, q.dom) || !same_object(p.cod, q.cod))
    fail(ErrorKind::NotParallel, "equalizer of non-parallel homomorphisms");
  std::vector<bool> mask(p.dom->size());
  for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = p.map[x] == q.map[x];
  return sub(p.dom, mask);
}

AlgHom FinAlgCategory::intersect(std::span<const AlgHom> monos) const {
  if (monos.empty()) fail(ErrorKind::EmptyList, "intersection of an empty list");
  const AlgebraPtr target = monos[0].cod;
  std::vector<bool> mask(target->size(), true);
  for (const auto& m : monos) {
    if (!same_object(m.cod, target)) fail(ErrorKind::TargetMismatch, "monos into different algebras");
    if (!is_mono(m)) fail(ErrorKind::InvalidArgument, "intersect expects monomorphisms");
    auto img = m.as_function().image_mask();
    for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = mask[x] && img[x];
  }
  return sub(target, mask);
}

Cone<AlgebraPtr, AlgHom> FinAlgCategory::product(std::span<const AlgebraPtr> objs) const {
  if (objs.empty()) fail(ErrorKind::EmptyList, "product of an empty list");
  if (objs.size() == 1) return {objs[0], {identity(objs[0])}};
  std::vector<FiniteAlgebra> algs;
  for (const auto& a : objs) algs.push_back(*a);
  auto p = product_algebra(algs);
  auto apex = std::make_shared<const FiniteAlgebra>(std::move(p.algebra));
  Cone<AlgebraPtr, AlgHom> cone{apex, {}};
  for (std::size_t k = 0; k < objs.size(); ++k) cone.legs.push_back({apex, objs[k], p.projections[k].table()});
  return cone;
}

AlgHom FinAlgCategory::tuple(const Cone<AlgebraPtr, AlgHom>& cone, std::span<const AlgHom> legs) const {
  if (legs.size() != cone.legs.size() || legs.empty())
    fail(ErrorKind::InvalidArgument, "tuple needs one leg per factor");
  const AlgebraPtr dom = legs[0].dom;
  std::vector<std::size_t> map(dom->size(), npos);
  for (std::size_t x = 0; x < dom->size(); ++x) {
    for (std::size_t p = 0; p < cone.apex->size() && map[x] == npos; ++p) {
      bool match = true;
      for (std::size_t k = 0; k < legs.size() && match; ++k) match = cone.legs[k].map[p] == legs[k].map[x];
      if (match) map[x] = p;
    }
    if (map[x] == npos) fail(ErrorKind::InvariantError, "cone is not a product cone");
  }
  return {dom, cone.apex, std::move(map)};
}

AlgHom FinAlgCategory::coequalizer(const AlgHom& p, const AlgHom& q) const {
  if (!same_object(p.dom, q.dom) || !same_object(p.cod, q.cod))
    fail(ErrorKind::NotParallel, "coequalizer of non-parallel homomorphisms");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < p.map.size(); ++x) pairs.emplace_back(p.map[x], q.map[x]);
  auto quot = quotient_algebra(*p.cod, generated_congruence(*p.cod, pairs));
  auto target = std::make_shared<const FiniteAlgebra>(std::move(quot.algebra));
  return {p.cod, target, quot.projection.table()};
}

Square<AlgHom> FinAlgCategory::pullback(const AlgHom& f, const AlgHom& m) const {
  if (!same_object(f.cod, m.cod)) fail(ErrorKind::CodMismatch, "pullback of arrows with different codomains");
  std::vector<AlgebraPtr> pair{f.dom, m.dom};
  auto cone = product(pair);
  std::vector<bool> mask(cone.apex->size());
  for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = f.map[cone.legs[0].map[x]] == m.map[cone.legs[1].map[x]];
  auto incl = sub(cone.apex, mask);
  return {compose(cone.legs[0], incl), compose(cone.legs[1], incl)};
}

std::optional<AlgHom> FinAlgCategory::factor_through(const AlgHom& f, const AlgHom& g) const {
  if (!same_object(f.cod, g.cod)) fail(ErrorKind::CodMismatch, "compared homomorphisms have different codomains");
  if (is_mono(g)) {
    std::vector<std::size_t> back(g.cod->size(), npos);
    for (std::size_t y = 0; y < g.dom->size(); ++y) back[g.map[y]] = y;
    std::vector<std::size_t> map(f.dom->size());
    for (std::size_t x = 0; x < map.size(); ++x) {
      map[x] = back[f.map[x]];
      if (map[x] == npos) return std::nullopt;
    }
    return AlgHom{f.dom, g.dom, std::move(map)};
  }
  for (auto& h : homomorphisms(*f.dom, *g.dom)) {
    bool ok = true;
    for (std::size_t x = 0; x < h.size() && ok; ++x) ok = g.map[h[x]] == f.map[x];
    if (ok) return AlgHom{f.dom, g.dom, std::move(h)};
  }
  return std::nullopt;
}

std::optional<AlgHom> FinAlgCategory::factor_after(const AlgHom& f, const AlgHom& e) const {
  if (!same_object(f.dom, e.dom)) fail(ErrorKind::DomainMismatch, "compared homomorphisms have different domains");
  for (auto& h : homomorphisms(*e.cod, *f.cod)) {
    bool ok = true;
    for (std::size_t x = 0; x < f.map.size() && ok; ++x) ok = h[e.map[x]] == f.map[x];
    if (ok) return AlgHom{e.cod, f.cod, std::move(h)};
  }
  return std::nullopt;
}

}  // namespace veq
