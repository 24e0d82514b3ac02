#include "veq/cat_category.hpp"

#include <functional>
#include <map>

#include "veq/error.hpp"
#include "veq/finset.hpp"

namespace veq {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void require_poset(const CatPtr& c) {
  if (!is_poset_category(*c)) fail(ErrorKind::InvalidArgument, c->name() + " is not a poset");
}

void require_parallel(const Functor& p, const Functor& q) {
  if (!same_category(p.src, q.src) || !same_category(p.tgt, q.tgt))
    fail(ErrorKind::NotParallel, p.name + " and " + q.name + " are not parallel");
}

FinFunction on_elements(const Functor& f) { return FinFunction(f.src->objects(), f.tgt->objects(), f.on_objects); }

// Monotone maps p -> q with h(x) drawn from allowed[x], first found.
std::optional<Functor> find_monotone(const CatPtr& p, const CatPtr& q,
                                     const std::vector<std::vector<std::size_t>>& allowed) {
  const auto lp = poset_order(*p);
  const auto lq = poset_order(*q);
  const std::size_t n = p->object_count();
  std::vector<std::size_t> h(n, npos);
  std::function<bool(std::size_t)> place = [&](std::size_t x) {
    if (x == n) return true;
    for (auto y : allowed[x]) {
      bool ok = true;
      for (std::size_t z = 0; z < x && ok; ++z)
        ok = (!lp[z][x] || lq[h[z]][y]) && (!lp[x][z] || lq[y][h[z]]);
      if (!ok) continue;
      h[x] = y;
      if (place(x + 1)) return true;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return monotone_functor("h", p, q, h);
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::vector<std::vector<bool>> poset_order(const FiniteCategory& p) {
  const std::size_t n = p.object_count();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a][b] = !p.hom(a, b).empty();
  return leq;
}

Functor subcategory(const CatPtr& c, const std::vector<bool>& objects, const std::vector<bool>& arrows,
                    const std::string& name) {
  if (objects.size() != c->object_count() || arrows.size() != c->arrow_count())
    fail(ErrorKind::InvariantError, "subcategory masks do not match " + c->name());
  CategoryBuilder b(name);
  std::vector<std::size_t> obj(c->object_count(), npos), arr(c->arrow_count(), npos);
  Functor incl{"incl", nullptr, c, {}, {}};
  for (std::size_t o = 0; o < c->object_count(); ++o)
    if (objects[o]) {
      obj[o] = b.add_object(c->object(o));
      arr[c->id(o)] = b.identity(obj[o]);
      incl.on_objects.push_back(o);
    }
  for (std::size_t a = 0; a < c->arrow_count(); ++a) {
    if (!arrows[a] || arr[a] != npos) continue;
    if (obj[c->src(a)] == npos || obj[c->tgt(a)] == npos)
      fail(ErrorKind::InvariantError, "arrow " + c->arrow_name(a) + " leaves the subcategory");
    arr[a] = b.add_arrow(c->arrow_name(a), obj[c->src(a)], obj[c->tgt(a)]);
  }
  incl.on_arrows.resize(b.arrow_count());
  for (std::size_t a = 0; a < c->arrow_count(); ++a)
    if (arr[a] != npos) incl.on_arrows[arr[a]] = a;
  for (std::size_t f = 0; f < c->arrow_count(); ++f)
    for (std::size_t g = 0; g < c->arrow_count(); ++g) {
      if (arr[f] == npos || arr[g] == npos || c->tgt(f) != c->src(g)) continue;
      const std::size_t h = c->compose(g, f);
      if (arr[h] == npos)
        fail(ErrorKind::InvariantError, "subcategory is not closed under " + c->arrow_name(g) + " after " +
                                            c->arrow_name(f));
      b.set_composite(arr[g], arr[f], arr[h]);
    }
  incl.src = b.finish();
  incl.validate();
  return incl;
}

Functor full_subcategory(const CatPtr& c, const std::vector<bool>& objects, const std::string& name) {
  std::vector<bool> arrows(c->arrow_count());
  for (std::size_t a = 0; a < c->arrow_count(); ++a) arrows[a] = objects.at(c->src(a)) && objects.at(c->tgt(a));
  return subcategory(c, objects, arrows, name);
}

Cone<CatPtr, Functor> product_category(std::span<const CatPtr> factors) {
  if (factors.empty()) fail(ErrorKind::EmptyList, "product of an empty list");
  std::vector<FinSet> obj_sets;
  std::size_t arrow_total = 1;
  for (const auto& c : factors) {
    obj_sets.push_back(c->objects());
    arrow_total *= c->arrow_count();
    if (arrow_total > 20000) fail(ErrorKind::BoundsTooLarge, "product category exceeds 20000 arrows");
  }
  auto objs = veq::product(obj_sets);
  std::string name;
  for (const auto& c : factors) name += (name.empty() ? "" : "x") + c->name();
  CategoryBuilder b(name);
  for (const auto& l : objs.apex.labels()) b.add_object(l);
  // Object index of a tuple of factor objects, matching the FinSet product.
  auto object_index = [&](const std::vector<std::size_t>& digits) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) idx = idx * factors[k]->object_count() + digits[k];
    return idx;
  };
  std::map<std::vector<std::size_t>, std::size_t> arrow_of;
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> digits(factors.size(), 0);
  for (std::size_t i = 0; i < arrow_total; ++i) {
    std::vector<std::size_t> s, t;
    bool identity = true;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      s.push_back(factors[k]->src(digits[k]));
      t.push_back(factors[k]->tgt(digits[k]));
      identity = identity && factors[k]->is_identity(digits[k]);
    }
    std::size_t a;
    if (identity) {
      a = b.identity(object_index(s));
    } else {
      std::string label = "(";
      for (std::size_t k = 0; k < factors.size(); ++k) label += (k ? "," : "") + factors[k]->arrow_name(digits[k]);
      a = b.add_arrow(label + ")", object_index(s), object_index(t));
    }
    arrow_of[digits] = a;
    if (parts.size() <= a) parts.resize(a + 1);
    parts[a] = digits;
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++digits[k] < factors[k]->arrow_count()) break;
      digits[k] = 0;
    }
  }
  for (std::size_t f = 0; f < parts.size(); ++f)
    for (std::size_t g = 0; g < parts.size(); ++g) {
      std::vector<std::size_t> h(factors.size());
      bool ok = true;
      for (std::size_t k = 0; k < factors.size() && ok; ++k) {
        ok = factors[k]->tgt(parts[f][k]) == factors[k]->src(parts[g][k]);
        if (ok) h[k] = factors[k]->compose(parts[g][k], parts[f][k]);
      }
      if (ok) b.set_composite(g, f, arrow_of.at(h));
    }
  Cone<CatPtr, Functor> cone{b.finish(), {}};
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Functor p{"pi" + std::to_string(k + 1), cone.apex, factors[k], objs.projections[k].table(), {}};
    for (const auto& d : parts) p.on_arrows.push_back(d[k]);
    p.validate();
    cone.legs.push_back(std::move(p));
  }
  return cone;
}

// ---- posets ----

bool FinPosCategory::is_mono(const Functor& f) const { return on_elements(f).injective(); }

Functor FinPosCategory::equalizer(const Functor& p, const Functor& q) const {
  require_parallel(p, q);
  std::vector<bool> mask(p.src->object_count());
  for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = p.obj(x) == q.obj(x);
  return full_subcategory(p.src, mask, "Eq(" + p.name + "," + q.name + ")");
}

Functor FinPosCategory::intersect(std::span<const Functor> monos) const {
  if (monos.empty()) fail(ErrorKind::EmptyList, "intersection of an empty list");
  const CatPtr target = monos[0].tgt;
  const std::size_t n = target->object_count();
  std::vector<bool> mask(n, true);
  std::vector<std::vector<std::size_t>> back;
  for (const auto& m : monos) {
    if (!same_category(m.tgt, target)) fail(ErrorKind::TargetMismatch, "monos into different posets");
    if (!is_mono(m)) fail(ErrorKind::InvalidArgument, "intersect expects monomorphisms");
    std::vector<std::size_t> pre(n, npos);
    for (std::size_t x = 0; x < m.src->object_count(); ++x) pre[m.obj(x)] = x;
    for (std::size_t y = 0; y < n; ++y) mask[y] = mask[y] && pre[y] != npos;
    back.push_back(std::move(pre));
  }
  // Pullback order: y <= y' when every mono's preimages are ordered.
  auto sub = SubobjectMono::from_mask(target->objects(), mask);
  const auto& keep = sub.inclusion.table();
  std::vector<std::vector<bool>> leq(keep.size(), std::vector<bool>(keep.size(), true));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      for (std::size_t k = 0; k < monos.size(); ++k)
        leq[i][j] = leq[i][j] && !monos[k].src->hom(back[k][keep[i]], back[k][keep[j]]).empty();
  auto apex = make_poset("meet", sub.carrier.labels(), leq);
  return monotone_functor("incl", apex, target, keep);
}

Cone<CatPtr, Functor> FinPosCategory::product(std::span<const CatPtr> objs) const {
  for (const auto& p : objs) require_poset(p);
  return product_category(objs);
}

Functor FinPosCategory::tuple(const Cone<CatPtr, Functor>& cone, std::span<const Functor> legs) const {
  if (legs.size() != cone.legs.size() || legs.empty())
    fail(ErrorKind::InvalidArgument, "tuple needs one leg per factor");
  const CatPtr dom = legs[0].src;
  std::vector<std::size_t> map(dom->object_count(), npos);
  for (std::size_t x = 0; x < map.size(); ++x) {
    for (std::size_t p = 0; p < cone.apex->object_count() && map[x] == npos; ++p) {
      bool match = true;
      for (std::size_t k = 0; k < legs.size() && match; ++k) match = cone.legs[k].obj(p) == legs[k].obj(x);
      if (match) map[x] = p;
    }
    if (map[x] == npos) fail(ErrorKind::InvariantError, "cone is not a product cone");
  }
  return monotone_functor("<" + legs[0].name + ",...>", dom, cone.apex, map);
}

Functor FinPosCategory::coequalizer(const Functor& p, const Functor& q) const {
  require_parallel(p, q);
  const CatPtr cod = p.tgt;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < p.src->object_count(); ++x) pairs.emplace_back(p.obj(x), q.obj(x));
  const auto leq = poset_order(*cod);
  // Alternate: quotient the set, take the induced preorder's transitive
  // closure, and merge elements that became mutually related.
  while (true) {
    auto quot = quotient_by_pairs(cod->objects(), pairs);
    const std::size_t m = quot.cod().size();
    std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) rel[i][i] = true;
    for (std::size_t a = 0; a < leq.size(); ++a)
      for (std::size_t b = 0; b < leq.size(); ++b)
        if (leq[a][b]) rel[quot(a)][quot(b)] = true;
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i)
        if (rel[i][k])
          for (std::size_t j = 0; j < m; ++j)
            if (rel[k][j]) rel[i][j] = true;
    bool merged = false;
    for (std::size_t a = 0; a < leq.size(); ++a)
      for (std::size_t b = 0; b < leq.size(); ++b)
        if (quot(a) != quot(b) && rel[quot(a)][quot(b)] && rel[quot(b)][quot(a)]) {
          pairs.emplace_back(a, b);
          merged = true;
        }
    if (merged) continue;
    auto apex = make_poset("Coeq(" + p.name + "," + q.name + ")", quot.cod().labels(), rel);
    return monotone_functor("q", cod, apex, quot.table());
  }
}

Cone<CatPtr, Functor> FinPosCategory::coproduct(std::span<const CatPtr> objs) const {
  if (objs.empty()) fail(ErrorKind::EmptyList, "coproduct of an empty list");
  std::vector<FinSet> sets;
  for (const auto& p : objs) {
    require_poset(p);
    sets.push_back(p->objects());
  }
  auto cc = veq::coproduct(sets);
  const std::size_t n = cc.apex.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < objs.size(); ++k) {
    const auto& t = cc.coprojections[k].table();
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) leq[t[a]][t[b]] = !objs[k]->hom(a, b).empty();
  }
  Cone<CatPtr, Functor> cone{make_poset("sum", cc.apex.labels(), leq), {}};
  for (std::size_t k = 0; k < objs.size(); ++k)
    cone.legs.push_back(monotone_functor("in" + std::to_string(k + 1), objs[k], cone.apex, cc.coprojections[k].table()));
  return cone;
}

Functor FinPosCategory::cotuple(const Cone<CatPtr, Functor>& cocone, std::span<const Functor> legs) const {
  if (legs.size() != cocone.legs.size() || legs.empty())
    fail(ErrorKind::InvalidArgument, "cotuple needs one leg per summand");
  std::vector<std::size_t> map(cocone.apex->object_count(), npos);
  for (std::size_t k = 0; k < legs.size(); ++k)
    for (std::size_t x = 0; x < legs[k].src->object_count(); ++x) map[cocone.legs[k].obj(x)] = legs[k].obj(x);
  return monotone_functor("[" + legs[0].name + ",...]", cocone.apex, legs[0].tgt, map);
}

std::pair<Functor, Functor> FinPosCategory::cokernel_pair(const Functor& f) const {
  const CatPtr pair[2] = {f.tgt, f.tgt};
  auto sum = coproduct(pair);
  auto q = coequalizer(veq::compose(sum.legs[0], f), veq::compose(sum.legs[1], f));
  return {veq::compose(q, sum.legs[0]), veq::compose(q, sum.legs[1])};
}

Square<Functor> FinPosCategory::pullback(const Functor& f, const Functor& m) const {
  if (!same_category(f.tgt, m.tgt)) fail(ErrorKind::CodMismatch, "pullback of arrows with different codomains");
  const CatPtr pair[2] = {f.src, m.src};
  auto cone = product(pair);
  std::vector<bool> mask(cone.apex->object_count());
  for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = f.obj(cone.legs[0].obj(x)) == m.obj(cone.legs[1].obj(x));
  auto incl = full_subcategory(cone.apex, mask, "P");
  return {veq::compose(cone.legs[0], incl), veq::compose(cone.legs[1], incl)};
}

std::optional<Functor> FinPosCategory::factor_through(const Functor& f, const Functor& g) const {
  if (!same_category(f.tgt, g.tgt)) fail(ErrorKind::CodMismatch, "compared maps have different codomains");
  std::vector<std::vector<std::size_t>> allowed(f.src->object_count());
  for (std::size_t x = 0; x < allowed.size(); ++x)
    for (std::size_t y = 0; y < g.src->object_count(); ++y)
      if (g.obj(y) == f.obj(x)) allowed[x].push_back(y);
  return find_monotone(f.src, g.src, allowed);
}

std::optional<Functor> FinPosCategory::factor_after(const Functor& f, const Functor& e) const {
  if (!same_category(f.src, e.src)) fail(ErrorKind::DomainMismatch, "compared maps have different domains");
  std::vector<std::vector<std::size_t>> allowed(e.tgt->object_count(), all_indices(f.tgt->object_count()));
  std::vector<std::size_t> forced(e.tgt->object_count(), npos);
  for (std::size_t x = 0; x < e.src->object_count(); ++x) {
    auto& slot = forced[e.obj(x)];
    if (slot != npos && slot != f.obj(x)) return std::nullopt;
    slot = f.obj(x);
  }
  for (std::size_t y = 0; y < forced.size(); ++y)
    if (forced[y] != npos) allowed[y] = {forced[y]};
  return find_monotone(e.tgt, f.tgt, allowed);
}

// ---- categories ----

bool FinCatCategory::is_mono(const Functor& f) const {
  std::vector<bool> seen(f.tgt->arrow_count(), false);
  for (auto a : f.on_arrows) {
    if (seen[a]) return false;
    seen[a] = true;
  }
  return true;
}

Functor FinCatCategory::equalizer(const Functor& p, const Functor& q) const {
  require_parallel(p, q);
  std::vector<bool> objs(p.src->object_count()), arrows(p.src->arrow_count());
  for (std::size_t o = 0; o < objs.size(); ++o) objs[o] = p.obj(o) == q.obj(o);
  for (std::size_t a = 0; a < arrows.size(); ++a) arrows[a] = p(a) == q(a);
  return subcategory(p.src, objs, arrows, "Eq(" + p.name + "," + q.name + ")");
}

Functor FinCatCategory::intersect(std::span<const Functor> monos) const {
  if (monos.empty()) fail(ErrorKind::EmptyList, "intersection of an empty list");
  const CatPtr target = monos[0].tgt;
  std::vector<bool> objs(target->object_count(), true), arrows(target->arrow_count(), true);
  for (const auto& m : monos) {
    if (!same_category(m.tgt, target)) fail(ErrorKind::TargetMismatch, "monos into different categories");
    if (!is_mono(m)) fail(ErrorKind::InvalidArgument, "intersect expects monomorphisms");
    std::vector<bool> o_img(objs.size(), false), a_img(arrows.size(), false);
    for (auto o : m.on_objects) o_img[o] = true;
    for (auto a : m.on_arrows) a_img[a] = true;
    for (std::size_t o = 0; o < objs.size(); ++o) objs[o] = objs[o] && o_img[o];
    for (std::size_t a = 0; a < arrows.size(); ++a) arrows[a] = arrows[a] && a_img[a];
  }
  return subcategory(target, objs, arrows, "meet");
}

Functor FinCatCategory::tuple(const Cone<CatPtr, Functor>& cone, std::span<const Functor> legs) const {
  if (legs.size() != cone.legs.size() || legs.empty())
    fail(ErrorKind::InvalidArgument, "tuple needs one leg per factor");
  const CatPtr dom = legs[0].src;
  Functor out{"<" + legs[0].name + ",...>", dom, cone.apex, {}, {}};
  for (std::size_t x = 0; x < dom->object_count(); ++x) {
    std::size_t found = npos;
    for (std::size_t p = 0; p < cone.apex->object_count() && found == npos; ++p) {
      bool match = true;
      for (std::size_t k = 0; k < legs.size() && match; ++k) match = cone.legs[k].obj(p) == legs[k].obj(x);
      if (match) found = p;
    }
    if (found == npos) fail(ErrorKind::InvariantError, "cone is not a product cone");
    out.on_objects.push_back(found);
  }
  for (std::size_t a = 0; a < dom->arrow_count(); ++a) {
    std::size_t found = npos;
    for (std::size_t p = 0; p < cone.apex->arrow_count() && found == npos; ++p) {
      bool match = true;
      for (std::size_t k = 0; k < legs.size() && match; ++k) match = cone.legs[k](p) == legs[k](a);
      if (match) found = p;
    }
    if (found == npos) fail(ErrorKind::InvariantError, "cone is not a product cone");
    out.on_arrows.push_back(found);
  }
  out.validate();
  return out;
}

Square<Functor> FinCatCategory::pullback(const Functor& f, const Functor& m) const {
  if (!same_category(f.tgt, m.tgt)) fail(ErrorKind::CodMismatch, "pullback of functors with different codomains");
  const CatPtr pair[2] = {f.src, m.src};
  auto cone = product_category(pair);
  std::vector<bool> objs(cone.apex->object_count()), arrows(cone.apex->arrow_count());
  for (std::size_t o = 0; o < objs.size(); ++o) objs[o] = f.obj(cone.legs[0].obj(o)) == m.obj(cone.legs[1].obj(o));
  for (std::size_t a = 0; a < arrows.size(); ++a) arrows[a] = f(cone.legs[0](a)) == m(cone.legs[1](a));
  auto incl = subcategory(cone.apex, objs, arrows, "P");
  return {veq::compose(cone.legs[0], incl), veq::compose(cone.legs[1], incl)};
}

std::optional<Functor> FinCatCategory::factor_through(const Functor& f, const Functor& g) const {
  if (!same_category(f.tgt, g.tgt)) fail(ErrorKind::CodMismatch, "compared functors have different codomains");
  if (is_mono(g)) {
    std::vector<std::size_t> back(g.tgt->arrow_count(), npos);
    for (std::size_t a = 0; a < g.src->arrow_count(); ++a) back[g(a)] = a;
    Functor h{"h", f.src, g.src, {}, {}};
    for (std::size_t o = 0; o < f.src->object_count(); ++o) {
      const std::size_t a = back[f.tgt->id(f.obj(o))];
      if (a == npos) return std::nullopt;
      h.on_objects.push_back(g.src->src(a));
    }
    for (std::size_t a = 0; a < f.src->arrow_count(); ++a) {
      if (back[f(a)] == npos) return std::nullopt;
      h.on_arrows.push_back(back[f(a)]);
    }
    h.validate();
    return h;
  }
  for (auto& h : all_functors(f.src, g.src))
    if (veq::compose(g, h) == f) return h;
  return std::nullopt;
}

std::optional<Functor> FinCatCategory::factor_after(const Functor& f, const Functor& e) const {
  if (!same_category(f.src, e.src)) fail(ErrorKind::DomainMismatch, "compared functors have different domains");
  for (auto& h : all_functors(e.tgt, f.tgt))
    if (veq::compose(h, e) == f) return h;
  return std::nullopt;
}

}  // namespace veq
