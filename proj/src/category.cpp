#include "veq/category.hpp"

#include <algorithm>
#include <functional>

#include "veq/error.hpp"

namespace veq {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}

std::size_t FiniteCategory::compose(std::size_t g, std::size_t f) const {
  const std::size_t h = comp_.at(g * arrows_.size() + f);
  if (h == npos)
    fail(ErrorKind::DomainMismatch, "in " + name_ + ", " + arrows_[g].name + " cannot follow " + arrows_[f].name);
  return h;
}

std::optional<std::size_t> FiniteCategory::inverse(std::size_t f) const {
  for (auto g : hom(tgt(f), src(f)))
    if (compose(g, f) == id(src(f)) && compose(f, g) == id(tgt(f))) return g;
  return std::nullopt;
}

std::optional<std::size_t> FiniteCategory::find_arrow(const std::string& label) const {
  auto it = arrow_index_.find(label);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
  if (!(a.objects_ == b.objects_) || a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i)
    if (a.arrows_[i].name != b.arrows_[i].name || a.arrows_[i].src != b.arrows_[i].src ||
        a.arrows_[i].tgt != b.arrows_[i].tgt)
      return false;
  return a.identities_ == b.identities_ && a.comp_ == b.comp_;
}

std::size_t CategoryBuilder::add_object(const std::string& label) {
  objects_.push_back(label);
  const std::size_t o = objects_.size() - 1;
  arrows_.push_back({"1_" + label, o, o});
  identities_.push_back(arrows_.size() - 1);
  return o;
}

std::size_t CategoryBuilder::add_arrow(const std::string& name, std::size_t src, std::size_t tgt) {
  if (src >= objects_.size() || tgt >= objects_.size())
    fail(ErrorKind::InvariantError, "arrow " + name + " of " + name_ + " has an unknown endpoint");
  arrows_.push_back({name, src, tgt});
  return arrows_.size() - 1;
}

void CategoryBuilder::set_composite(std::size_t g, std::size_t f, std::size_t h) {
  if (g >= arrows_.size() || f >= arrows_.size() || h >= arrows_.size())
    fail(ErrorKind::InvariantError, "composite in " + name_ + " names an unknown arrow");
  if (arrows_[f].tgt != arrows_[g].src)
    fail(ErrorKind::InvariantError, "in " + name_ + ", " + arrows_[g].name + " cannot follow " + arrows_[f].name);
  if (arrows_[h].src != arrows_[f].src || arrows_[h].tgt != arrows_[g].tgt)
    fail(ErrorKind::InvariantError, "in " + name_ + ", " + arrows_[h].name + " cannot be " + arrows_[g].name +
                                        " after " + arrows_[f].name);
  auto [it, fresh] = comp_.emplace(std::make_pair(g, f), h);
  if (!fresh && it->second != h)
    fail(ErrorKind::InvariantError, "in " + name_ + ", two composites given for " + arrows_[g].name + " after " +
                                        arrows_[f].name);
}

CatPtr CategoryBuilder::finish() {
  auto c = std::make_shared<FiniteCategory>();
  c->name_ = name_;
  c->objects_ = FinSet(objects_);
  c->arrows_ = arrows_;
  c->identities_ = identities_;
  const std::size_t m = arrows_.size(), n = objects_.size();
  for (std::size_t f = 0; f < m; ++f) {
    set_composite(identities_[arrows_[f].tgt], f, f);
    set_composite(f, identities_[arrows_[f].src], f);
  }
  c->comp_.assign(m * m, npos);
  for (const auto& [gf, h] : comp_) c->comp_[gf.first * m + gf.second] = h;
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (arrows_[f].tgt == arrows_[g].src && c->comp_[g * m + f] == npos)
        fail(ErrorKind::InvariantError, "in " + name_ + ", no composite for " + arrows_[g].name + " after " +
                                            arrows_[f].name);
  c->homs_.assign(n * n, {});
  for (std::size_t f = 0; f < m; ++f) c->homs_[arrows_[f].src * n + arrows_[f].tgt].push_back(f);
  for (std::size_t f = 0; f < m; ++f) {
    if (!c->arrow_index_.emplace(arrows_[f].name, f).second)
      fail(ErrorKind::InvariantError, "arrow name " + arrows_[f].name + " repeats in " + name_);
  }
  // Associativity over composable triples.
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (arrows_[f].tgt != arrows_[g].src) continue;
      const std::size_t gf = c->comp_[g * m + f];
      for (std::size_t t = 0; t < n; ++t)
        for (auto h : c->homs_[arrows_[g].tgt * n + t])
          if (c->comp_[h * m + gf] != c->comp_[c->comp_[h * m + g] * m + f])
            fail(ErrorKind::InvariantError, "composition of " + name_ + " is not associative at " + arrows_[h].name +
                                                ", " + arrows_[g].name + ", " + arrows_[f].name);
    }
  return c;
}

CatPtr make_poset(const std::string& name, const std::vector<std::string>& elements,
                  const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = elements.size();
  if (leq.size() != n) fail(ErrorKind::InvariantError, "order relation of " + name + " has the wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    if (leq[a].size() != n) fail(ErrorKind::InvariantError, "order relation of " + name + " has the wrong size");
    if (!leq[a][a]) fail(ErrorKind::InvariantError, name + " is not reflexive at " + elements[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) fail(ErrorKind::InvariantError, name + " is not antisymmetric");
      for (std::size_t c = 0; c < n; ++c)
        if (leq[a][b] && leq[b][c] && !leq[a][c]) fail(ErrorKind::InvariantError, name + " is not transitive");
    }
  }
  CategoryBuilder b(name);
  for (const auto& e : elements) b.add_object(e);
  std::vector<std::size_t> arrow(n * n, npos);
  for (std::size_t x = 0; x < n; ++x) arrow[x * n + x] = b.identity(x);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && leq[x][y]) arrow[x * n + y] = b.add_arrow(elements[x] + "<=" + elements[y], x, y);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (leq[x][y] && leq[y][z]) b.set_composite(arrow[y * n + z], arrow[x * n + y], arrow[x * n + z]);
  return b.finish();
}

CatPtr make_discrete(const std::string& name, const std::vector<std::string>& elements) {
  std::vector<std::vector<bool>> leq(elements.size(), std::vector<bool>(elements.size(), false));
  for (std::size_t i = 0; i < elements.size(); ++i) leq[i][i] = true;
  return make_poset(name, elements, leq);
}

bool is_poset_category(const FiniteCategory& c) {
  for (std::size_t a = 0; a < c.object_count(); ++a)
    for (std::size_t b = 0; b < c.object_count(); ++b) {
      if (c.hom(a, b).size() > 1) return false;
      if (a != b && !c.hom(a, b).empty() && !c.hom(b, a).empty()) return false;
    }
  return true;
}

bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || *a == *b; }

void Functor::validate() const {
  if (on_objects.size() != src->object_count() || on_arrows.size() != src->arrow_count())
    fail(ErrorKind::InvariantError, "functor " + name + " is not total");
  for (auto o : on_objects)
    if (o >= tgt->object_count()) fail(ErrorKind::InvariantError, "functor " + name + " leaves its target");
  for (std::size_t f = 0; f < src->arrow_count(); ++f) {
    const std::size_t img = on_arrows[f];
    if (img >= tgt->arrow_count()) fail(ErrorKind::InvariantError, "functor " + name + " leaves its target");
    if (tgt->src(img) != on_objects[src->src(f)] || tgt->tgt(img) != on_objects[src->tgt(f)])
      fail(ErrorKind::InvariantError, "functor " + name + " does not respect the ends of " + src->arrow_name(f));
  }
  for (std::size_t o = 0; o < src->object_count(); ++o)
    if (on_arrows[src->id(o)] != tgt->id(on_objects[o]))
      fail(ErrorKind::InvariantError, "functor " + name + " does not preserve the identity of " + src->object(o));
  for (std::size_t f = 0; f < src->arrow_count(); ++f)
    for (std::size_t g = 0; g < src->arrow_count(); ++g)
      if (src->tgt(f) == src->src(g) && on_arrows[src->compose(g, f)] != tgt->compose(on_arrows[g], on_arrows[f]))
        fail(ErrorKind::InvariantError, "functor " + name + " does not preserve " + src->arrow_name(g) + " after " +
                                            src->arrow_name(f));
}

bool operator==(const Functor& f, const Functor& g) {
  return same_category(f.src, g.src) && same_category(f.tgt, g.tgt) && f.on_objects == g.on_objects &&
         f.on_arrows == g.on_arrows;
}

Functor identity_functor(const CatPtr& c) {
  Functor f{"1_" + c->name(), c, c, {}, {}};
  for (std::size_t o = 0; o < c->object_count(); ++o) f.on_objects.push_back(o);
  for (std::size_t a = 0; a < c->arrow_count(); ++a) f.on_arrows.push_back(a);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.tgt, g.src))
    fail(ErrorKind::DomainMismatch, "functor " + g.name + " cannot follow " + f.name);
  Functor h{g.name + "." + f.name, f.src, g.tgt, {}, {}};
  for (auto o : f.on_objects) h.on_objects.push_back(g.on_objects[o]);
  for (auto a : f.on_arrows) h.on_arrows.push_back(g.on_arrows[a]);
  return h;
}

Functor monotone_functor(const std::string& name, const CatPtr& p, const CatPtr& q, const std::vector<std::size_t>& map) {
  if (map.size() != p->object_count()) fail(ErrorKind::InvariantError, "map " + name + " is not total");
  Functor f{name, p, q, map, {}};
  for (std::size_t a = 0; a < p->arrow_count(); ++a) {
    const auto& h = q->hom(map.at(p->src(a)), map.at(p->tgt(a)));
    if (h.empty()) fail(ErrorKind::InvariantError, "map " + name + " is not monotone at " + p->arrow_name(a));
    f.on_arrows.push_back(h.front());
  }
  f.validate();
  return f;
}

Functor constant_functor(const CatPtr& c, const CatPtr& d, std::size_t object) {
  Functor f{"const_" + d->object(object), c, d, std::vector<std::size_t>(c->object_count(), object),
            std::vector<std::size_t>(c->arrow_count(), d->id(object))};
  return f;
}

std::vector<Functor> all_functors(const CatPtr& c, const CatPtr& d, std::size_t limit) {
  std::vector<Functor> out;
  const std::size_t n = c->object_count(), m = c->arrow_count();
  if (n > 0 && d->object_count() == 0) return out;
  std::vector<std::size_t> objs(n, 0);
  std::vector<std::size_t> arrows(m, npos);
  std::vector<std::size_t> order;  // non-identity arrows
  for (std::size_t a = 0; a < m; ++a)
    if (!c->is_identity(a)) order.push_back(a);
  auto consistent = [&](std::size_t a) {
    for (std::size_t f = 0; f < m; ++f) {
      if (arrows[f] == npos) continue;
      for (std::size_t g = 0; g < m; ++g) {
        if (arrows[g] == npos || c->tgt(f) != c->src(g)) continue;
        const std::size_t h = c->compose(g, f);
        if (h != a && f != a && g != a) continue;
        if (arrows[h] != npos && arrows[h] != d->compose(arrows[g], arrows[f])) return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (k == order.size()) {
      if (out.size() >= limit)
        fail(ErrorKind::BoundsTooLarge, "more than " + std::to_string(limit) + " functors " + c->name() + " -> " +
                                            d->name());
      out.push_back(Functor{"F" + std::to_string(out.size()), c, d, objs, arrows});
      return;
    }
    const std::size_t a = order[k];
    for (auto cand : d->hom(objs[c->src(a)], objs[c->tgt(a)])) {
      arrows[a] = cand;
      if (consistent(a)) place(k + 1);
    }
    arrows[a] = npos;
  };
  do {
    std::fill(arrows.begin(), arrows.end(), npos);
    for (std::size_t o = 0; o < n; ++o) arrows[c->id(o)] = d->id(objs[o]);
    place(0);
    std::size_t k = n;
    while (k > 0 && ++objs[k - 1] == d->object_count()) objs[--k] = 0;
    if (k == 0) break;
  } while (true);
  return out;
}

void NatTrans::validate() const {
  if (!same_category(from.src, to.src) || !same_category(from.tgt, to.tgt))
    fail(ErrorKind::InvariantError, "transformation between non-parallel functors");
  const auto& c = *from.src;
  const auto& d = *from.tgt;
  if (components.size() != c.object_count()) fail(ErrorKind::InvariantError, "transformation is not total");
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const std::size_t t = components[o];
    if (t >= d.arrow_count() || d.src(t) != from.obj(o) || d.tgt(t) != to.obj(o))
      fail(ErrorKind::InvariantError, "component at " + c.object(o) + " has the wrong ends");
  }
  for (std::size_t f = 0; f < c.arrow_count(); ++f)
    if (d.compose(to(f), components[c.src(f)]) != d.compose(components[c.tgt(f)], from(f)))
      fail(ErrorKind::InvariantError, "naturality fails at " + c.arrow_name(f));
}

std::vector<NatTrans> all_nat_trans(const Functor& from, const Functor& to, std::size_t limit) {
  std::vector<NatTrans> out;
  const auto& c = *from.src;
  const auto& d = *from.tgt;
  std::vector<std::size_t> comp(c.object_count(), 0);
  std::function<void(std::size_t)> place = [&](std::size_t o) {
    if (o == c.object_count()) {
      NatTrans t{from, to, comp};
      for (std::size_t f = 0; f < c.arrow_count(); ++f)
        if (d.compose(to(f), comp[c.src(f)]) != d.compose(comp[c.tgt(f)], from(f))) return;
      if (out.size() >= limit) fail(ErrorKind::BoundsTooLarge, "too many natural transformations");
      out.push_back(std::move(t));
      return;
    }
    for (auto a : d.hom(from.obj(o), to.obj(o))) {
      comp[o] = a;
      place(o + 1);
    }
  };
  place(0);
  return out;
}

void Adjunction::validate() const {
  try {
    left.validate();
    right.validate();
    if (!same_category(left.src, right.tgt) || !same_category(left.tgt, right.src))
      fail(ErrorKind::InvariantError, "functors " + left.name + " and " + right.name + " do not point back");
    if (!(unit.from == identity_functor(left.src)) || !(unit.to == compose(right, left)))
      fail(ErrorKind::InvariantError, "unit has the wrong functors");
    if (!(counit.from == compose(left, right)) || !(counit.to == identity_functor(right.src)))
      fail(ErrorKind::InvariantError, "counit has the wrong functors");
    unit.validate();
    counit.validate();
  } catch (const Error& e) {
    fail(ErrorKind::AdjunctionInvalid, e.what());
  }
  const auto& a = *right.src;
  const auto& b = *left.src;
  for (std::size_t x = 0; x < a.object_count(); ++x)
    if (b.compose(right(counit.components[x]), unit.components[right.obj(x)]) != b.id(right.obj(x)))
      fail(ErrorKind::AdjunctionInvalid, "triangle identity fails at " + a.object(x));
  for (std::size_t y = 0; y < b.object_count(); ++y)
    if (a.compose(counit.components[left.obj(y)], left(unit.components[y])) != a.id(left.obj(y)))
      fail(ErrorKind::AdjunctionInvalid, "triangle identity fails at " + b.object(y));
}

std::optional<Adjunction> poset_adjunction(const Functor& h, const Functor& g) {
  const auto& b = *h.src;
  const auto& a = *g.src;
  Adjunction adj{h, g, {identity_functor(h.src), compose(g, h), {}}, {compose(h, g), identity_functor(g.src), {}}};
  for (std::size_t y = 0; y < b.object_count(); ++y) {
    const auto& arr = b.hom(y, g.obj(h.obj(y)));
    if (arr.empty()) return std::nullopt;
    adj.unit.components.push_back(arr.front());
  }
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    const auto& arr = a.hom(h.obj(g.obj(x)), x);
    if (arr.empty()) return std::nullopt;
    adj.counit.components.push_back(arr.front());
  }
  adj.validate();
  return adj;
}

bool is_binary_product(const FiniteCategory& c, const BinaryProduct& p, std::size_t x, std::size_t y) {
  if (c.src(p.first) != p.apex || c.src(p.second) != p.apex || c.tgt(p.first) != x || c.tgt(p.second) != y)
    return false;
  for (std::size_t z = 0; z < c.object_count(); ++z)
    for (auto f : c.hom(z, x))
      for (auto g : c.hom(z, y)) {
        std::size_t count = 0;
        for (auto h : c.hom(z, p.apex))
          if (c.compose(p.first, h) == f && c.compose(p.second, h) == g) ++count;
        if (count != 1) return false;
      }
  return true;
}

std::optional<BinaryProduct> find_binary_product(const FiniteCategory& c, std::size_t x, std::size_t y) {
  for (std::size_t p = 0; p < c.object_count(); ++p)
    for (auto f : c.hom(p, x))
      for (auto g : c.hom(p, y)) {
        BinaryProduct cand{p, f, g};
        if (is_binary_product(c, cand, x, y)) return cand;
      }
  return std::nullopt;
}

bool is_equalizer(const FiniteCategory& c, std::size_t e, std::size_t f, std::size_t g) {
  if (c.tgt(e) != c.src(f) || c.compose(f, e) != c.compose(g, e)) return false;
  const std::size_t x = c.src(f);
  for (std::size_t z = 0; z < c.object_count(); ++z)
    for (auto h : c.hom(z, x)) {
      if (c.compose(f, h) != c.compose(g, h)) continue;
      std::size_t count = 0;
      for (auto k : c.hom(z, c.src(e)))
        if (c.compose(e, k) == h) ++count;
      if (count != 1) return false;
    }
  return true;
}

std::optional<std::size_t> find_equalizer(const FiniteCategory& c, std::size_t f, std::size_t g) {
  for (std::size_t z = 0; z < c.object_count(); ++z)
    for (auto e : c.hom(z, c.src(f)))
      if (is_equalizer(c, e, f, g)) return e;
  return std::nullopt;
}

std::string to_string(const FiniteCategory& c) {
  std::string out = c.name() + " objects " + to_string(c.objects()) + " arrows {";
  bool first = true;
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    if (c.is_identity(a)) continue;
    out += (first ? "" : ", ") + c.arrow_name(a) + ": " + c.object(c.src(a)) + "->" + c.object(c.tgt(a));
    first = false;
  }
  return out + "}";
}

std::string to_string(const Functor& f) {
  std::string out = f.name + ": " + f.src->name() + " -> " + f.tgt->name() + " {";
  for (std::size_t o = 0; o < f.on_objects.size(); ++o)
    out += (o ? ", " : "") + f.src->object(o) + "->" + f.tgt->object(f.on_objects[o]);
  out += "; ";
  bool first = true;
  for (std::size_t a = 0; a < f.on_arrows.size(); ++a) {
    if (f.src->is_identity(a)) continue;
    out += (first ? "" : ", ") + f.src->arrow_name(a) + "->" + f.tgt->arrow_name(f.on_arrows[a]);
    first = false;
  }
  return out + "}";
}

}  // namespace veq
