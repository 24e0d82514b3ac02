#include "veq/groups.hpp"

#include <algorithm>
#include <map>

#include "veq/error.hpp"

namespace veq {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

using Perm = std::vector<std::size_t>;  // one-line notation over 1..n

Perm perm_mul(const Perm& a, const Perm& b) {
  // (a·b)(i) = a(b(i)): apply b first.
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i] - 1];
  return r;
}

std::string cycle_notation(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i + 1) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = p[j] - 1) {
      seen[j] = true;
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

Signature group_signature() { return Signature({{"mul", 2}, {"inv", 1}, {"e", 0}}); }

FiniteGroup::FiniteGroup(FiniteAlgebra algebra) : alg_(std::move(algebra)) {
  if (!(alg_.signature == group_signature()))
    fail(ErrorKind::SignatureMismatch, alg_.name + " is not over the group signature");
  alg_.validate();
  const std::size_t n = size();
  if (n == 0) fail(ErrorKind::InvariantError, "group " + name() + " is empty");
  const std::size_t e = unit();
  for (std::size_t a = 0; a < n; ++a) {
    if (mul(e, a) != a || mul(a, e) != a)
      fail(ErrorKind::InvariantError, "in " + name() + ", e is not neutral for " + carrier().label(a));
    if (mul(a, inv(a)) != e || mul(inv(a), a) != e)
      fail(ErrorKind::InvariantError, "in " + name() + ", inv(" + carrier().label(a) + ") is not an inverse");
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(ErrorKind::InvariantError, "multiplication of " + name() + " is not associative");
  }
}

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::string> labels,
                                    const std::vector<std::vector<std::size_t>>& mul) {
  const std::size_t n = labels.size();
  if (mul.size() != n) fail(ErrorKind::InvariantError, "Cayley table of " + name + " has the wrong number of rows");
  for (const auto& row : mul)
    if (row.size() != n)
      fail(ErrorKind::InvariantError, "Cayley table of " + name + " has a row of the wrong length");
  std::size_t e = npos;
  for (std::size_t a = 0; a < n && e == npos; ++a) {
    bool neutral = true;
    for (std::size_t b = 0; b < n; ++b) neutral = neutral && mul[a][b] == b && mul[b][a] == b;
    if (neutral) e = a;
  }
  if (e == npos) fail(ErrorKind::InvariantError, "Cayley table of " + name + " has no identity element");
  std::vector<std::size_t> inverse(n, npos);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul[a][b] == e && mul[b][a] == e) inverse[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inverse[a] == npos) fail(ErrorKind::InvariantError, labels[a] + " has no inverse in " + name);
  auto alg = FiniteAlgebra::build(std::move(name), group_signature(), FinSet(std::move(labels)),
                                  [&](std::size_t op, std::span<const std::size_t> args) -> std::size_t {
                                    if (op == 0) return mul[args[0]][args[1]];
                                    if (op == 1) return inverse[args[0]];
                                    return e;
                                  });
  return FiniteGroup(std::move(alg));
}

bool FiniteGroup::abelian() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "cyclic group of order 0");
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_table("Z" + std::to_string(n), labels, mul);
}

FiniteGroup klein_group() {
  std::vector<std::vector<std::size_t>> mul(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) mul[a][b] = a ^ b;
  return FiniteGroup::from_table("V4", {"e", "a", "b", "c"}, mul);
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "dihedral group needs n >= 1");
  // Index j*n + i stands for s^j r^i; r s = s r^-1.
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < n; ++i) labels.push_back((j ? "s" : "r") + std::to_string(i));
  std::vector<std::vector<std::size_t>> mul(2 * n, std::vector<std::size_t>(2 * n));
  for (std::size_t x = 0; x < 2 * n; ++x)
    for (std::size_t y = 0; y < 2 * n; ++y) {
      const std::size_t j = x / n, i = x % n, k = y / n, l = y % n;
      const std::size_t rot = k ? (n - i + l) % n : (i + l) % n;
      mul[x][y] = ((j + k) % 2) * n + rot;
    }
  return FiniteGroup::from_table("D" + std::to_string(n), labels, mul);
}

FiniteGroup quaternion_group() {
  // Units 1,i,j,k with signs; unit products as (sign, unit).
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const std::size_t unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> labels;
  for (std::size_t u = 0; u < 4; ++u) {
    labels.push_back(names[u]);
    labels.push_back(std::string("-") + names[u]);
  }
  std::vector<std::vector<std::size_t>> mul(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t u = x / 2, v = y / 2;
      const int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * unit_sign[u][v];
      mul[x][y] = unit_prod[u][v] * 2 + (sign < 0 ? 1 : 0);
    }
  return FiniteGroup::from_table("Q8", labels, mul);
}

FiniteGroup permutation_group(std::string name, std::size_t degree, const std::vector<std::vector<std::size_t>>& generators) {
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = i + 1;
  for (const auto& g : generators) {
    auto sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) fail(ErrorKind::InvalidArgument, "generator of " + name + " is not a permutation");
  }
  std::vector<Perm> elems{id};
  std::map<Perm, std::size_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : generators) {
      Perm p = perm_mul(elems[i], g);
      if (index.emplace(p, elems.size()).second) elems.push_back(p);
    }
  std::vector<std::string> labels;
  for (const auto& p : elems) labels.push_back(cycle_notation(p));
  std::vector<std::vector<std::size_t>> mul(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) mul[a][b] = index.at(perm_mul(elems[a], elems[b]));
  return FiniteGroup::from_table(std::move(name), labels, mul);
}

FiniteGroup symmetric3() { return permutation_group("S3", 3, {{2, 1, 3}, {2, 3, 1}}); }

FiniteGroup alternating4() { return permutation_group("A4", 4, {{2, 3, 1, 4}, {2, 1, 4, 3}}); }

std::vector<FiniteGroup> group_corpus() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back(cyclic_group(n));
  out.push_back(klein_group());
  out.push_back(symmetric3());
  out.push_back(dihedral_group(4));
  out.push_back(quaternion_group());
  out.push_back(alternating4());
  out.push_back(dihedral_group(8));
  return out;
}

bool is_group_hom(const FiniteGroup& a, const FiniteGroup& b, const std::vector<std::size_t>& map) {
  if (map.size() != a.size()) return false;
  for (auto v : map)
    if (v >= b.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
  return true;
}

GroupHom conjugation(const GroupPtr& g, std::size_t element) {
  if (element >= g->size()) fail(ErrorKind::ElementNotInG, "element index outside " + g->name());
  std::vector<std::size_t> map(g->size());
  for (std::size_t x = 0; x < g->size(); ++x) map[x] = g->mul(g->mul(element, x), g->inv(element));
  return {g, g, std::move(map)};
}

std::vector<bool> subgroup_mask(const FiniteGroup& g, const std::vector<std::size_t>& gens, bool normal) {
  std::vector<std::size_t> all = gens;
  if (normal)
    for (auto x : gens)
      for (std::size_t c = 0; c < g.size(); ++c) all.push_back(g.mul(g.mul(c, x), g.inv(c)));
  return generated_mask(g.algebra(), all);
}

GroupHom subgroup(const GroupPtr& g, const std::vector<bool>& mask) {
  auto sub = restrict_to(g->algebra(), mask);
  sub.algebra.name = g->name() + "|sub";
  auto h = std::make_shared<const FiniteGroup>(std::move(sub.algebra));
  return {h, g, sub.inclusion.table()};
}

GroupHom quotient_by_normal(const GroupPtr& g, const std::vector<bool>& normal) {
  std::vector<std::size_t> coset(g->size());
  for (std::size_t x = 0; x < g->size(); ++x) {
    // Label x by the first element of its coset xN.
    for (std::size_t y = 0; y < g->size(); ++y)
      if (normal[g->mul(g->inv(y), x)]) {
        coset[x] = y;
        break;
      }
  }
  auto q = quotient_algebra(g->algebra(), normalize_partition(coset));
  q.algebra.name = g->name() + "/N";
  auto h = std::make_shared<const FiniteGroup>(std::move(q.algebra));
  return {g, h, q.projection.table()};
}

bool FinGrpCategory::equal(const GroupHom& f, const GroupHom& g) const {
  return same_object(f.dom, g.dom) && same_object(f.cod, g.cod) && f.map == g.map;
}

GroupHom FinGrpCategory::compose(const GroupHom& g, const GroupHom& f) const {
  if (!same_object(f.cod, g.dom)) fail(ErrorKind::DomainMismatch, "composite of non-composable homomorphisms");
  std::vector<std::size_t> map(f.map.size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = g.map[f.map[x]];
  return {f.dom, g.cod, std::move(map)};
}

GroupHom FinGrpCategory::identity(const GroupPtr& a) const {
  std::vector<std::size_t> map(a->size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = x;
  return {a, a, std::move(map)};
}

bool FinGrpCategory::is_mono(const GroupHom& f) const { return f.as_function().injective(); }

GroupHom FinGrpCategory::equalizer(const GroupHom& p, const GroupHom& q) const {
  if (!same_object(p.dom, q.dom) || !same_object(p.cod, q.cod))
    fail(ErrorKind::NotParallel, "equalizer of non-parallel homomorphisms");
  std::vector<bool> mask(p.dom->size());
  for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = p.map[x] == q.map[x];
  return subgroup(p.dom, mask);
}

GroupHom FinGrpCategory::intersect(std::span<const GroupHom> monos) const {
  if (monos.empty()) fail(ErrorKind::EmptyList, "intersection of an empty list");
  const GroupPtr target = monos[0].cod;
  std::vector<bool> mask(target->size(), true);
  for (const auto& m : monos) {
    if (!same_object(m.cod, target)) fail(ErrorKind::TargetMismatch, "monos into different groups");
    if (!is_mono(m)) fail(ErrorKind::InvalidArgument, "intersect expects monomorphisms");
    auto img = m.as_function().image_mask();
    for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = mask[x] && img[x];
  }
  return subgroup(target, mask);
}

Cone<GroupPtr, GroupHom> FinGrpCategory::product(std::span<const GroupPtr> objs) const {
  if (objs.empty()) fail(ErrorKind::EmptyList, "product of an empty list");
  if (objs.size() == 1) return {objs[0], {identity(objs[0])}};
  std::vector<FiniteAlgebra> algs;
  for (const auto& g : objs) algs.push_back(g->algebra());
  auto p = product_algebra(algs);
  auto apex = std::make_shared<const FiniteGroup>(std::move(p.algebra));
  Cone<GroupPtr, GroupHom> cone{apex, {}};
  for (std::size_t k = 0; k < objs.size(); ++k) cone.legs.push_back({apex, objs[k], p.projections[k].table()});
  return cone;
}

GroupHom FinGrpCategory::tuple(const Cone<GroupPtr, GroupHom>& cone, std::span<const GroupHom> legs) const {
  if (legs.size() != cone.legs.size() || legs.empty())
    fail(ErrorKind::InvalidArgument, "tuple needs one leg per factor");
  const GroupPtr dom = legs[0].dom;
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

GroupHom FinGrpCategory::coequalizer(const GroupHom& p, const GroupHom& q) const {
  if (!same_object(p.dom, q.dom) || !same_object(p.cod, q.cod))
    fail(ErrorKind::NotParallel, "coequalizer of non-parallel homomorphisms");
  const auto& g = *p.cod;
  std::vector<std::size_t> gens;
  for (std::size_t x = 0; x < p.dom->size(); ++x) gens.push_back(g.mul(p.map[x], g.inv(q.map[x])));
  return quotient_by_normal(p.cod, subgroup_mask(g, gens, true));
}

std::optional<GroupHom> FinGrpCategory::factor_through(const GroupHom& f, const GroupHom& g) const {
  if (!same_object(f.cod, g.cod)) fail(ErrorKind::CodMismatch, "compared homomorphisms have different codomains");
  if (is_mono(g)) {
    std::vector<std::size_t> back(g.cod->size(), npos);
    for (std::size_t y = 0; y < g.dom->size(); ++y) back[g.map[y]] = y;
    std::vector<std::size_t> map(f.dom->size());
    for (std::size_t x = 0; x < map.size(); ++x) {
      map[x] = back[f.map[x]];
      if (map[x] == npos) return std::nullopt;
    }
    return GroupHom{f.dom, g.dom, std::move(map)};
  }
  for (auto& h : homomorphisms(f.dom->algebra(), g.dom->algebra())) {
    bool ok = true;
    for (std::size_t x = 0; x < h.size() && ok; ++x) ok = g.map[h[x]] == f.map[x];
    if (ok) return GroupHom{f.dom, g.dom, std::move(h)};
  }
  return std::nullopt;
}

std::optional<GroupHom> FinGrpCategory::factor_after(const GroupHom& f, const GroupHom& e) const {
  if (!same_object(f.dom, e.dom)) fail(ErrorKind::DomainMismatch, "compared homomorphisms have different domains");
  for (auto& h : homomorphisms(e.cod->algebra(), f.cod->algebra())) {
    bool ok = true;
    for (std::size_t x = 0; x < f.map.size() && ok; ++x) ok = h[e.map[x]] == f.map[x];
    if (ok) return GroupHom{e.cod, f.cod, std::move(h)};
  }
  return std::nullopt;
}

GroupHom centralizer(const GroupPtr& g, const std::vector<std::string>& s) {
  FinGrpCategory cat;
  EquationSystem<GroupPtr, GroupHom> sys{g, {}};
  for (const auto& label : s) {
    auto idx = g->carrier().index_of(label);
    if (!idx) fail(ErrorKind::ElementNotInG, "'" + label + "' is not an element of " + g->name());
    sys.equations.push_back({conjugation(g, *idx), cat.identity(g)});
  }
  if (sys.equations.empty()) sys.equations.push_back({cat.identity(g), cat.identity(g)});
  return general_solution(cat, sys);
}

GroupHom abelianization(const GroupPtr& g) {
  FinGrpCategory cat;
  CoEquationSystem<GroupPtr, GroupHom> sys{g, {}};
  for (std::size_t x = 0; x < g->size(); ++x) sys.equations.push_back({conjugation(g, x), cat.identity(g)});
  return general_cosolution(cat, sys);
}

}  // namespace veq
