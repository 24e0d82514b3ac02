#include "veq/finset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "veq/error.hpp"

namespace veq {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_parallel(const FinFunction& p, const FinFunction& q) {
  if (!(p.dom() == q.dom()) || !(p.cod() == q.cod()))
    fail(ErrorKind::NotParallel, to_string(p) + " and " + to_string(q) + " are not parallel");
}

}  // namespace

FinSet::FinSet() : data_(std::make_shared<Data>()) {}

FinSet::FinSet(std::vector<std::string> elements) {
  auto data = std::make_shared<Data>();
  data->index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!data->index.emplace(elements[i], i).second)
      fail(ErrorKind::InvariantError, "duplicate set element '" + elements[i] + "'");
  }
  data->elements = std::move(elements);
  data_ = std::move(data);
}

std::optional<std::size_t> FinSet::index_of(const std::string& label) const {
  auto it = data_->index.find(label);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::at(const std::string& label) const {
  auto i = index_of(label);
  if (!i) fail(ErrorKind::InvalidArgument, "'" + label + "' is not an element of " + to_string(*this));
  return *i;
}

bool operator==(const FinSet& a, const FinSet& b) {
  return a.data_ == b.data_ || a.data_->elements == b.data_->elements;
}

FinFunction::FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size())
    fail(ErrorKind::InvariantError, "function table is not total on its domain");
  for (auto y : table_)
    if (y >= cod_.size()) fail(ErrorKind::InvariantError, "function image lies outside its codomain");
}

FinFunction FinFunction::from_labels(const FinSet& dom, const FinSet& cod,
                                     const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::size_t> table(dom.size(), 0);
  std::vector<bool> seen(dom.size(), false);
  for (const auto& [x, y] : pairs) {
    auto xi = dom.index_of(x);
    if (!xi) fail(ErrorKind::InvariantError, "'" + x + "' is not in the domain " + to_string(dom));
    auto yi = cod.index_of(y);
    if (!yi) fail(ErrorKind::InvariantError, "'" + y + "' is not in the codomain " + to_string(cod));
    if (seen[*xi]) fail(ErrorKind::InvariantError, "'" + x + "' is mapped twice");
    seen[*xi] = true;
    table[*xi] = *yi;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(ErrorKind::InvariantError, "no image given for '" + dom.label(i) + "'");
  return FinFunction(dom, cod, std::move(table));
}

FinFunction FinFunction::identity(const FinSet& s) {
  std::vector<std::size_t> table(s.size());
  std::iota(table.begin(), table.end(), 0);
  return FinFunction(s, s, std::move(table));
}

FinFunction FinFunction::constant(const FinSet& dom, const FinSet& cod, std::size_t value) {
  return FinFunction(dom, cod, std::vector<std::size_t>(dom.size(), value));
}

const std::string& FinFunction::apply(const std::string& label) const {
  return cod_.label(table_.at(dom_.at(label)));
}

bool FinFunction::injective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (auto y : table_) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool FinFunction::surjective() const {
  auto mask = image_mask();
  return std::all_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

std::vector<bool> FinFunction::image_mask() const {
  std::vector<bool> hit(cod_.size(), false);
  for (auto y : table_) hit[y] = true;
  return hit;
}

bool operator==(const FinFunction& a, const FinFunction& b) {
  return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.cod() == g.dom()))
    fail(ErrorKind::DomainMismatch, "cannot compose " + to_string(g) + " after " + to_string(f));
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = g(f(x));
  return FinFunction(f.dom(), g.cod(), std::move(table));
}

SubobjectMono SubobjectMono::from_mask(const FinSet& target, const std::vector<bool>& keep) {
  std::vector<std::string> labels;
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!keep.at(i)) continue;
    labels.push_back(target.label(i));
    table.push_back(i);
  }
  FinSet carrier(std::move(labels));
  return SubobjectMono{carrier, target, FinFunction(carrier, target, std::move(table))};
}

std::vector<bool> SubobjectMono::mask() const { return inclusion.image_mask(); }

SubobjectMono equalizer(const FinFunction& p, const FinFunction& q) {
  require_parallel(p, q);
  std::vector<bool> keep(p.dom().size());
  for (std::size_t x = 0; x < keep.size(); ++x) keep[x] = p(x) == q(x);
  return SubobjectMono::from_mask(p.dom(), keep);
}

ProductCone product(std::span<const FinSet> objs) {
  if (objs.empty()) fail(ErrorKind::EmptyList, "product of an empty list");
  if (objs.size() == 1) return ProductCone{objs[0], {FinFunction::identity(objs[0])}};

  std::size_t total = 1;
  for (const auto& o : objs) total *= o.size();
  std::vector<std::string> labels;
  labels.reserve(total);
  std::vector<std::vector<std::size_t>> tables(objs.size(), std::vector<std::size_t>(total));
  std::vector<std::size_t> digits(objs.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::string label = "(";
    for (std::size_t k = 0; k < objs.size(); ++k) {
      if (k) label += ",";
      label += objs[k].label(digits[k]);
      tables[k][n] = digits[k];
    }
    labels.push_back(label + ")");
    for (std::size_t k = objs.size(); k-- > 0;) {
      if (++digits[k] < objs[k].size()) break;
      digits[k] = 0;
    }
  }
  FinSet apex(std::move(labels));
  ProductCone cone{apex, {}};
  for (std::size_t k = 0; k < objs.size(); ++k)
    cone.projections.emplace_back(apex, objs[k], std::move(tables[k]));
  return cone;
}

CoproductCocone coproduct(std::span<const FinSet> objs) {
  if (objs.empty()) fail(ErrorKind::EmptyList, "coproduct of an empty list");
  if (objs.size() == 1) return CoproductCocone{objs[0], {FinFunction::identity(objs[0])}};

  auto tag = [&](std::size_t k) -> std::string {
    if (objs.size() == 2) return k == 0 ? "inl:" : "inr:";
    return "in" + std::to_string(k) + ":";
  };
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> tables(objs.size());
  for (std::size_t k = 0; k < objs.size(); ++k) {
    for (std::size_t i = 0; i < objs[k].size(); ++i) {
      tables[k].push_back(labels.size());
      labels.push_back(tag(k) + objs[k].label(i));
    }
  }
  FinSet apex(std::move(labels));
  CoproductCocone cocone{apex, {}};
  for (std::size_t k = 0; k < objs.size(); ++k)
    cocone.coprojections.emplace_back(objs[k], apex, std::move(tables[k]));
  return cocone;
}

FinFunction quotient_by_pairs(const FinSet& s, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  UnionFind uf(s.size());
  for (auto [a, b] : pairs) uf.unite(a, b);

  // Class representative label: lexicographically least member.
  std::vector<std::size_t> best(s.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto r = uf.find(i);
    if (best[r] == s.size() || s.label(i) < s.label(best[r])) best[r] = i;
  }
  // Classes are listed in order of their first element in s.
  std::vector<std::size_t> class_index(s.size(), s.size());
  std::vector<std::string> labels;
  std::vector<std::size_t> table(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto r = uf.find(i);
    if (class_index[r] == s.size()) {
      class_index[r] = labels.size();
      labels.push_back(s.label(best[r]));
    }
    table[i] = class_index[r];
  }
  return FinFunction(s, FinSet(std::move(labels)), std::move(table));
}

FinFunction coequalizer(const FinFunction& p, const FinFunction& q) {
  require_parallel(p, q);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < p.dom().size(); ++x) pairs.emplace_back(p(x), q(x));
  return quotient_by_pairs(p.cod(), pairs);
}

std::pair<FinFunction, FinFunction> cokernel_pair(const FinFunction& f) {
  const FinSet objs[] = {f.cod(), f.cod()};
  auto cocone = coproduct(objs);
  const auto& inl = cocone.coprojections[0];
  const auto& inr = cocone.coprojections[1];
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < f.dom().size(); ++x) pairs.emplace_back(inl(f(x)), inr(f(x)));
  auto quot = quotient_by_pairs(cocone.apex, pairs);
  return {compose(quot, inl), compose(quot, inr)};
}

PullbackSquare pullback(const FinFunction& f, const FinFunction& m) {
  if (!(f.cod() == m.cod()))
    fail(ErrorKind::CodMismatch, to_string(f) + " and " + to_string(m) + " have different codomains");
  std::vector<std::string> labels;
  std::vector<std::size_t> first, second;
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    for (std::size_t y = 0; y < m.dom().size(); ++y) {
      if (f(x) != m(y)) continue;
      labels.push_back("(" + f.dom().label(x) + "," + m.dom().label(y) + ")");
      first.push_back(x);
      second.push_back(y);
    }
  }
  FinSet apex(std::move(labels));
  return PullbackSquare{f, m, FinFunction(apex, f.dom(), std::move(first)),
                        FinFunction(apex, m.dom(), std::move(second))};
}

SubobjectMono intersect(std::span<const SubobjectMono> monos) {
  if (monos.empty()) fail(ErrorKind::EmptyList, "intersection of an empty list");
  const auto& target = monos[0].target;
  std::vector<bool> keep(target.size(), true);
  for (const auto& m : monos) {
    if (!(m.target == target)) fail(ErrorKind::TargetMismatch, "subobjects of different targets");
    auto mask = m.mask();
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = keep[i] && mask[i];
  }
  return SubobjectMono::from_mask(target, keep);
}

std::optional<FinFunction> factor_through(const FinFunction& f, const FinFunction& g) {
  if (!(f.cod() == g.cod()))
    fail(ErrorKind::CodMismatch, to_string(f) + " and " + to_string(g) + " have different codomains");
  // Least preimage under g of each point of cod.
  std::vector<std::size_t> pre(g.cod().size(), g.dom().size());
  for (std::size_t y = g.dom().size(); y-- > 0;) pre[g(y)] = y;
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (pre[f(x)] == g.dom().size()) return std::nullopt;
    table[x] = pre[f(x)];
  }
  return FinFunction(f.dom(), g.dom(), std::move(table));
}

FinFunction tuple(const ProductCone& cone, std::span<const FinFunction> legs) {
  if (legs.size() != cone.projections.size())
    fail(ErrorKind::InvalidArgument, "tuple needs one leg per projection");
  if (legs.empty()) fail(ErrorKind::EmptyList, "tuple of no legs");
  const auto& src = legs[0].dom();
  std::vector<std::size_t> table(src.size());
  for (std::size_t x = 0; x < src.size(); ++x) {
    std::size_t found = cone.apex.size();
    for (std::size_t n = 0; n < cone.apex.size() && found == cone.apex.size(); ++n) {
      bool ok = true;
      for (std::size_t k = 0; k < legs.size() && ok; ++k) {
        if (!(legs[k].dom() == src) || !(legs[k].cod() == cone.projections[k].cod()))
          fail(ErrorKind::InvalidArgument, "tuple legs do not form a cone");
        ok = cone.projections[k](n) == legs[k](x);
      }
      if (ok) found = n;
    }
    if (found == cone.apex.size()) fail(ErrorKind::InvariantError, "cone apex is not a product");
    table[x] = found;
  }
  return FinFunction(src, cone.apex, std::move(table));
}

FinFunction cotuple(const CoproductCocone& cocone, std::span<const FinFunction> legs) {
  if (legs.size() != cocone.coprojections.size())
    fail(ErrorKind::InvalidArgument, "cotuple needs one leg per coprojection");
  if (legs.empty()) fail(ErrorKind::EmptyList, "cotuple of no legs");
  const auto& dst = legs[0].cod();
  std::vector<std::size_t> table(cocone.apex.size(), dst.size());
  for (std::size_t k = 0; k < legs.size(); ++k) {
    const auto& in = cocone.coprojections[k];
    if (!(legs[k].cod() == dst) || !(legs[k].dom() == in.dom()))
      fail(ErrorKind::InvalidArgument, "cotuple legs do not form a cocone");
    for (std::size_t x = 0; x < in.dom().size(); ++x) table[in(x)] = legs[k](x);
  }
  for (auto y : table)
    if (y == dst.size()) fail(ErrorKind::InvariantError, "cocone apex is not a coproduct");
  return FinFunction(cocone.apex, dst, std::move(table));
}

SubobjectMono image(const FinFunction& f) { return SubobjectMono::from_mask(f.cod(), f.image_mask()); }

std::vector<FinFunction> all_functions(const FinSet& dom, const FinSet& cod) {
  std::vector<FinFunction> out;
  if (dom.empty()) return {FinFunction(dom, cod, {})};
  if (cod.empty()) return out;
  std::vector<std::size_t> table(dom.size(), 0);
  while (true) {
    out.emplace_back(dom, cod, table);
    std::size_t k = dom.size();
    while (true) {
      if (k == 0) return out;
      --k;
      if (++table[k] < cod.size()) break;
      table[k] = 0;
    }
  }
}

FinSet numbered_set(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinSet(std::move(labels));
}

std::string to_string(const FinSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s.label(i);
  }
  return out + "}";
}

std::string to_string(const FinFunction& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (i) out += ", ";
    out += f.dom().label(i) + "->" + f.cod().label(f(i));
  }
  return out + "}";
}

}  // namespace veq
