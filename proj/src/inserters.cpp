#include "veq/inserters.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "veq/error.hpp"

namespace veq {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

bool next_tuple(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < base) return true;
    digits[k] = 0;
  }
  return false;
}

std::optional<std::size_t> arrow_between(const Inserter& ins, std::size_t x, std::size_t y, std::size_t base) {
  for (auto a : ins.category->hom(x, y))
    if (ins.base_arrow[a] == base) return a;
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> Inserter::object_of(std::size_t a, std::size_t r) const {
  for (std::size_t o = 0; o < base.size(); ++o)
    if (base[o] == a && structure[o] == r) return o;
  return std::nullopt;
}

Inserter inserter(const Functor& f, const Functor& g) {
  if (!same_category(f.src, g.src) || !same_category(f.tgt, g.tgt))
    fail(ErrorKind::NotParallel, f.name + " and " + g.name + " are not parallel");
  const auto& a = *f.src;
  const auto& b = *f.tgt;
  Inserter ins;
  CategoryBuilder builder("Ins(" + f.name + "," + g.name + ")");
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < a.object_count(); ++x)
    for (auto r : b.hom(f.obj(x), g.obj(x))) {
      labels.push_back("(" + a.object(x) + "," + b.arrow_name(r) + ")");
      builder.add_object(labels.back());
      ins.base.push_back(x);
      ins.structure.push_back(r);
      ins.base_arrow.push_back(a.id(x));
    }
  const std::size_t n = ins.base.size();
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> by_base;
  for (std::size_t o = 0; o < n; ++o) by_base[{o, o, a.id(ins.base[o])}] = builder.identity(o);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (auto d : a.hom(ins.base[x], ins.base[y])) {
        if (b.compose(g(d), ins.structure[x]) != b.compose(ins.structure[y], f(d))) continue;
        if (x == y && a.is_identity(d)) continue;
        by_base[{x, y, d}] = builder.add_arrow(a.arrow_name(d) + ":" + labels[x] + "->" + labels[y], x, y);
        ins.base_arrow.push_back(d);
      }
  // base_arrow is indexed like the builder's arrows; identities were pushed with their objects.
  std::vector<std::size_t> arrow_base(builder.arrow_count());
  std::vector<std::pair<std::size_t, std::size_t>> ends(builder.arrow_count());
  for (const auto& [key, arrow] : by_base) {
    arrow_base[arrow] = std::get<2>(key);
    ends[arrow] = {std::get<0>(key), std::get<1>(key)};
  }
  for (std::size_t e = 0; e < arrow_base.size(); ++e)
    for (std::size_t d = 0; d < arrow_base.size(); ++d) {
      if (ends[d].second != ends[e].first) continue;
      const std::size_t c = a.compose(arrow_base[e], arrow_base[d]);
      builder.set_composite(e, d, by_base.at({ends[d].first, ends[e].second, c}));
    }
  ins.base_arrow = arrow_base;
  ins.category = builder.finish();
  ins.forget = Functor{"U", ins.category, f.src, ins.base, ins.base_arrow};
  ins.forget.validate();
  ins.lambda = NatTrans{compose(f, ins.forget), compose(g, ins.forget), ins.structure};
  ins.lambda.validate();
  return ins;
}

Functor mediating_functor(const Inserter& ins, const Functor& v, const NatTrans& alpha) {
  Functor w{"W", v.src, ins.category, {}, {}};
  const auto& d = *v.src;
  if (alpha.components.size() != d.object_count())
    fail(ErrorKind::InvariantError, "transformation does not match the cone functor");
  for (std::size_t o = 0; o < d.object_count(); ++o) {
    auto obj = ins.object_of(v.obj(o), alpha.components[o]);
    if (!obj) fail(ErrorKind::InvariantError, "component at " + d.object(o) + " is not an arrow FV -> GV");
    w.on_objects.push_back(*obj);
  }
  for (std::size_t x = 0; x < d.arrow_count(); ++x) {
    auto arr = arrow_between(ins, w.on_objects[d.src(x)], w.on_objects[d.tgt(x)], v(x));
    if (!arr) fail(ErrorKind::InvariantError, "transformation is not natural at " + d.arrow_name(x));
    w.on_arrows.push_back(*arr);
  }
  w.validate();
  return w;
}

InserterUniversality verify_inserter_universal(const Inserter& ins, const Functor& f, const Functor& g,
                                               const CatPtr& d) {
  InserterUniversality out;
  auto candidates = all_functors(d, ins.category);
  for (const auto& v : all_functors(d, f.src)) {
    for (const auto& alpha : all_nat_trans(compose(f, v), compose(g, v))) {
      ++out.cones;
      Functor w = mediating_functor(ins, v, alpha);
      std::size_t matches = 0;
      for (const auto& cand : candidates) {
        if (!(compose(ins.forget, cand) == v)) continue;
        bool same = true;
        for (std::size_t o = 0; o < d->object_count() && same; ++o)
          same = ins.structure[cand.obj(o)] == alpha.components[o];
        if (!same) continue;
        ++matches;
        if (!(cand.on_objects == w.on_objects && cand.on_arrows == w.on_arrows)) out.holds = false;
      }
      if (matches != 1) out.holds = false;
    }
  }
  return out;
}

ForgetfulReport verify_forgetful(const Functor& u) {
  const auto& c = *u.src;
  const auto& a = *u.tgt;
  ForgetfulReport r{true, true, true, true};
  for (std::size_t x = 0; x < c.object_count(); ++x)
    for (std::size_t y = 0; y < c.object_count(); ++y) {
      std::vector<std::size_t> imgs;
      for (auto f : c.hom(x, y)) imgs.push_back(u(f));
      std::sort(imgs.begin(), imgs.end());
      if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end()) r.faithful = false;
    }
  for (std::size_t f = 0; f < c.arrow_count(); ++f) {
    const bool iso = c.is_iso(f);
    if (a.is_iso(u(f)) && !iso) r.conservative = false;
    if (iso && a.is_identity(u(f)) && !c.is_identity(f)) r.amnestic = false;
  }
  for (std::size_t x = 0; x < c.object_count(); ++x)
    for (std::size_t g = 0; g < a.arrow_count(); ++g) {
      if (a.src(g) != u.obj(x) || !a.is_iso(g)) continue;
      std::size_t lifts = 0;
      for (std::size_t f = 0; f < c.arrow_count(); ++f)
        if (c.src(f) == x && u(f) == g && c.is_iso(f)) ++lifts;
      if (lifts != 1) r.uniquely_transportable = false;
    }
  return r;
}

namespace {

// Builds the functor between two inserters over the same base that keeps
// base arrows and sends (A, r) to (A, shift(A, r)).
Functor concrete_functor(const std::string& name, const Inserter& from, const Inserter& to,
                         const std::function<std::size_t(std::size_t, std::size_t)>& shift) {
  Functor out{name, from.category, to.category, {}, {}};
  for (std::size_t o = 0; o < from.base.size(); ++o) {
    auto img = to.object_of(from.base[o], shift(from.base[o], from.structure[o]));
    if (!img) fail(ErrorKind::InvariantError, name + " does not land in the target inserter");
    out.on_objects.push_back(*img);
  }
  const auto& c = *from.category;
  for (std::size_t x = 0; x < c.arrow_count(); ++x) {
    auto arr = arrow_between(to, out.on_objects[c.src(x)], out.on_objects[c.tgt(x)], from.base_arrow[x]);
    if (!arr) fail(ErrorKind::InvariantError, name + " does not carry " + c.arrow_name(x));
    out.on_arrows.push_back(*arr);
  }
  out.validate();
  return out;
}

void finish_shift(ShiftResult& s) {
  s.round_trip = compose(s.phi, s.psi) == identity_functor(s.from.category) &&
                 compose(s.psi, s.phi) == identity_functor(s.to.category);
  s.concrete = compose(s.to.forget, s.psi) == s.from.forget && compose(s.from.forget, s.phi) == s.to.forget;
}

}  // namespace

ShiftResult shift_left(const Functor& f, const Functor& g, const Adjunction& adj) {
  adj.validate();
  if (!(adj.right == g)) fail(ErrorKind::AdjunctionInvalid, "the right adjoint is not " + g.name);
  const Functor& h = adj.left;
  const auto& a = *f.src;
  const auto& b = *f.tgt;
  ShiftResult s{inserter(f, g), inserter(compose(h, f), identity_functor(f.src)), {}, {}, false, false};
  s.psi = concrete_functor("Psi", s.from, s.to, [&](std::size_t x, std::size_t r) {
    return a.compose(adj.counit.components[x], h(r));
  });
  s.phi = concrete_functor("Phi", s.to, s.from, [&](std::size_t x, std::size_t r) {
    return b.compose(g(r), adj.unit.components[f.obj(x)]);
  });
  finish_shift(s);
  return s;
}

ShiftResult shift_right(const Functor& f, const Functor& g, const Adjunction& adj) {
  adj.validate();
  if (!(adj.left == f)) fail(ErrorKind::AdjunctionInvalid, "the left adjoint is not " + f.name);
  const Functor& h = adj.right;
  const auto& a = *f.src;
  const auto& b = *f.tgt;
  ShiftResult s{inserter(f, g), inserter(identity_functor(f.src), compose(h, g)), {}, {}, false, false};
  s.psi = concrete_functor("Psi", s.from, s.to, [&](std::size_t x, std::size_t r) {
    return a.compose(h(r), adj.unit.components[x]);
  });
  s.phi = concrete_functor("Phi", s.to, s.from, [&](std::size_t x, std::size_t r) {
    return b.compose(adj.counit.components[g.obj(x)], f(r));
  });
  finish_shift(s);
  return s;
}

LimitCreationReport check_limit_creation(const Inserter& ins, const Functor& f, const Functor& g) {
  LimitCreationReport rep;
  const auto& c = *ins.category;
  const auto& a = *f.src;
  const auto& b = *f.tgt;
  const auto& u = ins.forget;
  for (std::size_t x = 0; x < c.object_count(); ++x)
    for (std::size_t y = 0; y < c.object_count(); ++y) {
      auto base = find_binary_product(a, u.obj(x), u.obj(y));
      if (!base) continue;
      BinaryProduct image{g.obj(base->apex), g(base->first), g(base->second)};
      if (!is_binary_product(b, image, g.obj(u.obj(x)), g.obj(u.obj(y)))) continue;
      ++rep.product_cases;
      auto lifted = find_binary_product(c, x, y);
      if (!lifted || !is_binary_product(a, {u.obj(lifted->apex), u(lifted->first), u(lifted->second)}, u.obj(x), u.obj(y)))
        ++rep.failures;
    }
  for (std::size_t d1 = 0; d1 < c.arrow_count(); ++d1)
    for (std::size_t d2 = 0; d2 < c.arrow_count(); ++d2) {
      if (c.src(d1) != c.src(d2) || c.tgt(d1) != c.tgt(d2)) continue;
      auto e = find_equalizer(a, u(d1), u(d2));
      if (!e) continue;
      if (!is_equalizer(b, g(*e), g(u(d1)), g(u(d2)))) continue;
      ++rep.equalizer_cases;
      auto lifted = find_equalizer(c, d1, d2);
      if (!lifted || !is_equalizer(a, u(*lifted), u(d1), u(d2))) ++rep.failures;
    }
  return rep;
}

FreeFAlgebra::FreeFAlgebra(PolynomialFunctor f, FinSet generators, std::size_t depth)
    : f_(std::move(f)), generators_(std::move(generators)), depth_(depth) {
  Signature sig = f_.signature();
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    terms_.push_back(Term::var(i));
    term_depth_.push_back(0);
    insertion_.push_back(i);
  }
  std::size_t prev_begin = 0;
  for (std::size_t d = 1; d <= depth_; ++d) {
    const std::size_t below = terms_.size();
    for (const auto& s : f_.summands) {
      if (s.arity == 0) {
        if (d == 1) {
          terms_.push_back(Term::app(s.name));
          term_depth_.push_back(1);
        }
        continue;
      }
      if (below == 0) continue;
      std::vector<std::size_t> pick(s.arity, 0);
      do {
        bool fresh = false;
        for (auto p : pick) fresh = fresh || (p >= prev_begin && term_depth_[p] == d - 1);
        if (!fresh) continue;
        std::vector<Term> args;
        for (auto p : pick) args.push_back(terms_[p]);
        terms_.push_back(Term::app(s.name, std::move(args)));
        term_depth_.push_back(d);
        if (terms_.size() > 100000) fail(ErrorKind::BoundsTooLarge, "free F-algebra grows past 100000 terms");
      } while (next_tuple(pick, below));
    }
    prev_begin = below;
  }
  std::vector<std::string> labels;
  for (const auto& t : terms_) labels.push_back(to_string(t, generators_.labels()));
  carrier_ = FinSet(labels);
}

std::optional<std::size_t> FreeFAlgebra::structure(std::size_t summand, const std::vector<std::size_t>& args) const {
  const auto& s = f_.summands.at(summand);
  if (args.size() != s.arity) fail(ErrorKind::InvalidArgument, "constructor " + s.name + " takes " +
                                                                   std::to_string(s.arity) + " argument(s)");
  std::vector<Term> ts;
  for (auto a : args) ts.push_back(terms_.at(a));
  Term t = Term::app(s.name, std::move(ts));
  auto idx = carrier_.index_of(to_string(t, generators_.labels()));
  if (!idx || !(terms_[*idx] == t)) return std::nullopt;
  return idx;
}

std::size_t FreeFAlgebra::apply(std::size_t summand, const std::vector<std::size_t>& args) const {
  auto r = structure(summand, args);
  if (!r) fail(ErrorKind::DepthTooSmall, "constructor " + f_.summands.at(summand).name + " leaves depth " +
                                             std::to_string(depth_));
  return *r;
}

std::vector<bool> FreeFAlgebra::frontier() const {
  std::vector<bool> out(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) out[i] = term_depth_[i] == depth_;
  return out;
}

std::vector<std::size_t> FreeFAlgebra::induced_map(const FiniteAlgebra& target,
                                                   const std::vector<std::size_t>& assignment) const {
  if (!(target.signature == f_.signature()))
    fail(ErrorKind::SignatureMismatch, target.name + " is not an algebra for this functor");
  if (assignment.size() != generators_.size())
    fail(ErrorKind::InvalidArgument, "assignment does not cover the generators");
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (t.is_var()) {
      h.push_back(assignment.at(t.var_index()));
      continue;
    }
    std::vector<std::size_t> args;
    for (const auto& sub : t.args()) args.push_back(h[carrier_.at(to_string(sub, generators_.labels()))]);
    h.push_back(target.apply(*target.signature.find(t.symbol()), args));
  }
  return h;
}

bool FreeFAlgebra::check_universal(const FiniteAlgebra& target, const std::vector<std::size_t>& assignment) const {
  auto h = induced_map(target, assignment);
  for (std::size_t g = 0; g < generators_.size(); ++g)
    if (h[insertion_[g]] != assignment[g]) return false;
  std::vector<bool> reached(terms_.size(), false);
  for (auto i : insertion_) reached[i] = true;
  for (std::size_t s = 0; s < f_.summands.size(); ++s) {
    std::vector<std::size_t> args(f_.summands[s].arity, 0);
    if (!terms_.empty() || args.empty()) {
      do {
        auto r = structure(s, args);
        if (!r) continue;
        reached[*r] = true;
        std::vector<std::size_t> img;
        for (auto a : args) img.push_back(h[a]);
        if (h[*r] != target.apply(s, img)) return false;
      } while (next_tuple(args, terms_.size()));
    }
  }
  // Every element is a generator or a structure value, so any homomorphism
  // agreeing on generators agrees everywhere.
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

FreeFAlgebra free_f_algebra(const PolynomialFunctor& f, const FinSet& generators, std::size_t depth) {
  return FreeFAlgebra(f, generators, depth);
}

bool embeds_in_next_depth(const FreeFAlgebra& small, const FreeFAlgebra& large) {
  if (large.depth() != small.depth() + 1) return false;
  std::vector<std::size_t> into;
  for (std::size_t i = 0; i < small.terms().size(); ++i) {
    if (!(large.terms().at(i) == small.terms()[i])) return false;
    into.push_back(i);
  }
  for (std::size_t g = 0; g < small.generators().size(); ++g)
    if (into[small.insert(g)] != large.insert(g)) return false;
  for (std::size_t s = 0; s < small.functor().summands.size(); ++s) {
    std::vector<std::size_t> args(small.functor().summands[s].arity, 0);
    if (small.terms().empty() && !args.empty()) continue;
    do {
      auto r = small.structure(s, args);
      if (!r) continue;
      std::vector<std::size_t> up;
      for (auto a : args) up.push_back(into[a]);
      auto r2 = large.structure(s, up);
      if (!r2 || *r2 != into[*r]) return false;
    } while (next_tuple(args, small.terms().size()));
  }
  return true;
}

namespace {

// Full subcategory of (finite sets)^k on the given families of sizes.
struct FamilyCategory {
  CatPtr cat;
  std::vector<std::vector<std::size_t>> objects;
  std::map<std::vector<std::size_t>, std::size_t> object_index;
  std::vector<std::vector<std::vector<std::size_t>>> tables;  // per arrow, per component
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::vector<std::size_t>>>, std::size_t> arrow_index;

  std::size_t arrow(std::size_t s, std::size_t t, const std::vector<std::vector<std::size_t>>& tab) const {
    return arrow_index.at({s, t, tab});
  }
};

std::string family_label(const std::vector<std::size_t>& sizes) {
  std::string out = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "," : "") + std::to_string(sizes[i]);
  return out + ")";
}

std::string tables_label(const std::vector<std::vector<std::size_t>>& tabs) {
  std::string out = "[";
  for (std::size_t i = 0; i < tabs.size(); ++i) {
    if (i) out += "|";
    for (std::size_t j = 0; j < tabs[i].size(); ++j) out += (j ? " " : "") + std::to_string(tabs[i][j]);
  }
  return out + "]";
}

// All families of functions between two families of sizes.
std::vector<std::vector<std::vector<std::size_t>>> all_families(const std::vector<std::size_t>& from,
                                                                const std::vector<std::size_t>& to,
                                                                std::size_t limit) {
  std::vector<std::vector<std::vector<std::size_t>>> out{{}};
  for (std::size_t k = 0; k < from.size(); ++k) {
    auto count = checked_power(to[k], from[k], limit);
    if (!count) fail(ErrorKind::BoundsTooLarge, "too many functions between carriers");
    std::vector<std::vector<std::size_t>> fns;
    if (*count > 0) {
      std::vector<std::size_t> t(from[k], 0);
      do {
        fns.push_back(t);
      } while (next_tuple(t, to[k]));
    }
    std::vector<std::vector<std::vector<std::size_t>>> next;
    for (const auto& partial : out)
      for (const auto& fn : fns) {
        auto p = partial;
        p.push_back(fn);
        next.push_back(std::move(p));
      }
    out = std::move(next);
    if (out.size() > limit) fail(ErrorKind::BoundsTooLarge, "too many families of functions");
  }
  return out;
}

FamilyCategory family_category(const std::string& name, std::vector<std::vector<std::size_t>> objects) {
  FamilyCategory fc;
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  fc.objects = objects;
  CategoryBuilder b(name);
  for (std::size_t o = 0; o < objects.size(); ++o) {
    fc.object_index[objects[o]] = b.add_object(family_label(objects[o]));
    std::vector<std::vector<std::size_t>> id;
    for (auto n : objects[o]) {
      std::vector<std::size_t> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = i;
      id.push_back(t);
    }
    fc.tables.push_back(id);
    fc.arrow_index[{o, o, id}] = b.identity(o);
  }
  std::vector<std::pair<std::size_t, std::size_t>> ends(objects.size());
  for (std::size_t o = 0; o < objects.size(); ++o) ends[o] = {o, o};
  for (std::size_t s = 0; s < objects.size(); ++s)
    for (std::size_t t = 0; t < objects.size(); ++t)
      for (auto& tab : all_families(objects[s], objects[t], 4096)) {
        if (fc.arrow_index.count({s, t, tab})) continue;
        const auto a = b.add_arrow(family_label(objects[s]) + "->" + family_label(objects[t]) + tables_label(tab), s, t);
        fc.arrow_index[{s, t, tab}] = a;
        fc.tables.push_back(tab);
        ends.emplace_back(s, t);
        if (fc.tables.size() > 5000) fail(ErrorKind::BoundsTooLarge, "sorted-set category exceeds 5000 arrows");
      }
  for (std::size_t g = 0; g < fc.tables.size(); ++g)
    for (std::size_t f = 0; f < fc.tables.size(); ++f) {
      if (ends[f].second != ends[g].first) continue;
      std::vector<std::vector<std::size_t>> h(fc.tables[f].size());
      for (std::size_t k = 0; k < h.size(); ++k)
        for (auto x : fc.tables[f][k]) h[k].push_back(fc.tables[g][k][x]);
      b.set_composite(g, f, fc.arrow(ends[f].first, ends[g].second, h));
    }
  fc.cat = b.finish();
  return fc;
}

std::size_t product_size(const SortedSymbol& s, const std::vector<std::size_t>& sizes) {
  std::size_t n = 1;
  for (auto in : s.inputs) n *= sizes[in];
  return n;
}

// Tuple index (mixed radix, first input most significant) -> input digits.
std::vector<std::size_t> digits_of(std::size_t idx, const SortedSymbol& s, const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> d(s.inputs.size());
  for (std::size_t k = s.inputs.size(); k-- > 0;) {
    d[k] = idx % sizes[s.inputs[k]];
    idx /= sizes[s.inputs[k]];
  }
  return d;
}

std::size_t index_of_digits(const std::vector<std::size_t>& d, const SortedSymbol& s,
                            const std::vector<std::size_t>& sizes) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < d.size(); ++k) idx = idx * sizes[s.inputs[k]] + d[k];
  return idx;
}

struct SortedAlgebra {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> ops;  // per symbol
};

}  // namespace

SigmaInserterReport sigma_alg_as_inserter(const SortedSignature& sig, std::size_t bound) {
  const std::size_t ns = sig.sorts.size();
  for (const auto& s : sig.symbols) {
    if (s.output >= ns) fail(ErrorKind::InvariantError, "symbol " + s.name + " has an unknown output sort");
    for (auto in : s.inputs)
      if (in >= ns) fail(ErrorKind::InvariantError, "symbol " + s.name + " has an unknown input sort");
  }
  if (bound > 3 || ns > 3 || !checked_power(bound + 1, ns, 27))
    fail(ErrorKind::BoundsTooLarge, "carrier bound " + std::to_string(bound) + " over " + std::to_string(ns) +
                                        " sorts is beyond exhaustive matching");
  // Base: sorted sets with each carrier of size <= bound.
  std::vector<std::vector<std::size_t>> base_objs;
  std::vector<std::size_t> sizes(ns, 0);
  do {
    base_objs.push_back(sizes);
  } while (next_tuple(sizes, bound + 1));
  auto base = family_category("Set^S", base_objs);
  // Target: Σ-indexed families reached by ŝ and t̂.
  auto hat_s = [&](const std::vector<std::size_t>& a) {
    std::vector<std::size_t> out;
    for (const auto& s : sig.symbols) out.push_back(product_size(s, a));
    return out;
  };
  auto hat_t = [&](const std::vector<std::size_t>& a) {
    std::vector<std::size_t> out;
    for (const auto& s : sig.symbols) out.push_back(a[s.output]);
    return out;
  };
  std::vector<std::vector<std::size_t>> fam_objs;
  for (const auto& a : base.objects) {
    fam_objs.push_back(hat_s(a));
    fam_objs.push_back(hat_t(a));
  }
  auto fam = family_category("Set^Sigma", fam_objs);
  Functor fs{"s^", base.cat, fam.cat, {}, {}}, ft{"t^", base.cat, fam.cat, {}, {}};
  for (const auto& a : base.objects) {
    fs.on_objects.push_back(fam.object_index.at(hat_s(a)));
    ft.on_objects.push_back(fam.object_index.at(hat_t(a)));
  }
  for (std::size_t x = 0; x < base.cat->arrow_count(); ++x) {
    const auto& src = base.objects[base.cat->src(x)];
    const auto& tgt = base.objects[base.cat->tgt(x)];
    const auto& tab = base.tables[x];
    std::vector<std::vector<std::size_t>> s_tab, t_tab;
    for (const auto& s : sig.symbols) {
      std::vector<std::size_t> m;
      for (std::size_t i = 0; i < product_size(s, src); ++i) {
        auto d = digits_of(i, s, src);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = tab[s.inputs[k]][d[k]];
        m.push_back(index_of_digits(d, s, tgt));
      }
      s_tab.push_back(m);
      t_tab.push_back(tab[s.output]);
    }
    fs.on_arrows.push_back(fam.arrow(fs.on_objects[base.cat->src(x)], fs.on_objects[base.cat->tgt(x)], s_tab));
    ft.on_arrows.push_back(fam.arrow(ft.on_objects[base.cat->src(x)], ft.on_objects[base.cat->tgt(x)], t_tab));
  }
  fs.validate();
  ft.validate();
  Inserter ins = inserter(fs, ft);

  // Direct enumeration of Σ-algebras and homomorphisms.
  std::vector<SortedAlgebra> algs;
  for (const auto& a : base.objects) {
    std::vector<std::vector<std::vector<std::size_t>>> per_symbol{{}};
    for (const auto& s : sig.symbols) {
      std::vector<std::vector<std::vector<std::size_t>>> next;
      for (const auto& fn : all_families({product_size(s, a)}, {a[s.output]}, 4096))
        for (const auto& partial : per_symbol) {
          auto p = partial;
          p.push_back(fn[0]);
          next.push_back(std::move(p));
        }
      per_symbol = std::move(next);
    }
    for (auto& ops : per_symbol) algs.push_back({a, std::move(ops)});
  }
  std::sort(algs.begin(), algs.end(), [](const auto& l, const auto& r) {
    return std::tie(l.sizes, l.ops) < std::tie(r.sizes, r.ops);
  });
  auto is_hom = [&](const SortedAlgebra& x, const SortedAlgebra& y, const std::vector<std::vector<std::size_t>>& h) {
    for (std::size_t si = 0; si < sig.symbols.size(); ++si) {
      const auto& s = sig.symbols[si];
      for (std::size_t i = 0; i < product_size(s, x.sizes); ++i) {
        auto d = digits_of(i, s, x.sizes);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = h[s.inputs[k]][d[k]];
        if (h[s.output][x.ops[si][i]] != y.ops[si][index_of_digits(d, s, y.sizes)]) return false;
      }
    }
    return true;
  };
  SigmaInserterReport rep;
  rep.direct_objects = algs.size();
  std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::vector<std::size_t>>>> homs;
  for (std::size_t x = 0; x < algs.size(); ++x)
    for (std::size_t y = 0; y < algs.size(); ++y)
      for (auto& h : all_families(algs[x].sizes, algs[y].sizes, 4096))
        if (is_hom(algs[x], algs[y], h)) homs.emplace_back(x, y, std::move(h));
  rep.direct_arrows = homs.size();
  rep.inserter_objects = ins.category->object_count();
  rep.inserter_arrows = ins.category->arrow_count();

  // Objects: (A, r) matches the algebra on A whose tables are r.
  std::vector<std::size_t> obj_match(algs.size(), npos);
  std::vector<bool> ins_hit(rep.inserter_objects, false);
  for (std::size_t x = 0; x < algs.size(); ++x) {
    const std::size_t a = base.object_index.at(algs[x].sizes);
    for (std::size_t o = 0; o < rep.inserter_objects; ++o)
      if (ins.base[o] == a && fam.tables[ins.structure[o]] == algs[x].ops) {
        if (obj_match[x] != npos || ins_hit[o]) {
          rep.detail = "object matched twice";
          return rep;
        }
        obj_match[x] = o;
        ins_hit[o] = true;
      }
    if (obj_match[x] == npos) {
      rep.detail = "algebra " + std::to_string(x) + " has no inserter object";
      return rep;
    }
  }
  if (std::find(ins_hit.begin(), ins_hit.end(), false) != ins_hit.end()) {
    rep.detail = "inserter object without an algebra";
    return rep;
  }
  // Arrows: a homomorphism matches the inserter arrow with the same base function.
  std::vector<bool> arrow_hit(rep.inserter_arrows, false);
  for (const auto& [x, y, h] : homs) {
    const std::size_t base_arrow = base.arrow(base.object_index.at(algs[x].sizes), base.object_index.at(algs[y].sizes), h);
    auto arr = arrow_between(ins, obj_match[x], obj_match[y], base_arrow);
    if (!arr || arrow_hit[*arr]) {
      rep.detail = "homomorphism without a unique inserter arrow";
      return rep;
    }
    arrow_hit[*arr] = true;
  }
  if (std::find(arrow_hit.begin(), arrow_hit.end(), false) != arrow_hit.end()) {
    rep.detail = "inserter arrow without a homomorphism";
    return rep;
  }
  // Composition agrees because both sides compose base functions.
  rep.isomorphic = true;
  rep.detail = std::to_string(rep.direct_objects) + " objects and " + std::to_string(rep.direct_arrows) + " arrows matched";
  return rep;
}

}  // namespace veq
