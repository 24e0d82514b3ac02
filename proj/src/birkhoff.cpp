#include "veq/birkhoff.hpp"

#include <algorithm>
#include <map>

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

struct TermNode {
  Term term;
  std::size_t op = npos;  // npos for variables
  std::size_t var = 0;
  std::vector<std::size_t> kids;
};

std::vector<TermNode> enumerate_nodes(const Signature& sig, std::size_t n_vars, std::size_t depth,
                                      std::size_t max_terms) {
  std::vector<TermNode> nodes;
  auto push = [&](TermNode node) {
    if (nodes.size() >= max_terms)
      fail(ErrorKind::BoundsTooLarge, "more than " + std::to_string(max_terms) + " terms of depth <= " +
                                          std::to_string(depth) + " in " + std::to_string(n_vars) + " variables");
    nodes.push_back(std::move(node));
  };
  for (std::size_t v = 0; v < n_vars; ++v) push({Term::var(v), npos, v, {}});
  for (std::size_t op = 0; op < sig.size(); ++op)
    if (sig.ops()[op].arity == 0) push({Term::app(sig.ops()[op].name), op, 0, {}});
  std::size_t prev_begin = 0;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::size_t below = nodes.size();  // terms of depth < d
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t arity = sig.ops()[op].arity;
      if (arity == 0 || below == 0) continue;
      std::vector<std::size_t> pick(arity, 0);
      do {
        bool fresh = false;
        for (auto p : pick) fresh = fresh || p >= prev_begin;
        if (!fresh) continue;
        std::vector<Term> args;
        for (auto p : pick) args.push_back(nodes[p].term);
        push({Term::app(sig.ops()[op].name, std::move(args)), op, 0, pick});
      } while (next_tuple(pick, below));
    }
    prev_begin = below;
  }
  return nodes;
}

// Value table of every node over all assignments of A^n_vars.
std::vector<std::vector<std::size_t>> term_functions(const FiniteAlgebra& a, const std::vector<TermNode>& nodes,
                                                     std::size_t n_vars) {
  auto envs = checked_power(a.size(), n_vars, 100000);
  if (!envs) fail(ErrorKind::BoundsTooLarge, "too many assignments of " + std::to_string(n_vars) + " variables");
  std::vector<std::vector<std::size_t>> fns;
  fns.reserve(nodes.size());
  std::vector<std::size_t> args;
  for (const auto& node : nodes) {
    std::vector<std::size_t> f(*envs);
    if (node.op == npos) {
      // Variable v is digit v of the mixed-radix assignment index.
      std::size_t stride = 1;
      for (std::size_t k = node.var + 1; k < n_vars; ++k) stride *= a.size();
      for (std::size_t e = 0; e < f.size(); ++e) f[e] = (e / stride) % a.size();
    } else {
      args.resize(node.kids.size());
      for (std::size_t e = 0; e < f.size(); ++e) {
        for (std::size_t k = 0; k < node.kids.size(); ++k) args[k] = fns[node.kids[k]][e];
        f[e] = a.apply(node.op, args);
      }
    }
    fns.push_back(std::move(f));
  }
  return fns;
}

}  // namespace

std::vector<Term> enumerate_terms(const Signature& sig, std::size_t n_vars, std::size_t depth, std::size_t max_terms) {
  std::vector<Term> out;
  for (auto& n : enumerate_nodes(sig, n_vars, depth, max_terms)) out.push_back(std::move(n.term));
  return out;
}

std::vector<Identity> identities_of(const FiniteAlgebra& a, std::size_t n_vars, std::size_t depth,
                                    const IdentityOptions& opts) {
  auto nodes = enumerate_nodes(a.signature, n_vars, depth, opts.max_terms);
  auto fns = term_functions(a, nodes, n_vars);
  std::map<std::vector<std::size_t>, std::size_t> first;
  std::vector<Identity> raw;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [it, fresh] = first.emplace(fns[i], i);
    if (!fresh) raw.push_back({nodes[i].term, nodes[it->second].term, n_vars});
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Identity& l, const Identity& r) { return l.lhs.size() < r.lhs.size(); });
  if (!opts.deduplicate) return raw;
  TheoryPresentation kept{a.name + "-identities", a.signature, {}};
  std::vector<Identity> out;
  for (auto& id : raw) {
    if (!kept.axioms.empty() && congruent(kept, id.lhs, id.rhs, opts.budget).verdict == Verdict::Provable) continue;
    kept.axioms.push_back({id.lhs, id.rhs, n_vars, {}});
    out.push_back(std::move(id));
  }
  return out;
}

HspSearch::HspSearch(FiniteAlgebra a, std::size_t identity_vars, std::size_t identity_depth)
    : a_(std::move(a)), identity_vars_(identity_vars), identity_depth_(identity_depth) {}

const FiniteAlgebra& HspSearch::power(std::size_t k) {
  auto it = powers_.find(k);
  if (it == powers_.end()) it = powers_.emplace(k, power_algebra(a_, k)).first;
  return it->second;
}

const std::vector<Identity>& HspSearch::identities() {
  if (!identities_) identities_ = identities_of(a_, identity_vars_, identity_depth_);
  return *identities_;
}

namespace {

HspWitness make_witness(const FiniteAlgebra& p, const FiniteAlgebra& b, std::size_t k,
                        const std::vector<std::size_t>& pre, const std::vector<std::size_t>& gens,
                        const std::vector<std::size_t>& map) {
  HspWitness w;
  w.k = k;
  for (auto x : pre) w.generators.push_back(p.carrier.label(x));
  for (auto y : gens) w.images.push_back(b.carrier.label(y));
  std::vector<bool> mask(p.size(), false);
  for (std::size_t x = 0; x < p.size(); ++x) mask[x] = map[x] != npos;
  auto sub = restrict_to(p, mask);
  std::vector<std::size_t> values;
  for (auto x : sub.inclusion.table()) values.push_back(map[x]);
  auto cong = normalize_partition(values);
  for (const auto& block : cong.blocks()) {
    std::vector<std::string> cls;
    for (auto i : block) cls.push_back(sub.algebra.carrier.label(i));
    w.kernel.push_back(std::move(cls));
  }
  auto q = quotient_algebra(sub.algebra, cong);
  std::vector<bool> done(q.algebra.size(), false);
  for (std::size_t i = 0; i < sub.algebra.size(); ++i) {
    const std::size_t c = q.projection(i);
    if (done[c]) continue;
    done[c] = true;
    w.isomorphism.emplace_back(q.algebra.carrier.label(c), b.carrier.label(values[i]));
  }
  return w;
}

}  // namespace

HspResult HspSearch::member(const FiniteAlgebra& b, std::size_t k_max) {
  require_same_signature(a_, b);
  if (k_max == 0) k_max = std::max<std::size_t>(1, b.size());
  HspResult result;
  const auto gens = generating_set(b);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (!checked_power(a_.size(), k, 4096)) break;
    const auto& p = power(k);
    result.k_searched = k;
    if (p.size() == 0 && !gens.empty()) continue;
    std::vector<std::size_t> pre(gens.size(), 0);
    do {
      auto map = extend_to_homomorphism(p, b, pre, gens);
      if (!map) continue;
      // Surjective because the images generate B; empty B needs an empty subalgebra.
      if (b.size() == 0 && std::any_of(map->begin(), map->end(), [](auto v) { return v != npos; })) continue;
      result.member = true;
      result.witness = make_witness(p, b, k, pre, gens, *map);
      return result;
    } while (next_tuple(pre, p.size()));
  }
  for (const auto& id : identities())
    if (!satisfies(b, id)) {
      result.violated = id;
      break;
    }
  return result;
}

HspResult hsp_member(const FiniteAlgebra& b, const FiniteAlgebra& a, std::size_t k_max) {
  HspSearch search(a);
  return search.member(b, k_max);
}

bool replay_hsp_witness(const FiniteAlgebra& a, const FiniteAlgebra& b, const HspWitness& w) {
  if (w.k == 0 || w.generators.size() != w.images.size()) return false;
  const auto p = power_algebra(a, w.k);
  std::vector<std::size_t> pre, imgs;
  for (const auto& g : w.generators) {
    auto i = p.carrier.index_of(g);
    if (!i) return false;
    pre.push_back(*i);
  }
  for (const auto& g : w.images) {
    auto i = b.carrier.index_of(g);
    if (!i) return false;
    imgs.push_back(*i);
  }
  auto map = extend_to_homomorphism(p, b, pre, imgs);
  if (!map) return false;
  std::vector<bool> mask(p.size(), false), hit(b.size(), false);
  for (std::size_t x = 0; x < p.size(); ++x)
    if ((*map)[x] != npos) {
      mask[x] = true;
      hit[(*map)[x]] = true;
    }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  auto sub = restrict_to(p, mask);
  // The kernel must be exactly the recorded partition.
  std::vector<std::size_t> block_of(sub.algebra.size(), npos);
  for (std::size_t c = 0; c < w.kernel.size(); ++c)
    for (const auto& label : w.kernel[c]) {
      auto i = sub.algebra.carrier.index_of(label);
      if (!i || block_of[*i] != npos) return false;
      block_of[*i] = c;
    }
  if (std::find(block_of.begin(), block_of.end(), npos) != block_of.end()) return false;
  auto cong = normalize_partition(block_of);
  for (std::size_t i = 0; i < sub.algebra.size(); ++i)
    for (std::size_t j = 0; j < sub.algebra.size(); ++j) {
      const bool same_class = cong.class_of[i] == cong.class_of[j];
      const bool same_value = (*map)[sub.inclusion(i)] == (*map)[sub.inclusion(j)];
      if (same_class != same_value) return false;
    }
  auto q = quotient_algebra(sub.algebra, cong);
  if (w.isomorphism.size() != q.algebra.size() || q.algebra.size() != b.size()) return false;
  std::vector<std::size_t> iso(q.algebra.size(), npos);
  for (const auto& [from, to] : w.isomorphism) {
    auto i = q.algebra.carrier.index_of(from);
    auto j = b.carrier.index_of(to);
    if (!i || !j || iso[*i] != npos) return false;
    iso[*i] = *j;
  }
  std::vector<bool> onto(b.size(), false);
  for (auto v : iso) {
    if (v == npos || onto[v]) return false;
    onto[v] = true;
  }
  return is_homomorphism(q.algebra, b, iso);
}

std::string to_string(const HspWitness& w) {
  std::string out = "k=" + std::to_string(w.k) + " generators:";
  for (std::size_t i = 0; i < w.generators.size(); ++i) out += " " + w.generators[i] + "->" + w.images[i];
  out += " kernel:";
  for (const auto& cls : w.kernel) {
    out += " {";
    for (std::size_t i = 0; i < cls.size(); ++i) out += (i ? "," : "") + cls[i];
    out += "}";
  }
  out += " iso:";
  for (const auto& [q, b] : w.isomorphism) out += " " + q + "->" + b;
  return out;
}

std::size_t FreeAlgebra::reflect(const FiniteAlgebra& a, const Term& t) const {
  std::vector<std::size_t> f;
  std::vector<std::size_t> env(arity, 0);
  if (a.size() > 0 || arity == 0) {
    do {
      f.push_back(eval_term(a, t, env));
    } while (next_tuple(env, a.size()));
  }
  auto it = std::find(functions.begin(), functions.end(), f);
  if (it == functions.end()) fail(ErrorKind::InvariantError, "term function outside the free algebra");
  return static_cast<std::size_t>(it - functions.begin());
}

FreeAlgebra free_algebra_in_variety(const FiniteAlgebra& a, std::size_t n, std::size_t bound) {
  auto envs = checked_power(a.size(), n, std::size_t{1} << 16);
  if (!envs) fail(ErrorKind::BoundsTooLarge, "too many assignments for " + std::to_string(n) + " variables");
  if (a.size() == 0 && n > 0) fail(ErrorKind::BoundsTooLarge, "no assignments into an empty carrier");
  FreeAlgebra fa;
  fa.arity = n;
  std::map<std::vector<std::size_t>, std::size_t> index;
  auto add = [&](std::vector<std::size_t> f, Term t) {
    if (index.count(f)) return;
    if (fa.functions.size() >= bound)
      fail(ErrorKind::BoundsTooLarge, "free algebra exceeds " + std::to_string(bound) + " elements");
    index.emplace(f, fa.functions.size());
    fa.functions.push_back(std::move(f));
    fa.representatives.push_back(std::move(t));
  };
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t stride = 1;
    for (std::size_t k = v + 1; k < n; ++k) stride *= a.size();
    std::vector<std::size_t> f(*envs);
    for (std::size_t e = 0; e < f.size(); ++e) f[e] = (e / stride) % a.size();
    add(std::move(f), Term::var(v));
  }
  for (std::size_t op = 0; op < a.signature.size(); ++op)
    if (a.signature.ops()[op].arity == 0)
      add(std::vector<std::size_t>(*envs, a.apply(op, {})), Term::app(a.signature.ops()[op].name));
  std::vector<std::size_t> args;
  for (std::size_t i = 0; i < fa.functions.size(); ++i) {
    for (std::size_t op = 0; op < a.signature.size(); ++op) {
      const std::size_t arity = a.signature.ops()[op].arity;
      if (arity == 0) continue;
      std::vector<std::size_t> pick(arity, 0);
      do {
        bool has_newest = false;
        for (auto p : pick) has_newest = has_newest || p == i;
        if (!has_newest) continue;
        std::vector<std::size_t> f(*envs);
        args.resize(arity);
        for (std::size_t e = 0; e < f.size(); ++e) {
          for (std::size_t k = 0; k < arity; ++k) args[k] = fa.functions[pick[k]][e];
          f[e] = a.apply(op, args);
        }
        std::vector<Term> sub;
        for (auto p : pick) sub.push_back(fa.representatives[p]);
        add(std::move(f), Term::app(a.signature.ops()[op].name, std::move(sub)));
      } while (next_tuple(pick, i + 1));
    }
  }
  std::vector<std::string> labels;
  for (const auto& t : fa.representatives) labels.push_back(to_string(t));
  fa.algebra = FiniteAlgebra::build("F" + std::to_string(n) + "(" + a.name + ")", a.signature, FinSet(labels),
                                    [&](std::size_t op, std::span<const std::size_t> xs) {
                                      std::vector<std::size_t> f(*envs), vals(xs.size());
                                      for (std::size_t e = 0; e < f.size(); ++e) {
                                        for (std::size_t k = 0; k < xs.size(); ++k) vals[k] = fa.functions[xs[k]][e];
                                        f[e] = a.apply(op, vals);
                                      }
                                      return index.at(f);
                                    });
  return fa;
}

}  // namespace veq
