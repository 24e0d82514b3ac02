#include "veq/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "veq/error.hpp"

namespace veq {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t encode(std::span<const std::size_t> args, std::size_t n) {
  std::size_t idx = 0;
  for (auto a : args) idx = idx * n + a;
  return idx;
}

// Advances a mixed-radix counter; false once it wraps around.
bool next_tuple(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < base) return true;
    digits[k] = 0;
  }
  return false;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::optional<std::size_t> checked_power(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) return std::nullopt;
    r *= n;
  }
  if (r > limit) return std::nullopt;
  return r;
}

std::size_t table_size(std::size_t carrier, std::size_t arity) {
  auto s = checked_power(carrier, arity, std::size_t{1} << 26);
  if (!s) fail(ErrorKind::CarrierTooLarge, "operation table with " + std::to_string(carrier) + "^" +
                                               std::to_string(arity) + " entries");
  return *s;
}

FiniteAlgebra FiniteAlgebra::build(std::string name, Signature sig, FinSet carrier, const OpFn& fn) {
  FiniteAlgebra a{std::move(name), std::move(sig), std::move(carrier), {}};
  const std::size_t n = a.carrier.size();
  for (std::size_t op = 0; op < a.signature.size(); ++op) {
    const std::size_t arity = a.signature.ops()[op].arity;
    std::vector<std::size_t> table(table_size(n, arity));
    std::vector<std::size_t> args(arity, 0);
    for (std::size_t i = 0; i < table.size(); ++i) {
      table[i] = fn(op, args);
      next_tuple(args, n);
    }
    a.tables.push_back(std::move(table));
  }
  a.validate();
  return a;
}

std::size_t FiniteAlgebra::apply(std::size_t op, std::span<const std::size_t> args) const {
  return tables[op][encode(args, carrier.size())];
}

void FiniteAlgebra::validate() const {
  if (tables.size() != signature.size())
    fail(ErrorKind::InvariantError, "algebra " + name + " has " + std::to_string(tables.size()) +
                                        " tables for " + std::to_string(signature.size()) + " symbols");
  for (std::size_t op = 0; op < tables.size(); ++op) {
    const auto& sym = signature.ops()[op];
    if (tables[op].size() != table_size(size(), sym.arity))
      fail(ErrorKind::InvariantError, "table of '" + sym.name + "' in " + name + " is not total");
    for (auto v : tables[op])
      if (v >= size()) fail(ErrorKind::InvariantError, "table of '" + sym.name + "' in " + name + " leaves the carrier");
  }
}

bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return a.signature == b.signature && a.carrier == b.carrier && a.tables == b.tables;
}

std::string to_string(const Identity& id, const std::vector<std::string>& var_names) {
  return to_string(id.lhs, var_names) + " = " + to_string(id.rhs, var_names);
}

std::size_t eval_term(const FiniteAlgebra& a, const Term& t, std::span<const std::size_t> env) {
  if (t.is_var()) {
    if (t.var_index() >= env.size())
      fail(ErrorKind::UnboundVariable, "variable " + default_var_name(t.var_index()) + " has no value");
    return env[t.var_index()];
  }
  auto op = a.signature.find(t.symbol());
  if (!op || a.signature.ops()[*op].arity != t.args().size())
    fail(ErrorKind::SignatureMismatch, "'" + t.symbol() + "' with " + std::to_string(t.args().size()) +
                                           " argument(s) is not an operation of " + a.name);
  std::vector<std::size_t> vals;
  vals.reserve(t.args().size());
  for (const auto& arg : t.args()) vals.push_back(eval_term(a, arg, env));
  return a.apply(*op, vals);
}

std::optional<std::vector<std::size_t>> violation(const FiniteAlgebra& a, const Identity& id) {
  for (const Term* side : {&id.lhs, &id.rhs})
    if (!well_formed(*side, a.signature, id.context)) {
      if (side->var_bound() > id.context)
        fail(ErrorKind::UnboundVariable, "identity uses a variable outside its context");
      fail(ErrorKind::SignatureMismatch, "identity " + to_string(id) + " is not over the signature of " + a.name);
    }
  if (a.size() == 0 && id.context > 0) return std::nullopt;
  std::vector<std::size_t> env(id.context, 0);
  do {
    if (eval_term(a, id.lhs, env) != eval_term(a, id.rhs, env)) return env;
  } while (next_tuple(env, a.size()));
  return std::nullopt;
}

bool satisfies(const FiniteAlgebra& a, const Identity& id) { return !violation(a, id).has_value(); }

std::vector<bool> generated_mask(const FiniteAlgebra& a, std::span<const std::size_t> gens) {
  std::vector<bool> mask(a.size(), false);
  std::vector<std::size_t> members;
  auto add = [&](std::size_t x) {
    if (!mask[x]) {
      mask[x] = true;
      members.push_back(x);
    }
  };
  for (auto g : gens) add(g);
  for (std::size_t op = 0; op < a.signature.size(); ++op)
    if (a.signature.ops()[op].arity == 0) add(a.apply(op, {}));
  // Each tuple is visited once: when its newest member is processed.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t op = 0; op < a.signature.size(); ++op) {
      const std::size_t arity = a.signature.ops()[op].arity;
      if (arity == 0) continue;
      std::vector<std::size_t> pick(arity, 0);
      std::vector<std::size_t> args(arity);
      do {
        bool has_newest = false;
        for (std::size_t k = 0; k < arity; ++k) has_newest = has_newest || pick[k] == i;
        if (!has_newest) continue;
        for (std::size_t k = 0; k < arity; ++k) args[k] = members[pick[k]];
        add(a.apply(op, args));
      } while (next_tuple(pick, i + 1));
    }
  }
  return mask;
}

bool is_closed(const FiniteAlgebra& a, const std::vector<bool>& mask) {
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < a.size(); ++x)
    if (mask[x]) members.push_back(x);
  for (std::size_t op = 0; op < a.signature.size(); ++op) {
    const std::size_t arity = a.signature.ops()[op].arity;
    if (arity > 0 && members.empty()) continue;
    std::vector<std::size_t> pick(arity, 0), args(arity);
    do {
      for (std::size_t k = 0; k < arity; ++k) args[k] = members[pick[k]];
      if (!mask[a.apply(op, args)]) return false;
    } while (next_tuple(pick, members.size()));
  }
  return true;
}

Subalgebra restrict_to(const FiniteAlgebra& a, const std::vector<bool>& mask) {
  if (!is_closed(a, mask)) fail(ErrorKind::InvariantError, "subset of " + a.name + " is not closed");
  auto mono = SubobjectMono::from_mask(a.carrier, mask);
  const auto& incl = mono.inclusion.table();
  std::vector<std::size_t> back(a.size(), npos);
  for (std::size_t i = 0; i < incl.size(); ++i) back[incl[i]] = i;
  auto sub = FiniteAlgebra::build(a.name + "|sub", a.signature, mono.carrier,
                                  [&](std::size_t op, std::span<const std::size_t> args) {
                                    std::vector<std::size_t> up(args.size());
                                    for (std::size_t k = 0; k < args.size(); ++k) up[k] = incl[args[k]];
                                    return back[a.apply(op, up)];
                                  });
  return {std::move(sub), mono.inclusion};
}

std::vector<Subalgebra> subalgebras(const FiniteAlgebra& a) {
  std::vector<std::vector<bool>> found;
  auto seen = [&](const std::vector<bool>& m) { return std::find(found.begin(), found.end(), m) != found.end(); };
  auto base = generated_mask(a, {});
  if (std::count(base.begin(), base.end(), true) > 0) found.push_back(base);
  for (std::size_t x = 0; x < a.size(); ++x) {
    std::size_t g = x;
    auto m = generated_mask(a, std::span<const std::size_t>(&g, 1));
    if (!seen(m)) found.push_back(m);
  }
  // Joins: every closed set is generated by adding one element at a time.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (found[i][x]) continue;
      std::vector<std::size_t> gens{x};
      for (std::size_t y = 0; y < a.size(); ++y)
        if (found[i][y]) gens.push_back(y);
      auto m = generated_mask(a, gens);
      if (!seen(m)) found.push_back(m);
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    auto cl = std::count(l.begin(), l.end(), true), cr = std::count(r.begin(), r.end(), true);
    if (cl != cr) return cl < cr;
    return l > r;  // earlier carrier elements first
  });
  std::vector<Subalgebra> out;
  for (const auto& m : found) out.push_back(restrict_to(a, m));
  return out;
}

std::vector<std::vector<std::size_t>> CongruenceRelation::blocks() const {
  std::vector<std::vector<std::size_t>> out(classes);
  for (std::size_t x = 0; x < class_of.size(); ++x) out[class_of[x]].push_back(x);
  return out;
}

CongruenceRelation normalize_partition(const std::vector<std::size_t>& labels) {
  CongruenceRelation c;
  c.class_of.resize(labels.size());
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == labels[x]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[x], seen.size());
      c.class_of[x] = seen.size() - 1;
    } else {
      c.class_of[x] = it->second;
    }
  }
  c.classes = seen.size();
  return c;
}

bool is_compatible(const FiniteAlgebra& a, const CongruenceRelation& c) {
  // Compatibility one argument at a time suffices.
  const std::size_t n = a.size();
  for (std::size_t op = 0; op < a.signature.size(); ++op) {
    const std::size_t arity = a.signature.ops()[op].arity;
    if (arity == 0 || n == 0) continue;
    std::vector<std::size_t> args(arity, 0);
    do {
      for (std::size_t k = 0; k < arity; ++k) {
        const std::size_t orig = args[k];
        const std::size_t base = a.apply(op, args);
        for (std::size_t y = orig + 1; y < n; ++y) {
          if (c.class_of[y] != c.class_of[orig]) continue;
          args[k] = y;
          const bool ok = c.class_of[a.apply(op, args)] == c.class_of[base];
          args[k] = orig;
          if (!ok) return false;
        }
      }
    } while (next_tuple(args, n));
  }
  return true;
}

std::vector<CongruenceRelation> congruences(const FiniteAlgebra& a, std::size_t bound) {
  const std::size_t n = a.size();
  if (n > bound)
    fail(ErrorKind::CarrierTooLarge, a.name + " has " + std::to_string(n) + " elements; the bound is " +
                                         std::to_string(bound));
  std::vector<CongruenceRelation> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  // Restricted growth strings: rg[0] = 0, rg[i] <= 1 + max(rg[0..i-1]).
  std::vector<std::size_t> rg(n, 0);
  while (true) {
    CongruenceRelation c{rg, *std::max_element(rg.begin(), rg.end()) + 1};
    if (is_compatible(a, c)) out.push_back(c);
    std::size_t i = n;
    while (--i > 0) {
      std::size_t mx = *std::max_element(rg.begin(), rg.begin() + i);
      if (rg[i] <= mx) {
        ++rg[i];
        std::fill(rg.begin() + i + 1, rg.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.classes > r.classes; });
  return out;
}

CongruenceRelation generated_congruence(const FiniteAlgebra& a,
                                        std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  const std::size_t n = a.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  bool changed = false;
  auto unite = [&](std::size_t x, std::size_t y) {
    x = find_root(parent, x);
    y = find_root(parent, y);
    if (x == y) return;
    parent[std::max(x, y)] = std::min(x, y);
    changed = true;
  };
  for (const auto& [x, y] : pairs) unite(x, y);
  do {
    changed = false;
    for (std::size_t op = 0; op < a.signature.size(); ++op) {
      const std::size_t arity = a.signature.ops()[op].arity;
      if (arity == 0 || n == 0) continue;
      std::vector<std::size_t> args(arity, 0);
      do {
        for (std::size_t k = 0; k < arity; ++k) {
          const std::size_t orig = args[k];
          const std::size_t root = find_root(parent, orig);
          if (root == orig) continue;
          const std::size_t base = a.apply(op, args);
          args[k] = root;
          unite(base, a.apply(op, args));
          args[k] = orig;
        }
      } while (next_tuple(args, n));
    }
  } while (changed);
  std::vector<std::size_t> roots(n);
  for (std::size_t x = 0; x < n; ++x) roots[x] = find_root(parent, x);
  return normalize_partition(roots);
}

Quotient quotient_algebra(const FiniteAlgebra& a, const CongruenceRelation& c) {
  if (c.class_of.size() != a.size()) fail(ErrorKind::InvalidArgument, "partition size differs from the carrier");
  if (!is_compatible(a, c)) fail(ErrorKind::InvariantError, "partition is not a congruence of " + a.name);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto blocks = c.blocks();
  for (const auto& b : blocks)
    for (std::size_t i = 1; i < b.size(); ++i) pairs.emplace_back(b[0], b[i]);
  FinFunction proj = quotient_by_pairs(a.carrier, pairs);
  std::vector<std::size_t> rep(proj.cod().size(), npos);
  for (std::size_t x = 0; x < a.size(); ++x)
    if (rep[proj(x)] == npos) rep[proj(x)] = x;
  auto q = FiniteAlgebra::build(a.name + "/~", a.signature, proj.cod(),
                                [&](std::size_t op, std::span<const std::size_t> args) {
                                  std::vector<std::size_t> up(args.size());
                                  for (std::size_t k = 0; k < args.size(); ++k) up[k] = rep[args[k]];
                                  return proj(a.apply(op, up));
                                });
  return {std::move(q), proj};
}

void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a.signature == b.signature))
    fail(ErrorKind::SignatureMismatch, a.name + " and " + b.name + " have different signatures");
}

ProductAlgebra product_algebra(std::span<const FiniteAlgebra> as) {
  if (as.empty()) fail(ErrorKind::EmptyList, "product of an empty list of algebras");
  for (const auto& a : as) require_same_signature(as[0], a);
  std::vector<FinSet> carriers;
  std::string name;
  for (const auto& a : as) {
    carriers.push_back(a.carrier);
    name += (name.empty() ? "" : "x") + a.name;
  }
  auto cone = product(carriers);
  if (as.size() == 1) return {as[0], cone.projections};
  // Coordinates of apex element i are read off the projections.
  auto alg = FiniteAlgebra::build(name, as[0].signature, cone.apex,
                                  [&](std::size_t op, std::span<const std::size_t> args) {
                                    std::size_t idx = 0;
                                    std::vector<std::size_t> comp(args.size());
                                    for (std::size_t k = 0; k < as.size(); ++k) {
                                      for (std::size_t j = 0; j < args.size(); ++j)
                                        comp[j] = cone.projections[k](args[j]);
                                      idx = idx * as[k].size() + as[k].apply(op, comp);
                                    }
                                    return idx;
                                  });
  return {std::move(alg), cone.projections};
}

FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t k) {
  if (k == 0) fail(ErrorKind::EmptyList, "zeroth power requested");
  std::vector<FiniteAlgebra> copies(k, a);
  auto p = product_algebra(copies).algebra;
  p.name = a.name + "^" + std::to_string(k);
  return p;
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<std::size_t>& map) {
  require_same_signature(a, b);
  if (map.size() != a.size()) return false;
  for (auto v : map)
    if (v >= b.size()) return false;
  for (std::size_t op = 0; op < a.signature.size(); ++op) {
    const std::size_t arity = a.signature.ops()[op].arity;
    if (arity > 0 && a.size() == 0) continue;
    std::vector<std::size_t> args(arity, 0), img(arity);
    do {
      for (std::size_t k = 0; k < arity; ++k) img[k] = map[args[k]];
      if (map[a.apply(op, args)] != b.apply(op, img)) return false;
    } while (next_tuple(args, a.size()));
  }
  return true;
}

std::optional<std::vector<std::size_t>> extend_to_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                               std::span<const std::size_t> gens,
                                                               std::span<const std::size_t> images) {
  std::vector<std::size_t> map(a.size(), npos);
  std::vector<std::size_t> members;
  auto assign = [&](std::size_t x, std::size_t v) {
    if (map[x] == npos) {
      map[x] = v;
      members.push_back(x);
      return true;
    }
    return map[x] == v;
  };
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!assign(gens[i], images[i])) return std::nullopt;
  for (std::size_t op = 0; op < a.signature.size(); ++op)
    if (a.signature.ops()[op].arity == 0 && !assign(a.apply(op, {}), b.apply(op, {}))) return std::nullopt;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t op = 0; op < a.signature.size(); ++op) {
      const std::size_t arity = a.signature.ops()[op].arity;
      if (arity == 0) continue;
      std::vector<std::size_t> pick(arity, 0), args(arity), img(arity);
      do {
        bool has_newest = false;
        for (std::size_t k = 0; k < arity; ++k) has_newest = has_newest || pick[k] == i;
        if (!has_newest) continue;
        for (std::size_t k = 0; k < arity; ++k) {
          args[k] = members[pick[k]];
          img[k] = map[args[k]];
        }
        if (!assign(a.apply(op, args), b.apply(op, img))) return std::nullopt;
      } while (next_tuple(pick, i + 1));
    }
  }
  return map;
}

std::vector<std::size_t> generating_set(const FiniteAlgebra& a) {
  const std::size_t n = a.size();
  auto covers = [&](const std::vector<std::size_t>& gens) {
    auto m = generated_mask(a, gens);
    return std::all_of(m.begin(), m.end(), [](bool b) { return b; });
  };
  if (covers({})) return {};
  if (n <= 10) {
    for (std::size_t size = 1; size <= n; ++size) {
      std::vector<bool> choose(n, false);
      std::fill(choose.begin(), choose.begin() + size, true);
      do {
        std::vector<std::size_t> gens;
        for (std::size_t x = 0; x < n; ++x)
          if (choose[x]) gens.push_back(x);
        if (covers(gens)) return gens;
      } while (std::prev_permutation(choose.begin(), choose.end()));
    }
  }
  std::vector<std::size_t> gens;
  auto mask = generated_mask(a, gens);
  for (std::size_t x = 0; x < n; ++x) {
    if (mask[x]) continue;
    gens.push_back(x);
    mask = generated_mask(a, gens);
  }
  return gens;
}

std::vector<std::vector<std::size_t>> homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  require_same_signature(a, b);
  std::vector<std::vector<std::size_t>> out;
  const auto gens = generating_set(a);
  if (b.size() == 0) {
    if (a.size() == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> images(gens.size(), 0);
  do {
    auto map = extend_to_homomorphism(a, b, gens, images);
    if (map) out.push_back(std::move(*map));
  } while (next_tuple(images, b.size()));
  return out;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  require_same_signature(a, b);
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() == 0) return std::vector<std::size_t>{};
  const auto gens = generating_set(a);
  std::vector<std::size_t> images(gens.size(), 0);
  do {
    auto map = extend_to_homomorphism(a, b, gens, images);
    if (!map) continue;
    std::vector<bool> hit(b.size(), false);
    bool bij = true;
    for (auto v : *map) {
      if (hit[v]) bij = false;
      hit[v] = true;
    }
    if (bij) return map;
  } while (next_tuple(images, b.size()));
  return std::nullopt;
}

std::string to_string(const FiniteAlgebra& a) {
  std::string out = a.name + " on " + to_string(a.carrier);
  for (std::size_t op = 0; op < a.signature.size(); ++op) {
    const auto& sym = a.signature.ops()[op];
    out += "\n  " + sym.name + ":";
    for (auto v : a.tables[op]) out += " " + a.carrier.label(v);
  }
  return out;
}

}  // namespace veq
