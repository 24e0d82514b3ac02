// acceptance VEQ ROOT
//
// One line per acceptance criterion. Each check compares the library with
// an independent oracle: brute-force filters, exhaustive enumeration or
// plain linear algebra over the rationals.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "golden.hpp"
#include "support.hpp"
#include "veq/algebra.hpp"
#include "veq/birkhoff.hpp"
#include "veq/commands.hpp"
#include "veq/equations.hpp"
#include "veq/error.hpp"
#include "veq/finset_category.hpp"
#include "veq/groups.hpp"
#include "veq/inserters.hpp"
#include "veq/series.hpp"
#include "veq/term.hpp"
#include "veq/theories.hpp"
#include "veq/workspace.hpp"

using namespace veq;
using veq::testing::letters;
using veq::testing::random_function;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

using System = EquationSystem<FinSet, FinFunction>;
using Mask = std::vector<bool>;

// ---------------------------------------------------------------- criterion 1

System random_system(std::mt19937& rng, const FinSet& dom, std::size_t equations) {
  System e{dom, {}};
  for (std::size_t i = 0; i < equations; ++i) {
    const FinSet cod = letters(1 + rng() % 5, 'p');
    e.equations.push_back({random_function(rng, dom, cod), random_function(rng, dom, cod)});
  }
  return e;
}

bool solves_at(const System& e, std::size_t x) {
  for (const auto& eq : e.equations)
    if (eq.lhs(x) != eq.rhs(x)) return false;
  return true;
}

Mask filter(const System& e) {
  Mask m(e.domain.size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = solves_at(e, x);
  return m;
}

bool solves(const FinFunction& a, const System& e) {
  for (std::size_t x = 0; x < a.dom().size(); ++x)
    if (!solves_at(e, a(x))) return false;
  return true;
}

Mask both(const Mask& a, const Mask& b) {
  Mask m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
  return m;
}

bool subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

System joined(const System& e, const System& k) {
  System out = e;
  out.equations.insert(out.equations.end(), k.equations.begin(), k.equations.end());
  return out;
}

Outcome criterion1() {
  Outcome o;
  FinSetCategory cat;
  std::mt19937 rng(101);
  const std::size_t systems = 240;
  std::size_t solutions_checked = 0;
  for (std::size_t round = 0; round < systems; ++round) {
    const FinSet dom = letters(1 + rng() % 5);
    const auto e = random_system(rng, dom, 1 + rng() % 3);
    const auto k = random_system(rng, dom, 1 + rng() % 3);
    const auto v = general_solution(cat, e);
    const auto w = general_solution(cat, k);
    const std::string tag = "system " + std::to_string(round);

    // The solution filter, and v monic.
    o.expect(v.image_mask() == filter(e) && v.injective(), tag + ": general solution differs from the filter");

    // Unique factorization, exhaustively over X of size 1 and 2.
    for (std::size_t xs = 1; xs <= 2; ++xs) {
      const FinSet x = letters(xs, 'u');
      const auto into_v = all_functions(x, v.dom());
      for (const auto& a : all_functions(x, dom)) {
        std::size_t n = 0;
        for (const auto& h : into_v) n += compose(v, h) == a;
        o.expect(n == (solves(a, e) ? 1u : 0u), tag + ": factorization count");
        o.expect(is_solution(cat, a, e) == solves(a, e), tag + ": is_solution");
        ++solutions_checked;
      }
    }

    // Action by g: a |= Eg iff g.a |= E, and E => K gives Eg => Kg.
    const FinSet y = letters(1 + rng() % 3, 'm');
    const auto g = random_function(rng, y, dom);
    const auto eg = act(cat, e, g);
    for (const auto& a : all_functions(letters(2, 'u'), y))
      o.expect(is_solution(cat, a, eg) == solves(compose(g, a), e), tag + ": action");
    const bool e_k = subset(filter(e), filter(k));
    o.expect(implies(cat, e, k) == e_k, tag + ": implication against inclusion");
    o.expect(leq(cat, v, w).has_value() == e_k, tag + ": implication against v <= w");
    if (e_k) o.expect(implies(cat, eg, act(cat, k, g)), tag + ": implication after acting");

    // Intersections.
    const auto ek = joined(e, k);
    o.expect(general_solution(cat, ek).image_mask() == both(filter(e), filter(k)), tag + ": intersection");
    std::vector<FinFunction> vw{v, w};
    o.expect(cat.intersect(vw).image_mask() == both(filter(e), filter(k)), tag + ": intersect");

    // Pullback of v along f is the general solution of E.f.
    const auto f = random_function(rng, letters(1 + rng() % 4, 'm'), dom);
    const auto sq = pullback(f, v);
    o.expect(sq.first.image_mask() == general_solution(cat, act(cat, e, f)).image_mask(), tag + ": pullback");

    // Products: E on A and K' on A' give a system on A x A'.
    const FinSet dom2 = letters(1 + rng() % 3, 'm');
    const auto k2 = random_system(rng, dom2, 1 + rng() % 2);
    std::vector<FinSet> factors{dom, dom2};
    const auto cone = product(factors);
    System prod{cone.apex, {}};
    for (const auto& eq : e.equations)
      prod.equations.push_back({compose(eq.lhs, cone.projections[0]), compose(eq.rhs, cone.projections[0])});
    for (const auto& eq : k2.equations)
      prod.equations.push_back({compose(eq.lhs, cone.projections[1]), compose(eq.rhs, cone.projections[1])});
    Mask expected_prod(cone.apex.size());
    const auto fe = filter(e);
    const auto fk2 = filter(k2);
    for (std::size_t p = 0; p < cone.apex.size(); ++p)
      expected_prod[p] = fe[cone.projections[0](p)] && fk2[cone.projections[1](p)];
    o.expect(general_solution(cat, prod).image_mask() == expected_prod, tag + ": products");

    // v.w a variety with v monic: w solves K.v generally.
    const auto u = general_solution(cat, ek);
    const auto wf = factor_through(u, v);
    o.expect(wf.has_value(), tag + ": u factors through v");
    if (wf) o.expect(general_solution(cat, act(cat, k, v)).image_mask() == wf->image_mask(), tag + ": cancellation");

    // Intersections of equalizers; single-equation reduction.
    std::vector<SubobjectMono> eqs;
    for (const auto& eq : e.equations) eqs.push_back(equalizer(eq.lhs, eq.rhs));
    o.expect(intersect(eqs).mask() == filter(e), tag + ": intersection of equalizers");
    System one{dom, {single_equation_reduction(cat, e)}};
    o.expect(filter(one) == filter(e), tag + ": single equation");

    // Generated equation and variety of a random family S.
    std::vector<FinFunction> s;
    const std::size_t members = 1 + rng() % 3;
    for (std::size_t i = 0; i < members; ++i) s.push_back(random_function(rng, letters(1 + rng() % 2, 'u'), dom));
    Mask hit(dom.size(), false);
    for (const auto& m : s)
      for (std::size_t x = 0; x < m.dom().size(); ++x) hit[m(x)] = true;
    const auto geq = generated_equation(cat, std::span<const FinFunction>(s));
    System gen{dom, {geq}};
    for (const auto& m : s) o.expect(is_solution(cat, m, gen), tag + ": generator solves the generated equation");
    o.expect(filter(gen) == hit, tag + ": generated equation solutions");
    // Smallest subobject every member factors through, by enumerating all subsets.
    Mask meet(dom.size(), true);
    for (std::size_t bits = 0; bits < (std::size_t{1} << dom.size()); ++bits) {
      Mask sub(dom.size());
      for (std::size_t x = 0; x < dom.size(); ++x) sub[x] = bits >> x & 1;
      if (subset(hit, sub)) meet = both(meet, sub);
    }
    o.expect(generated_variety(cat, std::span<const FinFunction>(s)).image_mask() == meet,
             tag + ": generated variety against the meet of subobjects");
  }
  o.detail = std::to_string(systems) + " random systems, " + std::to_string(solutions_checked) +
             " candidate solutions enumerated";
  return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion2() {
  Outcome o;
  std::mt19937 rng(202);
  const auto corpus = group_corpus();
  std::size_t centralizers = 0;
  for (const auto& g : corpus) {
    auto gp = std::make_shared<const FiniteGroup>(g);
    const std::size_t n = g.size();
    std::vector<std::vector<std::string>> subsets;
    for (std::size_t x = 0; x < n; ++x) subsets.push_back({g.carrier().label(x)});
    for (int r = 0; r < 4; ++r) {
      std::vector<std::string> s;
      for (std::size_t x = 0; x < n; ++x)
        if (rng() % 3 == 0) s.push_back(g.carrier().label(x));
      subsets.push_back(s);
    }
    for (const auto& s : subsets) {
      std::vector<std::size_t> expected;
      for (std::size_t x = 0; x < n; ++x) {
        bool ok = true;
        for (const auto& l : s) ok = ok && g.mul(x, g.carrier().at(l)) == g.mul(g.carrier().at(l), x);
        if (ok) expected.push_back(x);
      }
      auto c = centralizer(gp, s);
      o.expect(c.map == expected, g.name() + ": centralizer");
      ++centralizers;
    }
    // Derived subgroup by closure of commutators.
    Mask derived(n, false);
    derived[g.unit()] = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) derived[g.mul(g.mul(a, b), g.inv(g.mul(b, a)))] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (derived[a] && derived[b] && !derived[g.mul(a, b)]) derived[g.mul(a, b)] = grew = true;
    }
    const auto q = abelianization(gp);
    Mask kernel(n);
    for (std::size_t x = 0; x < n; ++x) kernel[x] = q.map[x] == q.map[g.unit()];
    o.expect(kernel == derived, g.name() + ": kernel of the abelianization is the derived subgroup");
    o.expect(q.cod->abelian() && is_group_hom(g, *q.cod, q.map), g.name() + ": abelian quotient");
  }
  auto s3 = std::make_shared<const FiniteGroup>(symmetric3());
  auto q8 = std::make_shared<const FiniteGroup>(quaternion_group());
  o.expect(find_isomorphism(abelianization(s3).cod->algebra(), cyclic_group(2).algebra()).has_value(), "S3 -> Z2");
  std::vector<FiniteAlgebra> z2z2{cyclic_group(2).algebra(), cyclic_group(2).algebra()};
  o.expect(find_isomorphism(abelianization(q8).cod->algebra(), product_algebra(z2z2).algebra).has_value(),
           "Q8 -> Z2 x Z2");
  o.detail = std::to_string(corpus.size()) + " groups, " + std::to_string(centralizers) +
             " centralizers; S3 -> Z2, Q8 -> Z2 x Z2";
  return o;
}

// ---------------------------------------------------------------- criterion 3

// Terms over f/2, g/1, a and the variables x, y; a leaf has depth 1.
std::vector<Term> terms_to_depth(std::size_t depth) {
  std::vector<Term> level{Term::app("a"), Term::var(0), Term::var(1)};
  for (std::size_t d = 1; d < depth; ++d) {
    std::vector<Term> next{Term::app("a"), Term::var(0), Term::var(1)};
    for (const auto& t : level) next.push_back(Term::app("g", {t}));
    for (const auto& s : level)
      for (const auto& t : level) next.push_back(Term::app("f", {s, t}));
    level = std::move(next);
  }
  return level;
}

Outcome criterion3() {
  Outcome o;
  VarContext ctx;
  const Term l = parse_term("f(x,b)", nullptr, ctx);
  const Term r = parse_term("f(a,y)", nullptr, ctx);
  const auto mgu = unify(l, r);
  o.expect(mgu && to_string(*mgu, ctx.names) == "{x->a, y->b}", "mgu of the introductory pair");

  const auto pool = terms_to_depth(3);
  const auto small = terms_to_depth(2);
  std::mt19937 rng(303);
  std::size_t problems = 0, unifiable = 0, unifiers = 0;
  for (int round = 0; round < 60; ++round) {
    const Term a = pool[rng() % pool.size()];
    Term b = pool[rng() % pool.size()];
    if (round % 2) b = substitute(a, Substitution{{0, small[rng() % small.size()]}, {1, small[rng() % small.size()]}});
    ++problems;
    const auto m = unify(a, b);
    if (m) {
      ++unifiable;
      o.expect(substitute(a, *m) == substitute(b, *m), "mgu unifies");
      o.expect(compose(*m, *m) == *m, "mgu is idempotent");
    }
    bool any = false;
    for (const auto& sx : pool)
      for (const auto& sy : pool) {
        const Substitution s{{0, sx}, {1, sy}};
        if (!(substitute(a, s) == substitute(b, s))) continue;
        any = true;
        ++unifiers;
        if (!m) continue;
        Substitution tau;
        bool ok = true;
        for (std::size_t v = 0; v < 2 && ok; ++v) ok = match(substitute(Term::var(v), *m), s.at(v), tau);
        o.expect(ok, "unifier factors through the mgu");
      }
    o.expect(!any || m.has_value(), "unify failed on a unifiable pair");
  }
  o.detail = std::to_string(problems) + " problems (" + std::to_string(unifiable) + " unifiable), " +
             std::to_string(unifiers) + " enumerated unifiers of depth <= 3";
  return o;
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion4() {
  Outcome o;
  Workspace ws;
  ws.load(R"(
theory Mon {
  op mul:2, e:0
  axiom assoc: mul(mul(x,y),z) = mul(x,mul(y,z))
  axiom unit_l: mul(e,x) = x
  axiom unit_r: mul(x,e) = x
}
)",
          "monoid");
  const auto mon = ws.theory("Mon").theory;
  auto term = [&](const std::string& s) {
    VarContext ctx;
    for (std::size_t i = 0; i < 8; ++i) ctx.names.push_back(default_var_name(i));
    return parse_term(s, &mon->signature, ctx);
  };
  auto axiom = [&](const std::string& l, const std::string& r, const std::string& label) {
    Axiom a{term(l), term(r), 0, label};
    a.context = std::max(a.lhs.var_bound(), a.rhs.var_bound());
    return a;
  };
  const auto q = quotient_theory(mon, {axiom("mul(x,y)", "mul(y,x)", "comm")});
  const std::vector<std::pair<std::string, std::string>> curated{
      {"mul(x,y)", "mul(y,x)"},
      {"mul(mul(x,y),z)", "mul(y,mul(x,z))"},
      {"mul(mul(x,y),z)", "mul(mul(x,z),y)"},
      {"mul(x,mul(y,z))", "mul(z,mul(y,x))"},
      {"mul(mul(x,y),mul(z,u))", "mul(mul(u,z),mul(y,x))"},
      {"mul(e,mul(x,y))", "mul(y,x)"},
      {"mul(mul(x,e),y)", "mul(y,x)"},
      {"mul(x,mul(e,y))", "mul(y,x)"},
      {"mul(mul(x,y),x)", "mul(x,mul(x,y))"},
      {"mul(x,mul(y,mul(z,u)))", "mul(u,mul(z,mul(y,x)))"},
  };
  std::size_t proved = 0, steps = 0;
  for (const auto& [l, r] : curated) {
    const auto res = congruent(*q.theory, term(l), term(r), Budget{10000, 0});
    const bool ok = res.verdict == Verdict::Provable && replay(*q.theory, term(l), term(r), *res.certificate);
    o.expect(ok, l + " ~ " + r);
    proved += ok;
    steps = std::max(steps, res.steps_used);
  }
  // Identity on symbols: every target term is its own image.
  bool identity = q.canonical.source == mon;
  for (const auto& op : mon->signature.ops()) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < op.arity; ++i) args.push_back(Term::var(i));
    identity = identity && q.canonical.image_of(op.name) == Term::app(op.name, args);
  }
  for (const auto& t : {"mul(x,mul(e,y))", "e", "mul(mul(x,x),y)"})
    identity = identity && q.canonical.apply(term(t)) == term(t);
  o.expect(identity, "canonical morphism is the identity on syntax");
  o.expect(is_morphism(q.canonical, Budget{}) == Verdict::Provable, "canonical map is a morphism");

  const auto q2 = quotient_theory(mon, {axiom("mul(y,x)", "mul(x,y)", "comm2")});
  const auto q3 = quotient_theory(mon, {axiom("mul(mul(x,y),z)", "mul(mul(y,x),z)", "swap")});
  o.expect(isomorphic_quotients(*q.theory, *q2.theory, Budget{}) == Verdict::Provable, "comm vs reversed comm");
  o.expect(isomorphic_quotients(*q.theory, *q3.theory, Budget{}) == Verdict::Provable, "comm vs swap-left");
  o.detail = std::to_string(proved) + "/10 consequences proved (max " + std::to_string(steps) +
             " search steps of 10000); quotients by interprovable axioms isomorphic";
  return o;
}

// ---------------------------------------------------------------- criterion 5

Signature magma() { return Signature({{"mul", 2}}); }

FiniteAlgebra magma_table(std::size_t n, std::vector<std::size_t> t) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteAlgebra{"M", magma(), FinSet(labels), {std::move(t)}};
}

// Every magma of size 1..n up to isomorphism, by minimal table under relabeling.
std::vector<FiniteAlgebra> magmas_up_to_iso(std::size_t max_n) {
  std::vector<FiniteAlgebra> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    std::size_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= n;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::size_t> t(n * n);
      for (std::size_t i = 0, c = code; i < n * n; ++i, c /= n) t[i] = c % n;
      bool minimal = true;
      for (const auto& p : perms) {
        // Table of the relabeled algebra p(x) p(y) -> p(x y), read in the same order.
        std::vector<std::size_t> u(n * n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) u[p[x] * n + p[y]] = p[t[x * n + y]];
        if (std::lexicographical_compare(u.rbegin(), u.rend(), t.rbegin(), t.rend())) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(magma_table(n, t));
    }
  }
  return out;
}

Identity magma_identity(const std::string& l, const std::string& r) {
  VarContext ctx;
  for (std::size_t i = 0; i < 4; ++i) ctx.names.push_back(default_var_name(i));
  const Signature sig = magma();
  Identity out{parse_term(l, &sig, ctx), parse_term(r, &sig, ctx), 0};
  out.context = std::max(out.lhs.var_bound(), out.rhs.var_bound());
  return out;
}

Outcome criterion5() {
  Outcome o;
  const auto sl = magma_table(2, {0, 0, 0, 1});
  const auto chain3 = magma_table(3, {0, 0, 0, 0, 1, 1, 0, 1, 2});
  const auto xor2 = magma_table(2, {0, 1, 1, 0});
  const auto ids = identities_of(sl, 2, 2);
  auto listed = [&](const Identity& want) {
    for (const auto& i : ids)
      if ((i.lhs == want.lhs && i.rhs == want.rhs) || (i.lhs == want.rhs && i.rhs == want.lhs)) return true;
    return false;
  };
  o.expect(listed(magma_identity("mul(x,y)", "mul(y,x)")), "commutativity listed");
  o.expect(listed(magma_identity("mul(x,x)", "x")), "idempotence listed");
  const auto yes = hsp_member(chain3, sl, 2);
  o.expect(yes.member && yes.witness && yes.witness->k == 2 && replay_hsp_witness(sl, chain3, *yes.witness),
           "3-chain accepted at k = 2 with a replayable witness");
  const auto no = hsp_member(xor2, sl, 2);
  o.expect(!no.member && no.violated && satisfies(sl, *no.violated) && !satisfies(xor2, *no.violated),
           "xor groupoid rejected with a violated identity");

  // Identity transport over every magma of size <= 3.
  const auto all = magmas_up_to_iso(3);
  std::vector<FiniteAlgebra> small;
  for (const auto& a : all)
    if (a.size() <= 2) small.push_back(a);
  std::size_t members = 0, queries = 0, identities = 0;
  for (const auto& a : all) {
    HspSearch search(a);
    const auto& ida = search.identities();
    identities += ida.size();
    for (const auto& i : ida) o.expect(satisfies(a, i), "algebra satisfies its own identities");
    for (const auto& b : small) {
      ++queries;
      const auto res = search.member(b);
      if (res.member) {
        ++members;
        o.expect(replay_hsp_witness(a, b, *res.witness), "witness replays");
        for (const auto& i : ida) o.expect(satisfies(b, i), "identity transported to a member");
      } else if (res.violated) {
        o.expect(satisfies(a, *res.violated) && !satisfies(b, *res.violated), "violated identity certificate");
      }
    }
  }
  o.detail = std::to_string(all.size()) + " magmas of size <= 3 up to isomorphism, " + std::to_string(identities) +
             " identities, " + std::to_string(queries) + " membership queries (" + std::to_string(members) +
             " members)";
  return o;
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion6(const std::filesystem::path& root) {
  Outcome o;
  Workspace ws;
  ws.load(golden::slurp(root / "corpus" / "inserters.veq"), "inserters.veq");
  std::vector<const Functor*> functors;
  for (const auto& e : ws.entries())
    if (e.kind == DefKind::Functor) functors.push_back(&ws.functor(e.name).functor);
  std::size_t corpus_pairs = 0, limit_cases = 0;
  for (const auto* f : functors)
    for (const auto* g : functors) {
      if (!same_category(f->src, g->src) || !same_category(f->tgt, g->tgt)) continue;
      ++corpus_pairs;
      const auto ins = inserter(*f, *g);
      o.expect(verify_forgetful(ins.forget).all(), "forgetful functor of Ins(" + f->name + "," + g->name + ")");
      const auto lim = check_limit_creation(ins, *f, *g);
      limit_cases += lim.product_cases + lim.equalizer_cases;
      o.expect(lim.failures == 0, "limit creation for Ins(" + f->name + "," + g->name + ")");
    }

  std::mt19937 rng(606);
  std::size_t instances = 0, attempts = 0;
  while (instances < 60 && attempts < 20000) {
    ++attempts;
    const auto pa = veq::testing::random_poset(rng, 1 + rng() % 4, "A");
    const auto pb = veq::testing::random_poset(rng, 1 + rng() % 4, "B");
    const auto hs = all_functors(pb, pa);
    const auto gs = all_functors(pa, pb);
    const auto& h = hs[rng() % hs.size()];
    const auto& g = gs[rng() % gs.size()];
    const auto adj = poset_adjunction(h, g);
    o.expect(adj.has_value() == veq::testing::galois(h, g), "adjunction detection against h(b) <= a iff b <= g(a)");
    if (!adj) continue;
    ++instances;
    const auto& f = gs[rng() % gs.size()];
    const auto left = shift_left(f, g, *adj);
    o.expect(left.round_trip && left.concrete, "left shift round trip");
    o.expect(left.from.category->object_count() == left.to.category->object_count(), "left shift object count");
    const auto& k = hs[rng() % hs.size()];
    const auto right = shift_right(h, k, *adj);
    o.expect(right.round_trip && right.concrete, "right shift round trip");
    const auto ins = inserter(f, g);
    o.expect(verify_forgetful(ins.forget).all(), "forgetful functor on a random instance");
    const auto lim = check_limit_creation(ins, f, g);
    limit_cases += lim.product_cases + lim.equalizer_cases;
    o.expect(lim.failures == 0, "limit creation on a random instance");
  }
  o.expect(instances >= 50, "at least 50 Galois connections");
  o.detail = std::to_string(corpus_pairs) + " corpus inserters, " + std::to_string(instances) +
             " random Galois connections (both shifts), " + std::to_string(limit_cases) + " limit cases";
  return o;
}

// ---------------------------------------------------------------- criterion 7

struct OneSorted {
  std::string name;
  std::vector<std::size_t> arities;
};

// Σ-algebras on {0..n-1} for n <= bound, and homomorphisms between them.
std::pair<std::size_t, std::size_t> direct_counts(const OneSorted& sig, std::size_t bound) {
  struct Alg {
    std::size_t n;
    std::vector<std::vector<std::size_t>> tables;
  };
  std::vector<Alg> algs;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::vector<std::size_t> sizes;
    for (auto k : sig.arities) {
      std::size_t cells = 1;
      for (std::size_t i = 0; i < k; ++i) cells *= n;
      sizes.push_back(cells);
    }
    std::function<void(std::size_t, std::vector<std::vector<std::size_t>>&)> fill =
        [&](std::size_t op, std::vector<std::vector<std::size_t>>& tables) {
          if (op == sig.arities.size()) {
            algs.push_back({n, tables});
            return;
          }
          std::size_t total = 1;
          for (std::size_t i = 0; i < sizes[op]; ++i) total *= n;
          if (n == 0 && sizes[op] > 0) return;
          for (std::size_t code = 0; code < total; ++code) {
            std::vector<std::size_t> t(sizes[op]);
            for (std::size_t i = 0, c = code; i < sizes[op]; ++i, c /= n) t[i] = c % n;
            tables.push_back(t);
            fill(op + 1, tables);
            tables.pop_back();
          }
        };
    std::vector<std::vector<std::size_t>> tables;
    fill(0, tables);
  }
  std::size_t arrows = 0;
  for (const auto& a : algs)
    for (const auto& b : algs) {
      std::size_t maps = 1;
      for (std::size_t i = 0; i < a.n; ++i) maps *= b.n;
      for (std::size_t code = 0; code < maps; ++code) {
        std::vector<std::size_t> h(a.n);
        for (std::size_t i = 0, c = code; i < a.n; ++i, c /= b.n) h[i] = c % b.n;
        bool hom = true;
        for (std::size_t op = 0; op < sig.arities.size() && hom; ++op) {
          const std::size_t k = sig.arities[op];
          std::size_t cells = a.tables[op].size();
          for (std::size_t cell = 0; cell < cells && hom; ++cell) {
            // Mixed radix, first argument most significant.
            std::size_t image_cell = 0;
            for (std::size_t i = 0, c = cell, scale = 1; i < k; ++i, c /= a.n) {
              image_cell += h[c % a.n] * scale;
              scale *= b.n;
            }
            hom = b.tables[op][image_cell] == h[a.tables[op][cell]];
          }
        }
        arrows += hom;
      }
    }
  return {algs.size(), arrows};
}

Outcome criterion7() {
  Outcome o;
  const std::vector<OneSorted> sigs{{"empty", {}},      {"m:2", {2}},      {"c:0", {0}},
                                    {"f:1", {1}},       {"m:2 c:0", {2, 0}}, {"f:1 c:0", {1, 0}}};
  std::ostringstream summary;
  for (const auto& s : sigs) {
    SortedSignature sorted{{"s"}, {}};
    const char* names[] = {"o0", "o1", "o2"};
    for (std::size_t i = 0; i < s.arities.size(); ++i)
      sorted.symbols.push_back({names[i], std::vector<std::size_t>(s.arities[i], 0), 0});
    const auto r = sigma_alg_as_inserter(sorted, 2);
    const auto [objs, arrows] = direct_counts(s, 2);
    o.expect(r.isomorphic, s.name + ": inserter is not isomorphic to the direct category (" + r.detail + ")");
    o.expect(r.direct_objects == objs && r.inserter_objects == objs, s.name + ": object count");
    o.expect(r.direct_arrows == arrows && r.inserter_arrows == arrows, s.name + ": arrow count");
    summary << (summary.tellp() ? ", " : "") << s.name << " " << objs << "/" << arrows;
  }
  o.detail = "carriers <= 2, objects/arrows: " + summary.str();
  return o;
}

// ---------------------------------------------------------------- criterion 8

// Rank of a rational matrix by fraction-exact elimination.
std::size_t rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational k = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= k * m[r][j];
    }
    ++r;
  }
  return r;
}

// Does some nonzero (a_0..a_n) give a_0 f_k + ... + a_n f_{k-n} = 0 for n <= k < N?
bool recurrence_oracle(const TruncatedSeries& f, std::size_t n) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t k = n; k < f.precision(); ++k) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j <= n; ++j) row.push_back(f[k - j]);
    rows.push_back(row);
  }
  return rank(rows) < n + 1;
}

Outcome criterion8(const std::filesystem::path& root) {
  Outcome o;
  const auto fib = expand_recurrence({0, 1}, {1, 1}, 64);
  o.expect(is_linear_recurrence(fib, 2).status.zero, "Fibonacci order 2 zero");
  o.expect(!is_linear_recurrence(fib, 1).status.zero, "Fibonacci order 1 nonzero");
  std::vector<Rational> sqc;
  for (unsigned k = 0; k < 32; ++k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k * k);
    sqc.emplace_back(p);
  }
  const TruncatedSeries sq(sqc);
  o.expect(!is_linear_recurrence(sq, 1).status.zero && !is_linear_recurrence(sq, 2).status.zero,
           "2^(k^2) orders 1 and 2 nonzero");

  // Coefficient form against operator form on random pairs.
  std::mt19937 rng(808);
  std::size_t agree = 0, holding = 0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t order = 1 + rng() % 3;
    std::vector<Rational> init, c;
    for (std::size_t i = 0; i < order; ++i) init.emplace_back(static_cast<long>(rng() % 7) - 3);
    for (std::size_t i = 0; i < order; ++i) c.emplace_back(static_cast<long>(rng() % 5) - 2);
    const auto f = expand_recurrence(init, c, 16 + rng() % 16);
    // f_k = c_1 f_{k-1} + ... + c_m f_{k-m}  as  a_0 f_k + ... + a_m f_{k+m} = 0.
    std::vector<Rational> a(order + 1);
    a[order] = -1;
    for (std::size_t i = 0; i < order; ++i) a[order - 1 - i] = c[i];
    if (round % 2) a[rng() % a.size()] += 1;
    if (std::all_of(a.begin(), a.end(), [](const Rational& v) { return v == 0; })) a[0] = 1;
    try {
      const auto r = recurrence_equivalence_check(f, a);
      bool direct = true;
      for (std::size_t k = 0; k < r.window; ++k) {
        Rational s = 0;
        for (std::size_t j = 0; j <= order; ++j) s += a[j] * f[k + j];
        direct = direct && s == 0;
      }
      o.expect(r.window > 0 && r.holds == direct, "equivalence check against the direct sum");
      agree += r.holds == direct;
      holding += r.holds;
    } catch (const Error& e) {
      o.expect(false, std::string("equivalence check raised ") + e.what());
    }
  }

  // Corpus series: oracle agreement and monotonicity.
  Workspace ws;
  ws.load(golden::slurp(root / "corpus" / "series.veq"), "series.veq");
  std::size_t oracle_checks = 0, mono_checks = 0;
  for (const auto& e : ws.entries()) {
    if (e.kind != DefKind::Series) continue;
    const auto& f = ws.series(e.name).series;
    for (std::size_t n = 1; n <= 3 && 2 * n + 2 <= f.precision(); ++n) {
      const auto test = is_linear_recurrence(f, n);
      o.expect(test.status.zero == recurrence_oracle(f, n), e.name + " order " + std::to_string(n) + " vs oracle");
      ++oracle_checks;
      // T_j = D^n after multiplication by x^j.
      std::vector<DiffOp> ops;
      for (std::size_t j = 0; j <= n; ++j) {
        std::vector<Rational> xj(j + 1, 0);
        xj[j] = 1;
        DiffOp t = DiffOp::mul(DiffOp::constant(xj), DiffOp::identity());
        for (std::size_t d = 0; d < n; ++d) t = DiffOp::compose(DiffOp::d(), t);
        ops.push_back(t);
      }
      const auto m = wronskian_monotonicity_check(ops, f);
      o.expect(!m.counterexample_at_precision, e.name + " monotonicity");
      ++mono_checks;
    }
  }
  o.detail = "fib order 2 zero / order 1 nonzero at precision 64; 2^(k^2) nonzero at 32; " + std::to_string(agree) +
             "/100 equivalence pairs agree (" + std::to_string(holding) + " hold); " + std::to_string(oracle_checks) +
             " oracle and " + std::to_string(mono_checks) + " monotonicity checks";
  return o;
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion9(const std::string& veq, const std::filesystem::path& root) {
  Outcome o;
  std::size_t cases = 0;
  std::set<int> seen;
  for (const auto& fam : golden::families()) {
    const auto r = golden::run_family(veq, root, fam, false);
    cases += r.cases;
    for (const auto& p : r.problems) o.expect(false, p);
    for (const auto& c : golden::read_cases(root / "tests" / "golden" / (fam + ".cmds"))) seen.insert(c.exit);
  }
  // Printing is a fixed point and reloads to an equal workspace.
  const auto tmp = std::filesystem::temp_directory_path() / "veq_acceptance_roundtrip.veq";
  std::size_t files = 0;
  for (const auto& fam : golden::families()) {
    const auto path = root / "corpus" / (fam + ".veq");
    const auto first = golden::capture(golden::quote(veq) + " --print -f " + golden::quote(path.string()));
    std::ofstream(tmp) << first.out;
    const auto second = golden::capture(golden::quote(veq) + " --print -f " + golden::quote(tmp.string()));
    o.expect(first.exit == 0 && second.exit == 0 && first.out == second.out, fam + ": print is not a fixed point");
    Workspace a, b;
    a.load(golden::slurp(path), fam);
    b.load(first.out, "printed");
    o.expect(a == b, fam + ": printed workspace differs");
    ++files;
  }
  std::filesystem::remove(tmp);
  // Malformed workspaces exit 2.
  for (const auto& bad : {"unbalanced.veq", "dangling.veq", "bad_group.veq"}) {
    const auto r = golden::capture(golden::quote(veq) + " check -f " + golden::quote((root / "tests" / "data" / bad).string()));
    o.expect(r.exit == 2, std::string(bad) + " exited " + std::to_string(r.exit));
    seen.insert(r.exit);
  }
  o.expect(seen.count(0) && seen.count(1) && seen.count(2), "exit codes 0, 1 and 2 observed");
  o.expect(exit_code(Error(ErrorKind::InvariantError, "x"), false) == 3 &&
               exit_code(Error(ErrorKind::InternalEquivalenceViolation, "x"), false) == 3,
           "invariant violations map to 3");
  o.detail = std::to_string(cases) + " golden commands byte-identical, " + std::to_string(files) +
             " corpus files round-trip, exits 0/1/2 observed (3 is reserved for broken internal invariants and "
             "is checked through the mapping only)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance VEQ ROOT\n";
    return 2;
  }
  const std::string veq = argv[1];
  const std::filesystem::path root = argv[2];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"equation calculus on FinSet", criterion1},
      {"centralizers and abelianizations", criterion2},
      {"unification", criterion3},
      {"quotient theories", criterion4},
      {"identities and HSP membership", criterion5},
      {"inserters and adjoint shifts", [&] { return criterion6(root); }},
      {"algebras as an inserter", criterion7},
      {"power series and Wronskians", [&] { return criterion8(root); }},
      {"command line", [&] { return criterion9(veq, root); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << " [" << std::fixed << std::setprecision(1) << secs << "s]\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
