#include "veq/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "veq/algebra.hpp"
#include "veq/birkhoff.hpp"
#include "veq/cat_category.hpp"
#include "veq/equations.hpp"
#include "veq/finset_category.hpp"
#include "veq/groups.hpp"
#include "veq/inserters.hpp"
#include "veq/series.hpp"
#include "veq/term.hpp"
#include "veq/theories.hpp"

namespace veq {

using nlohmann::json;

namespace {

[[noreturn]] void usage(const std::string& verb, const std::string& form) {
  fail(ErrorKind::InvalidArgument, "usage: veq " + verb + " " + form);
}

void need_args(const std::vector<std::string>& args, std::size_t n, const std::string& verb, const std::string& form) {
  if (args.size() < n) usage(verb, form);
}

std::vector<std::string> parse_vars() {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 16; ++i) names.push_back(default_var_name(i));
  return names;
}

Term theory_term(const TheoryPresentation& t, const std::string& text) {
  VarContext ctx{parse_vars()};
  return parse_term(text, &t.signature, ctx);
}

// ---- JSON views ----

json fn_json(const FinFunction& f) {
  json table = json::array();
  for (std::size_t x = 0; x < f.dom().size(); ++x) table.push_back(f.cod().label(f(x)));
  return {{"dom", f.dom().labels()}, {"cod", f.cod().labels()}, {"table", table}};
}

json functor_json(const Functor& f) {
  json objs = json::array(), arrows = json::array();
  for (std::size_t o = 0; o < f.on_objects.size(); ++o) objs.push_back(f.tgt->object(f.obj(o)));
  for (std::size_t a = 0; a < f.on_arrows.size(); ++a)
    if (!f.src->is_identity(a)) arrows.push_back({f.src->arrow_name(a), f.tgt->arrow_name(f(a))});
  return {{"src", f.src->name()}, {"tgt", f.tgt->name()}, {"objects", objs}, {"arrows", arrows}};
}

json category_json(const FiniteCategory& c) {
  json arrows = json::array();
  for (std::size_t a = 0; a < c.arrow_count(); ++a)
    if (!c.is_identity(a)) arrows.push_back(c.arrow_name(a));
  return {{"objects", c.objects().labels()}, {"arrows", arrows}};
}

// Fibres of a surjection, each listed in domain order, ordered by image.
template <class Image>
json classes_json(std::size_t dom_size, std::size_t cod_size, const Image& image,
                  const std::function<std::string(std::size_t)>& label) {
  std::vector<std::vector<std::string>> cls(cod_size);
  for (std::size_t x = 0; x < dom_size; ++x) cls[image(x)].push_back(label(x));
  json out = json::array();
  for (auto& c : cls)
    if (!c.empty()) out.push_back(c);
  return out;
}

// ---- systems over FinSet or finite posets/categories ----

struct FinSetSide {
  using Obj = FinSet;
  using Mor = FinFunction;
  static Mor resolve(const Workspace& ws, const std::string& name) { return ws.fun(name).fn; }
  static Obj object(const Workspace& ws, const std::string& name) { return ws.set(name).set; }
  static json mono(const Mor& m) { return {{"carrier", m.dom().labels()}, {"inclusion", fn_json(m)}}; }
  static json epi(const Mor& e) {
    return {{"classes", classes_json(e.dom().size(), e.cod().size(), [&](std::size_t x) { return e(x); },
                                     [&](std::size_t x) { return e.dom().label(x); })},
            {"quotient", fn_json(e)}};
  }
  static json arrow(const Mor& m) { return fn_json(m); }
};

struct CatSide {
  using Obj = CatPtr;
  using Mor = Functor;
  static Mor resolve(const Workspace& ws, const std::string& name) { return ws.functor(name).functor; }
  static Obj object(const Workspace& ws, const std::string& name) { return ws.category(name).category; }
  static json mono(const Mor& m) {
    json j = category_json(*m.src);
    j["inclusion"] = functor_json(m);
    return j;
  }
  static json epi(const Mor& e) {
    json j = category_json(*e.tgt);
    j["classes"] = classes_json(e.src->object_count(), e.tgt->object_count(), [&](std::size_t x) { return e.obj(x); },
                                [&](std::size_t x) { return e.src->object(x); });
    j["quotient"] = functor_json(e);
    return j;
  }
  static json arrow(const Mor& m) { return functor_json(m); }
};

// "g.f" is g after f.
template <class Side>
typename Side::Mor resolve_chain(const Workspace& ws, const CompCategory<typename Side::Obj, typename Side::Mor>& cat,
                                 const ArrowChain& chain) {
  auto m = Side::resolve(ws, chain.back());
  for (std::size_t i = chain.size() - 1; i-- > 0;) m = cat.compose(Side::resolve(ws, chain[i]), m);
  return m;
}

ArrowChain split_chain(const std::string& text) {
  ArrowChain c;
  std::string cur;
  for (char ch : text) {
    if (ch == '.') {
      c.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  c.push_back(cur);
  for (const auto& n : c)
    if (n.empty()) fail(ErrorKind::ParseError, "malformed composite '" + text + "'");
  return c;
}

template <class Side>
EquationSystem<typename Side::Obj, typename Side::Mor> make_system(
    const Workspace& ws, const CompCategory<typename Side::Obj, typename Side::Mor>& cat, const SystemDef& s) {
  EquationSystem<typename Side::Obj, typename Side::Mor> e{Side::object(ws, s.on), {}};
  for (const auto& [l, r] : s.equations)
    e.equations.push_back({resolve_chain<Side>(ws, cat, l), resolve_chain<Side>(ws, cat, r)});
  return e;
}

template <class Side>
CoEquationSystem<typename Side::Obj, typename Side::Mor> make_cosystem(
    const Workspace& ws, const CompCategory<typename Side::Obj, typename Side::Mor>& cat, const SystemDef& s) {
  CoEquationSystem<typename Side::Obj, typename Side::Mor> e{Side::object(ws, s.on), {}};
  for (const auto& [l, r] : s.equations)
    e.equations.push_back({resolve_chain<Side>(ws, cat, l), resolve_chain<Side>(ws, cat, r)});
  return e;
}

template <class Side>
CommandRecord system_verb(const Workspace& ws, const CompCategory<typename Side::Obj, typename Side::Mor>& cat,
                          const std::string& verb, const std::vector<std::string>& args) {
  CommandRecord r{verb, "", json::object(), std::nullopt, false};
  r.payload["category"] = cat.name();
  if (verb == "solve") {
    auto v = general_solution(cat, make_system<Side>(ws, cat, ws.system(args[0])));
    r.status = "Solved";
    r.payload.update(Side::mono(v));
  } else if (verb == "cosolve") {
    auto q = general_cosolution(cat, make_cosystem<Side>(ws, cat, ws.cosystem(args[0])));
    r.status = "Cosolved";
    r.payload.update(Side::epi(q));
  } else if (verb == "check-solution") {
    need_args(args, 2, verb, "SYSTEM ARROW");
    const auto a = resolve_chain<Side>(ws, cat, split_chain(args[1]));
    const bool ok = is_solution(cat, a, make_system<Side>(ws, cat, ws.system(args[0])));
    r.status = ok ? "Solution" : "NotSolution";
    r.negative = !ok;
  } else if (verb == "implies") {
    need_args(args, 2, verb, "SYSTEM SYSTEM");
    const auto e = make_system<Side>(ws, cat, ws.system(args[0]));
    const auto k = make_system<Side>(ws, cat, ws.system(args[1]));
    validate(cat, e);
    validate(cat, k);
    if (!cat.same_object(e.domain, k.domain)) fail(ErrorKind::DomainMismatch, "systems have different domains");
    auto h = leq(cat, general_solution(cat, e), general_solution(cat, k));
    r.status = h ? "Implies" : "DoesNotImply";
    r.negative = !h;
    if (h) r.payload["witness"] = Side::arrow(*h);
  } else if (verb == "reduce") {
    auto eq = single_equation_reduction(cat, make_system<Side>(ws, cat, ws.system(args[0])));
    r.status = "Reduced";
    r.payload["lhs"] = Side::arrow(eq.lhs);
    r.payload["rhs"] = Side::arrow(eq.rhs);
  } else {
    std::vector<typename Side::Mor> gens;
    for (const auto& a : args) gens.push_back(resolve_chain<Side>(ws, cat, split_chain(a)));
    if (verb == "genvar") {
      r.status = "Generated";
      r.payload.update(Side::mono(generated_variety(cat, std::span<const typename Side::Mor>(gens))));
    } else {
      auto eq = generated_equation(cat, std::span<const typename Side::Mor>(gens));
      r.status = "Generated";
      r.payload["lhs"] = Side::arrow(eq.lhs);
      r.payload["rhs"] = Side::arrow(eq.rhs);
    }
  }
  return r;
}

bool all_posets(const Workspace& ws, const std::vector<std::string>& functors, const std::string& on) {
  if (!on.empty() && !is_poset_category(*ws.category(on).category)) return false;
  for (const auto& f : functors) {
    const auto& fn = ws.functor(f).functor;
    if (!is_poset_category(*fn.src) || !is_poset_category(*fn.tgt)) return false;
  }
  return true;
}

CommandRecord equations_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args) {
  const bool system_arg = verb == "solve" || verb == "cosolve" || verb == "check-solution" || verb == "implies" ||
                          verb == "reduce";
  if (args.empty()) usage(verb, system_arg ? "SYSTEM ..." : "ARROW ...");
  bool finset = true;
  std::string on;
  std::vector<std::string> arrow_names;
  auto note_chain = [&](const ArrowChain& c) { arrow_names.insert(arrow_names.end(), c.begin(), c.end()); };
  if (system_arg) {
    const SystemDef& s = verb == "cosolve" ? ws.cosystem(args[0]) : ws.system(args[0]);
    on = s.on;
    finset = ws.find(DefKind::Set, s.on) != nullptr;
    for (const auto& [l, rr] : s.equations) {
      note_chain(l);
      note_chain(rr);
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (verb == "implies") {
        for (const auto& [l, rr] : ws.system(args[i]).equations) {
          note_chain(l);
          note_chain(rr);
        }
      } else {
        note_chain(split_chain(args[i]));
      }
    }
  } else {
    const auto first = split_chain(args[0]);
    finset = ws.find(DefKind::Fun, first.front()) != nullptr;
    for (const auto& a : args) note_chain(split_chain(a));
  }
  if (finset) return system_verb<FinSetSide>(ws, FinSetCategory{}, verb, args);
  if (all_posets(ws, arrow_names, on)) return system_verb<CatSide>(ws, FinPosCategory{}, verb, args);
  return system_verb<CatSide>(ws, FinCatCategory{}, verb, args);
}

// ---- terms and theories ----

json axioms_json(const TheoryPresentation& t) {
  json out = json::array();
  for (const auto& ax : t.axioms) out.push_back(ax.label + ": " + to_string(ax.lhs) + " = " + to_string(ax.rhs));
  return out;
}

std::pair<std::string, std::string> split_equation(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
    fail(ErrorKind::ParseError, "expected 'lhs = rhs' in '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

CommandRecord unify_command(const std::vector<std::string>& args) {
  need_args(args, 2, "unify", "TERM TERM");
  VarContext ctx;
  const Term a = parse_term(args[0], nullptr, ctx);
  const Term b = parse_term(args[1], nullptr, ctx);
  CommandRecord r{"unify", "", json::object(), std::nullopt, false};
  auto mgu = unify(a, b);
  if (!mgu) {
    r.status = "NotUnifiable";
    r.negative = true;
    return r;
  }
  if (!(substitute(a, *mgu) == substitute(b, *mgu)))
    fail(ErrorKind::InternalEquivalenceViolation, "unifier does not equate the terms");
  r.status = "Unifiable";
  r.payload["mgu"] = to_string(*mgu, ctx.names);
  r.payload["instance"] = to_string(substitute(a, *mgu), ctx.names);
  return r;
}

json certificate_json(const Certificate& c, const TheoryPresentation& t) {
  // One line per step: "axiom @[position] result".
  json steps = json::array();
  std::stringstream text(to_string(c, t));
  std::string line;
  while (std::getline(text, line)) {
    const auto start = line.find_first_not_of(" ->");
    if (start != std::string::npos) steps.push_back(line.substr(start));
  }
  return {{"length", c.steps.size()}, {"steps", steps}};
}

CommandRecord decide_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 3, "decide", "THEORY LHS RHS");
  const auto& t = *ws.theory(args[0]).theory;
  const Term l = theory_term(t, args[1]);
  const Term rr = theory_term(t, args[2]);
  auto res = congruent(t, l, rr, Budget{o.budget, 0});
  CommandRecord r{"decide", "", json::object(), std::nullopt, false};
  r.payload["budget"] = o.budget;
  r.payload["steps_used"] = res.steps_used;
  if (res.verdict == Verdict::Provable && res.certificate) {
    if (!replay(t, l, rr, *res.certificate))
      fail(ErrorKind::InternalEquivalenceViolation, "certificate does not replay");
    r.status = "Provable";
    r.payload["certificate"] = certificate_json(*res.certificate, t);
  } else {
    r.status = "Unknown";
    r.negative = true;
  }
  return r;
}

CommandRecord quotient_command(const Workspace& ws, const std::vector<std::string>& args) {
  need_args(args, 1, "quotient", "THEORY [\"LHS = RHS\" ...]");
  const TheoryPtr base = ws.theory(args[0]).theory;
  std::vector<Axiom> extra;
  for (std::size_t i = 1; i < args.size(); ++i) {
    auto [ls, rs] = split_equation(args[i]);
    VarContext ctx{parse_vars()};
    Axiom ax{parse_term(ls, &base->signature, ctx), parse_term(rs, &base->signature, ctx), 0,
             "q" + std::to_string(i)};
    ax.context = std::max(ax.lhs.var_bound(), ax.rhs.var_bound());
    extra.push_back(std::move(ax));
  }
  auto q = quotient_theory(base, extra);
  CommandRecord r{"quotient", "Quotient", json::object(), std::nullopt, false};
  r.payload["theory"] = q.theory->name;
  r.payload["axioms"] = axioms_json(*q.theory);
  json images = json::object();
  for (const auto& [sym, img] : q.canonical.images) images[sym] = to_string(img);
  r.payload["canonical"] = images;
  return r;
}

CommandRecord cosolve_theories_command(const Workspace& ws, const std::vector<std::string>& args) {
  if (args.empty() || args.size() % 2) usage("cosolve-theories", "P Q [P Q ...]");
  std::vector<CosystemPair> pairs;
  for (std::size_t i = 0; i < args.size(); i += 2)
    pairs.push_back({ws.thmor(args[i]).morphism, ws.thmor(args[i + 1]).morphism});
  auto q = general_cosolution_theories(pairs);
  CommandRecord r{"cosolve-theories", "Cosolved", json::object(), std::nullopt, false};
  r.payload["theory"] = q.theory->name;
  r.payload["axioms"] = axioms_json(*q.theory);
  json lawvere = json::array();
  for (const auto& p : pairs) lawvere.push_back(is_lawvere_equation(p.p, p.q).agreeing_symbols);
  r.payload["agreeing_symbols"] = lawvere;
  return r;
}

CommandRecord kernel_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 3, "kernel", "THMOR TERM TERM");
  const auto& m = ws.thmor(args[0]).morphism;
  const Term f = theory_term(*m.source, args[1]);
  const Term g = theory_term(*m.source, args[2]);
  auto res = kernel_pair_membership(m, f, g, Budget{o.budget, 0});
  CommandRecord r{"kernel", "", json::object(), std::nullopt, false};
  r.payload["images"] = {to_string(m.apply(f)), to_string(m.apply(g))};
  if (res.verdict == KernelVerdict::InKernel) {
    r.status = "InKernel";
    if (res.certificate) r.payload["certificate"] = certificate_json(*res.certificate, *m.target);
  } else {
    r.status = "Unknown";
    r.negative = true;
  }
  return r;
}

// ---- finite algebras ----

const FiniteAlgebra& algebra_arg(const Workspace& ws, const std::string& name) {
  if (ws.find(DefKind::Group, name)) return ws.group(name).group->algebra();
  return *ws.algebra(name).algebra;
}

CommandRecord hsp_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 2, "hsp", "B A");
  const auto& b = algebra_arg(ws, args[0]);
  const auto& a = algebra_arg(ws, args[1]);
  auto res = hsp_member(b, a, o.kmax);
  CommandRecord r{"hsp", "", json::object(), std::nullopt, false};
  r.payload["k_searched"] = res.k_searched;
  if (res.member && res.witness) {
    if (!replay_hsp_witness(a, b, *res.witness))
      fail(ErrorKind::InternalEquivalenceViolation, "membership witness does not replay");
    const auto& w = *res.witness;
    r.status = "Member";
    r.payload["witness"] = {{"k", w.k},
                            {"generators", w.generators},
                            {"images", w.images},
                            {"kernel", w.kernel},
                            {"isomorphism", w.isomorphism}};
  } else {
    r.status = "NoWithinBounds";
    r.negative = true;
    if (res.violated) r.payload["violated"] = to_string(*res.violated);
  }
  return r;
}

CommandRecord identities_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 1, "identities", "A");
  const auto& a = algebra_arg(ws, args[0]);
  auto ids = identities_of(a, o.vars, o.depth);
  CommandRecord r{"identities", "Identities", json::object(), std::nullopt, false};
  json list = json::array();
  for (const auto& id : ids) list.push_back(to_string(id));
  r.payload["vars"] = o.vars;
  r.payload["depth"] = o.depth;
  r.payload["identities"] = list;
  return r;
}

CommandRecord freealg_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 1, "freealg", "ALGEBRA [N] | THEORY [GENERATOR ...]");
  CommandRecord r{"freealg", "Free", json::object(), std::nullopt, false};
  if (ws.find(DefKind::Theory, args[0])) {
    const auto& t = *ws.theory(args[0]).theory;
    std::vector<std::string> gens(args.begin() + 1, args.end());
    FreeFAlgebra f(PolynomialFunctor{t.signature.ops()}, FinSet(gens), o.depth);
    json frontier = json::array();
    const auto fr = f.frontier();
    for (std::size_t i = 0; i < fr.size(); ++i)
      if (fr[i]) frontier.push_back(f.carrier().label(i));
    r.payload["kind"] = "polynomial";
    r.payload["depth"] = o.depth;
    r.payload["carrier"] = f.carrier().labels();
    r.payload["frontier"] = frontier;
    return r;
  }
  const auto& a = algebra_arg(ws, args[0]);
  std::size_t n = o.vars;
  if (args.size() > 1) {
    const auto& s = args[1];
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(ErrorKind::InvalidArgument, "generator count '" + s + "' is not a number");
    n = std::stoul(s);
  }
  auto free = free_algebra_in_variety(a, n);
  json reps = json::array();
  for (const auto& t : free.representatives) reps.push_back(to_string(t));
  r.payload["kind"] = "variety";
  r.payload["generators"] = n;
  r.payload["size"] = free.algebra.size();
  r.payload["elements"] = reps;
  return r;
}

CommandRecord centralizer_command(const Workspace& ws, const std::vector<std::string>& args) {
  need_args(args, 1, "centralizer", "GROUP [ELEMENT ...]");
  const GroupPtr g = ws.group(args[0]).group;
  auto h = centralizer(g, std::vector<std::string>(args.begin() + 1, args.end()));
  CommandRecord r{"centralizer", "Solved", json::object(), std::nullopt, false};
  r.payload["group"] = g->name();
  r.payload["order"] = h.dom->size();
  r.payload["carrier"] = json::array();
  for (std::size_t x = 0; x < h.dom->size(); ++x) r.payload["carrier"].push_back(g->carrier().label(h.map[x]));
  return r;
}

CommandRecord abelianize_command(const Workspace& ws, const std::vector<std::string>& args) {
  need_args(args, 1, "abelianize", "GROUP");
  const GroupPtr g = ws.group(args[0]).group;
  auto q = abelianization(g);
  CommandRecord r{"abelianize", "Cosolved", json::object(), std::nullopt, false};
  r.payload["group"] = g->name();
  r.payload["order"] = q.cod->size();
  r.payload["abelian"] = q.cod->abelian();
  r.payload["classes"] = classes_json(g->size(), q.cod->size(), [&](std::size_t x) { return q.map[x]; },
                                      [&](std::size_t x) { return g->carrier().label(x); });
  return r;
}

// ---- inserters ----

json inserter_json(const Inserter& ins) {
  json j = category_json(*ins.category);
  j["object_count"] = ins.category->object_count();
  j["arrow_count"] = ins.category->arrow_count();
  return j;
}

CommandRecord inserter_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args) {
  need_args(args, 2, verb, "F G");
  const auto& f = ws.functor(args[0]).functor;
  const auto& g = ws.functor(args[1]).functor;
  auto ins = inserter(f, g);
  CommandRecord r{verb, "", json::object(), std::nullopt, false};
  if (verb == "inserter") {
    r.status = "Constructed";
    r.payload = inserter_json(ins);
    return r;
  }
  auto rep = verify_forgetful(ins.forget);
  auto lim = check_limit_creation(ins, f, g);
  r.payload = {{"faithful", rep.faithful},
               {"conservative", rep.conservative},
               {"amnestic", rep.amnestic},
               {"uniquely_transportable", rep.uniquely_transportable},
               {"product_cases", lim.product_cases},
               {"equalizer_cases", lim.equalizer_cases},
               {"limit_failures", lim.failures}};
  const bool ok = rep.all() && lim.failures == 0;
  r.status = ok ? "Verified" : "Failed";
  r.negative = !ok;
  return r;
}

CommandRecord shift_command(const Workspace& ws, const std::vector<std::string>& args) {
  need_args(args, 3, "shift", "F G ADJUNCTION");
  const auto& f = ws.functor(args[0]).functor;
  const auto& g = ws.functor(args[1]).functor;
  const auto& adj = ws.adjunction(args[2]).adjunction;
  ShiftResult s;
  std::string direction;
  if (adj.right == g) {
    s = shift_left(f, g, adj);
    direction = "left";
  } else if (adj.left == f) {
    s = shift_right(f, g, adj);
    direction = "right";
  } else {
    fail(ErrorKind::InvalidArgument, "adjunction " + args[2] + " has neither right adjoint " + args[1] +
                                         " nor left adjoint " + args[0]);
  }
  if (!s.round_trip || !s.concrete) fail(ErrorKind::InvariantError, "shift isomorphism failed to round-trip");
  CommandRecord r{"shift", "Isomorphic", json::object(), std::nullopt, false};
  r.payload = {{"direction", direction},
               {"from", inserter_json(s.from)},
               {"to", inserter_json(s.to)},
               {"round_trip", s.round_trip},
               {"concrete", s.concrete}};
  return r;
}

// ---- series ----

TruncatedSeries series_arg(const Workspace& ws, const std::string& name, const CommandOptions& o) {
  const auto& s = ws.series(name);
  if (!o.prec) return s.series;
  switch (s.form) {
    case SeriesDef::Form::Recurrence: return expand_recurrence(s.first, s.second, *o.prec);
    case SeriesDef::Form::Rational: return expand_rational(s.first, s.second, *o.prec);
    case SeriesDef::Form::List: break;
  }
  if (*o.prec > s.series.precision())
    fail(ErrorKind::PrecisionExhausted, "series " + name + " is only known to precision " +
                                            std::to_string(s.series.precision()));
  return s.series.truncate(*o.prec);
}

json zero_json(const ZeroStatus& z) {
  json j = {{"zero", z.zero}, {"precision", z.precision}};
  if (!z.zero) j["witness"] = z.witness;
  return j;
}

std::vector<Rational> rational_list(const std::vector<std::string>& args, std::size_t from) {
  std::vector<Rational> out;
  for (std::size_t i = from; i < args.size(); ++i) {
    std::string item;
    std::stringstream ss(args[i]);
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

CommandRecord recurrence_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 3, "recurrence", "SERIES order N | SERIES coeffs A0,A1,...");
  const auto f = series_arg(ws, args[0], o);
  CommandRecord r{"recurrence", "", json::object(), std::nullopt, false};
  r.payload["series"] = args[0];
  if (args[1] == "order") {
    const auto& s = args[2];
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(ErrorKind::InvalidArgument, "order '" + s + "' is not a number");
    const std::size_t n = std::stoul(s);
    auto t = is_linear_recurrence(f, n);
    r.payload["order"] = n;
    r.precision = t.status.precision;
    if (t.status.zero) {
      r.status = "ZeroWithinPrecision";
    } else {
      r.status = "Nonzero";
      r.negative = true;
      r.payload["witness"] = t.status.witness;
      r.payload["coefficient"] = to_string(t.wronskian[t.status.witness]);
    }
    return r;
  }
  if (args[1] != "coeffs") usage("recurrence", "SERIES order N | SERIES coeffs A0,A1,...");
  const auto a = rational_list(args, 2);
  auto eq = recurrence_equivalence_check(f, a);
  json coeffs = json::array();
  for (const auto& c : a) coeffs.push_back(to_string(c));
  r.payload["coeffs"] = coeffs;
  r.payload["window"] = eq.window;
  r.precision = eq.window;
  r.status = eq.holds ? "Holds" : "Fails";
  r.negative = !eq.holds;
  return r;
}

CommandRecord wronskian_command(const Workspace& ws, const std::vector<std::string>& args, const CommandOptions& o) {
  need_args(args, 1, "wronskian", "SERIES ... | SERIES ops OP ...");
  CommandRecord r{"wronskian", "", json::object(), std::nullopt, false};
  if (args.size() >= 2 && args[1] == "ops") {
    if (args.size() < 3) usage("wronskian", "SERIES ops OP ...");
    const auto f = series_arg(ws, args[0], o);
    std::vector<DiffOp> ops;
    json names = json::array();
    for (std::size_t i = 2; i < args.size(); ++i) {
      ops.push_back(parse_diffop(args[i]));
      names.push_back(to_string(ops.back()));
    }
    auto m = wronskian_monotonicity_check(ops, f);
    r.payload = {{"ops", names}, {"antecedent", zero_json(m.antecedent)}, {"consequent", zero_json(m.consequent)}};
    r.precision = std::min(m.antecedent.precision, m.consequent.precision);
    r.status = m.counterexample_at_precision ? "Counterexample" : "Consistent";
    r.negative = m.counterexample_at_precision;
    return r;
  }
  std::vector<TruncatedSeries> fs;
  for (const auto& name : args) fs.push_back(series_arg(ws, name, o));
  auto w = wronskian(fs);
  auto z = zero_status(w);
  r.payload = {{"series", args}, {"wronskian", to_string(w)}};
  r.precision = z.precision;
  if (z.zero) {
    r.status = "ZeroWithinPrecision";
  } else {
    r.status = "Nonzero";
    r.negative = true;
    r.payload["witness"] = z.witness;
  }
  return r;
}

}  // namespace

const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> v{
      "solve",     "cosolve",      "check-solution", "implies",    "reduce",   "genvar",      "geneq",
      "unify",     "decide",       "quotient",       "cosolve-theories", "kernel", "hsp",      "identities",
      "freealg",   "centralizer",  "abelianize",     "inserter",   "verify-forgetful", "shift", "recurrence",
      "wronskian", "check"};
  return v;
}

CommandRecord run_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args,
                          const CommandOptions& opts) {
  if (verb == "solve" || verb == "cosolve" || verb == "check-solution" || verb == "implies" || verb == "reduce" ||
      verb == "genvar" || verb == "geneq")
    return equations_command(ws, verb, args);
  if (verb == "unify") return unify_command(args);
  if (verb == "decide") return decide_command(ws, args, opts);
  if (verb == "quotient") return quotient_command(ws, args);
  if (verb == "cosolve-theories") return cosolve_theories_command(ws, args);
  if (verb == "kernel") return kernel_command(ws, args, opts);
  if (verb == "hsp") return hsp_command(ws, args, opts);
  if (verb == "identities") return identities_command(ws, args, opts);
  if (verb == "freealg") return freealg_command(ws, args, opts);
  if (verb == "centralizer") return centralizer_command(ws, args);
  if (verb == "abelianize") return abelianize_command(ws, args);
  if (verb == "inserter" || verb == "verify-forgetful") return inserter_command(ws, verb, args);
  if (verb == "shift") return shift_command(ws, args);
  if (verb == "recurrence") return recurrence_command(ws, args, opts);
  if (verb == "wronskian") return wronskian_command(ws, args, opts);
  if (verb == "check") {
    CommandRecord r{"check", "Valid", json::object(), std::nullopt, false};
    r.payload["definitions"] = ws.check();
    return r;
  }
  std::string known;
  for (const auto& v : command_verbs()) known += (known.empty() ? "" : ", ") + v;
  fail(ErrorKind::InvalidArgument, "unknown verb '" + verb + "' (expected one of " + known + ")");
}

std::string render_json(const CommandRecord& r) {
  json j = {{"verb", r.verb}, {"status", r.status}, {"payload", r.payload}};
  if (r.precision) j["precision"] = *r.precision;
  return j.dump();
}

namespace {

void human_lines(std::string& out, const json& v, const std::string& indent) {
  for (const auto& [key, val] : v.items()) {
    if (val.is_object()) {
      out += indent + key + ":\n";
      human_lines(out, val, indent + "  ");
    } else if (val.is_string()) {
      out += indent + key + ": " + val.get<std::string>() + "\n";
    } else {
      out += indent + key + ": " + val.dump() + "\n";
    }
  }
}

}  // namespace

std::string render_human(const CommandRecord& r) {
  std::string out = r.verb + ": " + r.status;
  if (r.precision) out += " (precision " + std::to_string(*r.precision) + ")";
  out += "\n";
  human_lines(out, r.payload, "  ");
  return out;
}

std::string render_error_json(const std::string& verb, const Error& e) {
  json j = {{"verb", verb},
            {"status", "Error"},
            {"payload", {{"kind", std::string(to_string(e.kind()))}, {"message", e.detail()}}}};
  return j.dump();
}

int exit_code(const CommandRecord& r) { return r.negative ? 1 : 0; }

int exit_code(const Error& e, bool at_load) {
  if (at_load) return 2;
  switch (e.kind()) {
    case ErrorKind::InvariantError:
    case ErrorKind::InternalEquivalenceViolation:
      return 3;
    default:
      return 2;
  }
}

}  // namespace veq
