#include "veq/theories.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "veq/error.hpp"

namespace veq {

namespace {

// Every term reachable from t by one replacement of an instantiated axiom
// side. Variables present only on the replacing side are drawn from `pool`.
std::vector<ProofStep> neighbors(const TheoryPresentation& theory, const Term& t, const std::vector<Term>& pool,
                                 std::size_t size_limit) {
  std::vector<ProofStep> out;
  for (const auto& pos : positions(t)) {
    const Term& sub = subterm_at(t, pos);
    for (std::size_t ai = 0; ai < theory.axioms.size(); ++ai) {
      const auto& ax = theory.axioms[ai];
      for (bool forward : {true, false}) {
        const Term& from = forward ? ax.lhs : ax.rhs;
        const Term& to = forward ? ax.rhs : ax.lhs;
        Substitution sigma;
        if (!match(from, sub, sigma)) continue;
        std::vector<bool> to_vars;
        collect_vars(to, to_vars);
        std::vector<std::size_t> extra;
        for (std::size_t v = 0; v < to_vars.size(); ++v)
          if (to_vars[v] && !sigma.count(v)) extra.push_back(v);
        std::vector<std::size_t> choice(extra.size(), 0);
        while (true) {
          Substitution full = sigma;
          for (std::size_t k = 0; k < extra.size(); ++k) full.emplace(extra[k], pool[choice[k]]);
          Term replaced = substitute(to, full);
          if (t.size() - sub.size() + replaced.size() <= size_limit) {
            Term next = replace_at(t, pos, replaced);
            if (!(next == t)) out.push_back(ProofStep{pos, ai, forward, std::move(full), std::move(next)});
          }
          std::size_t k = extra.size();
          while (k > 0 && ++choice[k - 1] == pool.size()) choice[--k] = 0;
          if (k == 0) break;
        }
      }
    }
  }
  return out;
}

struct Parent {
  std::optional<Term> from;
  ProofStep step;
};

using SeenMap = std::unordered_map<Term, Parent, TermHash>;

std::vector<Term> goal_pool(const TheoryPresentation& theory, const Term& lhs, const Term& rhs) {
  std::vector<bool> seen;
  collect_vars(lhs, seen);
  collect_vars(rhs, seen);
  std::vector<Term> pool;
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (seen[v]) pool.push_back(Term::var(v));
  for (const auto& op : theory.signature.ops())
    if (op.arity == 0) pool.push_back(Term::app(op.name));
  if (pool.empty()) pool.push_back(Term::var(0));
  return pool;
}

Certificate build_certificate(const SeenMap& from_lhs, const SeenMap& from_rhs, const Term& meet) {
  Certificate cert;
  // lhs ... -> meet
  for (Term cur = meet;;) {
    const auto& parent = from_lhs.at(cur);
    if (!parent.from) break;
    cert.steps.push_back(parent.step);
    cur = *parent.from;
  }
  std::reverse(cert.steps.begin(), cert.steps.end());
  // meet -> ... rhs, each recorded step inverted.
  for (Term cur = meet;;) {
    const auto& parent = from_rhs.at(cur);
    if (!parent.from) break;
    ProofStep inv = parent.step;
    inv.forward = !inv.forward;
    inv.result = *parent.from;
    cert.steps.push_back(std::move(inv));
    cur = *parent.from;
  }
  return cert;
}

}  // namespace

void TheoryPresentation::validate() const {
  for (const auto& ax : axioms) {
    if (!well_formed(ax.lhs, signature, ax.context) || !well_formed(ax.rhs, signature, ax.context))
      fail(ErrorKind::InvariantError, "axiom '" + ax.label + "' of theory " + name + " is not well formed");
  }
}

const Term& TheoryMorphism::image_of(const std::string& symbol) const {
  for (const auto& [s, t] : images)
    if (s == symbol) return t;
  fail(ErrorKind::InvariantError, "morphism " + name + " gives no image for '" + symbol + "'");
}

Term TheoryMorphism::apply(const Term& t) const {
  if (t.is_var()) return t;
  Substitution s;
  for (std::size_t i = 0; i < t.args().size(); ++i) s.emplace(i, apply(t.args()[i]));
  return substitute(image_of(t.symbol()), s);
}

void TheoryMorphism::validate() const {
  if (!source || !target) fail(ErrorKind::InvariantError, "morphism " + name + " lacks source or target");
  for (const auto& op : source->signature.ops()) {
    const Term& img = image_of(op.name);
    if (!well_formed(img, target->signature, op.arity))
      fail(ErrorKind::InvariantError, "image of '" + op.name + "' under " + name +
                                          " is not a term of arity " + std::to_string(op.arity) + " in " +
                                          target->name);
  }
  for (const auto& [s, t] : images)
    if (!source->signature.lookup(s))
      fail(ErrorKind::InvariantError, "morphism " + name + " maps unknown symbol '" + s + "'");
}

namespace {

// Greedy rewriting with axiom instances that shrink the term and introduce
// no variables. Returns the chain from t to its reduced form.
std::vector<ProofStep> descend(const TheoryPresentation& theory, Term& t, std::size_t& steps, std::size_t max_steps) {
  std::vector<ProofStep> chain;
  bool progress = true;
  while (progress && steps < max_steps) {
    progress = false;
    for (const auto& pos : positions(t)) {
      const Term& sub = subterm_at(t, pos);
      for (std::size_t ai = 0; ai < theory.axioms.size() && !progress; ++ai) {
        const auto& ax = theory.axioms[ai];
        for (bool forward : {true, false}) {
          const Term& from = forward ? ax.lhs : ax.rhs;
          const Term& to = forward ? ax.rhs : ax.lhs;
          if (to.size() >= from.size()) continue;
          Substitution sigma;
          if (!match(from, sub, sigma)) continue;
          std::vector<bool> to_vars;
          collect_vars(to, to_vars);
          bool covered = true;
          for (std::size_t v = 0; v < to_vars.size(); ++v) covered = covered && (!to_vars[v] || sigma.count(v));
          if (!covered) continue;
          Term next = replace_at(t, pos, substitute(to, sigma));
          chain.push_back(ProofStep{pos, ai, forward, std::move(sigma), next});
          t = std::move(next);
          ++steps;
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return chain;
}

// The chain `forward_chain` leads from `start` to its last result; the
// returned steps lead back from that result to `start`.
std::vector<ProofStep> invert(const Term& start, const std::vector<ProofStep>& forward_chain) {
  std::vector<ProofStep> out;
  for (std::size_t i = forward_chain.size(); i-- > 0;) {
    ProofStep inv = forward_chain[i];
    inv.forward = !inv.forward;
    inv.result = i ? forward_chain[i - 1].result : start;
    out.push_back(std::move(inv));
  }
  return out;
}

}  // namespace

CongruenceResult congruent(const TheoryPresentation& theory, const Term& lhs, const Term& rhs, Budget budget) {
  if (budget.max_steps == 0) fail(ErrorKind::BudgetInvalid, "step budget must be positive");
  CongruenceResult result;
  if (lhs == rhs) {
    result.verdict = Verdict::Provable;
    result.certificate = Certificate{};
    return result;
  }
  const std::size_t size_limit =
      budget.max_term_size ? budget.max_term_size : std::max(lhs.size(), rhs.size()) + 3;
  const auto pool = goal_pool(theory, lhs, rhs);

  Term l = lhs, r = rhs;
  auto l_chain = descend(theory, l, result.steps_used, budget.max_steps);
  auto r_chain = descend(theory, r, result.steps_used, budget.max_steps);
  auto finish = [&](Certificate middle) {
    Certificate cert{std::move(l_chain)};
    for (auto& s : middle.steps) cert.steps.push_back(std::move(s));
    for (auto& s : invert(rhs, r_chain)) cert.steps.push_back(std::move(s));
    result.verdict = Verdict::Provable;
    result.certificate = std::move(cert);
    return result;
  };
  if (l == r) return finish({});

  SeenMap seen[2];
  std::deque<Term> queue[2];
  seen[0].emplace(l, Parent{std::nullopt, {}});
  seen[1].emplace(r, Parent{std::nullopt, {}});
  queue[0].push_back(l);
  queue[1].push_back(r);

  std::size_t side = 0;
  while (result.steps_used < budget.max_steps && (!queue[0].empty() || !queue[1].empty())) {
    if (queue[side].empty()) side = 1 - side;
    Term t = queue[side].front();
    queue[side].pop_front();
    ++result.steps_used;
    for (auto& step : neighbors(theory, t, pool, size_limit)) {
      Term next = step.result;
      if (seen[side].count(next)) continue;
      seen[side].emplace(next, Parent{t, std::move(step)});
      if (seen[1 - side].count(next)) return finish(build_certificate(seen[0], seen[1], next));
      queue[side].push_back(next);
    }
    side = 1 - side;
  }
  return result;
}

bool replay(const TheoryPresentation& theory, const Term& lhs, const Term& rhs, const Certificate& cert) {
  Term cur = lhs;
  for (const auto& step : cert.steps) {
    if (step.axiom >= theory.axioms.size()) return false;
    const auto& ax = theory.axioms[step.axiom];
    const Term& from = step.forward ? ax.lhs : ax.rhs;
    const Term& to = step.forward ? ax.rhs : ax.lhs;
    std::vector<bool> vars;
    collect_vars(ax.lhs, vars);
    collect_vars(ax.rhs, vars);
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v] && !step.subst.count(v)) return false;
    Term sub;
    try {
      sub = subterm_at(cur, step.position);
    } catch (const Error&) {
      return false;
    }
    if (!(substitute(from, step.subst) == sub)) return false;
    Term next = replace_at(cur, step.position, substitute(to, step.subst));
    if (!(next == step.result)) return false;
    cur = next;
  }
  return cur == rhs;
}

TheoryMorphism identity_morphism(const TheoryPtr& theory, const TheoryPtr& target) {
  TheoryMorphism m{theory->name + "->" + target->name, theory, target, {}};
  for (const auto& op : theory->signature.ops()) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < op.arity; ++i) args.push_back(Term::var(i));
    m.images.emplace_back(op.name, Term::app(op.name, std::move(args)));
  }
  return m;
}

QuotientTheory quotient_theory(const TheoryPtr& base, const std::vector<Axiom>& extra) {
  auto q = std::make_shared<TheoryPresentation>(*base);
  q->name = base->name + "/~";
  for (const auto& ax : extra) q->axioms.push_back(ax);
  q->validate();
  TheoryPtr qp = q;
  return QuotientTheory{qp, identity_morphism(base, qp)};
}

QuotientTheory general_cosolution_theories(const std::vector<CosystemPair>& cosystem) {
  if (cosystem.empty()) fail(ErrorKind::EmptyList, "a cosystem needs at least one equation");
  const TheoryPtr target = cosystem.front().p.target;
  std::vector<Axiom> generators;
  for (const auto& [p, q] : cosystem) {
    if (p.source != q.source && !(p.source->name == q.source->name))
      fail(ErrorKind::SourceMismatch, p.name + " and " + q.name + " have different sources");
    if (p.target != target || q.target != target)
      fail(ErrorKind::TargetMismatch, "cosystem morphisms must share their target");
    p.validate();
    q.validate();
    for (const auto& op : p.source->signature.ops()) {
      const Term& lp = p.image_of(op.name);
      const Term& lq = q.image_of(op.name);
      if (lp == lq) continue;
      generators.push_back(Axiom{lp, lq, op.arity, p.name + "(" + op.name + ")=" + q.name + "(" + op.name + ")"});
    }
  }
  return quotient_theory(target, generators);
}

Verdict coequalizes(const TheoryMorphism& m, const std::vector<CosystemPair>& cosystem, Budget budget) {
  for (const auto& [p, q] : cosystem) {
    for (const auto& op : p.source->signature.ops()) {
      auto r = congruent(*m.target, m.apply(p.image_of(op.name)), m.apply(q.image_of(op.name)), budget);
      if (r.verdict != Verdict::Provable) return Verdict::Unknown;
    }
  }
  return Verdict::Provable;
}

Verdict is_morphism(const TheoryMorphism& m, Budget budget) {
  m.validate();
  for (const auto& ax : m.source->axioms) {
    auto r = congruent(*m.target, m.apply(ax.lhs), m.apply(ax.rhs), budget);
    if (r.verdict != Verdict::Provable) return Verdict::Unknown;
  }
  return Verdict::Provable;
}

std::optional<TheoryMorphism> factor_through_quotient(const QuotientTheory& q, const TheoryMorphism& other,
                                                      Budget budget) {
  if (q.canonical.source != other.source && !(q.canonical.source->name == other.source->name))
    fail(ErrorKind::SourceMismatch, "the cosolutions have different sources");
  TheoryMorphism n{q.theory->name + "->" + other.target->name, q.theory, other.target, other.images};
  if (is_morphism(n, budget) != Verdict::Provable) return std::nullopt;
  return n;
}

KernelResult kernel_pair_membership(const TheoryMorphism& m, const Term& f, const Term& g, Budget budget) {
  auto r = congruent(*m.target, m.apply(f), m.apply(g), budget);
  if (r.verdict == Verdict::Provable) return {KernelVerdict::InKernel, r.certificate};
  return {};
}

LawvereWitness is_lawvere_equation(const TheoryMorphism& p, const TheoryMorphism& q) {
  if (p.source != q.source || p.target != q.target)
    fail(ErrorKind::NotParallel, p.name + " and " + q.name + " are not parallel");
  LawvereWitness w{true, {}};
  for (const auto& op : p.source->signature.ops())
    if (p.image_of(op.name) == q.image_of(op.name)) w.agreeing_symbols.push_back(op.name);
  return w;
}

bool in_agreement_subtheory(const TheoryMorphism& p, const TheoryMorphism& q, const Term& t) {
  return p.apply(t) == q.apply(t);
}

Verdict isomorphic_quotients(const TheoryPresentation& a, const TheoryPresentation& b, Budget budget) {
  if (!(a.signature == b.signature)) fail(ErrorKind::SignatureMismatch, "quotients of different signatures");
  for (const auto& ax : a.axioms)
    if (congruent(b, ax.lhs, ax.rhs, budget).verdict != Verdict::Provable) return Verdict::Unknown;
  for (const auto& ax : b.axioms)
    if (congruent(a, ax.lhs, ax.rhs, budget).verdict != Verdict::Provable) return Verdict::Unknown;
  return Verdict::Provable;
}

std::string to_string(const Certificate& cert, const TheoryPresentation& theory,
                      const std::vector<std::string>& var_names) {
  std::string out;
  for (const auto& step : cert.steps) {
    out += "  ";
    out += step.forward ? "-> " : "<- ";
    out += theory.axioms.at(step.axiom).label.empty() ? "axiom " + std::to_string(step.axiom)
                                                      : theory.axioms.at(step.axiom).label;
    out += " @[";
    for (std::size_t i = 0; i < step.position.size(); ++i) out += (i ? "," : "") + std::to_string(step.position[i]);
    out += "] " + to_string(step.result, var_names) + "\n";
  }
  return out;
}

}  // namespace veq
