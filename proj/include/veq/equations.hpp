#pragma once

// Systems of equations, solutions, general (co)solutions, and the order on
// arrows, written once against a finite "computational category" interface.
// Instances: FinSetCategory (below), groups and Σ-algebras (birkhoff.hpp),
// posets and finite categories (inserters.hpp).

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "veq/error.hpp"

namespace veq {

struct Capabilities {
  bool equalizers = false;
  bool intersections = false;
  bool products = false;
  bool coequalizers = false;
  bool coproducts = false;
  bool cokernel_pairs = false;
  bool pullbacks = false;
  bool mono_test = false;
  bool factorization = false;
};

template <class Obj, class Mor>
struct Cone {
  Obj apex;
  std::vector<Mor> legs;
};

/// The square f∘first = m∘second of a pullback of f along m.
template <class Mor>
struct Square {
  Mor first;   // opposite m
  Mor second;  // opposite f
};

template <class Obj, class Mor>
class CompCategory {
 public:
  using Object = Obj;
  using Morphism = Mor;

  virtual ~CompCategory() = default;

  virtual std::string name() const = 0;
  virtual Obj source(const Mor& f) const = 0;
  virtual Obj target(const Mor& f) const = 0;
  virtual bool same_object(const Obj& a, const Obj& b) const = 0;
  virtual bool equal(const Mor& f, const Mor& g) const = 0;
  /// g after f
  virtual Mor compose(const Mor& g, const Mor& f) const = 0;
  virtual Mor identity(const Obj& a) const = 0;
  virtual Capabilities capabilities() const = 0;

  virtual bool is_mono(const Mor&) const { throw missing("mono test"); }
  virtual Mor equalizer(const Mor&, const Mor&) const { throw missing("equalizers"); }
  /// Intersection of monos with a shared target.
  virtual Mor intersect(std::span<const Mor>) const { throw missing("intersections"); }
  virtual Cone<Obj, Mor> product(std::span<const Obj>) const { throw missing("finite products"); }
  virtual Mor tuple(const Cone<Obj, Mor>&, std::span<const Mor>) const { throw missing("finite products"); }
  virtual Mor coequalizer(const Mor&, const Mor&) const { throw missing("coequalizers"); }
  virtual Cone<Obj, Mor> coproduct(std::span<const Obj>) const { throw missing("finite coproducts"); }
  virtual Mor cotuple(const Cone<Obj, Mor>&, std::span<const Mor>) const { throw missing("finite coproducts"); }
  virtual std::pair<Mor, Mor> cokernel_pair(const Mor&) const { throw missing("cokernel pairs"); }
  virtual Square<Mor> pullback(const Mor&, const Mor&) const { throw missing("pullbacks"); }
  /// Some h with f = g∘h.
  virtual std::optional<Mor> factor_through(const Mor&, const Mor&) const { throw missing("factorization search"); }
  /// Some h with f = h∘e.
  virtual std::optional<Mor> factor_after(const Mor&, const Mor&) const { throw missing("factorization search"); }

 protected:
  Error missing(const std::string& what) const {
    return Error(ErrorKind::CapabilityMissing, name() + " does not supply " + what);
  }
};

template <class Mor>
struct Equation {
  Mor lhs;
  Mor rhs;
};

/// Non-empty list of parallel pairs sharing a source (the system's domain).
template <class Obj, class Mor>
struct EquationSystem {
  Obj domain;
  std::vector<Equation<Mor>> equations;
};

/// Non-empty list of parallel pairs sharing a target.
template <class Obj, class Mor>
struct CoEquationSystem {
  Obj codomain;
  std::vector<Equation<Mor>> equations;
};

template <class Obj, class Mor>
void validate(const CompCategory<Obj, Mor>& cat, const EquationSystem<Obj, Mor>& e) {
  if (e.equations.empty()) fail(ErrorKind::EmptyList, "a system needs at least one equation");
  for (const auto& eq : e.equations) {
    if (!cat.same_object(cat.source(eq.lhs), cat.source(eq.rhs)) ||
        !cat.same_object(cat.target(eq.lhs), cat.target(eq.rhs)))
      fail(ErrorKind::NotParallel, "equation sides are not parallel");
    if (!cat.same_object(cat.source(eq.lhs), e.domain))
      fail(ErrorKind::DomainMismatch, "equation source differs from the system's domain");
  }
}

template <class Obj, class Mor>
void validate(const CompCategory<Obj, Mor>& cat, const CoEquationSystem<Obj, Mor>& e) {
  if (e.equations.empty()) fail(ErrorKind::EmptyList, "a cosystem needs at least one equation");
  for (const auto& eq : e.equations) {
    if (!cat.same_object(cat.source(eq.lhs), cat.source(eq.rhs)) ||
        !cat.same_object(cat.target(eq.lhs), cat.target(eq.rhs)))
      fail(ErrorKind::NotParallel, "equation sides are not parallel");
    if (!cat.same_object(cat.target(eq.lhs), e.codomain))
      fail(ErrorKind::TargetMismatch, "equation target differs from the cosystem's codomain");
  }
}

template <class Obj, class Mor>
bool is_solution(const CompCategory<Obj, Mor>& cat, const Mor& a, const EquationSystem<Obj, Mor>& e) {
  validate(cat, e);
  if (!cat.same_object(cat.target(a), e.domain))
    fail(ErrorKind::TargetMismatch, "candidate solution does not land in the system's domain");
  for (const auto& eq : e.equations)
    if (!cat.equal(cat.compose(eq.lhs, a), cat.compose(eq.rhs, a))) return false;
  return true;
}

template <class Obj, class Mor>
bool is_cosolution(const CompCategory<Obj, Mor>& cat, const Mor& a, const CoEquationSystem<Obj, Mor>& e) {
  validate(cat, e);
  if (!cat.same_object(cat.source(a), e.codomain))
    fail(ErrorKind::SourceMismatch, "candidate cosolution does not leave the cosystem's codomain");
  for (const auto& eq : e.equations)
    if (!cat.equal(cat.compose(a, eq.lhs), cat.compose(a, eq.rhs))) return false;
  return true;
}

/// Intersection of the equalizers of each equation.
template <class Obj, class Mor>
Mor general_solution(const CompCategory<Obj, Mor>& cat, const EquationSystem<Obj, Mor>& e) {
  validate(cat, e);
  std::vector<Mor> monos;
  monos.reserve(e.equations.size());
  for (const auto& eq : e.equations) monos.push_back(cat.equalizer(eq.lhs, eq.rhs));
  if (monos.size() == 1) return monos.front();
  return cat.intersect(monos);
}

/// Iterated coequalizers: q_1 = coeq(f_1, g_1), q_{i+1} = coeq(q_i f_{i+1}, q_i g_{i+1}) ∘ q_i.
template <class Obj, class Mor>
Mor general_cosolution(const CompCategory<Obj, Mor>& cat, const CoEquationSystem<Obj, Mor>& e) {
  validate(cat, e);
  Mor q = cat.coequalizer(e.equations[0].lhs, e.equations[0].rhs);
  for (std::size_t i = 1; i < e.equations.size(); ++i) {
    const auto& eq = e.equations[i];
    Mor step = cat.coequalizer(cat.compose(q, eq.lhs), cat.compose(q, eq.rhs));
    q = cat.compose(step, q);
  }
  return q;
}

/// Eg = { pg ≈ qg | p ≈ q ∈ E }
template <class Obj, class Mor>
EquationSystem<Obj, Mor> act(const CompCategory<Obj, Mor>& cat, const EquationSystem<Obj, Mor>& e, const Mor& g) {
  validate(cat, e);
  if (!cat.same_object(cat.target(g), e.domain))
    fail(ErrorKind::TargetMismatch, "acting arrow does not land in the system's domain");
  EquationSystem<Obj, Mor> out{cat.source(g), {}};
  for (const auto& eq : e.equations)
    out.equations.push_back({cat.compose(eq.lhs, g), cat.compose(eq.rhs, g)});
  return out;
}

/// f ≤ g iff f = g∘h for some h; the witness h is returned when it exists.
template <class Obj, class Mor>
std::optional<Mor> leq(const CompCategory<Obj, Mor>& cat, const Mor& f, const Mor& g) {
  if (!cat.same_object(cat.target(f), cat.target(g)))
    fail(ErrorKind::CodMismatch, "compared arrows have different codomains");
  return cat.factor_through(f, g);
}

/// E ⟹ K, decided through the order on general solutions.
template <class Obj, class Mor>
bool implies(const CompCategory<Obj, Mor>& cat, const EquationSystem<Obj, Mor>& e,
             const EquationSystem<Obj, Mor>& k) {
  validate(cat, e);
  validate(cat, k);
  if (!cat.same_object(e.domain, k.domain)) fail(ErrorKind::DomainMismatch, "systems have different domains");
  return leq(cat, general_solution(cat, e), general_solution(cat, k)).has_value();
}

/// One equation with the same solutions, obtained by tupling into the
/// product of the targets.
template <class Obj, class Mor>
Equation<Mor> single_equation_reduction(const CompCategory<Obj, Mor>& cat, const EquationSystem<Obj, Mor>& e) {
  validate(cat, e);
  if (e.equations.size() == 1) return e.equations.front();
  std::vector<Obj> targets;
  std::vector<Mor> ps, qs;
  for (const auto& eq : e.equations) {
    targets.push_back(cat.target(eq.lhs));
    ps.push_back(eq.lhs);
    qs.push_back(eq.rhs);
  }
  auto cone = cat.product(targets);
  return {cat.tuple(cone, ps), cat.tuple(cone, qs)};
}

/// The cokernel pair of the cotuple of S; solved by every member of S and
/// implying every equation all of S solve.
template <class Obj, class Mor>
Equation<Mor> generated_equation(const CompCategory<Obj, Mor>& cat, std::span<const Mor> s) {
  if (s.empty()) fail(ErrorKind::EmptyList, "generating set is empty");
  const Obj tgt = cat.target(s[0]);
  for (const auto& f : s)
    if (!cat.same_object(cat.target(f), tgt)) fail(ErrorKind::TargetMismatch, "generators have different targets");
  Mor joined = s[0];
  if (s.size() > 1) {
    std::vector<Obj> sources;
    for (const auto& f : s) sources.push_back(cat.source(f));
    auto cocone = cat.coproduct(sources);
    joined = cat.cotuple(cocone, s);
  }
  auto [p, q] = cat.cokernel_pair(joined);
  return {p, q};
}

template <class Obj, class Mor>
Mor generated_variety(const CompCategory<Obj, Mor>& cat, std::span<const Mor> s) {
  auto eq = generated_equation(cat, s);
  return general_solution(cat, EquationSystem<Obj, Mor>{cat.source(eq.lhs), {eq}});
}

}  // namespace veq
