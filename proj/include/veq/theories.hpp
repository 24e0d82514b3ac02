#pragma once

// Finitely presented one-sorted Lawvere theories. Objects are the naturals
// and theory morphisms are determined by where they send each symbol, so
// every morphism here fixes objects.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veq/term.hpp"

namespace veq {

struct Axiom {
  Term lhs;
  Term rhs;
  std::size_t context = 0;  // variables in scope: 0 .. context-1
  std::string label;
};

struct TheoryPresentation {
  std::string name;
  Signature signature;
  std::vector<Axiom> axioms;

  /// Throws InvariantError when an axiom side is ill-formed.
  void validate() const;
};

using TheoryPtr = std::shared_ptr<const TheoryPresentation>;

/// A morphism of presented theories: each source symbol of arity n goes to a
/// target term over variables 0..n-1. Extends to terms, hence to n -> m
/// tuples, by substitution.
struct TheoryMorphism {
  std::string name;
  TheoryPtr source;
  TheoryPtr target;
  std::vector<std::pair<std::string, Term>> images;

  const Term& image_of(const std::string& symbol) const;
  Term apply(const Term& t) const;
  /// Arity-respecting and well-formed in the target.
  void validate() const;
};

struct Budget {
  std::size_t max_steps = 10000;
  /// 0 selects max(|lhs|, |rhs|) + 3.
  std::size_t max_term_size = 0;
};

/// One replacement of an instantiated axiom side at a position.
struct ProofStep {
  Position position;
  std::size_t axiom = 0;
  bool forward = true;  // lhs -> rhs when true
  Substitution subst;   // covers the variables of both axiom sides
  Term result;
};

struct Certificate {
  std::vector<ProofStep> steps;
};

enum class Verdict { Provable, Unknown };

struct CongruenceResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Certificate> certificate;
  std::size_t steps_used = 0;
};

/// Bounded bidirectional search for a chain of axiom replacements joining
/// lhs and rhs. Never reports "not congruent": exhaustion yields Unknown.
CongruenceResult congruent(const TheoryPresentation& theory, const Term& lhs, const Term& rhs, Budget budget);

/// Re-applies every step; true when the chain is valid and ends at rhs.
bool replay(const TheoryPresentation& theory, const Term& lhs, const Term& rhs, const Certificate& cert);

struct QuotientTheory {
  TheoryPtr theory;
  TheoryMorphism canonical;  // T -> T/~, identity on symbols
};

QuotientTheory quotient_theory(const TheoryPtr& base, const std::vector<Axiom>& extra);

/// Identity on syntax, hence full and bijective on objects.
TheoryMorphism identity_morphism(const TheoryPtr& theory, const TheoryPtr& target);

struct CosystemPair {
  TheoryMorphism p;
  TheoryMorphism q;
};

/// The quotient of the common target by P_i(σ) ≈ Q_i(σ) for every source
/// symbol σ of every pair.
QuotientTheory general_cosolution_theories(const std::vector<CosystemPair>& cosystem);

/// M∘P_i(σ) ~ M∘Q_i(σ) for every generator; Unknown if any proof is not found.
Verdict coequalizes(const TheoryMorphism& m, const std::vector<CosystemPair>& cosystem, Budget budget);

/// Checks that every source axiom is sent to a provable equation.
Verdict is_morphism(const TheoryMorphism& m, Budget budget);

/// Given the canonical quotient map and another cosolution M', the induced
/// N with N∘M = M' (symbol-wise), when N is provably a morphism.
std::optional<TheoryMorphism> factor_through_quotient(const QuotientTheory& q, const TheoryMorphism& other,
                                                      Budget budget);

enum class KernelVerdict { InKernel, Unknown };

struct KernelResult {
  KernelVerdict verdict = KernelVerdict::Unknown;
  std::optional<Certificate> certificate;
};

/// (f, g) lies in the kernel pair of M when M(f) ~ M(g) is provable in M's target.
KernelResult kernel_pair_membership(const TheoryMorphism& m, const Term& f, const Term& g, Budget budget);

struct LawvereWitness {
  bool holds = false;
  /// Symbols on which P and Q agree syntactically; with all projections and
  /// tuples they generate the wide subtheory included by U.
  std::vector<std::string> agreeing_symbols;
};

LawvereWitness is_lawvere_equation(const TheoryMorphism& p, const TheoryMorphism& q);
/// Membership of a term in the agreement subtheory: P(t) == Q(t).
bool in_agreement_subtheory(const TheoryMorphism& p, const TheoryMorphism& q, const Term& t);

/// Both quotients of the same base prove each other's axioms, so the
/// canonical maps are isomorphic.
Verdict isomorphic_quotients(const TheoryPresentation& a, const TheoryPresentation& b, Budget budget);

std::string to_string(const Certificate& cert, const TheoryPresentation& theory,
                      const std::vector<std::string>& var_names = {});

}  // namespace veq
