#pragma once

// Inserter categories Ins(F,G), forgetful-functor checks, adjoint shifts,
// limit creation, truncated free algebras for polynomial functors, and
// Σ-algebras presented as an inserter.

#include <optional>
#include <string>
#include <vector>

#include "veq/algebra.hpp"
#include "veq/category.hpp"

namespace veq {

/// Objects are pairs (A, r: FA -> GA); arrows (A,r) -> (B,s) are d: A -> B
/// with G(d)∘r = s∘F(d).
struct Inserter {
  CatPtr category;
  Functor forget;                    // U: Ins(F,G) -> A
  NatTrans lambda;                   // F∘U -> G∘U, component r at (A,r)
  std::vector<std::size_t> base;     // A of each object
  std::vector<std::size_t> structure;  // r of each object
  std::vector<std::size_t> base_arrow;  // d of each arrow

  /// The object (A, r), if r : FA -> GA.
  std::optional<std::size_t> object_of(std::size_t a, std::size_t r) const;
};

Inserter inserter(const Functor& f, const Functor& g);

/// The unique W: D -> Ins(F,G) with U∘W = V and λW = α. Throws
/// InvariantError if α is not a transformation F∘V -> G∘V.
Functor mediating_functor(const Inserter& ins, const Functor& v, const NatTrans& alpha);

struct InserterUniversality {
  std::size_t cones = 0;
  bool holds = true;
};

/// Enumerates every V: D -> A and α: FV -> GV and checks the mediating
/// functor exists and is the only functor W with UW = V and λW = α.
InserterUniversality verify_inserter_universal(const Inserter& ins, const Functor& f, const Functor& g,
                                               const CatPtr& d);

struct ForgetfulReport {
  bool faithful = false;
  bool conservative = false;
  bool amnestic = false;
  bool uniquely_transportable = false;

  bool all() const { return faithful && conservative && amnestic && uniquely_transportable; }
};

ForgetfulReport verify_forgetful(const Functor& u);

struct ShiftResult {
  Inserter from;  // Ins(F,G)
  Inserter to;    // Ins(HF,1) for the left shift, Ins(1,HG) for the right
  Functor psi;
  Functor phi;
  bool round_trip = false;  // Φ∘Ψ = 1 and Ψ∘Φ = 1
  bool concrete = false;    // forgetful functors commute with Ψ and Φ
};

/// H ⊣ G given by `adj` (adj.right = G): Ins(F,G) ≅ Ins(HF, 1).
ShiftResult shift_left(const Functor& f, const Functor& g, const Adjunction& adj);
/// F ⊣ H given by `adj` (adj.left = F): Ins(F,G) ≅ Ins(1, HG).
ShiftResult shift_right(const Functor& f, const Functor& g, const Adjunction& adj);

struct LimitCreationReport {
  std::size_t product_cases = 0;    // pairs whose hypotheses hold
  std::size_t equalizer_cases = 0;  // parallel pairs whose hypotheses hold
  std::size_t failures = 0;
};

/// For each pair of objects (and each parallel pair of arrows) of Ins(F,G)
/// whose base limit exists and is preserved by G, checks Ins has the limit
/// and U sends it to a limit.
LimitCreationReport check_limit_creation(const Inserter& ins, const Functor& f, const Functor& g);

/// F(X) = Σ_i X^{n_i}: one named constructor per summand.
struct PolynomialFunctor {
  std::vector<OpSymbol> summands;

  Signature signature() const { return Signature(summands); }
};

/// F-terms over the generators of depth at most `depth`; generators have
/// depth 0 and a constructor node one more than its deepest argument.
class FreeFAlgebra {
 public:
  FreeFAlgebra(PolynomialFunctor f, FinSet generators, std::size_t depth);

  const FinSet& carrier() const noexcept { return carrier_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t depth() const noexcept { return depth_; }
  const FinSet& generators() const noexcept { return generators_; }
  const PolynomialFunctor& functor() const noexcept { return f_; }
  std::size_t insert(std::size_t generator) const { return insertion_.at(generator); }

  /// Structure map at (constructor, args); nullopt past the frontier.
  std::optional<std::size_t> structure(std::size_t summand, const std::vector<std::size_t>& args) const;
  /// As structure(), throwing DepthTooSmall at the frontier.
  std::size_t apply(std::size_t summand, const std::vector<std::size_t>& args) const;
  /// Elements whose every constructor application leaves the carrier.
  std::vector<bool> frontier() const;

  /// The unique map to a finite F-algebra (a Σ-algebra over the
  /// constructors) extending `assignment` on generators.
  std::vector<std::size_t> induced_map(const FiniteAlgebra& target, const std::vector<std::size_t>& assignment) const;
  /// induced_map is a homomorphism where the structure is defined, and the
  /// only such map agreeing with the assignment.
  bool check_universal(const FiniteAlgebra& target, const std::vector<std::size_t>& assignment) const;

 private:
  PolynomialFunctor f_;
  FinSet generators_;
  std::size_t depth_;
  std::vector<Term> terms_;
  std::vector<std::size_t> term_depth_;
  FinSet carrier_;
  std::vector<std::size_t> insertion_;
};

FreeFAlgebra free_f_algebra(const PolynomialFunctor& f, const FinSet& generators, std::size_t depth);
/// Depth d sits inside depth d+1 with the same structure where defined.
bool embeds_in_next_depth(const FreeFAlgebra& small, const FreeFAlgebra& large);

/// S-sorted signature: each symbol has input sorts and an output sort.
struct SortedSymbol {
  std::string name;
  std::vector<std::size_t> inputs;
  std::size_t output = 0;
};

struct SortedSignature {
  std::vector<std::string> sorts;
  std::vector<SortedSymbol> symbols;
};

struct SigmaInserterReport {
  std::size_t direct_objects = 0;
  std::size_t direct_arrows = 0;
  std::size_t inserter_objects = 0;
  std::size_t inserter_arrows = 0;
  bool isomorphic = false;
  std::string detail;
};

/// Builds Σ-algebras with carriers of size ≤ bound directly and as
/// Ins(ŝ, t̂) over sorted sets, and matches them object by object and
/// arrow by arrow.
SigmaInserterReport sigma_alg_as_inserter(const SortedSignature& sig, std::size_t bound);

}  // namespace veq
