#pragma once

// Bounded HSP membership, identity extraction and free algebras of the
// variety generated by one finite algebra.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "veq/algebra.hpp"
#include "veq/theories.hpp"

namespace veq {

struct IdentityOptions {
  bool deduplicate = true;
  Budget budget{64, 0};
  std::size_t max_terms = 20000;
};

/// All terms over n_vars variables of depth at most `depth` (variables and
/// constants have depth 0), enumerated by depth then construction order.
std::vector<Term> enumerate_terms(const Signature& sig, std::size_t n_vars, std::size_t depth,
                                  std::size_t max_terms = 20000);

/// Pairs of distinct enumerated terms with equal term functions on A, each
/// written t = r with r the first enumerated term of its class. With
/// deduplication, a pair is dropped when the pairs kept so far prove it.
std::vector<Identity> identities_of(const FiniteAlgebra& a, std::size_t n_vars, std::size_t depth,
                                    const IdentityOptions& opts = {});

struct HspWitness {
  std::size_t k = 0;
  std::vector<std::string> generators;  // elements of A^k
  std::vector<std::string> images;      // their images in B
  std::vector<std::vector<std::string>> kernel;  // classes of the generated subalgebra
  std::vector<std::pair<std::string, std::string>> isomorphism;  // quotient element -> B element
};

struct HspResult {
  bool member = false;
  std::optional<HspWitness> witness;
  std::size_t k_searched = 0;
  /// On a negative answer: an identity of A that B violates, if one was found.
  std::optional<Identity> violated;
};

/// Reusable search for quotients of subalgebras of A^k; keeps the powers of
/// A and A's identities between queries.
class HspSearch {
 public:
  explicit HspSearch(FiniteAlgebra a, std::size_t identity_vars = 2, std::size_t identity_depth = 2);

  /// k_max = 0 selects |B|.
  HspResult member(const FiniteAlgebra& b, std::size_t k_max = 0);
  const std::vector<Identity>& identities();
  const FiniteAlgebra& power(std::size_t k);
  const FiniteAlgebra& base() const { return a_; }

 private:
  FiniteAlgebra a_;
  std::size_t identity_vars_;
  std::size_t identity_depth_;
  std::map<std::size_t, FiniteAlgebra> powers_;
  std::optional<std::vector<Identity>> identities_;
};

HspResult hsp_member(const FiniteAlgebra& b, const FiniteAlgebra& a, std::size_t k_max = 0);

/// Rebuilds the subalgebra, kernel and isomorphism from the witness and
/// checks each step.
bool replay_hsp_witness(const FiniteAlgebra& a, const FiniteAlgebra& b, const HspWitness& w);

std::string to_string(const HspWitness& w);

struct FreeAlgebra {
  FiniteAlgebra algebra;           // n-ary term functions on A
  std::vector<Term> representatives;  // a term realizing each element
  std::size_t arity = 0;
  std::vector<std::vector<std::size_t>> functions;  // value table of each element over A^n

  /// The element a term denotes: the reflection of the term algebra.
  std::size_t reflect(const FiniteAlgebra& a, const Term& t) const;
};

FreeAlgebra free_algebra_in_variety(const FiniteAlgebra& a, std::size_t n, std::size_t bound = 100000);

}  // namespace veq
