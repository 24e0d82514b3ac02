#pragma once

// Finite Σ-algebras over a one-sorted signature: operation tables,
// evaluation of terms, subalgebras, congruences, products, homomorphisms.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veq/finset.hpp"
#include "veq/term.hpp"

namespace veq {

/// Carrier elements are indices into `carrier`. The table of an n-ary symbol
/// is indexed in mixed radix with the first argument most significant.
struct FiniteAlgebra {
  std::string name;
  Signature signature;
  FinSet carrier;
  std::vector<std::vector<std::size_t>> tables;  // parallel to signature.ops()

  using OpFn = std::function<std::size_t(std::size_t op, std::span<const std::size_t> args)>;
  static FiniteAlgebra build(std::string name, Signature sig, FinSet carrier, const OpFn& fn);

  std::size_t size() const noexcept { return carrier.size(); }
  std::size_t apply(std::size_t op, std::span<const std::size_t> args) const;
  std::size_t apply(std::size_t op, std::initializer_list<std::size_t> args) const {
    return apply(op, std::span<const std::size_t>(args.begin(), args.size()));
  }
  /// Throws InvariantError unless every table is total and carrier-valued.
  void validate() const;

  /// Same signature, labels and tables; the name is ignored.
  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b);
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// n^k, or nullopt past `limit`.
std::optional<std::size_t> checked_power(std::size_t n, std::size_t k, std::size_t limit);
std::size_t table_size(std::size_t carrier, std::size_t arity);

struct Identity {
  Term lhs;
  Term rhs;
  std::size_t context = 0;
};

std::string to_string(const Identity& id, const std::vector<std::string>& var_names = {});

std::size_t eval_term(const FiniteAlgebra& a, const Term& t, std::span<const std::size_t> env);
bool satisfies(const FiniteAlgebra& a, const Identity& id);
/// First assignment violating id, if any.
std::optional<std::vector<std::size_t>> violation(const FiniteAlgebra& a, const Identity& id);

/// Closure of a subset under the operations, as a membership mask.
std::vector<bool> generated_mask(const FiniteAlgebra& a, std::span<const std::size_t> gens);
bool is_closed(const FiniteAlgebra& a, const std::vector<bool>& mask);

struct Subalgebra {
  FiniteAlgebra algebra;
  FinFunction inclusion;
};

Subalgebra restrict_to(const FiniteAlgebra& a, const std::vector<bool>& mask);
/// All non-empty closed subsets, ordered by size then by membership in
/// carrier order. The empty subset is omitted even when it is closed.
std::vector<Subalgebra> subalgebras(const FiniteAlgebra& a);

/// A partition given by class indices in order of first occurrence.
struct CongruenceRelation {
  std::vector<std::size_t> class_of;
  std::size_t classes = 0;

  std::vector<std::vector<std::size_t>> blocks() const;
  friend bool operator==(const CongruenceRelation&, const CongruenceRelation&) = default;
};

CongruenceRelation normalize_partition(const std::vector<std::size_t>& labels);
bool is_compatible(const FiniteAlgebra& a, const CongruenceRelation& c);
/// All congruences, discrete first, by restricted-growth enumeration.
std::vector<CongruenceRelation> congruences(const FiniteAlgebra& a, std::size_t bound = 8);
/// Least congruence containing the pairs.
CongruenceRelation generated_congruence(const FiniteAlgebra& a,
                                        std::span<const std::pair<std::size_t, std::size_t>> pairs);

struct Quotient {
  FiniteAlgebra algebra;
  FinFunction projection;
};

/// Classes are labeled by their least member label.
Quotient quotient_algebra(const FiniteAlgebra& a, const CongruenceRelation& c);

struct ProductAlgebra {
  FiniteAlgebra algebra;
  std::vector<FinFunction> projections;
};

ProductAlgebra product_algebra(std::span<const FiniteAlgebra> as);
FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t k);

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<std::size_t>& map);
/// Some isomorphism a -> b, by search over bijections respecting tables.
std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);
/// A small generating set, minimal in size.
std::vector<std::size_t> generating_set(const FiniteAlgebra& a);
/// Every homomorphism a -> b, found by extending assignments on a generating set.
std::vector<std::vector<std::size_t>> homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b);
/// Extends gens[i] -> images[i] to a homomorphism on the generated subalgebra.
/// Returns the partial map (npos outside) or nullopt if it is not well defined.
std::optional<std::vector<std::size_t>> extend_to_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                               std::span<const std::size_t> gens,
                                                               std::span<const std::size_t> images);

void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b);

std::string to_string(const FiniteAlgebra& a);

}  // namespace veq
