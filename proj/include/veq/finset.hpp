#pragma once

// Finite sets of text atoms, total functions between them, and the finite
// (co)limits the equation calculus is built on.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace veq {

/// An ordered list of distinct atom labels. Cheap to copy: the element data
/// is shared and never mutated after construction.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<std::string> elements);

  std::size_t size() const noexcept { return data_->elements.size(); }
  bool empty() const noexcept { return size() == 0; }
  const std::string& label(std::size_t i) const { return data_->elements.at(i); }
  const std::vector<std::string>& labels() const noexcept { return data_->elements; }

  std::optional<std::size_t> index_of(const std::string& label) const;
  bool contains(const std::string& label) const { return index_of(label).has_value(); }
  std::size_t at(const std::string& label) const;

  friend bool operator==(const FinSet& a, const FinSet& b);

 private:
  struct Data {
    std::vector<std::string> elements;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// A total map dom -> cod stored as an index table over dom's order.
class FinFunction {
 public:
  FinFunction() = default;
  FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> table);

  /// Builds from label pairs; every domain label must appear exactly once.
  static FinFunction from_labels(const FinSet& dom, const FinSet& cod,
                                 const std::vector<std::pair<std::string, std::string>>& pairs);
  static FinFunction identity(const FinSet& s);
  static FinFunction constant(const FinSet& dom, const FinSet& cod, std::size_t value);

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }

  std::size_t operator()(std::size_t x) const { return table_.at(x); }
  const std::string& apply(const std::string& label) const;

  bool injective() const;
  bool surjective() const;
  std::vector<bool> image_mask() const;

  friend bool operator==(const FinFunction& a, const FinFunction& b);

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> table_;
};

/// g after f.
FinFunction compose(const FinFunction& g, const FinFunction& f);

/// Canonical representative of a subobject: the carrier's labels are a subset
/// of the target's, listed in target order, and inclusion maps each to itself.
struct SubobjectMono {
  FinSet carrier;
  FinSet target;
  FinFunction inclusion;

  static SubobjectMono from_mask(const FinSet& target, const std::vector<bool>& keep);
  std::vector<bool> mask() const;
};

struct ProductCone {
  FinSet apex;
  std::vector<FinFunction> projections;
};

struct CoproductCocone {
  FinSet apex;
  std::vector<FinFunction> coprojections;
};

/// Commutative square f∘first = m∘second over the pullback carrier.
struct PullbackSquare {
  FinFunction f;
  FinFunction m;
  FinFunction first;   // P -> dom(f), the leg opposite m
  FinFunction second;  // P -> dom(m), the leg opposite f
};

SubobjectMono equalizer(const FinFunction& p, const FinFunction& q);
ProductCone product(std::span<const FinSet> objs);
CoproductCocone coproduct(std::span<const FinSet> objs);
FinFunction coequalizer(const FinFunction& p, const FinFunction& q);
std::pair<FinFunction, FinFunction> cokernel_pair(const FinFunction& f);
PullbackSquare pullback(const FinFunction& f, const FinFunction& m);
SubobjectMono intersect(std::span<const SubobjectMono> monos);
/// Some h with f = g∘h, the unique one when g is injective.
std::optional<FinFunction> factor_through(const FinFunction& f, const FinFunction& g);

/// Mediating map into a product cone.
FinFunction tuple(const ProductCone& cone, std::span<const FinFunction> legs);
/// Mediating map out of a coproduct cocone.
FinFunction cotuple(const CoproductCocone& cocone, std::span<const FinFunction> legs);
/// The canonical surjection cod -> cod/≈ for the equivalence generated by
/// the given pairs of element indices.
FinFunction quotient_by_pairs(const FinSet& s, std::span<const std::pair<std::size_t, std::size_t>> pairs);
/// Image factorization f = mono ∘ epi, the mono as a canonical subobject.
SubobjectMono image(const FinFunction& f);

/// All functions dom -> cod in lexicographic table order (|cod|^|dom| of them).
std::vector<FinFunction> all_functions(const FinSet& dom, const FinSet& cod);

/// {0, ..., n-1} as a set of decimal labels.
FinSet numbered_set(std::size_t n);

std::string to_string(const FinSet& s);
std::string to_string(const FinFunction& f);

}  // namespace veq
