#pragma once

// Finite groups as algebras over {mul:2, inv:1, e:0}, the bundled group
// corpus, and the category of finite groups as an equations instance.

#include <memory>
#include <string>
#include <vector>

#include "veq/algebra.hpp"
#include "veq/equations.hpp"

namespace veq {

Signature group_signature();

class FiniteGroup {
 public:
  /// Validates the group axioms exhaustively; throws InvariantError.
  explicit FiniteGroup(FiniteAlgebra algebra);
  /// From a Cayley table over labels; inverse and identity are derived.
  static FiniteGroup from_table(std::string name, std::vector<std::string> labels,
                                const std::vector<std::vector<std::size_t>>& mul);

  const FiniteAlgebra& algebra() const noexcept { return alg_; }
  const std::string& name() const noexcept { return alg_.name; }
  const FinSet& carrier() const noexcept { return alg_.carrier; }
  std::size_t size() const noexcept { return alg_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return alg_.tables[0][a * size() + b]; }
  std::size_t inv(std::size_t a) const { return alg_.tables[1][a]; }
  std::size_t unit() const { return alg_.tables[2][0]; }
  bool abelian() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.alg_ == b.alg_; }

 private:
  FiniteAlgebra alg_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup klein_group();
/// Order 2n, elements r0..r(n-1) and s0..s(n-1) with s_i = s·r^i.
FiniteGroup dihedral_group(std::size_t n);
FiniteGroup quaternion_group();
/// Closure of permutations of {1..degree} (one-line notation), labeled in
/// cycle notation with "e" for the identity.
FiniteGroup permutation_group(std::string name, std::size_t degree,
                              const std::vector<std::vector<std::size_t>>& generators);
FiniteGroup symmetric3();
FiniteGroup alternating4();
/// Z1..Z8, V4, S3, D4 (order 8), Q8, A4, D8 (order 16).
std::vector<FiniteGroup> group_corpus();

struct GroupHom {
  GroupPtr dom;
  GroupPtr cod;
  std::vector<std::size_t> map;

  FinFunction as_function() const { return FinFunction(dom->carrier(), cod->carrier(), map); }
};

bool is_group_hom(const FiniteGroup& a, const FiniteGroup& b, const std::vector<std::size_t>& map);
/// x ↦ g x g⁻¹
GroupHom conjugation(const GroupPtr& g, std::size_t element);
/// Subgroup generated by the elements; normal closure when `normal` is set.
std::vector<bool> subgroup_mask(const FiniteGroup& g, const std::vector<std::size_t>& gens, bool normal = false);
/// The subgroup on a closed mask with its inclusion.
GroupHom subgroup(const GroupPtr& g, const std::vector<bool>& mask);
/// G -> G/N for a normal subgroup mask N; cosets labeled by their least member.
GroupHom quotient_by_normal(const GroupPtr& g, const std::vector<bool>& normal);

/// Finite groups and homomorphisms. Equalizers are subgroups of agreement,
/// coequalizers quotients by normal closures. No coproducts or cokernel pairs.
class FinGrpCategory final : public CompCategory<GroupPtr, GroupHom> {
 public:
  std::string name() const override { return "FinGrp"; }
  GroupPtr source(const GroupHom& f) const override { return f.dom; }
  GroupPtr target(const GroupHom& f) const override { return f.cod; }
  bool same_object(const GroupPtr& a, const GroupPtr& b) const override { return a == b || *a == *b; }
  bool equal(const GroupHom& f, const GroupHom& g) const override;
  GroupHom compose(const GroupHom& g, const GroupHom& f) const override;
  GroupHom identity(const GroupPtr& a) const override;
  Capabilities capabilities() const override {
    Capabilities c;
    c.equalizers = c.intersections = c.products = c.coequalizers = c.mono_test = c.factorization = true;
    return c;
  }

  bool is_mono(const GroupHom& f) const override;
  GroupHom equalizer(const GroupHom& p, const GroupHom& q) const override;
  GroupHom intersect(std::span<const GroupHom> monos) const override;
  Cone<GroupPtr, GroupHom> product(std::span<const GroupPtr> objs) const override;
  GroupHom tuple(const Cone<GroupPtr, GroupHom>& cone, std::span<const GroupHom> legs) const override;
  GroupHom coequalizer(const GroupHom& p, const GroupHom& q) const override;
  std::optional<GroupHom> factor_through(const GroupHom& f, const GroupHom& g) const override;
  std::optional<GroupHom> factor_after(const GroupHom& f, const GroupHom& e) const override;
};

/// C_G(S) as the general solution of {φ_g ≈ 1_G : g ∈ S}; S = ∅ gives G.
GroupHom centralizer(const GroupPtr& g, const std::vector<std::string>& s);
/// G -> G^ab as the general cosolution of {φ_g ≈ 1_G : g ∈ G}.
GroupHom abelianization(const GroupPtr& g);

}  // namespace veq
