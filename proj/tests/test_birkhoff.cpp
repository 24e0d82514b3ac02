#include <doctest.h>

#include <random>
#include <set>

#include "veq/algebra.hpp"
#include "veq/birkhoff.hpp"
#include "veq/error.hpp"
#include "veq/groups.hpp"

using namespace veq;

namespace {

Signature magma() { return Signature({{"mul", 2}}); }

FiniteAlgebra table(const std::string& name, std::size_t n, std::vector<std::size_t> t) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteAlgebra{name, magma(), FinSet(labels), {std::move(t)}};
}

FiniteAlgebra semilattice() { return table("SL", 2, {0, 0, 0, 1}); }
FiniteAlgebra chain3() { return table("C3", 3, {0, 0, 0, 0, 1, 1, 0, 1, 2}); }
FiniteAlgebra xor2() { return table("Xor", 2, {0, 1, 1, 0}); }
FiniteAlgebra left_projection() { return table("L", 2, {0, 0, 1, 1}); }

Identity id(const std::string& l, const std::string& r) {
  VarContext ctx;
  for (std::size_t i = 0; i < 4; ++i) ctx.names.push_back(default_var_name(i));
  const Signature sig = magma();
  Identity out{parse_term(l, &sig, ctx), parse_term(r, &sig, ctx), 0};
  out.context = std::max(out.lhs.var_bound(), out.rhs.var_bound());
  return out;
}

// All set partitions of n elements as restricted-growth strings.
void partitions(std::size_t n, std::vector<std::size_t>& cur, std::size_t maxc,
                std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t c = 0; c <= maxc + 1 && c <= cur.size(); ++c) {
    cur.push_back(c);
    partitions(n, cur, std::max(maxc, c), out);
    cur.pop_back();
  }
}

bool compatible(const FiniteAlgebra& a, const std::vector<std::size_t>& cls) {
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (cls[x] != cls[y]) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (cls[a.apply(0, {x, z})] != cls[a.apply(0, {y, z})]) return false;
        if (cls[a.apply(0, {z, x})] != cls[a.apply(0, {z, y})]) return false;
      }
    }
  return true;
}

std::size_t subgroup_count(const FiniteGroup& g) {
  std::size_t count = 0;
  const std::size_t n = g.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    if (!(mask >> g.unit() & 1)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      for (std::size_t b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1)) closed = mask >> g.mul(a, g.inv(b)) & 1;
    count += closed;
  }
  return count;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("evaluation and satisfaction") {
    auto sl = semilattice();
    std::vector<std::size_t> env{1};
    CHECK(eval_term(sl, id("mul(x,x)", "x").lhs, env) == 1);
    CHECK(satisfies(sl, id("x", "x")));
    CHECK(satisfies(sl, id("mul(x,y)", "mul(y,x)")));
    CHECK_FALSE(satisfies(left_projection(), id("mul(x,y)", "mul(y,x)")));
    auto w = violation(left_projection(), id("mul(x,y)", "mul(y,x)"));
    REQUIRE(w);
    CHECK((*w)[0] != (*w)[1]);

    auto s3 = symmetric3();
    for (std::size_t x = 0; x < 6; ++x) CHECK(s3.mul(x, s3.inv(x)) == s3.unit());
  }

  TEST_CASE("subalgebras and subgroups") {
    CHECK(subalgebras(semilattice()).size() == 3);
    CHECK(subalgebras(symmetric3().algebra()).size() == 6);
    for (const auto& g : group_corpus())
      if (g.size() <= 12) CHECK(subalgebras(g.algebra()).size() == subgroup_count(g));
  }

  TEST_CASE("congruences against partition enumeration") {
    CHECK(congruences(cyclic_group(4).algebra()).size() == 3);
    CHECK(congruences(semilattice()).size() == 2);
    for (const auto& a : {semilattice(), chain3(), xor2(), left_projection(), table("Z3", 3, {0, 1, 2, 1, 2, 0, 2, 0, 1})}) {
      std::vector<std::vector<std::size_t>> all;
      std::vector<std::size_t> cur;
      partitions(a.size(), cur, 0, all);
      std::size_t expected = 0;
      for (const auto& p : all) expected += compatible(a, p);
      const auto found = congruences(a);
      CHECK(found.size() == expected);
      CHECK(found.front().classes == a.size());
      CHECK(found.back().classes == 1);
    }
  }

  TEST_CASE("products") {
    std::vector<FiniteAlgebra> two{semilattice(), semilattice()};
    auto sq = product_algebra(two).algebra;
    CHECK(sq.size() == 4);
    CHECK(satisfies(sq, id("mul(x,x)", "x")));
    CHECK(satisfies(sq, id("mul(x,y)", "mul(y,x)")));
    CHECK(satisfies(sq, id("mul(mul(x,y),z)", "mul(x,mul(y,z))")));
    std::vector<FiniteAlgebra> z2s{cyclic_group(2).algebra(), cyclic_group(2).algebra()};
    CHECK(find_isomorphism(product_algebra(z2s).algebra, klein_group().algebra()).has_value());
    CHECK_FALSE(find_isomorphism(cyclic_group(4).algebra(), klein_group().algebra()).has_value());
  }
}

TEST_SUITE("birkhoff") {
  TEST_CASE("identities of the two-element semilattice") {
    auto ids = identities_of(semilattice(), 2, 2);
    auto holds = [&](const std::string& l, const std::string& r) {
      const auto want = id(l, r);
      for (const auto& i : ids)
        if ((i.lhs == want.lhs && i.rhs == want.rhs) || (i.lhs == want.rhs && i.rhs == want.lhs)) return true;
      return false;
    };
    CHECK(holds("mul(x,y)", "mul(y,x)"));
    CHECK(holds("mul(x,x)", "x"));
    for (const auto& i : ids) CHECK(satisfies(semilattice(), i));
    for (const auto& i : identities_of(semilattice(), 2, 2, IdentityOptions{false, Budget{64, 0}, 20000}))
      CHECK(satisfies(semilattice(), i));
  }

  TEST_CASE("membership in the generated variety") {
    auto yes = hsp_member(chain3(), semilattice(), 2);
    REQUIRE(yes.member);
    CHECK(yes.witness->k == 2);
    CHECK(replay_hsp_witness(semilattice(), chain3(), *yes.witness));

    auto tampered = *yes.witness;
    std::swap(tampered.images[0], tampered.images[1]);
    CHECK_FALSE(replay_hsp_witness(semilattice(), chain3(), tampered));

    auto no = hsp_member(xor2(), semilattice(), 2);
    CHECK_FALSE(no.member);
    REQUIRE(no.violated);
    CHECK(satisfies(semilattice(), *no.violated));
    CHECK_FALSE(satisfies(xor2(), *no.violated));
    CHECK_FALSE(satisfies(xor2(), id("mul(x,x)", "x")));

    auto point = table("P", 1, {0});
    CHECK(hsp_member(point, xor2(), 1).member);
  }

  TEST_CASE("free algebras of a variety") {
    auto free = free_algebra_in_variety(semilattice(), 2);
    CHECK(free.algebra.size() == 3);
    for (const auto& t : free.representatives) CHECK(free.reflect(semilattice(), t) < 3);
    CHECK(free_algebra_in_variety(left_projection(), 3).algebra.size() == 3);
  }
}

TEST_SUITE("groups") {
  TEST_CASE("bundled corpus") {
    auto all = group_corpus();
    CHECK(all.size() == 14);
    std::set<std::string> names;
    for (const auto& g : all) {
      CHECK(g.size() <= 16);
      names.insert(g.name());
    }
    CHECK(names.size() == 14);
  }

  TEST_CASE("centralizers and abelianizations against brute force") {
    std::mt19937 rng(17);
    for (const auto& g : group_corpus()) {
      auto gp = std::make_shared<const FiniteGroup>(g);
      for (int round = 0; round < 4; ++round) {
        std::vector<std::string> s;
        for (std::size_t x = 0; x < g.size(); ++x)
          if (rng() % 3 == 0) s.push_back(g.carrier().label(x));
        std::vector<std::string> expected;
        for (std::size_t x = 0; x < g.size(); ++x) {
          bool commutes = true;
          for (const auto& l : s) commutes = commutes && g.mul(x, g.carrier().at(l)) == g.mul(g.carrier().at(l), x);
          if (commutes) expected.push_back(g.carrier().label(x));
        }
        auto c = centralizer(gp, s);
        std::vector<std::string> got;
        for (auto x : c.map) got.push_back(g.carrier().label(x));
        CHECK(got == expected);
      }
      // Commutator subgroup by closure.
      std::vector<bool> in(g.size(), false);
      in[g.unit()] = true;
      for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b) in[g.mul(g.mul(a, b), g.inv(g.mul(b, a)))] = true;
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t a = 0; a < g.size(); ++a)
          for (std::size_t b = 0; b < g.size(); ++b)
            if (in[a] && in[b] && !in[g.mul(a, b)]) in[g.mul(a, b)] = grew = true;
      }
      const auto derived = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
      auto q = abelianization(gp);
      CHECK(q.cod->size() * derived == g.size());
      CHECK(q.cod->abelian());
      CHECK(is_group_hom(g, *q.cod, q.map));
    }
  }

  TEST_CASE("named quotients") {
    auto s3 = std::make_shared<const FiniteGroup>(symmetric3());
    CHECK(find_isomorphism(abelianization(s3).cod->algebra(), cyclic_group(2).algebra()).has_value());
    auto q8 = std::make_shared<const FiniteGroup>(quaternion_group());
    CHECK(find_isomorphism(abelianization(q8).cod->algebra(), klein_group().algebra()).has_value());
    CHECK_THROWS_AS(centralizer(s3, {"nope"}), Error);
  }
}
