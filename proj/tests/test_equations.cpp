#include <doctest.h>

#include <random>

#include "support.hpp"
#include "veq/algebra_category.hpp"
#include "veq/cat_category.hpp"
#include "veq/equations.hpp"
#include "veq/error.hpp"
#include "veq/finset_category.hpp"
#include "veq/groups.hpp"

using namespace veq;
using veq::testing::letters;
using veq::testing::random_function;

namespace {

using System = EquationSystem<FinSet, FinFunction>;

System random_system(std::mt19937& rng, const FinSet& dom, std::size_t equations) {
  System e{dom, {}};
  for (std::size_t i = 0; i < equations; ++i) {
    const FinSet cod = letters(1 + rng() % 3, 'p');
    e.equations.push_back({random_function(rng, dom, cod), random_function(rng, dom, cod)});
  }
  return e;
}

std::vector<std::pair<FinFunction, FinFunction>> pairs_of(const System& e) {
  std::vector<std::pair<FinFunction, FinFunction>> out;
  for (const auto& eq : e.equations) out.emplace_back(eq.lhs, eq.rhs);
  return out;
}

// a ⊨ E by pointwise evaluation.
bool solves(const FinFunction& a, const System& e) {
  for (const auto& eq : e.equations)
    for (std::size_t x = 0; x < a.dom().size(); ++x)
      if (eq.lhs(a(x)) != eq.rhs(a(x))) return false;
  return true;
}

std::vector<std::string> image_of(const FinFunction& f) { return veq::testing::image_labels(f); }

}  // namespace

TEST_SUITE("equations") {
  TEST_CASE("general solution is the agreement set") {
    FinSetCategory cat;
    const FinSet a = letters(3);
    const FinSet b({"0", "1"});
    System e{a, {{FinFunction(a, b, {0, 1, 1}), FinFunction(a, b, {0, 0, 1})}}};
    CHECK(general_solution(cat, e).dom().labels() == std::vector<std::string>{"a", "c"});

    std::mt19937 rng(1);
    for (int round = 0; round < 100; ++round) {
      auto sys = random_system(rng, letters(1 + rng() % 5), 1 + rng() % 3);
      CHECK(image_of(general_solution(cat, sys)) == veq::testing::agreeing(pairs_of(sys)));
    }
  }

  TEST_CASE("degenerate and empty systems") {
    FinSetCategory cat;
    const FinSet a = letters(3);
    auto p = FinFunction(a, a, {1, 2, 0});
    System trivial{a, {{p, p}}};
    CHECK(general_solution(cat, trivial) == FinFunction::identity(a));
    CHECK_THROWS_AS(general_solution(cat, System{a, {}}), Error);
    System crooked{a, {{p, FinFunction(letters(2), a, {0, 1})}}};
    CHECK_THROWS_AS(general_solution(cat, crooked), Error);
  }

  TEST_CASE("solutions factor uniquely through the general solution") {
    FinSetCategory cat;
    std::mt19937 rng(2);
    for (int round = 0; round < 40; ++round) {
      const FinSet dom = letters(1 + rng() % 4);
      auto sys = random_system(rng, dom, 1 + rng() % 2);
      auto v = general_solution(cat, sys);
      const FinSet x = letters(1 + rng() % 3, 'u');
      for (const auto& a : all_functions(x, dom)) {
        CHECK(is_solution(cat, a, sys) == solves(a, sys));
        std::size_t factorizations = 0;
        for (const auto& h : all_functions(x, v.dom())) factorizations += compose(v, h) == a;
        CHECK(factorizations == (solves(a, sys) ? 1u : 0u));
      }
    }
  }

  TEST_CASE("action by an arrow pulls solutions back") {
    FinSetCategory cat;
    std::mt19937 rng(4);
    for (int round = 0; round < 40; ++round) {
      const FinSet dom = letters(1 + rng() % 4);
      auto sys = random_system(rng, dom, 1 + rng() % 2);
      const FinSet y = letters(1 + rng() % 3, 'u');
      auto g = random_function(rng, y, dom);
      auto eg = act(cat, sys, g);
      for (const auto& a : all_functions(letters(2, 'x'), y))
        CHECK(is_solution(cat, a, eg) == solves(compose(g, a), sys));
    }
    const FinSet a = letters(2);
    System e{a, {{FinFunction(a, a, {1, 0}), FinFunction::identity(a)}}};
    auto v = general_solution(cat, e);
    for (const auto& eq : act(cat, e, v).equations) CHECK(eq.lhs == eq.rhs);
    CHECK(act(cat, e, FinFunction::identity(a)).equations.front().lhs == e.equations.front().lhs);
  }

  TEST_CASE("implication is inclusion of solution sets") {
    FinSetCategory cat;
    const FinSet a = letters(3);
    const FinSet b({"0", "1"});
    auto p = FinFunction(a, b, {0, 1, 1});
    auto q = FinFunction(a, b, {0, 0, 1});
    auto r = FinFunction(a, b, {0, 1, 0});
    System e{a, {{p, q}}};
    System k{a, {{p, q}, {p, r}}};
    CHECK(implies(cat, k, e));
    CHECK_FALSE(implies(cat, e, k));
    CHECK(implies(cat, e, e));
    CHECK(implies(cat, e, System{a, {{p, p}}}));

    std::mt19937 rng(5);
    for (int round = 0; round < 60; ++round) {
      const FinSet dom = letters(1 + rng() % 4);
      auto s1 = random_system(rng, dom, 1 + rng() % 2);
      auto s2 = random_system(rng, dom, 1 + rng() % 2);
      auto sol1 = veq::testing::agreeing(pairs_of(s1));
      auto sol2 = veq::testing::agreeing(pairs_of(s2));
      const bool subset = std::includes(sol2.begin(), sol2.end(), sol1.begin(), sol1.end(),
                                        [&](const std::string& x, const std::string& y) { return dom.at(x) < dom.at(y); });
      CHECK(implies(cat, s1, s2) == subset);
    }
  }

  TEST_CASE("single equation reduction keeps the solutions") {
    FinSetCategory cat;
    std::mt19937 rng(6);
    for (int round = 0; round < 60; ++round) {
      const FinSet dom = letters(1 + rng() % 5);
      auto sys = random_system(rng, dom, 1 + rng() % 3);
      auto eq = single_equation_reduction(cat, sys);
      System one{dom, {eq}};
      CHECK(veq::testing::agreeing(pairs_of(one)) == veq::testing::agreeing(pairs_of(sys)));
    }
  }

  TEST_CASE("generated equations and varieties") {
    FinSetCategory cat;
    const FinSet pt({"*"});
    const FinSet b({"0", "1"});
    std::vector<FinFunction> s{FinFunction(pt, b, {0})};
    auto eq = generated_equation(cat, std::span<const FinFunction>(s));
    System sys{b, {eq}};
    for (const auto& a : all_functions(letters(2), b)) {
      bool lands_in_zero = true;
      for (std::size_t x = 0; x < 2; ++x) lands_in_zero = lands_in_zero && a(x) == 0;
      CHECK(is_solution(cat, a, sys) == lands_in_zero);
    }

    std::vector<FinFunction> ids{FinFunction::identity(b)};
    auto triv = generated_equation(cat, std::span<const FinFunction>(ids));
    CHECK(triv.lhs == triv.rhs);

    const FinSet a = letters(3);
    std::vector<FinFunction> picks{FinFunction(pt, a, {0}), FinFunction(pt, a, {2})};
    CHECK(image_of(generated_variety(cat, std::span<const FinFunction>(picks))) ==
          std::vector<std::string>{"a", "c"});

    std::mt19937 rng(8);
    for (int round = 0; round < 30; ++round) {
      std::vector<FinFunction> gens;
      for (std::size_t i = 0; i < 1 + rng() % 3; ++i) gens.push_back(random_function(rng, letters(1 + rng() % 2, 'u'), a));
      std::vector<std::string> expected;
      std::vector<bool> hit(3, false);
      for (const auto& g : gens)
        for (std::size_t x = 0; x < g.dom().size(); ++x) hit[g(x)] = true;
      for (std::size_t y = 0; y < 3; ++y)
        if (hit[y]) expected.push_back(a.label(y));
      CHECK(image_of(generated_variety(cat, std::span<const FinFunction>(gens))) == expected);
    }
  }

  TEST_CASE("general cosolution coequalizes every pair") {
    FinSetCategory cat;
    const FinSet pt({"*"});
    const FinSet c = letters(4);
    CoEquationSystem<FinSet, FinFunction> k{
        c, {{FinFunction(pt, c, {0}), FinFunction(pt, c, {1})}, {FinFunction(pt, c, {1}), FinFunction(pt, c, {3})}}};
    auto q = general_cosolution(cat, k);
    CHECK(q.cod().size() == 2);
    CHECK((q(0) == q(1) && q(1) == q(3) && q(2) != q(0)));
    CHECK(is_cosolution(cat, q, k));
  }

  TEST_CASE("inner automorphisms in groups") {
    FinGrpCategory cat;
    auto s3 = std::make_shared<const FiniteGroup>(symmetric3());
    auto phi = conjugation(s3, s3->carrier().at("(12)"));
    EquationSystem<GroupPtr, GroupHom> e{s3, {{phi, cat.identity(s3)}}};
    auto v = general_solution(cat, e);
    std::vector<std::string> labels;
    for (auto x : v.map) labels.push_back(s3->carrier().label(x));
    CHECK(labels == std::vector<std::string>{"e", "(12)"});

    CoEquationSystem<GroupPtr, GroupHom> all{s3, {}};
    for (std::size_t g = 0; g < s3->size(); ++g) all.equations.push_back({conjugation(s3, g), cat.identity(s3)});
    CHECK(general_cosolution(cat, all).cod->size() == 2);

    auto z4 = std::make_shared<const FiniteGroup>(cyclic_group(4));
    CoEquationSystem<GroupPtr, GroupHom> abelian{z4, {}};
    for (std::size_t g = 0; g < 4; ++g) abelian.equations.push_back({conjugation(z4, g), cat.identity(z4)});
    CHECK(general_cosolution(cat, abelian).cod->size() == 4);
  }

  TEST_CASE("posets and categories") {
    FinPosCategory pos;
    std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) leq[i][j] = true;
    auto chain = make_poset("C3", {"0", "1", "2"}, leq);
    auto p = monotone_functor("p", chain, chain, {0, 1, 1});
    auto v = general_solution(pos, EquationSystem<CatPtr, Functor>{chain, {{p, identity_functor(chain)}}});
    CHECK(v.src->objects().labels() == std::vector<std::string>{"0", "1"});

    auto one = make_discrete("1", {"*"});
    auto at0 = monotone_functor("at0", one, chain, {0});
    auto at2 = monotone_functor("at2", one, chain, {2});
    auto q = general_cosolution(pos, CoEquationSystem<CatPtr, Functor>{chain, {{at0, at2}}});
    CHECK(q.tgt->object_count() == 1);

    std::vector<Functor> picks{at0, at2};
    CHECK(generated_variety(pos, std::span<const Functor>(picks)).src->object_count() == 2);

    FinCatCategory cats;
    auto two = make_discrete("Two", {"a", "b"});
    auto swap = Functor{"swap", two, two, {1, 0}, {1, 0}};
    auto none = general_solution(cats, EquationSystem<CatPtr, Functor>{two, {{swap, identity_functor(two)}}});
    CHECK(none.src->object_count() == 0);
    CHECK_THROWS_AS(general_cosolution(cats, CoEquationSystem<CatPtr, Functor>{two, {{swap, identity_functor(two)}}}),
                    Error);
  }

  TEST_CASE("algebras: equalizers are subalgebras") {
    FinAlgCategory cat;
    Signature sig({{"mul", 2}});
    auto z3 = std::make_shared<const FiniteAlgebra>(FiniteAlgebra::build(
        "Z3", sig, FinSet({"0", "1", "2"}),
        [](std::size_t, std::span<const std::size_t> a) { return (a[0] + a[1]) % 3; }));
    AlgHom twice{z3, z3, {0, 2, 1}};
    auto v = general_solution(cat, EquationSystem<AlgebraPtr, AlgHom>{z3, {{twice, cat.identity(z3)}}});
    CHECK(v.dom->size() == 1);
    CHECK(v.map == std::vector<std::size_t>{0});
  }
}
