#include <doctest.h>

#include <random>

#include "support.hpp"
#include "veq/error.hpp"
#include "veq/inserters.hpp"

using namespace veq;
using veq::testing::chain;

namespace {

std::size_t count_objects(const Functor& f, const Functor& g) {
  std::size_t n = 0;
  for (std::size_t a = 0; a < f.src->object_count(); ++a) n += f.tgt->hom(f.obj(a), g.obj(a)).size();
  return n;
}

std::size_t count_arrows(const Functor& f, const Functor& g) {
  const auto& base = *f.src;
  const auto& cod = *f.tgt;
  std::size_t n = 0;
  for (std::size_t a = 0; a < base.object_count(); ++a)
    for (std::size_t b = 0; b < base.object_count(); ++b)
      for (auto r : cod.hom(f.obj(a), g.obj(a)))
        for (auto s : cod.hom(f.obj(b), g.obj(b)))
          for (auto d : base.hom(a, b)) n += cod.compose(g(d), r) == cod.compose(s, f(d));
  return n;
}

// The arrow category 0 -> 1 and its two endofunctors picking the ends.
struct Arrow {
  CatPtr c;
  Functor id, at0, at1;
};

Arrow arrow_category() {
  Arrow a;
  a.c = chain(2, "A");
  a.id = identity_functor(a.c);
  a.at0 = monotone_functor("at0", a.c, a.c, {0, 0});
  a.at1 = monotone_functor("at1", a.c, a.c, {1, 1});
  return a;
}

}  // namespace

TEST_SUITE("inserters") {
  TEST_CASE("objects and arrows match direct enumeration") {
    auto c4 = chain(4, "C4");
    auto id = identity_functor(c4);
    auto up = monotone_functor("Up", c4, c4, {1, 1, 3, 3});
    auto down = monotone_functor("Down", c4, c4, {0, 0, 2, 2});
    for (const auto& [f, g] : std::vector<std::pair<Functor, Functor>>{{id, up}, {up, id}, {down, up}, {id, id}}) {
      auto ins = inserter(f, g);
      CHECK(ins.category->object_count() == count_objects(f, g));
      CHECK(ins.category->arrow_count() == count_arrows(f, g));
      ins.forget.validate();
      ins.lambda.validate();
    }
    CHECK_THROWS_AS(inserter(id, monotone_functor("x", c4, chain(2, "C2"), {0, 0, 1, 1})), Error);
  }

  TEST_CASE("inserters over a category with parallel arrows") {
    // Two objects with two parallel arrows; F = G = id gives Ins = endomorphism data.
    CategoryBuilder b("Par");
    auto x = b.add_object("x");
    auto y = b.add_object("y");
    b.add_arrow("u", x, y);
    b.add_arrow("v", x, y);
    auto par = b.finish();
    auto id = identity_functor(par);
    auto ins = inserter(id, id);
    CHECK(ins.category->object_count() == count_objects(id, id));
    CHECK(ins.category->arrow_count() == count_arrows(id, id));
    CHECK(verify_forgetful(ins.forget).all());
  }

  TEST_CASE("forgetful functors are faithful, conservative, amnestic, transportable") {
    std::mt19937 rng(21);
    for (int round = 0; round < 20; ++round) {
      auto p = veq::testing::random_poset(rng, 1 + rng() % 4, "P");
      auto q = veq::testing::random_poset(rng, 1 + rng() % 3, "Q");
      auto fs = all_functors(p, q);
      const auto& f = fs[rng() % fs.size()];
      const auto& g = fs[rng() % fs.size()];
      auto ins = inserter(f, g);
      CHECK(verify_forgetful(ins.forget).all());
      CHECK(check_limit_creation(ins, f, g).failures == 0);
    }
    // Collapsing 0 -> 1 onto a point sends a non-iso to an identity.
    auto a = arrow_category();
    auto point = make_discrete("1", {"*"});
    auto collapse = monotone_functor("collapse", a.c, point, {0, 0});
    auto report = verify_forgetful(collapse);
    CHECK(report.faithful);
    CHECK_FALSE(report.conservative);
    CHECK_FALSE(report.all());
  }

  TEST_CASE("mediating functors are unique") {
    auto a = arrow_category();
    auto ins = inserter(a.at0, a.id);
    auto d = make_discrete("D", {"*"});
    auto u = verify_inserter_universal(ins, a.at0, a.id, d);
    CHECK(u.holds);
    CHECK(u.cones == count_objects(a.at0, a.id));
    auto u2 = verify_inserter_universal(ins, a.at0, a.id, chain(2, "D2"));
    CHECK(u2.holds);
  }

  TEST_CASE("adjoint shifts on Galois connections") {
    std::mt19937 rng(23);
    std::size_t instances = 0;
    for (int round = 0; round < 2000 && instances < 25; ++round) {
      auto pa = veq::testing::random_poset(rng, 1 + rng() % 4, "A");
      auto pb = veq::testing::random_poset(rng, 1 + rng() % 4, "B");
      auto hs = all_functors(pb, pa);
      auto gs = all_functors(pa, pb);
      const auto& h = hs[rng() % hs.size()];
      const auto& g = gs[rng() % gs.size()];
      auto adj = poset_adjunction(h, g);
      CHECK(adj.has_value() == veq::testing::galois(h, g));
      if (!adj) continue;
      ++instances;
      const auto& f = gs[rng() % gs.size()];
      auto left = shift_left(f, g, *adj);
      CHECK(left.round_trip);
      CHECK(left.concrete);
      const auto& k = hs[rng() % hs.size()];
      auto right = shift_right(h, k, *adj);
      CHECK(right.round_trip);
      CHECK(right.concrete);
    }
    CHECK(instances == 25);
  }

  TEST_CASE("free algebras of polynomial functors") {
    PolynomialFunctor nat{{{"z", 0}, {"s", 1}}};
    FreeFAlgebra f3(nat, FinSet(), 3);
    CHECK(f3.carrier().labels() == std::vector<std::string>{"z", "s(z)", "s(s(z))"});
    FreeFAlgebra f4(nat, FinSet(), 4);
    CHECK(embeds_in_next_depth(f3, f4));
    CHECK_FALSE(f3.structure(1, {2}).has_value());
    CHECK_THROWS_AS(f3.apply(1, {2}), Error);

    auto z3 = FiniteAlgebra::build("Z3", nat.signature(), FinSet({"0", "1", "2"}),
                                   [](std::size_t op, std::span<const std::size_t> a) {
                                     return op == 0 ? std::size_t{0} : (a[0] + 1) % 3;
                                   });
    CHECK(f3.check_universal(z3, {}));
    CHECK(f3.induced_map(z3, {}) == std::vector<std::size_t>{0, 1, 2});

    PolynomialFunctor tree{{{"leaf", 0}, {"node", 2}}};
    FreeFAlgebra t2(tree, FinSet({"g"}), 2);
    // g at depth 0; leaf and node(g,g) at depth 1; node over those three
    // pairs at depth 2 adds 9 - 1 more.
    CHECK(t2.carrier().size() == 11);
  }

  TEST_CASE("algebras of a signature as an inserter") {
    SortedSignature one{{"s"}, {{"m", {0, 0}, 0}}};
    auto r = sigma_alg_as_inserter(one, 2);
    CHECK(r.isomorphic);
    CHECK(r.direct_objects == r.inserter_objects);
    CHECK(r.direct_arrows == r.inserter_arrows);
    // Carriers of size 0, 1, 2: 1 + 1 + 16 algebras.
    CHECK(r.direct_objects == 18);

    SortedSignature unary{{"s"}, {{"f", {0}, 0}, {"c", {}, 0}}};
    CHECK(sigma_alg_as_inserter(unary, 2).isomorphic);
    CHECK_THROWS_AS(sigma_alg_as_inserter(one, 4), Error);
  }
}
