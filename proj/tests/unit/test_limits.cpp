#include "doctest.h"

#include "fixcat/catalog.hpp"
#include "fixcat/generators.hpp"
#include "fixcat/limits.hpp"
#include "oracles.hpp"

using namespace fixcat;

namespace {

Mor arrow(const FinCategory& c, const std::string& x, const std::string& y) { return c.morphism(x + "<=" + y); }

// Exactly one factorization through the pullback for every commuting cone.
bool universal_exhaustively(const FinCategory& c, Mor f, Mor g, const PullbackResult& pb) {
  for (Obj w = 0; w < c.num_objects(); ++w)
    for (Mor p : c.hom(w, c.dom(f)))
      for (Mor q : c.hom(w, c.dom(g))) {
        if (c.compose(f, p) != c.compose(g, q)) continue;
        int factorizations = 0;
        for (Mor u : c.hom(w, pb.vertex))
          factorizations += c.compose(pb.proj_left, u) == p && c.compose(pb.proj_right, u) == q;
        if (factorizations != 1) return false;
      }
  return true;
}

}  // namespace

TEST_SUITE("limits") {
  TEST_CASE("pullback along an identity") {
    auto wa = catalog::walking_arrow();
    Mor a = wa->morphism("a");
    auto pb = pullback(*wa, a, wa->morphism("id1"));
    CHECK(pb.vertex == wa->object("0"));
    CHECK(pb.proj_left == wa->morphism("id0"));
    CHECK(pb.proj_right == a);
  }

  TEST_CASE("pullbacks and pushouts in the subset lattice are meets and joins") {
    auto c = catalog::subset_lattice("abc");
    auto pb = pullback(*c, arrow(*c, "{a,b}", "{a,b,c}"), arrow(*c, "{b,c}", "{a,b,c}"));
    CHECK(c->object_id(pb.vertex) == "{b}");
    auto po = pushout(*c, arrow(*c, "{}", "{a}"), arrow(*c, "{}", "{b}"));
    CHECK(c->object_id(po.vertex) == "{a,b}");

    for (Mor f = 0; f < c->num_morphisms(); ++f)
      for (Mor g = 0; g < c->num_morphisms(); ++g) {
        if (c->cod(f) == c->cod(g)) {
          auto r = find_pullback(*c, f, g);
          REQUIRE(r);
          CHECK(r->vertex == oracle::meet(*c, c->dom(f), c->dom(g)));
          CHECK(universal_exhaustively(*c, f, g, *r));
        }
        if (c->dom(f) == c->dom(g)) {
          auto r = find_pushout(*c, f, g);
          REQUIRE(r);
          CHECK(r->vertex == oracle::join(*c, c->cod(f), c->cod(g)));
        }
      }
  }

  TEST_CASE("missing limits") {
    auto cs = catalog::cospan();
    CHECK_FALSE(find_pullback(*cs, cs->morphism("f"), cs->morphism("g")));
    CHECK_THROWS_AS(pullback(*cs, cs->morphism("f"), cs->morphism("g")), Error);
    auto sp = catalog::span();
    CHECK_FALSE(find_pushout(*sp, sp->morphism("f"), sp->morphism("g")));
    CHECK_THROWS_AS(find_pullback(*cs, cs->morphism("f"), cs->morphism("idA")), Error);
  }

  TEST_CASE("pushout along an identity") {
    auto wa = catalog::walking_arrow();
    auto po = pushout(*wa, wa->morphism("id0"), wa->morphism("a"));
    CHECK(po.vertex == wa->object("1"));
  }

  TEST_CASE("pullback universality in random categories") {
    gen::Rng rng(21);
    for (int i = 0; i < 30; ++i) {
      auto c = gen::random_concrete_category(rng, 4, 16);
      for (Mor f = 0; f < c->num_morphisms(); ++f)
        for (Mor g = 0; g < c->num_morphisms(); ++g) {
          if (c->cod(f) != c->cod(g)) continue;
          if (auto r = find_pullback(*c, f, g)) CHECK(universal_exhaustively(*c, f, g, *r));
        }
    }
  }

  TEST_CASE("slices") {
    auto wa = catalog::walking_arrow();
    auto over1 = slice(wa, wa->object("1"));
    CHECK(over1.carrier->num_objects() == 2);
    CHECK(over1.carrier->num_morphisms() == 3);
    CHECK(slice(wa, wa->object("0")).carrier->num_objects() == 1);
    CHECK(coslice(wa, wa->object("0")).carrier->num_objects() == 2);

    auto z2 = catalog::cyclic_group(2);
    auto s = slice(z2, 0);
    CHECK(s.carrier->num_objects() == 2);
    CHECK(s.carrier->isomorphic(0, 1));
  }

  TEST_CASE("base change along a subset inclusion intersects") {
    auto c = catalog::subset_lattice("abc");
    auto bc = base_change(c, arrow(*c, "{b}", "{a,b,c}"));
    const auto& src = bc.source;
    const auto& dst = bc.target;
    for (Obj o = 0; o < src.carrier->num_objects(); ++o) {
      Mor leg = src.object_leg[o];
      Mor image = dst.object_leg[bc.functor(o)];
      std::string v = c->object_id(c->dom(leg));
      std::string expected = v.find('b') != std::string::npos ? "{b}" : "{}";
      CHECK(c->object_id(c->dom(image)) == expected);
    }
  }

  TEST_CASE("cobase change along a subset inclusion joins") {
    auto c = catalog::subset_lattice("abc");
    auto cb = cobase_change(c, arrow(*c, "{a}", "{a,b}"));
    for (Obj o = 0; o < cb.source.carrier->num_objects(); ++o) {
      Obj w = c->cod(cb.source.object_leg[o]);
      Obj image = c->cod(cb.target.object_leg[cb.functor(o)]);
      CHECK(image == oracle::join(*c, w, c->object("{a,b}")));
    }
  }

  TEST_CASE("base change along an iso is an equivalence") {
    auto cd = catalog::codiscrete({"A", "B"});
    CHECK(is_equivalence(base_change(cd, cd->morphism("A>B")).functor).equivalence());
    CHECK(is_equivalence(cobase_change(cd, cd->morphism("A>B")).functor).equivalence());
    auto wa = catalog::walking_arrow();
    CHECK_FALSE(is_equivalence(base_change(wa, wa->morphism("a")).functor).equivalence());
    CHECK(is_equivalence(base_change(wa, wa->morphism("id1")).functor).equivalence());
  }

  TEST_CASE("post- and precomposition") {
    auto wa = catalog::walking_arrow();
    auto post = postcompose(wa, wa->morphism("a"));
    Obj id0 = post.source.object_of(wa->morphism("id0"));
    CHECK(post.target.object_leg[post.functor(id0)] == wa->morphism("a"));
    CHECK(postcompose(wa, wa->morphism("id1")).functor.is_identity());
    CHECK(precompose(wa, wa->morphism("id0")).functor.is_identity());

    auto z3 = catalog::cyclic_group(3);
    auto rot = postcompose(z3, z3->morphism("g"));
    auto eq = is_equivalence(rot.functor);
    CHECK(eq.equivalence());
    CHECK(rot.functor.obj_map().size() == 3);
  }

  TEST_CASE("adjunctions of post-composition and base change") {
    for (const std::string atoms : {"ab", "abc"}) {
      auto c = catalog::subset_lattice(atoms);
      for (Mor s = 0; s < c->num_morphisms(); ++s) {
        auto left = postcompose(c, s);
        auto right = base_change(c, s);
        CHECK(check_adjunction(left.functor, right.functor).found);
        CHECK(oracle::hom_counts_match(left.functor, right.functor));
        auto l2 = cobase_change(c, s);
        auto r2 = precompose(c, s);
        CHECK(check_adjunction(l2.functor, r2.functor).found);
        CHECK(oracle::hom_counts_match(l2.functor, r2.functor));
      }
    }
  }

  TEST_CASE("identity adjunction") {
    auto wa = catalog::walking_arrow();
    auto id = Functor::identity(wa);
    auto r = check_adjunction(id, id);
    CHECK(r.found);
    for (Obj x = 0; x < wa->num_objects(); ++x) {
      CHECK(r.unit[x] == wa->identity(x));
      CHECK(r.counit[x] == wa->identity(x));
    }
    auto c1 = Functor::constant(wa, wa, wa->object("1"));
    CHECK_FALSE(check_adjunction(c1, id).found);
  }

  TEST_CASE("equivalence checks") {
    auto wa = catalog::walking_arrow();
    auto eq = is_equivalence(Functor::identity(wa));
    CHECK(eq.fully_faithful);
    CHECK(eq.essentially_surjective);
    auto t = catalog::terminal_category();
    Functor bang(wa, t, {0, 0}, {0, 0, 0});
    auto r = is_equivalence(bang);
    CHECK(r.essentially_surjective);
    CHECK_FALSE(r.fully_faithful);
  }

  TEST_CASE("balanced categories") {
    CHECK(is_balanced(*catalog::symmetric_group_s3()).balanced);
    CHECK(is_balanced(*catalog::discrete({"A", "B", "C"})).balanced);
    auto wa = catalog::walking_arrow();
    auto r = is_balanced(*wa);
    CHECK_FALSE(r.balanced);
    REQUIRE(r.witness);
    CHECK(wa->morphism_id(*r.witness) == "a");

    gen::Rng rng(8);
    for (int i = 0; i < 40; ++i) {
      auto c = gen::random_concrete_category(rng, 4, 16);
      CHECK(is_balanced(*c).balanced == oracle::is_balanced(*c));
      for (Mor f = 0; f < c->num_morphisms(); ++f) {
        CHECK(is_mono(*c, f) == oracle::is_mono(*c, f));
        CHECK(is_epi(*c, f) == oracle::is_epi(*c, f));
      }
    }
  }

  TEST_CASE("fixed-point criterion examples") {
    auto cd = catalog::codiscrete({"A", "B"});
    auto sw = catalog::codiscrete_swap();
    auto r = fixpoint_criterion(sw, cd->object("A"), cd->morphism("A>B"));
    CHECK(r.sigma_iso);
    CHECK(r.tau_equiv);
    CHECK(r.s_equiv);
    CHECK(r.balanced);
    CHECK(r.biconditional_ok);

    auto wa = catalog::walking_arrow();
    auto c1 = Functor::constant(wa, wa, wa->object("1"));
    auto w = fixpoint_criterion(c1, wa->object("0"), wa->morphism("a"));
    CHECK_FALSE(w.sigma_iso);
    CHECK_FALSE(w.tau_equiv);
    CHECK(w.forward_ok);

    auto id = Functor::identity(wa);
    auto t = fixpoint_criterion(id, wa->object("0"), wa->morphism("id0"));
    CHECK(t.sigma_iso);
    CHECK(t.tau_equiv);
    CHECK(t.s_equiv);

    CHECK_THROWS_AS(fixpoint_criterion(id, wa->object("0"), wa->morphism("a")), Error);
  }
}
