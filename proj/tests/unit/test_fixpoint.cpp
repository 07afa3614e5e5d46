#include "doctest.h"

#include "fixcat/catalog.hpp"
#include "fixcat/fixpoint.hpp"
#include "fixcat/generators.hpp"
#include "oracles.hpp"

using namespace fixcat;

TEST_SUITE("fixpoint") {
  TEST_CASE("strict fixed points") {
    auto wa = catalog::walking_arrow();
    CHECK(strict_fixed_points(Functor::identity(wa)) == std::vector<Obj>{0, 1});
    CHECK(strict_fixed_points(catalog::discrete_swap()).empty());
    CHECK(strict_fixed_points(Functor::constant(wa, wa, 1)) == std::vector<Obj>{1});
  }

  TEST_CASE("fixed points with witnesses") {
    auto wa = catalog::walking_arrow();
    auto fp = fixed_points(Functor::identity(wa));
    REQUIRE(fp.size() == 2);
    CHECK(fp[0] == FixedPoint{0, wa->morphism("id0")});
    CHECK(fp[1] == FixedPoint{1, wa->morphism("id1")});
    CHECK(fixed_points(catalog::discrete_swap()).empty());

    auto sw = catalog::codiscrete_swap();
    const auto& cd = *sw.source();
    auto pts = fixed_points(sw);
    REQUIRE(pts.size() == 2);
    CHECK(cd.morphism_id(pts[0].iso) == "A>B");
    CHECK(cd.morphism_id(pts[1].iso) == "B>A");
  }

  TEST_CASE("the category of fixed points") {
    auto wa = catalog::walking_arrow();
    auto sf = fix_category(Functor::identity(wa));
    CHECK(sf.carrier->num_objects() == 2);
    CHECK(sf.carrier->num_morphisms() == 3);
    CHECK(validate_functor(sf.forgetful).ok);

    CHECK(fix_category(catalog::discrete_swap()).carrier->num_objects() == 0);

    auto cs = fix_category(catalog::codiscrete_swap());
    CHECK(cs.carrier->num_objects() == 2);
    CHECK(cs.carrier->num_morphisms() == 4);
    for (Obj a = 0; a < 2; ++a)
      for (Obj b = 0; b < 2; ++b) CHECK(cs.carrier->hom(a, b).size() == 1);
  }

  TEST_CASE("squares commute for every carrier morphism") {
    gen::Rng rng(4);
    for (int i = 0; i < 20; ++i) {
      auto c = gen::random_concrete_category(rng, 4, 16);
      for (const auto& f : gen::all_endofunctors(c, 6)) {
        auto sf = fix_category(f);
        const FinCategory& base = *c;
        for (Mor m = 0; m < sf.carrier->num_morphisms(); ++m) {
          const auto& from = sf.points[sf.carrier->dom(m)];
          const auto& to = sf.points[sf.carrier->cod(m)];
          Mor u = sf.forgetful.map(m);
          CHECK(base.compose(f.map(u), from.iso) == base.compose(to.iso, u));
        }
        // Every commuting base morphism appears exactly once.
        std::size_t count = 0;
        for (const auto& p : sf.points)
          for (const auto& q : sf.points)
            for (Mor u : base.hom(p.object, q.object))
              count += base.compose(f.map(u), p.iso) == base.compose(q.iso, u);
        CHECK(count == static_cast<std::size_t>(sf.carrier->num_morphisms()));
      }
    }
  }

  TEST_CASE("transport along the identity transformation") {
    auto sw = catalog::codiscrete_swap();
    auto t = transport(NatTransformation::identity(sw));
    CHECK(t.forward.is_identity());
    CHECK(t.round_trip_identity);
  }

  TEST_CASE("transport between Id and a conjugation on Z/3") {
    auto z3 = catalog::cyclic_group(3);
    auto id = Functor::identity(z3);
    auto conj = catalog::conjugation(z3, "g");
    NatTransformation eta(id, conj, {z3->morphism("g")});
    REQUIRE(is_nat_iso(eta));
    auto t = transport(eta);
    CHECK(t.round_trip_identity);
    CHECK(compose(t.backward, t.forward).is_identity());
    CHECK(compose(t.forward, t.backward).is_identity());
    CHECK(t.source.carrier->num_morphisms() == t.target.carrier->num_morphisms());

    auto wa = catalog::walking_arrow();
    NatTransformation not_iso(Functor::constant(wa, wa, 0), Functor::identity(wa),
                              {wa->morphism("id0"), wa->morphism("a")});
    CHECK_THROWS_AS(transport(not_iso), Error);
  }

  TEST_CASE("transport preserves sizes for random iso pairs") {
    gen::Rng rng(9);
    for (int i = 0; i < 30; ++i) {
      auto c = gen::random_concrete_category(rng, 4, 16);
      auto fs = gen::all_endofunctors(c, 4);
      auto pair = gen::random_iso_pair(rng, fs[gen::below(rng, fs.size())]);
      auto t = transport(pair.eta);
      CHECK(t.round_trip_identity);
      CHECK(t.source.carrier->num_objects() == t.target.carrier->num_objects());
      CHECK(t.source.carrier->num_morphisms() == t.target.carrier->num_morphisms());
    }
  }

  TEST_CASE("hom colimit examples") {
    auto wa = catalog::walking_arrow();
    CHECK(hom_colimit(Functor::identity(wa), 0).size == 1);
    CHECK(hom_colimit(Functor::constant(wa, wa, 0), 1).size == 0);
    auto pp = catalog::parallel_pair();
    auto r = hom_colimit(Functor::identity(pp), pp->object("A"));
    CHECK(r.size == 1);
    CHECK(r.classes.at(0).size() == 3);
  }

  TEST_CASE("hom colimit agrees with union-find") {
    gen::Rng rng(12);
    for (int i = 0; i < 30; ++i) {
      auto c = gen::random_concrete_category(rng, 4, 16);
      for (const auto& f : gen::all_endofunctors(c, 5))
        for (Obj x = 0; x < c->num_objects(); ++x)
          CHECK(hom_colimit(f, x).size == oracle::hom_colimit_classes(f, x));
    }
  }
}
