#include "doctest.h"

#include "fixcat/catalog.hpp"
#include "fixcat/fincat.hpp"
#include "fixcat/generators.hpp"
#include "oracles.hpp"

using namespace fixcat;

namespace {

CategoryData walking_arrow_data() { return catalog::walking_arrow()->to_data(); }

void set_entry(CategoryData& d, const std::string& g, const std::string& f, const std::string& gf) {
  for (auto& e : d.composition)
    if (e[0] == g && e[1] == f) e[2] = gf;
}

}  // namespace

TEST_SUITE("fincat") {
  TEST_CASE("walking arrow and empty category validate") {
    CHECK(validate_category(walking_arrow_data()).ok);
    CHECK(validate_category(CategoryData{}).ok);
    CHECK(catalog::empty_category()->num_objects() == 0);
  }

  TEST_CASE("remapping a composite with an identity breaks a unit law") {
    auto d = walking_arrow_data();
    set_entry(d, "a", "id0", "id0");
    auto report = validate_category(d);
    CHECK_FALSE(report.ok);
    CHECK(report.code == "UnitLawViolation");
    CHECK_THROWS_AS(FinCategory::from_data(d), ValidationError);
  }

  TEST_CASE("structural failures have their own codes") {
    auto d = walking_arrow_data();
    d.identities.erase("1");
    CHECK(validate_category(d).code == "MissingIdentity");

    d = walking_arrow_data();
    d.composition.pop_back();
    CHECK(validate_category(d).code == "CompositionGap");

    d = walking_arrow_data();
    d.objects.push_back("0");
    CHECK(validate_category(d).code == "Malformed");
  }

  TEST_CASE("associativity failure on a one-object table") {
    // Units hold with e, but (a b) b = a b = a while a (b b) = a a = a; the
    // triple (b, b, a) separates the two bracketings.
    CategoryData d;
    d.objects = {"*"};
    d.morphisms = {{"e", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
    d.identities = {{"*", "e"}};
    for (const auto& m : {"e", "a", "b"}) {
      d.composition.push_back({"e", m, m});
      if (std::string(m) != "e") d.composition.push_back({m, "e", m});
    }
    d.composition.push_back({"a", "a", "a"});
    d.composition.push_back({"a", "b", "b"});
    d.composition.push_back({"b", "a", "a"});
    d.composition.push_back({"b", "b", "a"});
    CHECK_FALSE(oracle::category_laws_hold(d));
    CHECK(validate_category(d).code == "AssociativityViolation");
  }

  TEST_CASE("identities are isos, arrows between distinct posets are not") {
    auto wa = catalog::walking_arrow();
    auto r = is_iso(*wa, "id0");
    CHECK(r.iso);
    CHECK(r.inverse == std::optional<std::string>("id0"));
    CHECK_FALSE(is_iso(*wa, "a").iso);
    CHECK_THROWS_AS(is_iso(*wa, "nope"), Error);

    auto cd = catalog::codiscrete({"A", "B"});
    auto cross = is_iso(*cd, "A>B");
    CHECK(cross.iso);
    CHECK(cross.inverse == std::optional<std::string>("B>A"));
  }

  TEST_CASE("functor validation") {
    auto wa = catalog::walking_arrow();
    CHECK(validate_functor(Functor::identity(wa)).ok);
    CHECK(validate_functor(Functor::constant(wa, wa, wa->object("0"))).ok);

    auto pp = catalog::parallel_pair();
    auto swap = Functor::from_ids(pp, pp, {{"A", "A"}, {"B", "B"}},
                                  {{"idA", "idA"}, {"idB", "idB"}, {"f", "g"}, {"g", "f"}});
    CHECK(validate_functor(swap).ok);

    auto collapse = Functor::from_ids(pp, pp, {{"A", "A"}, {"B", "B"}},
                                      {{"idA", "idA"}, {"idB", "f"}, {"f", "f"}, {"g", "f"}});
    auto report = validate_functor(collapse);
    CHECK_FALSE(report.ok);

    CHECK_THROWS_AS(Functor::from_ids(pp, pp, {{"A", "A"}}, {}), Error);
  }

  TEST_CASE("a functor that breaks one composite is caught") {
    // The non-identity endomorphisms of Z/3 permuted by g <-> g2 is an
    // automorphism; sending g to itself and g2 to g is not.
    auto z3 = catalog::cyclic_group(3);
    auto good = Functor::from_ids(z3, z3, {{"*", "*"}}, {{"e", "e"}, {"g", "g2"}, {"g2", "g"}});
    CHECK(validate_functor(good).ok);
    auto bad = Functor::from_ids(z3, z3, {{"*", "*"}}, {{"e", "e"}, {"g", "g"}, {"g2", "g"}});
    auto report = validate_functor(bad);
    CHECK_FALSE(report.ok);
    CHECK(report.code == "CompositionNotPreserved");
  }

  TEST_CASE("natural transformations") {
    auto wa = catalog::walking_arrow();
    auto id = Functor::identity(wa);
    auto eta = NatTransformation::identity(id);
    CHECK(validate_nat_transformation(eta).ok);
    CHECK(is_nat_iso(eta));

    auto c0 = Functor::constant(wa, wa, wa->object("0"));
    NatTransformation to_id(c0, id, {wa->morphism("id0"), wa->morphism("a")});
    CHECK(validate_nat_transformation(to_id).ok);
    CHECK_FALSE(is_nat_iso(to_id));
    CHECK_THROWS_AS(inverse(to_id), Error);

    auto c1 = Functor::constant(wa, wa, wa->object("1"));
    NatTransformation broken(c0, c1, {wa->morphism("a"), wa->morphism("a")});
    CHECK(validate_nat_transformation(broken).ok);
    NatTransformation mutated(id, c1, {wa->morphism("a"), wa->morphism("id1")});
    CHECK(validate_nat_transformation(mutated).ok);
    NatTransformation square_fails(c1, id, {wa->morphism("id1"), wa->morphism("id1")});
    auto report = validate_nat_transformation(square_fails);
    CHECK_FALSE(report.ok);
  }

  TEST_CASE("naturality square failure is reported by code") {
    auto z3 = catalog::cyclic_group(3);
    auto id = Functor::identity(z3);
    NatTransformation eta(id, id, {z3->morphism("g")});
    CHECK(validate_nat_transformation(eta).ok);

    auto s3 = catalog::symmetric_group_s3();
    auto sid = Functor::identity(s3);
    NatTransformation bad(sid, sid, {s3->morphism("(12)")});
    auto report = validate_nat_transformation(bad);
    CHECK_FALSE(report.ok);
    CHECK(report.code == "NaturalitySquareFails");
  }

  TEST_CASE("functors_isomorphic") {
    auto wa = catalog::walking_arrow();
    auto id = Functor::identity(wa);
    auto same = functors_isomorphic(id, id);
    REQUIRE(same);
    CHECK(same->components() == NatTransformation::identity(id).components());

    auto s3 = catalog::symmetric_group_s3();
    auto conj = catalog::conjugation(s3, "(12)");
    auto found = functors_isomorphic(Functor::identity(s3), conj);
    REQUIRE(found);
    CHECK(s3->morphism_id(found->component(0)) == "(12)");

    CHECK_FALSE(functors_isomorphic(Functor::identity(catalog::discrete({"A", "B"})), catalog::discrete_swap()));
  }

  TEST_CASE("library validation agrees with the brute-force law checker") {
    gen::Rng rng(7);
    for (int i = 0; i < 150; ++i) {
      auto d = i % 2 ? gen::random_table(rng) : gen::random_concrete_data(rng);
      CHECK(validate_category(d).ok == oracle::category_laws_hold(d));
    }
  }

  TEST_CASE("opposite category reverses arrows") {
    auto wa = catalog::walking_arrow();
    auto op = wa->opposite();
    Mor a = op->morphism("a");
    CHECK(op->object_id(op->dom(a)) == "1");
    CHECK(op->object_id(op->cod(a)) == "0");
    CHECK(validate_category(op->to_data()).ok);
  }
}
