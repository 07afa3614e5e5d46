#include "doctest.h"

#include <algorithm>

#include "fixcat/catalog.hpp"
#include "fixcat/site.hpp"

using namespace fixcat;

namespace {

void drop_family(Pretopology& p, const std::string& object, const std::string& family) {
  auto& list = p.covers[p.base->object(object)];
  auto it = std::find_if(list.begin(), list.end(), [&](const CoveringFamily& f) { return f.name == family; });
  REQUIRE(it != list.end());
  list.erase(it);
}

}  // namespace

TEST_SUITE("site") {
  TEST_CASE("the pseudocircle open-cover pretopology") {
    auto site = catalog::pseudocircle_site();
    CHECK(check_pretopology(site).ok);
    CHECK(check_pretopology(site, Membership::Strict).ok);

    auto missing_iso = site;
    drop_family(missing_iso, "a", "{a<=a}");
    CHECK(check_pretopology(missing_iso).code == "IsoSingletonMissing");

    auto missing_pullback = site;
    drop_family(missing_pullback, "abc", "{ab<=abc,abc<=abc}");
    CHECK(check_pretopology(missing_pullback).code == "BaseChangeMissing");
  }

  TEST_CASE("reordering families never changes a verdict") {
    auto site = catalog::pseudocircle_site();
    auto shuffled = site;
    for (auto& list : shuffled.covers) {
      std::reverse(list.begin(), list.end());
      for (auto& fam : list) std::reverse(fam.members.begin(), fam.members.end());
    }
    CHECK(check_pretopology(shuffled).ok);
    auto f = catalog::pseudocircle_symmetry(site.base);
    CHECK(check_site_morphism(f, shuffled).ok == check_site_morphism(f, site).ok);
  }

  TEST_CASE("family matching modes") {
    auto c = catalog::pseudocircle();
    std::vector<Mor> uv{c->morphism("abc<=abcd"), c->morphism("abd<=abcd")};
    std::vector<Mor> vu{uv[1], uv[0], uv[1]};
    CHECK(families_match(*c, uv, vu, Membership::Strict));
    CHECK(families_match(*c, uv, vu, Membership::UpToIsomorphism));
    CHECK(default_family_name(*c, vu) == "{abc<=abcd,abd<=abcd}");

    auto cd = catalog::codiscrete({"A", "B"});
    std::vector<Mor> one{cd->morphism("id_B")};
    std::vector<Mor> other{cd->morphism("A>B")};
    CHECK_FALSE(families_match(*cd, one, other, Membership::Strict));
    CHECK(families_match(*cd, one, other, Membership::UpToIsomorphism));
  }

  TEST_CASE("site morphisms") {
    auto site = catalog::pseudocircle_site();
    CHECK(check_site_morphism(Functor::identity(site.base), site).ok);
    CHECK(check_site_morphism(catalog::pseudocircle_symmetry(site.base), site).ok);
    // The constant functor at the top sends the two members of a cover to
    // the same identity, and no listed cover has a repeated member.
    auto top = Functor::constant(site.base, site.base, site.base->object("abcd"));
    auto merged = check_site_morphism(top, site);
    CHECK_FALSE(merged.ok);
    CHECK(merged.code == "CoverNotPreserved");

    auto x = catalog::xuvw_site();
    auto collapse = catalog::poset_functor(x.base, x.base, {"W", "W", "W", "X"});
    auto report = check_site_morphism(collapse, x);
    CHECK_FALSE(report.ok);
    CHECK(report.code == "CoverNotPreserved");
    CHECK(check_site_morphism(catalog::xuvw_swap(x.base), x).ok);
  }

  TEST_CASE("pullback comparison for the symmetry") {
    auto site = catalog::pseudocircle_site();
    auto f = catalog::pseudocircle_symmetry(site.base);
    const auto& c = *site.base;
    auto cmp = pullback_comparison(f, c.morphism("abc<=abcd"), c.morphism("abd<=abcd"));
    CHECK(c.object_id(cmp.source.vertex) == "ab");
    CHECK(c.is_iso(cmp.comparison));
  }

  TEST_CASE("induced pretopology on fixed points") {
    auto site = catalog::xuvw_site();
    auto id = Functor::identity(site.base);
    auto sf = fix_category(id);
    auto induced = induced_fix_pretopology(id, site, sf);
    CHECK(check_pretopology(induced).ok);
    for (Obj x = 0; x < site.base->num_objects(); ++x) {
      Obj p = sf.object_of(FixedPoint{x, site.base->identity(x)});
      CHECK(induced.covers[p].size() == site.covers[x].size());
    }

    auto pc = catalog::pseudocircle_site();
    auto sym = catalog::pseudocircle_symmetry(pc.base);
    auto ssf = fix_category(sym);
    auto sp = induced_fix_pretopology(sym, pc, ssf);
    CHECK(check_pretopology(sp).ok);
    for (Obj p = 0; p < ssf.carrier->num_objects(); ++p)
      for (const auto& fam : sp.covers[p]) {
        std::vector<Mor> image;
        for (Mor m : fam.members) image.push_back(ssf.forgetful.map(m));
        CHECK(find_family(pc, ssf.points[p].object, image, Membership::UpToIsomorphism).has_value());
      }

    auto empty = fix_category(catalog::discrete_swap());
    auto none = induced_fix_pretopology(catalog::discrete_swap(), catalog::trivial_site(catalog::discrete({"A", "B"})),
                                        empty);
    CHECK(none.covers.empty());
    CHECK(check_pretopology(none).ok);
  }

  TEST_CASE("pullbacks of fixed points") {
    auto site = catalog::xuvw_site();
    auto id = Functor::identity(site.base);
    auto sf = fix_category(id);
    const auto& c = *site.base;
    auto point = [&](const std::string& x) { return sf.object_of(FixedPoint{c.object(x), c.identity(c.object(x))}); };
    auto carrier_arrow = [&](const std::string& x, const std::string& y) {
      return sf.morphism_of(c.morphism(x + "<=" + y), point(x), point(y));
    };

    auto same = fix_pullback(sf, carrier_arrow("X", "X"), carrier_arrow("X", "X"));
    CHECK(same.universal);
    CHECK(same.pullback.vertex == point("X"));

    auto uv = fix_pullback(sf, carrier_arrow("U", "X"), carrier_arrow("V", "X"));
    CHECK(uv.universal);
    CHECK(uv.pullback.vertex == point("W"));
    CHECK(c.is_identity(uv.sigma));

    auto pc = catalog::pseudocircle_site();
    auto sym = catalog::pseudocircle_symmetry(pc.base);
    auto ssf = fix_category(sym);
    const auto& b = *pc.base;
    Obj top = ssf.object_of(FixedPoint{b.object("abcd"), b.morphism("abcd<=abcd")});
    Obj ab = ssf.object_of(FixedPoint{b.object("ab"), b.morphism("ab<=ab")});
    Mor leg = ssf.morphism_of(b.morphism("ab<=abcd"), ab, top);
    auto r = fix_pullback(ssf, leg, leg);
    CHECK(r.universal);
    CHECK(b.is_iso(r.sigma));
  }

  TEST_CASE("additive structure on Z/2 matrices") {
    auto c = catalog::z2_matrix_category(2);
    CHECK(c->hom(c->object("2"), c->object("2")).size() == 16);
    auto e = catalog::z2_matrix_enrichment(c);
    CHECK(check_additive(e).ok);
    auto id = Functor::identity(c);
    CHECK(check_additive_functor(id, e).ok);

    auto sf = fix_category(id);
    auto se = fix_additive(id, e, sf);
    CHECK(check_additive(se).ok);

    // (1, id) + (1, id) lands over 2.
    Obj one = sf.object_of(FixedPoint{c->object("1"), c->identity(c->object("1"))});
    auto sum = find_biproduct(se, one, one);
    REQUIRE(sum);
    CHECK(c->object_id(sf.points[sum->sum].object) == "2");

    // Zero morphisms and sums of carrier morphisms are fixed-point morphisms.
    const auto& s = *sf.carrier;
    for (Obj x = 0; x < s.num_objects(); ++x)
      for (Obj y = 0; y < s.num_objects(); ++y) {
        CHECK(se.zero_of(x, y) != kNone);
        for (Mor f : s.hom(x, y))
          for (Mor g : s.hom(x, y)) CHECK(se.add(f, g) != kNone);
      }
  }

  TEST_CASE("a corrupted addition entry is rejected") {
    auto c = catalog::z2_matrix_category(1);
    auto e = catalog::z2_matrix_enrichment(c);
    Mor f = c->morphism(catalog::z2_matrix_id(1, 1, {1}));
    e.sum[static_cast<std::size_t>(f) * c->num_morphisms() + f] = f;
    auto report = check_additive(e);
    CHECK_FALSE(report.ok);
    CHECK(report.code == "HomNotGroup");
  }
}
