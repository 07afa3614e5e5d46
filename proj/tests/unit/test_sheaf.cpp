#include "doctest.h"

#include "fixcat/catalog.hpp"
#include "fixcat/sheaf.hpp"
#include "oracles.hpp"

using namespace fixcat;

namespace {

AbGroupInvariants inv(std::initializer_list<long> xs) { return AbGroupInvariants{IntVector(xs.begin(), xs.end())}; }

std::vector<Mor> members(const Pretopology& p, const std::string& object, const std::string& cover) {
  return p.cover(p.base->object(object), cover).members;
}

Integer order(const AbGroupInvariants& g) {
  Integer n = 1;
  for (const auto& f : g.factors) n *= f;
  return n;
}

PresheafMorphism constant_morphism(const Presheaf& a, const Presheaf& b, const IntMatrix& m) {
  PresheafMorphism out{"m", a, b, {}};
  for (Obj x = 0; x < a.base()->num_objects(); ++x) out.components.push_back(AbHom{a.value(x), b.value(x), m});
  return out;
}

}  // namespace

TEST_SUITE("sheaf") {
  TEST_CASE("presheaf validation") {
    auto site = catalog::pseudocircle_site();
    auto z2 = catalog::constant_presheaf(site, PresentedAbGroup::cyclic(2));
    CHECK(validate_presheaf(z2).ok);
    auto comp = catalog::components_presheaf(site);
    CHECK(validate_presheaf(comp).ok);
    CHECK(comp.value(site.base->object("ab")).invariants() == inv({2, 2}));
    CHECK(comp.value(site.base->object("abc")).invariants() == inv({2}));

    auto broken = comp;
    Mor f = site.base->morphism("ab<=abc");
    broken.restrictions[f].matrix = IntMatrix(2, 1);
    auto report = validate_presheaf(broken);
    CHECK_FALSE(report.ok);
    CHECK(report.code == "FunctorialityFails");
  }

  TEST_CASE("pullback presheaves") {
    auto site = catalog::pseudocircle_site();
    auto comp = catalog::components_presheaf(site);
    auto same = pullback_presheaf(comp, Functor::identity(site.base));
    for (Obj x = 0; x < site.base->num_objects(); ++x) CHECK(same.value(x) == comp.value(x));

    auto sym = catalog::pseudocircle_symmetry(site.base);
    auto moved = pullback_presheaf(comp, sym);
    CHECK(validate_presheaf(moved).ok);
    for (Obj x = 0; x < site.base->num_objects(); ++x) CHECK(moved.value(x) == comp.value(sym(x)));

    auto k = catalog::constant_presheaf(site, PresentedAbGroup::cyclic(3));
    auto kk = pullback_presheaf(k, sym);
    for (Obj x = 0; x < site.base->num_objects(); ++x) CHECK(kk.value(x) == k.value(x));
  }

  TEST_CASE("sheaf condition") {
    auto x = catalog::xuvw_site();
    auto gap = catalog::xuvw_nonsheaf(x);
    auto r = is_sheaf(gap);
    CHECK_FALSE(r.sheaf);
    CHECK(x.base->object_id(r.object) == "X");
    CHECK(r.cover == "UV");

    auto pc = catalog::pseudocircle_site();
    CHECK(is_sheaf(catalog::components_presheaf(pc)).sheaf);
    CHECK(is_sheaf(catalog::constant_presheaf(x, PresentedAbGroup::cyclic(2))).sheaf);

    auto trivial = catalog::trivial_site(x.base);
    auto g2 = catalog::xuvw_nonsheaf(x);
    g2.site = trivial;
    CHECK(is_sheaf(g2).sheaf);
  }

  TEST_CASE("Cech golden values") {
    auto x = catalog::xuvw_site();
    auto k = catalog::constant_presheaf(x, PresentedAbGroup::cyclic(2));
    auto cover = members(x, "X", "UV");
    CHECK(cech_cohomology(*x.base, cover, k, 0) == inv({2}));
    CHECK(cech_cohomology(*x.base, cover, k, 1) == inv({}));
    CHECK(cech_cohomology(*x.base, cover, k, 2) == inv({}));

    auto pc = catalog::pseudocircle_site();
    auto comp = catalog::components_presheaf(pc);
    auto uv = members(pc, "abcd", "UV");
    CHECK(cech_cohomology(*pc.base, uv, comp, 0) == inv({2}));
    CHECK(cech_cohomology(*pc.base, uv, comp, 1) == inv({2}));

    std::vector<Mor> single{pc.base->identity(pc.base->object("abcd"))};
    CHECK(cech_cohomology(*pc.base, single, comp, 0) == comp.value(pc.base->object("abcd")).invariants());
    CHECK(cech_cohomology(*pc.base, single, comp, 1).is_trivial());
    CHECK_THROWS_AS(cech_cohomology(cech_complex(*pc.base, uv, comp, 1), 2), Error);
  }

  TEST_CASE("Cech orders agree with cochain enumeration") {
    auto x = catalog::xuvw_site();
    auto pc = catalog::pseudocircle_site();
    std::vector<std::pair<Presheaf, std::vector<Mor>>> cases{
        {catalog::constant_presheaf(x, PresentedAbGroup::cyclic(2)), members(x, "X", "UV")},
        {catalog::components_presheaf(pc), members(pc, "abcd", "UV")},
        {catalog::constant_presheaf(pc, PresentedAbGroup::cyclic(3)), members(pc, "abcd", "UV")},
    };
    for (const auto& [mu, cover] : cases) {
      auto cx = cech_complex(*mu.base(), cover, mu, 2);
      auto brute = oracle::cech_orders(mu, cover, 2);
      for (std::size_t n = 0; n <= 2; ++n) CHECK(order(cech_cohomology(cx, n)) == brute[n]);
      for (std::size_t q = 1; q < cx.differentials.size(); ++q)
        CHECK(is_zero_hom(compose(cx.differentials[q], cx.differentials[q - 1])));
    }
  }

  TEST_CASE("flabbiness") {
    auto x = catalog::xuvw_site();
    CHECK(is_flabby(catalog::constant_presheaf(x, PresentedAbGroup::cyclic(2)), 3).flabby);
    auto pc = catalog::pseudocircle_site();
    auto r = is_flabby(catalog::components_presheaf(pc), 3);
    CHECK_FALSE(r.flabby);
    CHECK(r.degree == 1);
    CHECK(r.group == inv({2}));
    auto t = catalog::trivial_site(pc.base);
    CHECK(is_flabby(catalog::constant_presheaf(t, PresentedAbGroup::cyclic(5)), 3).flabby);
  }

  TEST_CASE("comparison maps") {
    auto pc = catalog::pseudocircle_site();
    auto comp = catalog::components_presheaf(pc);
    auto uv = members(pc, "abcd", "UV");
    auto id = comparison_iso(uv, comp, Functor::identity(pc.base), 3);
    CHECK(id.all_iso);
    for (const auto& phi : id.phi) CHECK(phi.matrix.is_identity());

    auto sym = comparison_iso(uv, comp, catalog::pseudocircle_symmetry(pc.base), 3);
    CHECK(sym.all_iso);
    CHECK(sym.ladder_commutes);
    CHECK(sym.cohomology_matches);
    CHECK(sym.pulled.size() == 4);

    auto x = catalog::xuvw_site();
    auto k = catalog::constant_presheaf(x, PresentedAbGroup::cyclic(4));
    auto sw = comparison_iso(members(x, "X", "UV"), k, catalog::xuvw_swap(x.base), 3);
    CHECK(sw.all_iso);
    CHECK(sw.cohomology_matches);
  }

  TEST_CASE("cohomological fixed points") {
    auto pc = catalog::pseudocircle_site();
    auto sym = catalog::pseudocircle_symmetry(pc.base);
    std::vector<Presheaf> tests{catalog::components_presheaf(pc),
                                catalog::constant_presheaf(pc, PresentedAbGroup::cyclic(2))};
    auto top = cech_fixed_point_report(pc.base->object("abcd"), sym, tests, 3);
    CHECK(top.declared);
    CHECK(top.pulled_agrees);
    CHECK(top.comparison_ok);
    CHECK(top.bridge_ok);
    auto u = cech_fixed_point_report(pc.base->object("abc"), sym, tests, 3);
    CHECK(u.declared);

    auto id = cech_fixed_point_report(pc.base->object("abd"), Functor::identity(pc.base), tests, 3);
    CHECK(id.declared);
    CHECK(id.bridge_ok);
  }

  TEST_CASE("exactness") {
    auto x = catalog::xuvw_site();
    auto z2 = catalog::constant_presheaf(x, PresentedAbGroup::cyclic(2), "z2");
    auto z4 = catalog::constant_presheaf(x, PresentedAbGroup::cyclic(4), "z4");
    auto incl = constant_morphism(z2, z4, IntMatrix::from_rows({{2}}));
    auto proj = constant_morphism(z4, z2, IntMatrix::from_rows({{1}}));
    CHECK(validate_presheaf_morphism(incl).ok);
    CHECK(pointwise_exact(incl, proj).ok);
    CHECK(check_exactness_preserved(catalog::xuvw_swap(x.base), incl, proj).preserved);
    CHECK(check_exactness_preserved(Functor::identity(x.base), incl, proj).preserved);

    auto a = catalog::constant_presheaf(x, PresentedAbGroup::cyclic(3), "a");
    auto b = catalog::constant_presheaf(x, PresentedAbGroup::cyclic(5), "b");
    auto ab = catalog::constant_presheaf(x, PresentedAbGroup::from_orders({3, 5}), "ab");
    auto i = constant_morphism(a, ab, IntMatrix::from_rows({{1}, {0}}));
    auto p = constant_morphism(ab, b, IntMatrix::from_rows({{0, 1}}));
    CHECK(check_exactness_preserved(catalog::xuvw_swap(x.base), i, p).preserved);

    CHECK_THROWS_AS(check_exactness_preserved(Functor::identity(x.base), incl, incl), Error);
  }
}
