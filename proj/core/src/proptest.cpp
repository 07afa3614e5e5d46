#include "fixcat/proptest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "fixcat/catalog.hpp"
#include "fixcat/fixpoint.hpp"
#include "fixcat/generators.hpp"
#include "fixcat/limits.hpp"
#include "fixcat/nerve.hpp"
#include "fixcat/sheaf.hpp"
#include "fixcat/site.hpp"

namespace fixcat::proptest {

namespace {

using gen::Rng;

// Collects the outcome of one case.
class Case {
 public:
  explicit Case(std::uint64_t seed) : rng(seed) {}

  void check(bool ok, const std::function<std::string()>& detail) {
    ++checks;
    if (!ok) failures.push_back(detail());
  }

  Rng rng;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

using CaseFn = std::function<void(Case&)>;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// ------------------------------------------------------------ oracles

// Composition laws on integer indices, independent of validate_category.
bool laws_hold(const CategoryData& d) {
  std::unordered_map<std::string, int> obj, mor;
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    if (!obj.emplace(d.objects[i], static_cast<int>(i)).second) return false;
  const int m = static_cast<int>(d.morphisms.size());
  std::vector<int> dom(m), cod(m);
  for (int i = 0; i < m; ++i) {
    if (!mor.emplace(d.morphisms[i].id, i).second) return false;
    auto a = obj.find(d.morphisms[i].dom), b = obj.find(d.morphisms[i].cod);
    if (a == obj.end() || b == obj.end()) return false;
    dom[i] = a->second;
    cod[i] = b->second;
  }
  std::vector<int> id(d.objects.size(), -1);
  for (const auto& [x, f] : d.identities) {
    auto ox = obj.find(x);
    auto mf = mor.find(f);
    if (ox == obj.end() || mf == mor.end()) return false;
    if (dom[mf->second] != ox->second || cod[mf->second] != ox->second) return false;
    id[ox->second] = mf->second;
  }
  if (std::count(id.begin(), id.end(), -1) > 0) return false;
  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  for (const auto& [g, f, gf] : d.composition) {
    auto ig = mor.find(g), jf = mor.find(f), k = mor.find(gf);
    if (ig == mor.end() || jf == mor.end() || k == mor.end()) return false;
    int& slot = table[static_cast<std::size_t>(ig->second) * m + jf->second];
    if (slot != -1 || dom[ig->second] != cod[jf->second]) return false;
    if (dom[k->second] != dom[jf->second] || cod[k->second] != cod[ig->second]) return false;
    slot = k->second;
  }
  auto at = [&](int g, int f) { return table[static_cast<std::size_t>(g) * m + f]; };
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (dom[g] == cod[f] && at(g, f) == -1) return false;
  for (int f = 0; f < m; ++f)
    if (at(f, id[dom[f]]) != f || at(id[cod[f]], f) != f) return false;
  std::vector<std::vector<int>> out_of(d.objects.size());
  for (int f = 0; f < m; ++f) out_of[dom[f]].push_back(f);
  for (int f = 0; f < m; ++f)
    for (int g : out_of[cod[f]])
      for (int h : out_of[cod[g]])
        if (at(h, at(g, f)) != at(at(h, g), f)) return false;
  return true;
}

// Number of classes of the disjoint union of Hom(X, F(Xi)) under
// phi ~ F(f)∘phi, by union-find.
std::size_t colimit_classes(const Functor& f, Obj x) {
  const FinCategory& c = *f.source();
  std::vector<std::pair<Obj, Mor>> elems;
  std::map<std::pair<Obj, Mor>, std::size_t> index;
  for (Obj i = 0; i < c.num_objects(); ++i)
    for (Mor phi : c.hom(x, f(i))) {
      index[{i, phi}] = elems.size();
      elems.emplace_back(i, phi);
    }
  std::vector<std::size_t> parent(elems.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (Mor m = 0; m < c.num_morphisms(); ++m)
    for (Mor phi : c.hom(x, f(c.dom(m)))) {
      Mor image = c.compose(f.map(m), phi);
      parent[find(index.at({c.dom(m), phi}))] = find(index.at({c.cod(m), image}));
    }
  std::size_t classes = 0;
  for (std::size_t a = 0; a < elems.size(); ++a) classes += find(a) == a;
  return classes;
}

// Fraction-free determinant.
Integer determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? Integer(1) : sign * a[n - 1][n - 1];
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    fn(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// gcd of all k x k minors.
Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  subsets(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    subsets(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rows[i], cols[j]);
      Integer d = determinant(std::move(sub));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Elements of a finite group counted by the brute-force view.
std::size_t element_count(const PresentedAbGroup& g) { return g.elements().size(); }

// ------------------------------------------------------------ helpers

// A uniformly chosen endofunctor among the first `cap` enumerated.
std::optional<Functor> random_endofunctor(Rng& rng, const CategoryPtr& c, std::size_t cap = 20000) {
  std::optional<Functor> pick;
  std::size_t seen = 0;
  gen::for_each_endofunctor(c, [&](const std::vector<Obj>& om, const std::vector<Mor>& mm) {
    ++seen;
    if (gen::below(rng, seen) == 0) pick = Functor(c, c, om, mm, "F");
    return seen < cap;
  });
  return pick;
}

std::string describe(const FinCategory& c) {
  std::ostringstream s;
  s << c.num_objects() << " objects, " << c.num_morphisms() << " morphisms";
  return s.str();
}

std::string maps(const Functor& f) {
  const FinCategory& c = *f.source();
  std::string s = "F = {";
  for (Obj x = 0; x < c.num_objects(); ++x)
    s += (x ? ", " : "") + c.object_id(x) + "->" + c.object_id(f(x));
  return s + "}";
}

// ------------------------------------------------------------ suites

void suite_axioms(Case& k) {
  CategoryData d = gen::random_concrete_data(k.rng, 5, 25);
  k.check(laws_hold(d) && validate_category(d).ok, [&] { return "generated category rejected"; });
  for (auto& entry : d.composition) {
    const std::string original = entry[2];
    for (const auto& m : d.morphisms) {
      if (m.id == original) continue;
      entry[2] = m.id;
      const bool oracle = laws_hold(d);
      const ValidationReport r = validate_category(d);
      k.check(r.ok == oracle, [&] {
        return "mutation " + entry[0] + " o " + entry[1] + " := " + m.id + ": validator says " +
               (r.ok ? "valid" : r.code) + ", oracle says " + (oracle ? "valid" : "invalid");
      });
    }
    entry[2] = original;
  }
  CategoryData t = gen::random_table(k.rng);
  k.check(validate_category(t).ok == laws_hold(t), [] { return "random table verdicts differ"; });
}

void suite_transport(Case& k) {
  CategoryPtr c = gen::random_concrete_category(k.rng, 4, 16);
  auto f = random_endofunctor(k.rng, c);
  if (!f) return;
  gen::IsoPair pair = gen::random_iso_pair(k.rng, *f);
  TransportResult t = transport(pair.eta);
  const bool there_back = compose(t.backward, t.forward).is_identity();
  const bool back_there = compose(t.forward, t.backward).is_identity();
  k.check(there_back && back_there && t.round_trip_identity,
          [&] { return "transport round trip is not the identity on " + describe(*c) + ", " + maps(*f); });
  k.check(t.source.carrier->num_objects() == t.target.carrier->num_objects() &&
              t.source.carrier->num_morphisms() == t.target.carrier->num_morphisms(),
          [&] { return "S(F) and S(F') differ in size on " + describe(*c); });
  auto found = functors_isomorphic(pair.g, pair.f);
  k.check(found.has_value(), [&] { return "no isomorphism found back from G to F"; });
}

void suite_colimit(Case& k) {
  CategoryPtr c = gen::below(k.rng, 2) ? gen::random_concrete_category(k.rng, 4, 16) : gen::random_loop_free(k.rng, 4, 16);
  std::vector<Functor> full;
  gen::for_each_endofunctor(c, [&](const std::vector<Obj>& om, const std::vector<Mor>& mm) {
    Functor f(c, c, om, mm, "F");
    if (gen::is_full(f)) full.push_back(std::move(f));
    return full.size() < 64;
  });
  for (std::size_t pick = 0; pick < std::min<std::size_t>(4, full.size()); ++pick) {
    const Functor& f = full[gen::below(k.rng, full.size())];
    std::vector<bool> has_point(c->num_objects(), false);
    for (const FixedPoint& p : fixed_points(f)) has_point[p.object] = true;
    for (Obj x = 0; x < c->num_objects(); ++x) {
      const std::size_t size = hom_colimit(f, x).size;
      const std::size_t oracle = colimit_classes(f, x);
      k.check(size == oracle, [&] {
        return "colimit size " + std::to_string(size) + " vs union-find " + std::to_string(oracle) + " at " +
               c->object_id(x);
      });
      if (has_point[x])
        k.check(size == 1, [&] { return "full functor, fixed point at " + c->object_id(x) + ", colimit size " +
                                        std::to_string(size); });
    }
  }
}

void suite_hopf(Case& k) {
  CategoryPtr c = gen::random_loop_free(k.rng, 5, 25);
  auto f = random_endofunctor(k.rng, c);
  if (!f) return;
  LefschetzReport l = lefschetz(*f);
  k.check(l.equal && Rational(l.chain_level) == l.homology_level,
          [&] { return "chain and homology traces differ on " + describe(*c) + ", " + maps(*f); });
  NerveTruncation nv = nerve(c, is_loop_free(*c).longest_chain);
  k.check(fixed_simplex_count(nv, f->obj_map(), f->mor_map()) == l.chain_level,
          [&] { return "fixed simplex count disagrees with the chain-level trace"; });
}

void suite_strict(Case& k) {
  CategoryPtr c = gen::random_loop_free(k.rng, 5, 25);
  NerveTruncation nv = nerve(c, is_loop_free(*c).longest_chain);
  const bool initial = c->has_initial_object();
  gen::for_each_endofunctor(c, [&](const std::vector<Obj>& om, const std::vector<Mor>& mm) {
    bool strict = false;
    for (Obj x = 0; x < c->num_objects() && !strict; ++x) strict = om[x] == x;
    const Integer l = fixed_simplex_count(nv, om, mm);
    k.check(strict || (l == 0 && !initial), [&] {
      return "no strict fixed point although L = " + l.get_str() + (initial ? " and an initial object exists" : "") +
             " on " + describe(*c);
    });
    return k.checks < 400000;
  });
}

void suite_adjunction(Case& k) {
  static const std::string atoms = "abcd";
  const std::size_t n = 1 + gen::below(k.rng, 3);
  CategoryPtr c = catalog::subset_lattice(atoms.substr(0, n));
  const Mor sigma = static_cast<Mor>(gen::below(k.rng, c->num_morphisms()));
  AdjunctionReport a1 = check_adjunction(postcompose(c, sigma).functor, base_change(c, sigma).functor);
  AdjunctionReport a2 = check_adjunction(cobase_change(c, sigma).functor, precompose(c, sigma).functor);
  k.check(a1.found, [&] { return "postcompose is not left adjoint to base change along " + c->morphism_id(sigma); });
  k.check(a2.found, [&] { return "cobase change is not left adjoint to precompose along " + c->morphism_id(sigma); });
}

void suite_criterion(Case& k) {
  CategoryPtr c = gen::random_concrete_category(k.rng, 4, 16);
  auto f = random_endofunctor(k.rng, c);
  if (!f) return;
  const Obj x = static_cast<Obj>(gen::below(k.rng, c->num_objects()));
  const auto& sigmas = c->hom(x, (*f)(x));
  if (sigmas.empty()) return;
  const Mor sigma = sigmas[gen::below(k.rng, sigmas.size())];
  CriterionReport r;
  try {
    r = fixpoint_criterion(*f, x, sigma);
  } catch (const Error& e) {
    if (e.code() == "NoPullback" || e.code() == "NoPushout") return;
    throw;
  }
  k.check(r.sigma_iso == c->is_iso(sigma), [] { return "sigma_iso disagrees with the inverse table"; });
  k.check(!r.sigma_iso || (r.tau_equiv && r.s_equiv), [&] {
    return "iso " + c->morphism_id(sigma) + " without both slice equivalences on " + describe(*c);
  });
  if (r.balanced)
    k.check(r.sigma_iso == (r.tau_equiv && r.s_equiv),
            [&] { return "balanced category, converse fails at " + c->morphism_id(sigma); });
}

void suite_snf(Case& k) {
  IntMatrix m = gen::random_matrix(k.rng, 6, 6);
  SmithForm s = smith_normal_form(m);
  k.check(s.U * m * s.V == s.D, [&] { return "U M V != D for " + m.to_string(); });
  k.check((s.U * s.U_inv).is_identity() && (s.V * s.V_inv).is_identity(), [&] { return "U or V not unimodular"; });
  bool diagonal = true, chain = true;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) diagonal = false;
  const std::size_t r = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < r; ++i) {
    if (s.D(i, i) < 0) chain = false;
    if (i + 1 < r && s.D(i, i) == 0 && s.D(i + 1, i + 1) != 0) chain = false;
    if (i + 1 < r && s.D(i, i) != 0 && s.D(i + 1, i + 1) % s.D(i, i) != 0) chain = false;
  }
  k.check(diagonal && chain, [&] { return "D not a divisibility-ordered diagonal for " + m.to_string(); });
  Integer product = 1;
  for (std::size_t i = 0; i < r; ++i) {
    product *= s.D(i, i);
    const Integer g = minor_gcd(m, i + 1);
    k.check(g == abs(product), [&] {
      return "determinant divisor " + std::to_string(i + 1) + " is " + g.get_str() + ", diagonal gives " +
             product.get_str();
    });
  }
}

PresentedAbGroup random_finite_group(Rng& rng) {
  IntVector orders;
  const std::size_t n = 1 + gen::below(rng, 2);
  for (std::size_t i = 0; i < n; ++i) orders.push_back(Integer(gen::between(rng, 1, 6)));
  return PresentedAbGroup::from_orders(orders);
}

// A well-defined hom between cyclic decompositions: the generator of Z/a may
// go to multiples of c / gcd(a, c) in Z/c.
AbHom random_hom(Rng& rng, const PresentedAbGroup& s, const PresentedAbGroup& t) {
  auto order = [](const PresentedAbGroup& g, std::size_t i) {
    Integer o = 0;
    for (std::size_t c = 0; c < g.relations().cols(); ++c)
      if (g.relations()(i, c) != 0) o = abs(g.relations()(i, c));
    return o;
  };
  IntMatrix m(t.generators(), s.generators());
  for (std::size_t i = 0; i < t.generators(); ++i)
    for (std::size_t j = 0; j < s.generators(); ++j) {
      Integer a = order(s, j), c = order(t, i), g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      m(i, j) = Integer(gen::between(rng, 0, 5)) * (g == 0 ? Integer(1) : Integer(c / g));
    }
  return AbHom{s, t, m};
}

void suite_abgrp(Case& k) {
  PresentedAbGroup s = random_finite_group(k.rng), t = random_finite_group(k.rng);
  AbHom h = random_hom(k.rng, s, t);
  k.check(hom_is_well_defined(h), [] { return "generated hom is not well defined"; });
  std::size_t zero = 0;
  for (const IntVector& e : s.elements()) zero += t.is_zero(h.apply(e));
  std::vector<IntVector> images;
  for (const IntVector& e : s.elements()) {
    IntVector v = t.canonical_coordinates(h.apply(e));
    if (std::find(images.begin(), images.end(), v) == images.end()) images.push_back(v);
  }
  const std::size_t ker = element_count(kernel(h).group), im = element_count(image(h).group),
                    cok = element_count(cokernel(h).group);
  k.check(ker == zero, [&] { return "kernel has " + std::to_string(ker) + " elements, brute force " +
                                   std::to_string(zero); });
  k.check(im == images.size(), [&] { return "image size differs from brute force"; });
  k.check(ker * im == element_count(s) && cok * im == element_count(t), [] { return "counting identities fail"; });
  AbHom id = AbHom::identity(s);
  k.check(equalizer(id, id).group.invariants() == s.invariants(), [] { return "equalizer of h, h is not the source"; });
}

struct SiteFixture {
  Pretopology site;
  std::vector<Functor> morphisms;
  std::vector<Presheaf> sheaves;
};

std::vector<SiteFixture> site_fixtures(Rng& rng) {
  std::vector<SiteFixture> out;
  const Integer n(gen::between(rng, 2, 5));
  {
    CategoryPtr base = catalog::pseudocircle();
    Pretopology p = catalog::pseudocircle_site(base);
    out.push_back({p,
                   {Functor::identity(base), catalog::pseudocircle_symmetry(base)},
                   {catalog::components_presheaf(p), catalog::constant_presheaf(p, PresentedAbGroup::cyclic(n))}});
  }
  {
    CategoryPtr base = catalog::xuvw();
    Pretopology p = catalog::xuvw_site(base);
    out.push_back({p,
                   {Functor::identity(base), catalog::xuvw_swap(base)},
                   {catalog::constant_presheaf(p, PresentedAbGroup::cyclic(n))}});
  }
  return out;
}

void suite_sheaf(Case& k) {
  auto fixtures = site_fixtures(k.rng);
  const SiteFixture& fx = fixtures[gen::below(k.rng, fixtures.size())];
  const Functor& f = fx.morphisms[gen::below(k.rng, fx.morphisms.size())];
  const Presheaf& mu = fx.sheaves[gen::below(k.rng, fx.sheaves.size())];
  const std::size_t n = 1 + gen::below(k.rng, 3);
  const FinCategory& c = *fx.site.base;
  k.check(check_site_morphism(f, fx.site).ok, [&] { return f.name() + " is not a site morphism"; });
  const bool sheaf = is_sheaf(mu).sheaf;
  k.check(sheaf, [&] { return mu.name + " is not a sheaf"; });
  Presheaf pulled = pullback_presheaf(mu, f);
  k.check(!sheaf || is_sheaf(pulled).sheaf, [&] { return "pullback of " + mu.name + " along " + f.name() + " is not a sheaf"; });
  k.check(!is_flabby(mu, n).flabby || is_flabby(pulled, n).flabby,
          [&] { return "flabby " + mu.name + " has a non-flabby pullback"; });
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (const CoveringFamily& fam : fx.site.covers[x]) {
      ComparisonReport r = comparison_iso(fam.members, mu, f, n);
      k.check(r.all_iso && r.ladder_commutes && r.cohomology_matches, [&] {
        return "comparison fails on cover " + fam.name + " of " + c.object_id(x) + " along " + f.name();
      });
      CechComplex cx = cech_complex(c, fam.members, mu, n);
      k.check(cech_cohomology(cx, 0) == mu.value(x).invariants(),
              [&] { return "H^0 differs from the sections over " + c.object_id(x); });
      if (fam.members.size() == 1 && c.is_iso(fam.members[0]))
        for (std::size_t q = 1; q <= n; ++q)
          k.check(cech_cohomology(cx, q).is_trivial(), [&] { return "iso singleton cover with H^q != 0"; });
    }
  for (const FixedPoint& p : fixed_points(f)) {
    CechFixedPointReport r = cech_fixed_point_report(p.object, f, {mu}, n);
    k.check(r.declared && r.pulled_agrees && r.bridge_ok && r.comparison_ok,
            [&] { return "fixed point " + c.object_id(p.object) + " is not declared a cohomological fixed point"; });
  }
}

void suite_site(Case& k) {
  auto fixtures = site_fixtures(k.rng);
  const SiteFixture& fx = fixtures[gen::below(k.rng, fixtures.size())];
  Pretopology shuffled = fx.site;
  for (auto& fams : shuffled.covers) {
    std::shuffle(fams.begin(), fams.end(), k.rng);
    for (auto& fam : fams) std::shuffle(fam.members.begin(), fam.members.end(), k.rng);
  }
  k.check(check_pretopology(fx.site).ok && check_pretopology(shuffled).ok,
          [] { return "reindexed families change the verdict"; });

  const FinCategory& c = *fx.site.base;
  const Obj x = static_cast<Obj>(gen::below(k.rng, c.num_objects()));
  Pretopology missing = fx.site;
  auto& fams = missing.covers[x];
  fams.erase(std::remove_if(fams.begin(), fams.end(),
                            [&](const CoveringFamily& fam) {
                              return fam.members.size() == 1 && c.is_identity(fam.members[0]);
                            }),
             fams.end());
  k.check(check_pretopology(missing).code == "IsoSingletonMissing",
          [&] { return "removing the identity cover of " + c.object_id(x) + " was not detected"; });

  const Functor& f = fx.morphisms[gen::below(k.rng, fx.morphisms.size())];
  FixCategoryResult sf = fix_category(f);
  Pretopology induced = induced_fix_pretopology(f, fx.site, sf);
  k.check(check_pretopology(induced).ok, [&] { return "induced pretopology along " + f.name() + " fails the axioms"; });
}

struct SuiteDef {
  SuiteInfo info;
  CaseFn fn;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs{
      {{"axioms", "validator agrees with a brute-force law checker on tables and single-entry mutations", 500},
       suite_axioms},
      {{"transport", "transport along a natural isomorphism and back is the identity", 100}, suite_transport},
      {{"colimit", "full functors have a one-point hom colimit at fixed points", 100}, suite_colimit},
      {{"hopf", "chain-level and homology-level Lefschetz numbers agree", 200}, suite_hopf},
      {{"strict", "nonzero Lefschetz number or an initial object forces a strict fixed point", 60}, suite_strict},
      {{"adjunction", "slice and coslice adjunctions along every arrow of a subset lattice", 60}, suite_adjunction},
      {{"criterion", "an iso sigma gives slice equivalences; the converse in balanced categories", 200},
       suite_criterion},
      {{"snf", "Smith form identities and determinant divisors", 1000}, suite_snf},
      {{"abgrp", "kernel, image and cokernel agree with element enumeration", 300}, suite_abgrp},
      {{"sheaf", "pullbacks of sheaves along site morphisms, comparison maps, cohomological fixed points", 40},
       suite_sheaf},
      {{"site", "pretopology verdicts under reindexing, deletion, and induction to S(F)", 40}, suite_site},
  };
  return defs;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const auto& d : registry()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, std::size_t index) {
  return splitmix(splitmix(seed ^ fnv1a(suite)) + index);
}

SuiteResult run_suite(const std::string& name, const Options& options) {
  const auto& defs = registry();
  auto it = std::find_if(defs.begin(), defs.end(), [&](const SuiteDef& d) { return d.info.name == name; });
  if (it == defs.end()) throw Error("UnknownSuite", "no property suite named '" + name + "'");
  const std::size_t cases = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(it->info.default_cases) * options.scale)));

  struct Outcome {
    std::size_t checks = 0;
    std::vector<std::string> failures;
  };
  std::vector<Outcome> outcomes(cases);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases; i = next++) {
      Case k(case_seed(options.seed, name, i));
      try {
        it->fn(k);
      } catch (const std::exception& e) {
        k.failures.push_back(std::string("exception: ") + e.what());
      }
      outcomes[i] = {k.checks, std::move(k.failures)};
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(cases)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteResult r;
  r.name = it->info.name;
  r.property = it->info.property;
  r.cases = cases;
  for (std::size_t i = 0; i < cases; ++i) {
    r.checks += outcomes[i].checks;
    r.failed += outcomes[i].failures.size();
    for (const std::string& f : outcomes[i].failures)
      if (r.examples.size() < 5) r.examples.push_back({i, f});
  }
  return r;
}

std::vector<SuiteResult> run(const Options& options) {
  std::vector<std::string> names = options.suites;
  if (names.empty())
    for (const auto& d : registry()) names.push_back(d.info.name);
  for (const std::string& n : names) {
    const auto& defs = registry();
    if (std::none_of(defs.begin(), defs.end(), [&](const SuiteDef& d) { return d.info.name == n; }))
      throw Error("UnknownSuite", "no property suite named '" + n + "'");
  }
  std::vector<SuiteResult> out;
  for (const std::string& n : names) out.push_back(run_suite(n, options));
  return out;
}

}  // namespace fixcat::proptest
