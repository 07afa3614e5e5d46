#include "fixcat/site.hpp"

#include <algorithm>
#include <set>

namespace fixcat {

namespace {

std::vector<Mor> normalized(std::vector<Mor> m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

// u ~ v when some isomorphism h: dom u -> dom v has v∘h = u.
bool equivalent_members(const FinCategory& c, Mor u, Mor v) {
  if (u == v) return true;
  if (c.cod(u) != c.cod(v)) return false;
  for (Mor h : c.isos(c.dom(u), c.dom(v)))
    if (c.compose(v, h) == u) return true;
  return false;
}

bool covered_by(const FinCategory& c, const std::vector<Mor>& a, const std::vector<Mor>& b) {
  for (Mor u : a) {
    bool hit = false;
    for (Mor v : b)
      if (equivalent_members(c, u, v)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// A bijection between the two index sets pairing matching members.
bool reindexes(const FinCategory& c, const std::vector<Mor>& a, const std::vector<Mor>& b, Membership mode) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (mode == Membership::Strict ? a[i] != b[j] : !equivalent_members(c, a[i], b[j])) continue;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return assign(assign, 0);
}

// Odometer over one listed family of cov(dom u_i) per member u_i.
template <typename Visit>
bool for_each_refinement(const Pretopology& p, const std::vector<Mor>& members, Visit&& visit) {
  const FinCategory& c = *p.base;
  std::vector<const std::vector<CoveringFamily>*> options;
  for (Mor u : members) {
    options.push_back(&p.covers[c.dom(u)]);
    if (options.back()->empty()) return true;
  }
  std::vector<std::size_t> pick(members.size(), 0);
  while (true) {
    if (!visit(pick, options)) return false;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i]->size()) pick[i++] = 0;
    if (i == pick.size()) return true;
  }
}

}  // namespace

const CoveringFamily& Pretopology::cover(Obj x, const std::string& name) const {
  for (const auto& f : covers.at(x))
    if (f.name == name) return f;
  throw Error("UnknownCover", "no cover '" + name + "' of '" + base->object_id(x) + "'");
}

Obj Pretopology::cover_object(const std::string& name) const {
  for (Obj x = 0; x < static_cast<Obj>(covers.size()); ++x)
    for (const auto& f : covers[x])
      if (f.name == name) return x;
  throw Error("UnknownCover", "no cover named '" + name + "'");
}

bool families_match(const FinCategory& c, const std::vector<Mor>& a, const std::vector<Mor>& b, Membership mode) {
  if (mode == Membership::Strict) return normalized(a) == normalized(b);
  return covered_by(c, a, b) && covered_by(c, b, a);
}

std::optional<std::size_t> find_family(const Pretopology& p, Obj x, const std::vector<Mor>& family, Membership mode) {
  const auto& list = p.covers.at(x);
  for (std::size_t i = 0; i < list.size(); ++i)
    if (families_match(*p.base, list[i].members, family, mode)) return i;
  return std::nullopt;
}

std::string default_family_name(const FinCategory& c, std::vector<Mor> members) {
  members = normalized(std::move(members));
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += c.morphism_id(members[i]);
  }
  return s + "}";
}

ValidationReport check_pretopology(const Pretopology& p, Membership mode) {
  const FinCategory& c = *p.base;
  if (static_cast<int>(p.covers.size()) != c.num_objects())
    return ValidationReport::fail("Malformed", "cover list does not match the objects");
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (const auto& fam : p.covers[x])
      for (Mor u : fam.members)
        if (u < 0 || u >= c.num_morphisms() || c.cod(u) != x)
          return ValidationReport::fail("Malformed", "family '" + fam.name + "' has a member not into '" +
                                                         c.object_id(x) + "'",
                                        {fam.name});

  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if (c.is_iso(f) && !find_family(p, c.cod(f), {f}, mode))
      return ValidationReport::fail("IsoSingletonMissing", "{" + c.morphism_id(f) + "} is not a cover",
                                    {c.object_id(c.cod(f)), c.morphism_id(f)});

  PullbackCache cache(c);
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (const auto& fam : p.covers[x])
      for (Obj y = 0; y < c.num_objects(); ++y)
        for (Mor g : c.hom(y, x)) {
          std::vector<Mor> pulled;
          for (Mor u : fam.members) {
            auto pb = cache.find(u, g);
            if (!pb)
              return ValidationReport::fail("NoPullback",
                                            "no pullback of " + c.morphism_id(u) + " along " + c.morphism_id(g),
                                            {fam.name, c.morphism_id(u), c.morphism_id(g)});
            pulled.push_back(pb->proj_right);
          }
          if (!find_family(p, y, pulled, mode))
            return ValidationReport::fail("BaseChangeMissing",
                                          "pullback of '" + fam.name + "' along " + c.morphism_id(g) +
                                              " is not a cover",
                                          {fam.name, c.morphism_id(g), default_family_name(c, pulled)});
        }

  for (Obj x = 0; x < c.num_objects(); ++x)
    for (const auto& fam : p.covers[x]) {
      ValidationReport failure;
      for_each_refinement(p, fam.members, [&](const auto& pick, const auto& options) {
        std::vector<Mor> composite;
        for (std::size_t i = 0; i < pick.size(); ++i)
          for (Mor v : (*options[i])[pick[i]].members) composite.push_back(c.compose(fam.members[i], v));
        if (find_family(p, x, composite, mode)) return true;
        std::vector<std::string> witness{fam.name};
        for (std::size_t i = 0; i < pick.size(); ++i) witness.push_back((*options[i])[pick[i]].name);
        failure = ValidationReport::fail("CompositionMissing",
                                         "refinement of '" + fam.name + "' is not a cover of '" + c.object_id(x) + "'",
                                         std::move(witness));
        return false;
      });
      if (!failure) return failure;
    }
  return ValidationReport::pass();
}

Pretopology close_pretopology(const CategoryPtr& base, const std::vector<std::vector<CoveringFamily>>& generators,
                              std::string name, Membership mode) {
  const FinCategory& c = *base;
  Pretopology p;
  p.name = std::move(name);
  p.base = base;
  p.covers.assign(c.num_objects(), {});
  for (std::size_t x = 0; x < generators.size() && x < p.covers.size(); ++x) p.covers[x] = generators[x];

  auto add = [&](Obj x, std::vector<Mor> members) {
    members = normalized(std::move(members));
    if (find_family(p, x, members, mode)) return false;
    p.covers[x].push_back({default_family_name(c, members), members});
    return true;
  };
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if (c.is_iso(f)) add(c.cod(f), {f});

  PullbackCache cache(c);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Obj x = 0; x < c.num_objects(); ++x)
      for (std::size_t k = 0; k < p.covers[x].size(); ++k) {
        const std::vector<Mor> members = p.covers[x][k].members;
        for (Obj y = 0; y < c.num_objects(); ++y)
          for (Mor g : c.hom(y, x)) {
            std::vector<Mor> pulled;
            bool ok = true;
            for (Mor u : members) {
              auto pb = cache.find(u, g);
              if (!pb) {
                ok = false;
                break;
              }
              pulled.push_back(pb->proj_right);
            }
            if (ok && add(y, pulled)) changed = true;
          }
        std::vector<std::vector<Mor>> found;
        for_each_refinement(p, members, [&](const auto& pick, const auto& options) {
          std::vector<Mor> composite;
          for (std::size_t i = 0; i < pick.size(); ++i)
            for (Mor v : (*options[i])[pick[i]].members) composite.push_back(c.compose(members[i], v));
          found.push_back(std::move(composite));
          return true;
        });
        for (auto& f : found)
          if (add(x, std::move(f))) changed = true;
      }
  }
  return p;
}

// ----------------------------------------------------------- site morphisms

PullbackComparison pullback_comparison(const Functor& F, Mor a, Mor b) {
  const FinCategory& c = *F.target();
  PullbackComparison r;
  r.source = pullback(*F.source(), a, b);
  auto image = find_pullback(c, F.map(a), F.map(b));
  if (!image)
    throw Error("NoPullback", "no pullback of the images of " + F.source()->morphism_id(a) + " and " +
                                  F.source()->morphism_id(b));
  r.image = *image;
  auto u = pullback_factor(c, r.image, F.map(r.source.proj_left), F.map(r.source.proj_right));
  if (!u) throw Error("NotSiteMorphism", "image square does not factor through the image pullback");
  r.comparison = *u;
  return r;
}

ValidationReport check_site_morphism(const Functor& F, const Pretopology& p, Membership mode) {
  F.require_endofunctor();
  if (!same_category(F.source(), p.base))
    return ValidationReport::fail("Malformed", "functor and pretopology live on different categories");
  const FinCategory& c = *p.base;
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (const auto& fam : p.covers[x]) {
      std::vector<Mor> image;
      for (Mor u : fam.members) image.push_back(F.map(u));
      const auto& targets = p.covers[F(x)];
      if (std::none_of(targets.begin(), targets.end(),
                       [&](const CoveringFamily& t) { return reindexes(c, t.members, image, mode); }))
        return ValidationReport::fail("CoverNotPreserved",
                                      "image of '" + fam.name + "' is not a cover of '" + c.object_id(F(x)) + "'",
                                      {fam.name, default_family_name(c, image)});
    }

  PullbackCache cache(c);
  for (Mor a = 0; a < c.num_morphisms(); ++a)
    for (Obj y = 0; y < c.num_objects(); ++y)
      for (Mor b : c.hom(y, c.cod(a))) {
        auto pb = cache.find(a, b);
        if (!pb) continue;
        auto image = cache.find(F.map(a), F.map(b));
        std::vector<std::string> witness{c.morphism_id(a), c.morphism_id(b)};
        if (!image)
          return ValidationReport::fail("PullbackNotPreserved", "the images have no pullback", witness);
        auto u = pullback_factor(c, *image, F.map(pb->proj_left), F.map(pb->proj_right));
        if (!u || !c.is_iso(*u))
          return ValidationReport::fail("PullbackNotPreserved", "comparison map is not an isomorphism", witness);
      }
  return ValidationReport::pass();
}

Pretopology induced_fix_pretopology(const Functor& F, const Pretopology& p, const FixCategoryResult& sf,
                                    Membership mode) {
  const FinCategory& c = *p.base;
  const FinCategory& k = *sf.carrier;
  Pretopology out;
  out.name = p.name.empty() ? std::string() : p.name + "|S(" + F.name() + ")";
  out.base = sf.carrier;
  out.covers.assign(k.num_objects(), {});

  for (Obj o = 0; o < k.num_objects(); ++o) {
    const Obj x = sf.points[o].object;
    std::vector<Mor> incoming;
    for (Mor m = 0; m < k.num_morphisms(); ++m)
      if (k.cod(m) == o) incoming.push_back(m);

    for (const auto& fam : p.covers[x]) {
      // Distinct member classes of the listed family.
      std::vector<Mor> classes;
      for (Mor u : normalized(fam.members)) {
        bool seen = false;
        for (Mor v : classes)
          if (mode == Membership::Strict ? u == v : equivalent_members(c, u, v)) seen = true;
        if (!seen) classes.push_back(u);
      }
      std::vector<std::vector<Mor>> lifts(classes.size());
      std::size_t total = 1;
      bool liftable = true;
      for (std::size_t i = 0; i < classes.size() && liftable; ++i) {
        for (Mor m : incoming) {
          Mor b = sf.forgetful.map(m);
          if (mode == Membership::Strict ? b == classes[i] : equivalent_members(c, b, classes[i]))
            lifts[i].push_back(m);
        }
        if (lifts[i].empty()) liftable = false;
        else if (lifts[i].size() >= 12 || (total *= (std::size_t{1} << lifts[i].size()) - 1) > 4096)
          throw Error("TooLarge", "too many lifted families for '" + fam.name + "'");
      }
      if (!liftable) continue;

      std::vector<std::size_t> mask(classes.size(), 1);
      int produced = 0;
      while (true) {
        std::vector<Mor> members;
        for (std::size_t i = 0; i < classes.size(); ++i)
          for (std::size_t j = 0; j < lifts[i].size(); ++j)
            if (mask[i] & (std::size_t{1} << j)) members.push_back(lifts[i][j]);
        members = normalized(std::move(members));
        bool dup = false;
        for (const auto& existing : out.covers[o])
          if (existing.members == members) dup = true;
        if (!dup) {
          ++produced;
          std::string name = produced == 1 ? fam.name : fam.name + "#" + std::to_string(produced);
          out.covers[o].push_back({std::move(name), std::move(members)});
        }
        std::size_t i = 0;
        while (i < mask.size() && ++mask[i] == (std::size_t{1} << lifts[i].size())) mask[i++] = 1;
        if (i == mask.size()) break;
      }
    }
  }
  return out;
}

FixPullbackResult fix_pullback(const FixCategoryResult& sf, Mor f, Mor g) {
  const FinCategory& k = *sf.carrier;
  const FinCategory& c = *sf.functor.source();
  const Functor& F = sf.functor;
  if (k.cod(f) != k.cod(g)) throw Error("NotACospan", "fixed-point morphisms with different codomains");
  const FixedPoint& p2 = sf.points[k.dom(f)];
  const FixedPoint& p3 = sf.points[k.dom(g)];
  const Mor bf = sf.forgetful.map(f);
  const Mor bg = sf.forgetful.map(g);

  FixPullbackResult r;
  r.base = pullback(c, bf, bg);
  auto image = find_pullback(c, F.map(bf), F.map(bg));
  if (!image) throw Error("NotSiteMorphism", "F does not keep the pullback of " + c.morphism_id(bf) + ", " +
                                                 c.morphism_id(bg));
  auto s1 = pullback_factor(c, *image, c.compose(p2.iso, r.base.proj_left), c.compose(p3.iso, r.base.proj_right));
  auto s2 = pullback_factor(c, *image, F.map(r.base.proj_left), F.map(r.base.proj_right));
  if (!s1 || !s2 || !c.is_iso(*s2))
    throw Error("NotSiteMorphism", "pullback comparison is not an isomorphism");
  r.sigma1 = *s1;
  r.sigma2 = *s2;
  r.sigma = c.compose(*c.inverse(*s2), *s1);
  if (!c.is_iso(r.sigma)) throw Error("NotSiteMorphism", "induced structure map is not an isomorphism");

  const Obj vertex = sf.object_of({r.base.vertex, r.sigma});
  r.pullback.vertex = vertex;
  r.pullback.proj_left = sf.morphism_of(r.base.proj_left, vertex, k.dom(f));
  r.pullback.proj_right = sf.morphism_of(r.base.proj_right, vertex, k.dom(g));
  if (r.pullback.proj_left == kNone || r.pullback.proj_right == kNone)
    throw Error("NotSiteMorphism", "projections are not fixed-point morphisms");
  r.universal = is_pullback(k, f, g, r.pullback);
  return r;
}

// ------------------------------------------------------------- additivity

const Biproduct* AbEnrichment::biproduct(Obj x, Obj y) const {
  for (const auto& b : biproducts)
    if (b.left == x && b.right == y) return &b;
  return nullptr;
}

AbEnrichment empty_enrichment(const CategoryPtr& base) {
  AbEnrichment e;
  e.base = base;
  e.sum.assign(static_cast<std::size_t>(base->num_morphisms()) * base->num_morphisms(), kNone);
  e.zero.assign(static_cast<std::size_t>(base->num_objects()) * base->num_objects(), kNone);
  return e;
}

std::optional<Obj> zero_object(const AbEnrichment& e) {
  const FinCategory& c = *e.base;
  for (Obj z = 0; z < c.num_objects(); ++z) {
    bool ok = true;
    for (Obj y = 0; y < c.num_objects() && ok; ++y) ok = c.hom(z, y).size() == 1 && c.hom(y, z).size() == 1;
    if (ok) return z;
  }
  return std::nullopt;
}

bool biproduct_laws_hold(const AbEnrichment& e, const Biproduct& b) {
  const FinCategory& c = *e.base;
  auto typed = [&](Mor m, Obj d, Obj t) { return m >= 0 && m < c.num_morphisms() && c.dom(m) == d && c.cod(m) == t; };
  if (!typed(b.in_left, b.left, b.sum) || !typed(b.in_right, b.right, b.sum) || !typed(b.out_left, b.sum, b.left) ||
      !typed(b.out_right, b.sum, b.right))
    return false;
  return c.compose(b.out_left, b.in_left) == c.identity(b.left) &&
         c.compose(b.out_right, b.in_right) == c.identity(b.right) &&
         c.compose(b.out_left, b.in_right) == e.zero_of(b.right, b.left) &&
         c.compose(b.out_right, b.in_left) == e.zero_of(b.left, b.right) &&
         e.add(c.compose(b.in_left, b.out_left), c.compose(b.in_right, b.out_right)) == c.identity(b.sum);
}

std::optional<Biproduct> find_biproduct(const AbEnrichment& e, Obj x, Obj y) {
  if (const Biproduct* b = e.biproduct(x, y)) return *b;
  const FinCategory& c = *e.base;
  for (Obj s = 0; s < c.num_objects(); ++s)
    for (Mor i1 : c.hom(x, s))
      for (Mor p1 : c.hom(s, x)) {
        if (c.compose(p1, i1) != c.identity(x)) continue;
        for (Mor i2 : c.hom(y, s))
          for (Mor p2 : c.hom(s, y)) {
            Biproduct b{x, y, s, i1, i2, p1, p2};
            if (biproduct_laws_hold(e, b)) return b;
          }
      }
  return std::nullopt;
}

ValidationReport check_additive(const AbEnrichment& e) {
  const FinCategory& c = *e.base;
  const std::size_t m = c.num_morphisms();
  const std::size_t k = c.num_objects();
  if (e.sum.size() != m * m || e.zero.size() != k * k)
    return ValidationReport::fail("Malformed", "enrichment tables do not match the category");
  auto id = [&](Mor f) { return c.morphism_id(f); };

  for (Obj x = 0; x < c.num_objects(); ++x)
    for (Obj y = 0; y < c.num_objects(); ++y) {
      const auto& hom = c.hom(x, y);
      std::set<Mor> members(hom.begin(), hom.end());
      const Mor z = e.zero_of(x, y);
      const std::vector<std::string> where{c.object_id(x), c.object_id(y)};
      if (!members.count(z)) return ValidationReport::fail("HomNotGroup", "zero morphism outside the hom-set", where);
      for (Mor f : hom)
        for (Mor g : hom)
          if (!members.count(e.add(f, g)))
            return ValidationReport::fail("HomNotGroup", id(f) + " + " + id(g) + " is undefined or ill-typed",
                                          {id(f), id(g)});
      for (Mor f : hom) {
        if (e.add(z, f) != f)
          return ValidationReport::fail("HomNotGroup", "zero is not neutral for " + id(f), {id(z), id(f)});
        bool has_inverse = false;
        for (Mor g : hom) {
          if (e.add(f, g) != e.add(g, f))
            return ValidationReport::fail("HomNotGroup", "addition not commutative", {id(f), id(g)});
          if (e.add(f, g) == z) has_inverse = true;
          for (Mor h : hom)
            if (e.add(e.add(f, g), h) != e.add(f, e.add(g, h)))
              return ValidationReport::fail("HomNotGroup", "addition not associative", {id(f), id(g), id(h)});
        }
        if (!has_inverse) return ValidationReport::fail("HomNotGroup", id(f) + " has no negative", {id(f)});
      }
    }

  for (Obj x = 0; x < c.num_objects(); ++x)
    for (Obj y = 0; y < c.num_objects(); ++y)
      for (Mor f : c.hom(x, y))
        for (Mor g : c.hom(x, y)) {
          const Mor s = e.add(f, g);
          for (Obj w = 0; w < c.num_objects(); ++w) {
            for (Mor h : c.hom(y, w))
              if (c.compose(h, s) != e.add(c.compose(h, f), c.compose(h, g)))
                return ValidationReport::fail("CompositionNotBilinear", "post-composition not additive",
                                              {id(h), id(f), id(g)});
            for (Mor h : c.hom(w, x))
              if (c.compose(s, h) != e.add(c.compose(f, h), c.compose(g, h)))
                return ValidationReport::fail("CompositionNotBilinear", "pre-composition not additive",
                                              {id(f), id(g), id(h)});
          }
        }

  if (!zero_object(e)) return ValidationReport::fail("ZeroObjectMissing", "no zero object");
  for (const auto& b : e.biproducts)
    if (!biproduct_laws_hold(e, b))
      return ValidationReport::fail("BiproductLawFails", "biproduct witness fails its identities",
                                    {c.object_id(b.left), c.object_id(b.right), c.object_id(b.sum)});
  return ValidationReport::pass();
}

std::optional<Mor> additive_comparison(const Functor& F, const AbEnrichment& e, const Biproduct& b,
                                       const Biproduct& image) {
  const FinCategory& c = *e.base;
  if (image.left != F(b.left) || image.right != F(b.right)) return std::nullopt;
  Mor s = e.add(c.compose(image.in_left, F.map(b.out_left)), c.compose(image.in_right, F.map(b.out_right)));
  if (s == kNone) return std::nullopt;
  return s;
}

ValidationReport check_additive_functor(const Functor& F, const AbEnrichment& e) {
  F.require_endofunctor();
  const FinCategory& c = *e.base;
  auto zero = zero_object(e);
  if (!zero) return ValidationReport::fail("ZeroObjectMissing", "no zero object");
  for (Obj y = 0; y < c.num_objects(); ++y)
    if (c.hom(F(*zero), y).size() != 1 || c.hom(y, F(*zero)).size() != 1)
      return ValidationReport::fail("FunctorNotAdditive", "F(0) is not a zero object", {c.object_id(F(*zero))});
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (Obj y = 0; y < c.num_objects(); ++y)
      for (Mor f : c.hom(x, y))
        for (Mor g : c.hom(x, y))
          if (F.map(e.add(f, g)) != e.add(F.map(f), F.map(g)))
            return ValidationReport::fail("FunctorNotAdditive", "F(f + g) != F(f) + F(g)",
                                          {c.morphism_id(f), c.morphism_id(g)});
  for (const auto& b : e.biproducts) {
    auto image = find_biproduct(e, F(b.left), F(b.right));
    std::vector<std::string> where{c.object_id(b.left), c.object_id(b.right)};
    if (!image) return ValidationReport::fail("FunctorNotAdditive", "no biproduct of the images", where);
    auto s = additive_comparison(F, e, b, *image);
    if (!s || !c.is_iso(*s))
      return ValidationReport::fail("FunctorNotAdditive", "comparison F(X + Y) -> F(X) + F(Y) is not an isomorphism",
                                    where);
  }
  return ValidationReport::pass();
}

AbEnrichment fix_additive(const Functor& F, const AbEnrichment& e, const FixCategoryResult& sf) {
  if (auto r = check_additive(e); !r) throw ValidationError(r);
  if (auto r = check_additive_functor(F, e); !r) throw ValidationError(r);
  const FinCategory& c = *e.base;
  const FinCategory& k = *sf.carrier;
  AbEnrichment out = empty_enrichment(sf.carrier);

  auto lift = [&](Mor base, Obj from, Obj to) {
    Mor m = sf.morphism_of(base, from, to);
    if (m == kNone)
      throw Error("NotClosed", c.morphism_id(base) + " is not a morphism " + k.object_id(from) + " -> " +
                                   k.object_id(to));
    return m;
  };

  for (Obj a = 0; a < k.num_objects(); ++a)
    for (Obj b = 0; b < k.num_objects(); ++b) {
      const Obj x = sf.points[a].object;
      const Obj y = sf.points[b].object;
      out.zero[static_cast<std::size_t>(a) * k.num_objects() + b] = lift(e.zero_of(x, y), a, b);
      for (Mor f : k.hom(a, b))
        for (Mor g : k.hom(a, b))
          out.sum[static_cast<std::size_t>(f) * k.num_morphisms() + g] =
              lift(e.add(sf.forgetful.map(f), sf.forgetful.map(g)), a, b);
    }

  for (Obj a = 0; a < k.num_objects(); ++a)
    for (Obj b = 0; b < k.num_objects(); ++b) {
      const FixedPoint& p = sf.points[a];
      const FixedPoint& q = sf.points[b];
      const Biproduct* bp = e.biproduct(p.object, q.object);
      if (!bp) continue;
      auto image = find_biproduct(e, F(p.object), F(q.object));
      if (!image) throw Error("FunctorNotAdditive", "no biproduct of the images");
      auto sigma = additive_comparison(F, e, *bp, *image);
      if (!sigma || !c.is_iso(*sigma)) throw Error("FunctorNotAdditive", "comparison is not an isomorphism");
      // alpha ⊕ beta: X ⊕ Y -> F(X) ⊕ F(Y)
      Mor sum_map = e.add(c.compose(image->in_left, c.compose(p.iso, bp->out_left)),
                          c.compose(image->in_right, c.compose(q.iso, bp->out_right)));
      Mor gamma = c.compose(*c.inverse(*sigma), sum_map);
      if (!c.is_iso(gamma)) throw Error("NotClosed", "induced structure map on the biproduct is not invertible");
      Obj s = sf.object_of({bp->sum, gamma});
      out.biproducts.push_back({a, b, s, lift(bp->in_left, a, s), lift(bp->in_right, b, s), lift(bp->out_left, s, a),
                                lift(bp->out_right, s, b)});
    }
  return out;
}

}  // namespace fixcat
