#include "fixcat/limits.hpp"

#include <algorithm>

namespace fixcat {

namespace {

struct Cone {
  Obj vertex;
  Mor left;
  Mor right;
};

std::vector<Cone> pullback_cones(const FinCategory& c, Mor f, Mor g) {
  std::vector<Cone> cones;
  for (Obj p = 0; p < c.num_objects(); ++p)
    for (Mor l : c.hom(p, c.dom(f)))
      for (Mor r : c.hom(p, c.dom(g)))
        if (c.compose(f, l) == c.compose(g, r)) cones.push_back({p, l, r});
  return cones;
}

std::vector<Cone> pushout_cocones(const FinCategory& c, Mor f, Mor g) {
  std::vector<Cone> cones;
  for (Obj q = 0; q < c.num_objects(); ++q)
    for (Mor l : c.hom(c.cod(f), q))
      for (Mor r : c.hom(c.cod(g), q))
        if (c.compose(l, f) == c.compose(r, g)) cones.push_back({q, l, r});
  return cones;
}

int count_cone_factors(const FinCategory& c, const Cone& u, const Cone& other) {
  int n = 0;
  for (Mor m : c.hom(other.vertex, u.vertex))
    if (c.compose(u.left, m) == other.left && c.compose(u.right, m) == other.right) ++n;
  return n;
}

int count_cocone_factors(const FinCategory& c, const Cone& u, const Cone& other) {
  int n = 0;
  for (Mor m : c.hom(u.vertex, other.vertex))
    if (c.compose(m, u.left) == other.left && c.compose(m, u.right) == other.right) ++n;
  return n;
}

}  // namespace

std::optional<PullbackResult> find_pullback(const FinCategory& c, Mor f, Mor g) {
  if (c.cod(f) != c.cod(g))
    throw Error("NotACospan", c.morphism_id(f) + " and " + c.morphism_id(g) + " have different codomains");
  const auto cones = pullback_cones(c, f, g);
  for (const Cone& u : cones) {
    bool universal = true;
    for (const Cone& other : cones)
      if (count_cone_factors(c, u, other) != 1) {
        universal = false;
        break;
      }
    if (universal) return PullbackResult{u.vertex, u.left, u.right};
  }
  return std::nullopt;
}

bool is_pullback(const FinCategory& c, Mor f, Mor g, const PullbackResult& cone) {
  if (c.cod(f) != c.cod(g) || c.compose(f, cone.proj_left) != c.compose(g, cone.proj_right)) return false;
  const Cone u{cone.vertex, cone.proj_left, cone.proj_right};
  for (const Cone& other : pullback_cones(c, f, g))
    if (count_cone_factors(c, u, other) != 1) return false;
  return true;
}

PullbackResult pullback(const FinCategory& c, Mor f, Mor g) {
  if (auto r = find_pullback(c, f, g)) return *r;
  throw Error("NoPullback", "no pullback of " + c.morphism_id(f) + " and " + c.morphism_id(g));
}

std::optional<PushoutResult> find_pushout(const FinCategory& c, Mor f, Mor g) {
  if (c.dom(f) != c.dom(g))
    throw Error("NotASpan", c.morphism_id(f) + " and " + c.morphism_id(g) + " have different domains");
  const auto cones = pushout_cocones(c, f, g);
  for (const Cone& u : cones) {
    bool universal = true;
    for (const Cone& other : cones)
      if (count_cocone_factors(c, u, other) != 1) {
        universal = false;
        break;
      }
    if (universal) return PushoutResult{u.vertex, u.left, u.right};
  }
  return std::nullopt;
}

PushoutResult pushout(const FinCategory& c, Mor f, Mor g) {
  if (auto r = find_pushout(c, f, g)) return *r;
  throw Error("NoPushout", "no pushout of " + c.morphism_id(f) + " and " + c.morphism_id(g));
}

std::optional<Mor> pullback_factor(const FinCategory& c, const PullbackResult& pb, Mor p, Mor q) {
  if (c.dom(p) != c.dom(q)) return std::nullopt;
  for (Mor u : c.hom(c.dom(p), pb.vertex))
    if (c.compose(pb.proj_left, u) == p && c.compose(pb.proj_right, u) == q) return u;
  return std::nullopt;
}

std::optional<Mor> pushout_factor(const FinCategory& c, const PushoutResult& po, Mor p, Mor q) {
  if (c.cod(p) != c.cod(q)) return std::nullopt;
  for (Mor u : c.hom(po.vertex, c.cod(p)))
    if (c.compose(u, po.inj_left) == p && c.compose(u, po.inj_right) == q) return u;
  return std::nullopt;
}

std::optional<PullbackResult> PullbackCache::find(Mor f, Mor g) {
  auto key = std::make_pair(f, g);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  auto r = find_pullback(*c_, f, g);
  memo_.emplace(key, r);
  return r;
}

PullbackResult PullbackCache::get(Mor f, Mor g) {
  if (auto r = find(f, g)) return *r;
  throw Error("NoPullback", "no pullback of " + c_->morphism_id(f) + " and " + c_->morphism_id(g));
}

// ------------------------------------------------------------------ slices

std::string triangle_id(const std::string& leg, const std::string& source, const std::string& target) {
  return "(" + leg + ";" + source + ";" + target + ")";
}

Obj SliceCategory::object_of(Mor leg) const { return carrier->object(base->morphism_id(leg)); }

Mor SliceCategory::morphism_of(Mor h, Obj source, Obj target) const {
  auto it = triangle.find({h, source, target});
  if (it == triangle.end())
    throw Error("UnknownMorphism", "no triangle " + triangle_id(base->morphism_id(h), carrier->object_id(source),
                                                                carrier->object_id(target)));
  return it->second;
}

namespace {

SliceCategory build_slice(const CategoryPtr& cp, Obj x, bool co) {
  const FinCategory& c = *cp;
  if (x < 0 || x >= c.num_objects()) throw Error("UnknownObject", "slice apex out of range");

  std::vector<Mor> legs;
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if ((co ? c.dom(f) : c.cod(f)) == x) legs.push_back(f);
  // The end of a leg away from the apex.
  auto foot = [&](Mor leg) { return co ? c.cod(leg) : c.dom(leg); };

  struct Tri {
    Mor h;
    Mor from;
    Mor to;
  };
  std::vector<Tri> tris;
  std::map<std::array<int, 3>, std::size_t> tri_index;
  for (Mor f1 : legs)
    for (Mor f2 : legs)
      for (Mor h : c.hom(foot(f1), foot(f2))) {
        bool commutes = co ? c.compose(h, f1) == f2 : c.compose(f2, h) == f1;
        if (!commutes) continue;
        tri_index[{h, f1, f2}] = tris.size();
        tris.push_back({h, f1, f2});
      }

  auto tri_name = [&](const Tri& t) {
    return triangle_id(c.morphism_id(t.h), c.morphism_id(t.from), c.morphism_id(t.to));
  };

  CategoryData d;
  for (Mor f : legs) d.objects.push_back(c.morphism_id(f));
  for (const Tri& t : tris) d.morphisms.push_back({tri_name(t), c.morphism_id(t.from), c.morphism_id(t.to)});
  for (Mor f : legs) d.identities[c.morphism_id(f)] = tri_name({c.identity(foot(f)), f, f});
  for (const Tri& t1 : tris)
    for (const Tri& t2 : tris) {
      if (t1.to != t2.from) continue;
      Tri comp{c.compose(t2.h, t1.h), t1.from, t2.to};
      d.composition.push_back({tri_name(t2), tri_name(t1), tri_name(tris.at(tri_index.at({comp.h, comp.from, comp.to})))});
    }

  SliceCategory s;
  s.base = cp;
  s.apex = x;
  s.coslice = co;
  s.carrier = FinCategory::from_data(d, (co ? c.object_id(x) + "/" + c.name() : c.name() + "/" + c.object_id(x)));
  const FinCategory& k = *s.carrier;
  s.object_leg.resize(k.num_objects());
  for (Obj o = 0; o < k.num_objects(); ++o) s.object_leg[o] = c.morphism(k.object_id(o));

  std::vector<Obj> om(k.num_objects());
  std::vector<Mor> mm(k.num_morphisms());
  for (Obj o = 0; o < k.num_objects(); ++o) om[o] = foot(s.object_leg[o]);
  for (const Tri& t : tris) {
    Mor m = k.morphism(tri_name(t));
    mm[m] = t.h;
    s.triangle[{t.h, k.dom(m), k.cod(m)}] = m;
  }
  s.projection = Functor(s.carrier, cp, std::move(om), std::move(mm), "proj");
  return s;
}

}  // namespace

SliceCategory slice(const CategoryPtr& c, Obj x) { return build_slice(c, x, false); }
SliceCategory coslice(const CategoryPtr& c, Obj x) { return build_slice(c, x, true); }

SliceFunctor base_change(const CategoryPtr& cp, Mor sigma) {
  const FinCategory& c = *cp;
  SliceCategory src = slice(cp, c.cod(sigma));
  SliceCategory tgt = slice(cp, c.dom(sigma));
  const FinCategory& s = *src.carrier;

  std::vector<PullbackResult> pb(s.num_objects());
  std::vector<Obj> om(s.num_objects());
  for (Obj o = 0; o < s.num_objects(); ++o) {
    auto r = find_pullback(c, sigma, src.object_leg[o]);
    if (!r)
      throw Error("NoPullback", "no pullback of " + c.morphism_id(sigma) + " along " + s.object_id(o));
    pb[o] = *r;
    om[o] = tgt.object_of(r->proj_left);
  }
  std::vector<Mor> mm(s.num_morphisms());
  for (Mor m = 0; m < s.num_morphisms(); ++m) {
    Obj a = s.dom(m);
    Obj b = s.cod(m);
    Mor h = src.projection.map(m);
    auto u = pullback_factor(c, pb[b], pb[a].proj_left, c.compose(h, pb[a].proj_right));
    if (!u) throw Error("NoPullback", "pullback of " + c.morphism_id(sigma) + " is not universal");
    mm[m] = tgt.morphism_of(*u, om[a], om[b]);
  }
  Functor f(src.carrier, tgt.carrier, std::move(om), std::move(mm), "pullback(" + c.morphism_id(sigma) + ")");
  return {std::move(src), std::move(tgt), std::move(f)};
}

SliceFunctor cobase_change(const CategoryPtr& cp, Mor sigma) {
  const FinCategory& c = *cp;
  SliceCategory src = coslice(cp, c.dom(sigma));
  SliceCategory tgt = coslice(cp, c.cod(sigma));
  const FinCategory& s = *src.carrier;

  std::vector<PushoutResult> po(s.num_objects());
  std::vector<Obj> om(s.num_objects());
  for (Obj o = 0; o < s.num_objects(); ++o) {
    auto r = find_pushout(c, sigma, src.object_leg[o]);
    if (!r)
      throw Error("NoPushout", "no pushout of " + c.morphism_id(sigma) + " along " + s.object_id(o));
    po[o] = *r;
    om[o] = tgt.object_of(r->inj_left);
  }
  std::vector<Mor> mm(s.num_morphisms());
  for (Mor m = 0; m < s.num_morphisms(); ++m) {
    Obj a = s.dom(m);
    Obj b = s.cod(m);
    Mor h = src.projection.map(m);
    auto u = pushout_factor(c, po[a], po[b].inj_left, c.compose(po[b].inj_right, h));
    if (!u) throw Error("NoPushout", "pushout of " + c.morphism_id(sigma) + " is not universal");
    mm[m] = tgt.morphism_of(*u, om[a], om[b]);
  }
  Functor f(src.carrier, tgt.carrier, std::move(om), std::move(mm), "pushout(" + c.morphism_id(sigma) + ")");
  return {std::move(src), std::move(tgt), std::move(f)};
}

SliceFunctor postcompose(const CategoryPtr& cp, Mor sigma) {
  const FinCategory& c = *cp;
  SliceCategory src = slice(cp, c.dom(sigma));
  SliceCategory tgt = slice(cp, c.cod(sigma));
  const FinCategory& s = *src.carrier;
  std::vector<Obj> om(s.num_objects());
  for (Obj o = 0; o < s.num_objects(); ++o) om[o] = tgt.object_of(c.compose(sigma, src.object_leg[o]));
  std::vector<Mor> mm(s.num_morphisms());
  for (Mor m = 0; m < s.num_morphisms(); ++m) mm[m] = tgt.morphism_of(src.projection.map(m), om[s.dom(m)], om[s.cod(m)]);
  Functor f(src.carrier, tgt.carrier, std::move(om), std::move(mm), "post(" + c.morphism_id(sigma) + ")");
  return {std::move(src), std::move(tgt), std::move(f)};
}

SliceFunctor precompose(const CategoryPtr& cp, Mor sigma) {
  const FinCategory& c = *cp;
  SliceCategory src = coslice(cp, c.cod(sigma));
  SliceCategory tgt = coslice(cp, c.dom(sigma));
  const FinCategory& s = *src.carrier;
  std::vector<Obj> om(s.num_objects());
  for (Obj o = 0; o < s.num_objects(); ++o) om[o] = tgt.object_of(c.compose(src.object_leg[o], sigma));
  std::vector<Mor> mm(s.num_morphisms());
  for (Mor m = 0; m < s.num_morphisms(); ++m) mm[m] = tgt.morphism_of(src.projection.map(m), om[s.dom(m)], om[s.cod(m)]);
  Functor f(src.carrier, tgt.carrier, std::move(om), std::move(mm), "pre(" + c.morphism_id(sigma) + ")");
  return {std::move(src), std::move(tgt), std::move(f)};
}

// ---------------------------------------------------- adjoints, equivalence

AdjunctionReport check_adjunction(const Functor& L, const Functor& R) {
  AdjunctionReport report;
  if (!same_category(L.target(), R.source()) || !same_category(R.target(), L.source())) return report;
  const FinCategory& A = *L.source();
  const FinCategory& B = *L.target();

  // Universal arrows a -> R L a: f ↦ R(f)∘eta is a bijection Hom(La, b) -> Hom(a, Rb).
  auto universal = [&](Obj a, Mor eta) {
    for (Obj b = 0; b < B.num_objects(); ++b) {
      const auto& lhs = B.hom(L(a), b);
      const auto& rhs = A.hom(a, R(b));
      if (lhs.size() != rhs.size()) return false;
      std::vector<Mor> seen;
      for (Mor f : lhs) seen.push_back(A.compose(R.map(f), eta));
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
  };

  const int n = A.num_objects();
  std::vector<std::vector<Mor>> candidates(n);
  for (Obj a = 0; a < n; ++a) {
    for (Mor eta : A.hom(a, R(L(a))))
      if (universal(a, eta)) candidates[a].push_back(eta);
    if (candidates[a].empty()) return report;
  }
  std::vector<std::vector<Mor>> squares(n);
  for (Mor h = 0; h < A.num_morphisms(); ++h) squares[std::max(A.dom(h), A.cod(h))].push_back(h);

  std::vector<Mor> unit(n, kNone);
  std::vector<std::size_t> choice(n, 0);
  bool found = false;
  for (Obj a = 0; a >= 0 && !found;) {
    if (a == n) {
      found = true;
      break;
    }
    if (choice[a] == candidates[a].size()) {
      choice[a] = 0;
      unit[a] = kNone;
      if (--a >= 0) ++choice[a];
      continue;
    }
    unit[a] = candidates[a][choice[a]];
    bool ok = true;
    for (Mor h : squares[a])
      if (A.compose(R.map(L.map(h)), unit[A.dom(h)]) != A.compose(unit[A.cod(h)], h)) {
        ok = false;
        break;
      }
    if (ok)
      ++a;
    else
      ++choice[a];
  }
  if (!found) return report;

  std::vector<Mor> counit(B.num_objects(), kNone);
  for (Obj b = 0; b < B.num_objects(); ++b) {
    Obj rb = R(b);
    for (Mor f : B.hom(L(rb), b))
      if (A.compose(R.map(f), unit[rb]) == A.identity(rb)) {
        counit[b] = f;
        break;
      }
    if (counit[b] == kNone) return report;
  }
  for (Obj a = 0; a < n; ++a)
    if (B.compose(counit[L(a)], L.map(unit[a])) != B.identity(L(a))) return report;

  report.found = true;
  report.unit = std::move(unit);
  report.counit = std::move(counit);
  return report;
}

EquivalenceReport is_equivalence(const Functor& F) {
  const FinCategory& s = *F.source();
  const FinCategory& t = *F.target();
  EquivalenceReport r;
  r.fully_faithful = true;
  for (Obj a = 0; a < s.num_objects() && r.fully_faithful; ++a)
    for (Obj b = 0; b < s.num_objects() && r.fully_faithful; ++b) {
      const auto& src = s.hom(a, b);
      if (src.size() != t.hom(F(a), F(b)).size()) {
        r.fully_faithful = false;
        break;
      }
      std::vector<Mor> images;
      for (Mor f : src) images.push_back(F.map(f));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) r.fully_faithful = false;
    }
  r.essentially_surjective = true;
  for (Obj y = 0; y < t.num_objects() && r.essentially_surjective; ++y) {
    bool hit = false;
    for (Obj a = 0; a < s.num_objects() && !hit; ++a) hit = t.isomorphic(F(a), y);
    r.essentially_surjective = hit;
  }
  return r;
}

bool is_mono(const FinCategory& c, Mor f) {
  for (Obj w = 0; w < c.num_objects(); ++w) {
    std::vector<Mor> images;
    for (Mor g : c.hom(w, c.dom(f))) images.push_back(c.compose(f, g));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

bool is_epi(const FinCategory& c, Mor f) {
  for (Obj w = 0; w < c.num_objects(); ++w) {
    std::vector<Mor> images;
    for (Mor g : c.hom(c.cod(f), w)) images.push_back(c.compose(g, f));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

BalancedReport is_balanced(const FinCategory& c) {
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_iso(f) && is_mono(c, f) && is_epi(c, f)) return {false, f};
  return {};
}

CriterionReport fixpoint_criterion(const Functor& F, Obj x, Mor sigma) {
  F.require_endofunctor();
  const CategoryPtr& cp = F.source();
  const FinCategory& c = *cp;
  if (c.dom(sigma) != x || c.cod(sigma) != F(x))
    throw Error("NotFixedPointCandidate", c.morphism_id(sigma) + " is not a morphism X -> F(X)");
  CriterionReport r;
  r.sigma_iso = c.is_iso(sigma);
  r.tau_equiv = is_equivalence(base_change(cp, sigma).functor).equivalence();
  r.s_equiv = is_equivalence(cobase_change(cp, sigma).functor).equivalence();
  r.balanced = is_balanced(c).balanced;
  r.forward_ok = !r.sigma_iso || (r.tau_equiv && r.s_equiv);
  r.biconditional_ok = !r.balanced || (r.sigma_iso == (r.tau_equiv && r.s_equiv));
  return r;
}

}  // namespace fixcat
