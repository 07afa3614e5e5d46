#include "fixcat/sheaf.hpp"

#include <algorithm>

namespace fixcat {

namespace {

// Left-associated iterated fiber products over an ordered family of legs.
class FiberPlan {
 public:
  struct Node {
    Obj vertex = kNone;
    Mor leg = kNone;           // vertex -> base object
    std::vector<Mor> factors;  // vertex -> dom(leg_{t_j})
    PullbackResult pullback;   // unset for 1-tuples
  };

  FiberPlan(const FinCategory& c, std::vector<Mor> legs) : c_(c), legs_(std::move(legs)), cache_(c) {}

  const Node& node(const std::vector<int>& t) {
    auto it = nodes_.find(t);
    if (it != nodes_.end()) return it->second;
    Node n;
    if (t.size() == 1) {
      Mor leg = legs_[t[0]];
      n.vertex = c_.dom(leg);
      n.leg = leg;
      n.factors = {c_.identity(n.vertex)};
    } else {
      const Node& prefix = node({t.begin(), t.end() - 1});
      n.pullback = cache_.get(prefix.leg, legs_[t.back()]);
      n.vertex = n.pullback.vertex;
      n.leg = c_.compose(prefix.leg, n.pullback.proj_left);
      for (Mor p : prefix.factors) n.factors.push_back(c_.compose(p, n.pullback.proj_left));
      n.factors.push_back(n.pullback.proj_right);
    }
    return nodes_.emplace(t, std::move(n)).first->second;
  }

  // The morphism into the fiber product of s with the given factor maps, or
  // kNone when they do not form a cone.
  Mor factor_into(const std::vector<int>& s, const std::vector<Mor>& phi) {
    if (s.size() == 1) return phi[0];
    Mor head = factor_into({s.begin(), s.end() - 1}, {phi.begin(), phi.end() - 1});
    if (head == kNone) return kNone;
    const Node& n = node(s);
    return pullback_factor(c_, n.pullback, head, phi.back()).value_or(kNone);
  }

  std::size_t size() const { return legs_.size(); }

 private:
  const FinCategory& c_;
  std::vector<Mor> legs_;
  PullbackCache cache_;
  std::map<std::vector<int>, Node> nodes_;
};

std::vector<std::vector<int>> all_tuples(std::size_t alphabet, std::size_t length) {
  std::vector<std::vector<int>> out;
  if (alphabet == 0) return out;
  std::vector<int> t(length, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = length;
    while (i > 0 && t[i - 1] == static_cast<int>(alphabet) - 1) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

std::size_t tuple_index(const std::vector<int>& t, std::size_t alphabet) {
  std::size_t idx = 0;
  for (int v : t) idx = idx * alphabet + static_cast<std::size_t>(v);
  return idx;
}

std::vector<std::size_t> offsets(const std::vector<PresentedAbGroup>& parts) {
  std::vector<std::size_t> off(parts.size() + 1, 0);
  for (std::size_t i = 0; i < parts.size(); ++i) off[i + 1] = off[i] + parts[i].generators();
  return off;
}

void add_block(IntMatrix& m, std::size_t row, std::size_t col, const IntMatrix& block, long sign) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) m(row + r, col + c) += sign * block(r, c);
}

void require_family(const FinCategory& c, const std::vector<Mor>& cover) {
  for (Mor m : cover) {
    if (m < 0 || m >= c.num_morphisms()) throw Error("Malformed", "cover member out of range");
    if (c.cod(m) != c.cod(cover.front()))
      throw Error("Malformed", "cover members " + c.morphism_id(cover.front()) + " and " + c.morphism_id(m) +
                                   " have different codomains");
  }
}

std::string family_label(const FinCategory& c, const std::vector<Mor>& members) {
  std::string s = "[";
  for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + c.morphism_id(members[i]);
  return s + "]";
}

// Complex over a plan; values and restrictions read through mu.
CechComplex build_complex(FiberPlan& plan, const std::vector<Mor>& cover,
                          const Presheaf& mu, std::size_t max_degree) {
  CechComplex cx;
  cx.cover = cover;
  cx.max_degree = max_degree;
  const std::size_t a = cover.size();
  std::vector<std::vector<std::size_t>> offs;
  for (std::size_t q = 0; q <= max_degree + 1; ++q) {
    cx.tuples.push_back(all_tuples(a, q + 1));
    std::vector<Obj> verts;
    std::vector<PresentedAbGroup> parts;
    for (const auto& t : cx.tuples.back()) {
      verts.push_back(plan.node(t).vertex);
      parts.push_back(mu.value(verts.back()));
    }
    offs.push_back(offsets(parts));
    cx.vertices.push_back(std::move(verts));
    cx.groups.push_back(PresentedAbGroup::direct_sum(parts));
  }
  for (std::size_t q = 0; q <= max_degree; ++q) {
    IntMatrix d(cx.groups[q + 1].generators(), cx.groups[q].generators());
    for (std::size_t r = 0; r < cx.tuples[q + 1].size(); ++r) {
      const auto& t = cx.tuples[q + 1][r];
      const auto& factors = plan.node(t).factors;
      for (std::size_t k = 0; k < t.size(); ++k) {
        std::vector<int> s;
        std::vector<Mor> phi;
        for (std::size_t j = 0; j < t.size(); ++j)
          if (j != k) {
            s.push_back(t[j]);
            phi.push_back(factors[j]);
          }
        Mor face = plan.factor_into(s, phi);
        if (face == kNone) throw Error("NoPullback", "face map missing in the iterated fiber product");
        add_block(d, offs[q + 1][r], offs[q][tuple_index(s, a)], mu.restriction(face).matrix, k % 2 ? -1 : 1);
      }
    }
    cx.differentials.push_back(AbHom{cx.groups[q], cx.groups[q + 1], std::move(d)});
  }
  return cx;
}

}  // namespace

// ---------------------------------------------------------------- presheaves

ValidationReport validate_presheaf(const Presheaf& mu) {
  if (!mu.base()) return ValidationReport::fail("Malformed", "presheaf has no site");
  const FinCategory& c = *mu.base();
  if (mu.values.size() != static_cast<std::size_t>(c.num_objects()) ||
      mu.restrictions.size() != static_cast<std::size_t>(c.num_morphisms()))
    return ValidationReport::fail("Malformed", "presheaf '" + mu.name + "' is not total on the base");

  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    const AbHom& r = mu.restriction(f);
    if (!(r.source == mu.value(c.cod(f))) || !(r.target == mu.value(c.dom(f))) || !hom_is_well_defined(r))
      return ValidationReport::fail("RestrictionIllTyped",
                                    "restriction along " + c.morphism_id(f) + " is not a hom mu(" +
                                        c.object_id(c.cod(f)) + ") -> mu(" + c.object_id(c.dom(f)) + ")",
                                    {c.morphism_id(f)});
  }
  for (Obj x = 0; x < c.num_objects(); ++x)
    if (!homs_equal(mu.restriction(c.identity(x)), AbHom::identity(mu.value(x))))
      return ValidationReport::fail("FunctorialityFails", "mu(id) is not the identity at " + c.object_id(x),
                                    {c.morphism_id(c.identity(x))});
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    for (Mor g = 0; g < c.num_morphisms(); ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      Mor gf = c.compose(g, f);
      if (!homs_equal(mu.restriction(gf), compose(mu.restriction(f), mu.restriction(g))))
        return ValidationReport::fail("FunctorialityFails",
                                      "mu(" + c.morphism_id(g) + " o " + c.morphism_id(f) + ") != mu(" +
                                          c.morphism_id(f) + ") o mu(" + c.morphism_id(g) + ")",
                                      {c.morphism_id(g), c.morphism_id(f), c.morphism_id(gf)});
    }
  return ValidationReport::pass();
}

ValidationReport validate_presheaf_morphism(const PresheafMorphism& m) {
  if (!m.from.base() || !same_category(m.from.base(), m.to.base()))
    return ValidationReport::fail("Malformed", "presheaf morphism '" + m.name + "' joins different bases");
  const FinCategory& c = *m.from.base();
  if (m.components.size() != static_cast<std::size_t>(c.num_objects()))
    return ValidationReport::fail("Malformed", "presheaf morphism '" + m.name + "' is not total");
  for (Obj x = 0; x < c.num_objects(); ++x) {
    const AbHom& h = m.components[x];
    if (!(h.source == m.from.value(x)) || !(h.target == m.to.value(x)) || !hom_is_well_defined(h))
      return ValidationReport::fail("ComponentIllTyped", "component at " + c.object_id(x) + " is ill-typed",
                                    {c.object_id(x)});
  }
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    Obj x = c.dom(f);
    Obj y = c.cod(f);
    if (!homs_equal(compose(m.to.restriction(f), m.components[y]), compose(m.components[x], m.from.restriction(f))))
      return ValidationReport::fail("NaturalityFails", "naturality square fails along " + c.morphism_id(f),
                                    {c.morphism_id(f)});
  }
  return ValidationReport::pass();
}

Presheaf pullback_presheaf(const Presheaf& mu, const Functor& f) {
  f.require_endofunctor();
  if (!same_category(f.source(), mu.base()))
    throw Error("NotEndofunctor", "functor " + f.name() + " does not act on the base of " + mu.name);
  const FinCategory& c = *mu.base();
  Presheaf out;
  out.name = mu.name + "*" + f.name();
  out.site = mu.site;
  for (Obj x = 0; x < c.num_objects(); ++x) out.values.push_back(mu.value(f(x)));
  for (Mor m = 0; m < c.num_morphisms(); ++m) out.restrictions.push_back(mu.restriction(f.map(m)));
  return out;
}

PresheafMorphism pullback_morphism(const PresheafMorphism& m, const Functor& f) {
  PresheafMorphism out;
  out.name = m.name + "*" + f.name();
  out.from = pullback_presheaf(m.from, f);
  out.to = pullback_presheaf(m.to, f);
  for (Obj x = 0; x < m.from.base()->num_objects(); ++x) out.components.push_back(m.components[f(x)]);
  return out;
}

// -------------------------------------------------------------- sheaf check

SheafReport is_sheaf(const Presheaf& mu) {
  const FinCategory& c = *mu.base();
  PullbackCache cache(c);
  for (Obj x = 0; x < c.num_objects(); ++x) {
    for (const CoveringFamily& fam : mu.site.covers[x]) {
      const auto& ms = fam.members;
      std::vector<PresentedAbGroup> parts;
      for (Mor m : ms) parts.push_back(mu.value(c.dom(m)));
      const auto off1 = offsets(parts);
      PresentedAbGroup prod1 = PresentedAbGroup::direct_sum(parts);

      IntMatrix e(prod1.generators(), mu.value(x).generators());
      for (std::size_t i = 0; i < ms.size(); ++i) add_block(e, off1[i], 0, mu.restriction(ms[i]).matrix, 1);

      std::vector<PullbackResult> pbs;
      std::vector<PresentedAbGroup> parts2;
      for (Mor mi : ms)
        for (Mor mj : ms) {
          pbs.push_back(cache.get(mi, mj));
          parts2.push_back(mu.value(pbs.back().vertex));
        }
      const auto off2 = offsets(parts2);
      PresentedAbGroup prod2 = PresentedAbGroup::direct_sum(parts2);
      IntMatrix diff(prod2.generators(), prod1.generators());
      for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j < ms.size(); ++j) {
          const std::size_t b = i * ms.size() + j;
          add_block(diff, off2[b], off1[i], mu.restriction(pbs[b].proj_left).matrix, 1);
          add_block(diff, off2[b], off1[j], mu.restriction(pbs[b].proj_right).matrix, -1);
        }

      AbHom eh{mu.value(x), prod1, std::move(e)};
      AbHom dh{prod1, prod2, std::move(diff)};
      SheafReport fail{false, x, fam.name, {}};
      if (!is_injective(eh)) {
        fail.reason = "restriction to the cover is not injective";
        return fail;
      }
      if (!is_zero_hom(compose(dh, eh))) {
        fail.reason = "restrictions disagree on fiber products";
        return fail;
      }
      if (!homology_group(eh, dh).is_trivial()) {
        fail.reason = "compatible families do not glue";
        return fail;
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------- Čech

CechComplex cech_complex(const FinCategory& c, const std::vector<Mor>& cover, const Presheaf& mu,
                         std::size_t max_degree) {
  require_family(c, cover);
  FiberPlan plan(c, cover);
  return build_complex(plan, cover, mu, max_degree);
}

AbGroupInvariants cech_cohomology(const CechComplex& cx, std::size_t n) {
  if (n > cx.max_degree)
    throw Error("DegreeOutOfRange",
                "degree " + std::to_string(n) + " exceeds the bound " + std::to_string(cx.max_degree));
  return homology_at(cx.differentials, n);
}

AbGroupInvariants cech_cohomology(const FinCategory& c, const std::vector<Mor>& cover, const Presheaf& mu,
                                  std::size_t n) {
  return cech_cohomology(cech_complex(c, cover, mu, n), n);
}

FlabbyReport is_flabby(const Presheaf& mu, std::size_t max_degree) {
  const FinCategory& c = *mu.base();
  FlabbyReport rep;
  rep.max_degree = max_degree;
  if (max_degree == 0) return rep;
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (const CoveringFamily& fam : mu.site.covers[x]) {
      CechComplex cx = cech_complex(c, fam.members, mu, max_degree);
      for (std::size_t n = 1; n <= max_degree; ++n) {
        AbGroupInvariants h = cech_cohomology(cx, n);
        if (!h.is_trivial()) {
          rep.flabby = false;
          rep.object = x;
          rep.cover = fam.name;
          rep.degree = n;
          rep.group = std::move(h);
          return rep;
        }
      }
    }
  return rep;
}

ComparisonReport comparison_iso(const std::vector<Mor>& cover, const Presheaf& mu, const Functor& f,
                                std::size_t max_degree) {
  const FinCategory& c = *mu.base();
  Presheaf pulled = pullback_presheaf(mu, f);
  require_family(c, cover);

  std::vector<Mor> image_cover;
  for (Mor m : cover) image_cover.push_back(f.map(m));
  FiberPlan plan_u(c, cover);
  FiberPlan plan_v(c, image_cover);
  CechComplex cu = build_complex(plan_u, cover, pulled, max_degree);
  CechComplex cv = build_complex(plan_v, image_cover, mu, max_degree);

  ComparisonReport rep;
  rep.all_iso = true;
  for (std::size_t q = 0; q <= max_degree + 1; ++q) {
    std::vector<IntMatrix> blocks;
    for (const auto& t : cu.tuples[q]) {
      std::vector<Mor> phi;
      for (Mor p : plan_u.node(t).factors) phi.push_back(f.map(p));
      Mor cmp = plan_v.factor_into(t, phi);
      if (cmp == kNone)
        throw Error("NotSiteMorphism", "no comparison into the iterated fiber product of " +
                                           family_label(c, image_cover));
      auto inv = c.inverse(cmp);
      if (!inv)
        throw Error("NotSiteMorphism", "comparison " + c.morphism_id(cmp) + " is not an isomorphism");
      blocks.push_back(mu.restriction(*inv).matrix);
    }
    AbHom phi{cu.groups[q], cv.groups[q], IntMatrix::block_diagonal(blocks)};
    if (blocks.empty()) phi.matrix = IntMatrix(cv.groups[q].generators(), cu.groups[q].generators());
    rep.all_iso = rep.all_iso && is_isomorphism(phi);
    rep.phi.push_back(std::move(phi));
  }
  rep.ladder_commutes = true;
  for (std::size_t q = 0; q <= max_degree; ++q)
    if (!homs_equal(compose(cv.differentials[q], rep.phi[q]), compose(rep.phi[q + 1], cu.differentials[q])))
      rep.ladder_commutes = false;
  rep.cohomology_matches = true;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    rep.pulled.push_back(cech_cohomology(cu, n));
    rep.image.push_back(cech_cohomology(cv, n));
    if (!(rep.pulled.back() == rep.image.back())) rep.cohomology_matches = false;
  }
  return rep;
}

CechFixedPointReport cech_fixed_point_report(Obj x, const Functor& f, const std::vector<Presheaf>& tests,
                                             std::size_t max_degree) {
  CechFixedPointReport rep;
  rep.object = x;
  rep.max_degree = max_degree;
  rep.declared = rep.pulled_agrees = rep.comparison_ok = true;
  for (const Presheaf& mu : tests) {
    const FinCategory& c = *mu.base();
    if (x < 0 || x >= c.num_objects()) throw Error("UnknownObject", "object out of range for " + mu.name);
    for (const CoveringFamily& fam : mu.site.covers[x]) {
      CechComplex direct = cech_complex(c, fam.members, mu, max_degree);
      ComparisonReport cmp = comparison_iso(fam.members, mu, f, max_degree);
      rep.comparison_ok = rep.comparison_ok && cmp.all_iso && cmp.ladder_commutes && cmp.cohomology_matches;
      for (std::size_t n = 0; n <= max_degree; ++n) {
        CechFixedPointEntry e{mu.name, fam.name, n, cech_cohomology(direct, n), cmp.pulled[n], cmp.image[n]};
        if (!(e.direct == e.image)) rep.declared = false;
        if (!(e.direct == e.pulled)) rep.pulled_agrees = false;
        rep.entries.push_back(std::move(e));
      }
    }
  }
  rep.bridge_ok = rep.pulled_agrees == rep.declared;
  return rep;
}

// ---------------------------------------------------------------- exactness

ValidationReport pointwise_exact(const PresheafMorphism& m1, const PresheafMorphism& m2) {
  if (auto r = validate_presheaf_morphism(m1); !r) return r;
  if (auto r = validate_presheaf_morphism(m2); !r) return r;
  const FinCategory& c = *m1.from.base();
  if (!same_category(m1.to.base(), m2.from.base()))
    return ValidationReport::fail("Malformed", "the two morphisms live over different bases");
  for (Obj x = 0; x < c.num_objects(); ++x) {
    const AbHom& a = m1.components[x];
    const AbHom& b = m2.components[x];
    auto fail = [&](const std::string& why) {
      return ValidationReport::fail("NotExact", why + " at " + c.object_id(x), {c.object_id(x)});
    };
    if (!(a.target == b.source)) return fail("components do not chain");
    if (!is_injective(a)) return fail("first map not injective");
    if (!is_surjective(b)) return fail("second map not surjective");
    if (!is_zero_hom(compose(b, a))) return fail("composite not zero");
    if (!homology_group(a, b).is_trivial()) return fail("not exact in the middle");
  }
  return ValidationReport::pass();
}

ExactnessReport check_exactness_preserved(const Functor& f, const PresheafMorphism& m1, const PresheafMorphism& m2) {
  if (auto r = pointwise_exact(m1, m2); !r) throw Error("NotExactInput", r.message);
  PresheafMorphism p1 = pullback_morphism(m1, f);
  PresheafMorphism p2 = pullback_morphism(m2, f);
  ExactnessReport rep;
  if (auto r = pointwise_exact(p1, p2); !r) {
    rep.preserved = false;
    rep.reason = r.message;
    if (!r.witness.empty()) rep.object = m1.from.base()->object(r.witness.front());
  }
  return rep;
}

}  // namespace fixcat
