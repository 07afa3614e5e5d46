#include "fixcat/fixpoint.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fixcat {

std::vector<Obj> strict_fixed_points(const Functor& F) {
  F.require_endofunctor();
  std::vector<Obj> out;
  for (Obj x = 0; x < F.source()->num_objects(); ++x)
    if (F(x) == x) out.push_back(x);
  return out;
}

std::vector<FixedPoint> fixed_points(const Functor& F) {
  F.require_endofunctor();
  const FinCategory& c = *F.source();
  std::vector<FixedPoint> out;
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (Mor a : c.isos(x, F(x))) out.push_back({x, a});
  return out;
}

std::string fixed_point_id(const FinCategory& c, const FixedPoint& p) {
  return "(" + c.object_id(p.object) + "|" + c.morphism_id(p.iso) + ")";
}

std::string fixed_point_morphism_id(const FinCategory& c, Mor f, const FixedPoint& from, const FixedPoint& to) {
  return c.morphism_id(f) + ":" + fixed_point_id(c, from) + ">" + fixed_point_id(c, to);
}

Obj FixCategoryResult::object_of(const FixedPoint& p) const {
  return carrier->object(fixed_point_id(*functor.source(), p));
}

Mor FixCategoryResult::morphism_of(Mor f, Obj from, Obj to) const {
  for (Mor m : carrier->hom(from, to))
    if (forgetful.map(m) == f) return m;
  return kNone;
}

FixCategoryResult fix_category(const Functor& F) {
  auto points = fixed_points(F);
  const FinCategory& c = *F.source();

  auto square = [&](Mor f, const FixedPoint& p, const FixedPoint& q) {
    return c.compose(F.map(f), p.iso) == c.compose(q.iso, f);
  };

  CategoryData d;
  for (const auto& p : points) d.objects.push_back(fixed_point_id(c, p));
  struct Arrow {
    Mor f;
    std::size_t from;
    std::size_t to;
  };
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      for (Mor f : c.hom(points[i].object, points[j].object))
        if (square(f, points[i], points[j])) arrows.push_back({f, i, j});

  auto name = [&](Mor f, std::size_t i, std::size_t j) { return fixed_point_morphism_id(c, f, points[i], points[j]); };
  for (const auto& a : arrows) d.morphisms.push_back({name(a.f, a.from, a.to), d.objects[a.from], d.objects[a.to]});
  for (std::size_t i = 0; i < points.size(); ++i) d.identities[d.objects[i]] = name(c.identity(points[i].object), i, i);
  for (const auto& a : arrows)
    for (const auto& b : arrows)
      if (a.to == b.from)
        d.composition.push_back({name(b.f, b.from, b.to), name(a.f, a.from, a.to), name(c.compose(b.f, a.f), a.from, b.to)});

  FixCategoryResult r;
  r.functor = F;
  r.carrier = FinCategory::from_data(d, "S(" + F.name() + ")");
  const FinCategory& k = *r.carrier;
  r.points.resize(k.num_objects());
  std::vector<Obj> om(k.num_objects());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Obj o = k.object(d.objects[i]);
    r.points[o] = points[i];
    om[o] = points[i].object;
  }
  std::vector<Mor> mm(k.num_morphisms());
  for (const auto& a : arrows) mm[k.morphism(name(a.f, a.from, a.to))] = a.f;
  r.forgetful = Functor(r.carrier, F.source(), std::move(om), std::move(mm), "for");
  return r;
}

namespace {

Functor transport_functor(const NatTransformation& eta, const FixCategoryResult& from, const FixCategoryResult& to) {
  const FinCategory& c = *eta.from().source();
  const FinCategory& s = *from.carrier;
  std::vector<Obj> om(s.num_objects());
  for (Obj o = 0; o < s.num_objects(); ++o) {
    const FixedPoint& p = from.points[o];
    om[o] = to.object_of({p.object, c.compose(eta.component(p.object), p.iso)});
  }
  std::vector<Mor> mm(s.num_morphisms());
  for (Mor m = 0; m < s.num_morphisms(); ++m) {
    mm[m] = to.morphism_of(from.forgetful.map(m), om[s.dom(m)], om[s.cod(m)]);
    if (mm[m] == kNone) throw Error("NotNaturalIso", "transported square fails over " + s.morphism_id(m));
  }
  return Functor(from.carrier, to.carrier, std::move(om), std::move(mm));
}

}  // namespace

TransportResult transport(const NatTransformation& eta) {
  eta.from().require_endofunctor();
  eta.to().require_endofunctor();
  if (!is_nat_iso(eta)) throw Error("NotNaturalIso", "transport needs a natural isomorphism");
  TransportResult r;
  r.source = fix_category(eta.from());
  r.target = fix_category(eta.to());
  r.forward = transport_functor(eta, r.source, r.target);
  r.backward = transport_functor(inverse(eta), r.target, r.source);
  r.forward.set_name("transport");
  r.backward.set_name("transport^-1");
  r.round_trip_identity = compose(r.backward, r.forward).is_identity() && compose(r.forward, r.backward).is_identity();
  return r;
}

ColimitReport hom_colimit(const Functor& F, Obj x) {
  F.require_endofunctor();
  const FinCategory& c = *F.source();
  if (x < 0 || x >= c.num_objects()) throw Error("UnknownObject", "object index out of range");

  std::vector<std::pair<Obj, Mor>> elements;
  std::map<std::pair<Obj, Mor>, std::size_t> index;
  for (Obj i = 0; i < c.num_objects(); ++i)
    for (Mor phi : c.hom(x, F(i))) {
      index[{i, phi}] = elements.size();
      elements.emplace_back(i, phi);
    }

  std::vector<std::size_t> parent(elements.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    for (Mor phi : c.hom(x, F(c.dom(f)))) {
      std::size_t a = find(index.at({c.dom(f), phi}));
      std::size_t b = find(index.at({c.cod(f), c.compose(F.map(f), phi)}));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::map<std::size_t, std::vector<std::pair<Obj, Mor>>> groups;
  for (std::size_t e = 0; e < elements.size(); ++e) groups[find(e)].push_back(elements[e]);
  ColimitReport r;
  for (auto& [root, members] : groups) r.classes.push_back(std::move(members));
  std::sort(r.classes.begin(), r.classes.end());
  r.size = r.classes.size();
  return r;
}

}  // namespace fixcat
