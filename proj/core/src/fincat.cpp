#include "fixcat/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

namespace fixcat {

namespace {

std::string triple(const std::string& g, const std::string& f) { return g + " o " + f; }

}  // namespace

// ------------------------------------------------------------- validation

ValidationReport validate_category(const CategoryData& raw) {
  std::unordered_map<std::string, int> obj;
  obj.reserve(raw.objects.size() * 2);
  for (const auto& o : raw.objects) {
    if (!obj.emplace(o, static_cast<int>(obj.size())).second)
      return ValidationReport::fail("Malformed", "duplicate object id '" + o + "'", {o});
  }
  std::unordered_map<std::string, int> mor;
  mor.reserve(raw.morphisms.size() * 2);
  std::vector<int> dom, cod;
  for (const auto& m : raw.morphisms) {
    if (!mor.emplace(m.id, static_cast<int>(mor.size())).second)
      return ValidationReport::fail("Malformed", "duplicate morphism id '" + m.id + "'", {m.id});
    auto d = obj.find(m.dom);
    auto c = obj.find(m.cod);
    if (d == obj.end() || c == obj.end())
      return ValidationReport::fail("Malformed", "morphism '" + m.id + "' has an unknown endpoint", {m.id});
    dom.push_back(d->second);
    cod.push_back(c->second);
  }
  for (const auto& [o, m] : raw.identities) {
    if (!obj.count(o)) return ValidationReport::fail("Malformed", "identity for unknown object '" + o + "'", {o});
    if (!mor.count(m)) return ValidationReport::fail("Malformed", "identity names unknown morphism '" + m + "'", {o, m});
  }

  const std::size_t n = mor.size();
  std::vector<int> table(n * n, kNone);
  std::vector<std::array<int, 3>> mistyped;
  std::vector<char> seen(n * n, 0);
  for (const auto& e : raw.composition) {
    auto g = mor.find(e[0]);
    auto f = mor.find(e[1]);
    auto gf = mor.find(e[2]);
    if (g == mor.end() || f == mor.end() || gf == mor.end())
      return ValidationReport::fail("Malformed", "composition entry names an unknown morphism",
                                    {e[0], e[1], e[2]});
    if (std::exchange(seen[g->second * n + f->second], 1))
      return ValidationReport::fail("Malformed", "duplicate composition entry for " + triple(e[0], e[1]),
                                    {e[0], e[1]});
    if (cod[f->second] != dom[g->second]) {
      mistyped.push_back({g->second, f->second, gf->second});
      continue;
    }
    table[g->second * n + f->second] = gf->second;
    if (dom[gf->second] != dom[f->second] || cod[gf->second] != cod[g->second])
      mistyped.push_back({g->second, f->second, gf->second});
  }

  std::vector<int> ident(obj.size(), kNone);
  for (const auto& o : raw.objects) {
    auto it = raw.identities.find(o);
    if (it == raw.identities.end())
      return ValidationReport::fail("MissingIdentity", "object '" + o + "' has no identity", {o});
    int m = mor.at(it->second);
    int x = obj.at(o);
    if (dom[m] != x || cod[m] != x)
      return ValidationReport::fail("MissingIdentity",
                                    "identity '" + it->second + "' of '" + o + "' is not an endomorphism of it",
                                    {o, it->second});
    ident[x] = m;
  }

  std::vector<std::string> name(n);
  for (const auto& [id, i] : mor) name[i] = id;

  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (cod[f] == dom[g] && table[g * n + f] == kNone)
        return ValidationReport::fail("CompositionGap", "no entry for composable pair " + triple(name[g], name[f]),
                                      {name[g], name[f]});

  for (std::size_t f = 0; f < n; ++f) {
    int left = ident[dom[f]];
    int right = ident[cod[f]];
    if (table[f * n + left] != static_cast<int>(f))
      return ValidationReport::fail("UnitLawViolation", triple(name[f], name[left]) + " != " + name[f],
                                    {name[f], name[left], name[table[f * n + left]]});
    if (table[right * n + f] != static_cast<int>(f))
      return ValidationReport::fail("UnitLawViolation", triple(name[right], name[f]) + " != " + name[f],
                                    {name[right], name[f], name[table[right * n + f]]});
  }

  auto comp = [&](int g, int f) { return (g == kNone || f == kNone) ? kNone : table[g * n + f]; };
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (cod[f] != dom[g]) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (cod[g] != dom[h]) continue;
        int a = comp(static_cast<int>(h), comp(static_cast<int>(g), static_cast<int>(f)));
        int b = comp(comp(static_cast<int>(h), static_cast<int>(g)), static_cast<int>(f));
        if (a == kNone || a != b)
          return ValidationReport::fail("AssociativityViolation",
                                        "h o (g o f) != (h o g) o f for h=" + name[h] + ", g=" + name[g] +
                                            ", f=" + name[f],
                                        {name[h], name[g], name[f]});
      }
    }

  if (!mistyped.empty()) {
    const auto& e = mistyped.front();
    return ValidationReport::fail("CompositionTypeMismatch",
                                  "entry " + triple(name[e[0]], name[e[1]]) + " = " + name[e[2]] + " is ill-typed",
                                  {name[e[0]], name[e[1]], name[e[2]]});
  }
  return ValidationReport::pass();
}

// ------------------------------------------------------------ FinCategory

CategoryPtr FinCategory::from_data(const CategoryData& raw, std::string name) {
  if (auto report = validate_category(raw); !report) throw ValidationError(report);

  std::shared_ptr<FinCategory> c(new FinCategory());
  c->name_ = std::move(name);
  c->objects_ = raw.objects;
  std::sort(c->objects_.begin(), c->objects_.end());
  for (std::size_t i = 0; i < c->objects_.size(); ++i) c->object_index_[c->objects_[i]] = static_cast<Obj>(i);

  std::vector<MorphismDecl> decls = raw.morphisms;
  std::sort(decls.begin(), decls.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& d : decls) {
    c->morphism_index_[d.id] = static_cast<Mor>(c->morphisms_.size());
    c->morphisms_.push_back({d.id, c->object_index_.at(d.dom), c->object_index_.at(d.cod)});
  }

  const std::size_t n = c->morphisms_.size();
  const std::size_t k = c->objects_.size();
  c->identities_.resize(k);
  for (std::size_t x = 0; x < k; ++x) c->identities_[x] = c->morphism_index_.at(raw.identities.at(c->objects_[x]));

  c->table_.assign(n * n, kNone);
  for (const auto& e : raw.composition) {
    Mor g = c->morphism_index_.at(e[0]);
    Mor f = c->morphism_index_.at(e[1]);
    c->table_[g * n + f] = c->morphism_index_.at(e[2]);
  }

  c->hom_.assign(k * k, {});
  for (std::size_t f = 0; f < n; ++f)
    c->hom_[c->morphisms_[f].dom * k + c->morphisms_[f].cod].push_back(static_cast<Mor>(f));

  c->inverse_.assign(n, kNone);
  for (std::size_t f = 0; f < n; ++f) {
    Obj a = c->morphisms_[f].dom;
    Obj b = c->morphisms_[f].cod;
    for (Mor g : c->hom(b, a)) {
      if (c->compose(g, static_cast<Mor>(f)) == c->identities_[a] &&
          c->compose(static_cast<Mor>(f), g) == c->identities_[b]) {
        c->inverse_[f] = g;
        break;
      }
    }
  }
  return c;
}

Obj FinCategory::object(const std::string& id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) throw Error("UnknownObject", "no object '" + id + "'");
  return it->second;
}

Mor FinCategory::morphism(const std::string& id) const {
  auto it = morphism_index_.find(id);
  if (it == morphism_index_.end()) throw Error("UnknownMorphism", "no morphism '" + id + "'");
  return it->second;
}

std::optional<Obj> FinCategory::find_object(const std::string& id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> FinCategory::find_morphism(const std::string& id) const {
  auto it = morphism_index_.find(id);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

Mor FinCategory::compose_path(const std::vector<Mor>& path) const {
  if (path.empty()) throw Error("Malformed", "empty path");
  Mor acc = path.front();
  for (std::size_t i = 1; i < path.size() && acc != kNone; ++i) acc = compose(path[i], acc);
  return acc;
}

std::optional<Mor> FinCategory::inverse(Mor f) const {
  if (inverse_[f] == kNone) return std::nullopt;
  return inverse_[f];
}

std::vector<Mor> FinCategory::isos(Obj a, Obj b) const {
  std::vector<Mor> out;
  for (Mor f : hom(a, b))
    if (is_iso(f)) out.push_back(f);
  return out;
}

bool FinCategory::isomorphic(Obj a, Obj b) const {
  for (Mor f : hom(a, b))
    if (is_iso(f)) return true;
  return false;
}

std::optional<Obj> FinCategory::initial_object() const {
  for (Obj x = 0; x < num_objects(); ++x) {
    bool ok = true;
    for (Obj y = 0; y < num_objects() && ok; ++y) ok = hom(x, y).size() == 1;
    if (ok) return x;
  }
  return std::nullopt;
}

bool FinCategory::has_initial_object() const { return initial_object().has_value(); }

CategoryPtr FinCategory::opposite() const {
  std::shared_ptr<FinCategory> c(new FinCategory(*this));
  c->name_ = name_.empty() ? std::string() : name_ + "^op";
  for (auto& m : c->morphisms_) std::swap(m.dom, m.cod);
  const std::size_t n = morphisms_.size();
  const std::size_t k = objects_.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) c->table_[g * n + f] = table_[f * n + g];
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) c->hom_[a * k + b] = hom_[b * k + a];
  return c;
}

CategoryData FinCategory::to_data() const {
  CategoryData d;
  d.objects = objects_;
  for (const auto& m : morphisms_) d.morphisms.push_back({m.id, objects_[m.dom], objects_[m.cod]});
  for (std::size_t x = 0; x < objects_.size(); ++x) d.identities[objects_[x]] = morphisms_[identities_[x]].id;
  const std::size_t n = morphisms_.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (Mor gf = table_[g * n + f]; gf != kNone)
        d.composition.push_back({morphisms_[g].id, morphisms_[f].id, morphisms_[gf].id});
  return d;
}

IsoResult is_iso(const FinCategory& c, const std::string& morphism_id) {
  Mor f = c.morphism(morphism_id);
  IsoResult r;
  if (auto g = c.inverse(f)) {
    r.iso = true;
    r.inverse = c.morphism_id(*g);
  }
  return r;
}

// ---------------------------------------------------------------- Functor

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->object_ids() != b->object_ids() || a->num_morphisms() != b->num_morphisms()) return false;
  for (Mor f = 0; f < a->num_morphisms(); ++f) {
    if (a->morphism_id(f) != b->morphism_id(f) || a->dom(f) != b->dom(f) || a->cod(f) != b->cod(f)) return false;
    for (Mor g = 0; g < a->num_morphisms(); ++g)
      if (a->compose(g, f) != b->compose(g, f)) return false;
  }
  return true;
}

Functor::Functor(CategoryPtr source, CategoryPtr target, std::vector<Obj> obj_map, std::vector<Mor> mor_map,
                 std::string name)
    : source_(std::move(source)),
      target_(std::move(target)),
      obj_map_(std::move(obj_map)),
      mor_map_(std::move(mor_map)),
      name_(std::move(name)) {
  if (static_cast<int>(obj_map_.size()) != source_->num_objects() ||
      static_cast<int>(mor_map_.size()) != source_->num_morphisms())
    throw Error("Malformed", "functor maps do not cover the source category");
  for (Obj y : obj_map_)
    if (y < 0 || y >= target_->num_objects()) throw Error("Malformed", "functor object image out of range");
  for (Mor g : mor_map_)
    if (g < 0 || g >= target_->num_morphisms()) throw Error("Malformed", "functor morphism image out of range");
}

Functor Functor::from_ids(CategoryPtr source, CategoryPtr target, const std::map<std::string, std::string>& objects,
                          const std::map<std::string, std::string>& morphisms, std::string name) {
  std::vector<Obj> om(source->num_objects(), kNone);
  std::vector<Mor> mm(source->num_morphisms(), kNone);
  for (const auto& [x, y] : objects) {
    auto sx = source->find_object(x);
    auto ty = target->find_object(y);
    if (!sx || !ty) throw Error("Malformed", "object map entry " + x + " -> " + y + " names an unknown object");
    om[*sx] = *ty;
  }
  for (const auto& [f, g] : morphisms) {
    auto sf = source->find_morphism(f);
    auto tg = target->find_morphism(g);
    if (!sf || !tg) throw Error("Malformed", "morphism map entry " + f + " -> " + g + " names an unknown morphism");
    mm[*sf] = *tg;
  }
  for (Obj x = 0; x < source->num_objects(); ++x)
    if (om[x] == kNone) throw Error("Malformed", "object map misses '" + source->object_id(x) + "'");
  for (Mor f = 0; f < source->num_morphisms(); ++f)
    if (mm[f] == kNone) throw Error("Malformed", "morphism map misses '" + source->morphism_id(f) + "'");
  return Functor(std::move(source), std::move(target), std::move(om), std::move(mm), std::move(name));
}

Functor Functor::identity(CategoryPtr c) {
  std::vector<Obj> om(c->num_objects());
  std::vector<Mor> mm(c->num_morphisms());
  std::iota(om.begin(), om.end(), 0);
  std::iota(mm.begin(), mm.end(), 0);
  return Functor(c, c, std::move(om), std::move(mm), "Id");
}

Functor Functor::constant(CategoryPtr source, CategoryPtr target, Obj value) {
  std::vector<Obj> om(source->num_objects(), value);
  std::vector<Mor> mm(source->num_morphisms(), target->identity(value));
  return Functor(std::move(source), std::move(target), std::move(om), std::move(mm));
}

void Functor::require_endofunctor() const {
  if (!is_endofunctor()) throw Error("NotEndofunctor", "functor '" + name_ + "' is not an endofunctor");
}

bool Functor::is_identity() const {
  if (!is_endofunctor()) return false;
  for (std::size_t x = 0; x < obj_map_.size(); ++x)
    if (obj_map_[x] != static_cast<Obj>(x)) return false;
  for (std::size_t f = 0; f < mor_map_.size(); ++f)
    if (mor_map_[f] != static_cast<Mor>(f)) return false;
  return true;
}

bool Functor::operator==(const Functor& rhs) const {
  return obj_map_ == rhs.obj_map_ && mor_map_ == rhs.mor_map_ && same_category(source_, rhs.source_) &&
         same_category(target_, rhs.target_);
}

ValidationReport validate_functor(const Functor& F) {
  const FinCategory& s = *F.source();
  const FinCategory& t = *F.target();
  for (Mor f = 0; f < s.num_morphisms(); ++f) {
    Mor g = F.map(f);
    if (t.dom(g) != F(s.dom(f)) || t.cod(g) != F(s.cod(f)))
      return ValidationReport::fail("DomCodMismatch",
                                    "image of '" + s.morphism_id(f) + "' has the wrong endpoints",
                                    {s.morphism_id(f), t.morphism_id(g)});
  }
  for (Obj x = 0; x < s.num_objects(); ++x)
    if (F.map(s.identity(x)) != t.identity(F(x)))
      return ValidationReport::fail("IdentityNotPreserved", "identity of '" + s.object_id(x) + "' not preserved",
                                    {s.object_id(x), t.morphism_id(F.map(s.identity(x)))});
  for (Mor f = 0; f < s.num_morphisms(); ++f)
    for (Obj y = 0; y < s.num_objects(); ++y)
      for (Mor g : s.hom(s.cod(f), y))
        if (F.map(s.compose(g, f)) != t.compose(F.map(g), F.map(f)))
          return ValidationReport::fail("CompositionNotPreserved",
                                        "F(" + triple(s.morphism_id(g), s.morphism_id(f)) + ") != F(" +
                                            s.morphism_id(g) + ") o F(" + s.morphism_id(f) + ")",
                                        {s.morphism_id(g), s.morphism_id(f)});
  return ValidationReport::pass();
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.target(), g.source())) throw Error("NotComposable", "functors do not compose");
  std::vector<Obj> om(f.obj_map().size());
  std::vector<Mor> mm(f.mor_map().size());
  for (std::size_t x = 0; x < om.size(); ++x) om[x] = g(f(static_cast<Obj>(x)));
  for (std::size_t m = 0; m < mm.size(); ++m) mm[m] = g.map(f.map(static_cast<Mor>(m)));
  return Functor(f.source(), g.target(), std::move(om), std::move(mm));
}

// ------------------------------------------------------ NatTransformation

NatTransformation::NatTransformation(Functor from, Functor to, std::vector<Mor> components, std::string name)
    : from_(std::move(from)), to_(std::move(to)), components_(std::move(components)), name_(std::move(name)) {
  if (static_cast<int>(components_.size()) != from_.source()->num_objects())
    throw Error("Malformed", "transformation components do not cover the source objects");
}

NatTransformation NatTransformation::identity(const Functor& f) {
  std::vector<Mor> c(f.source()->num_objects());
  for (Obj x = 0; x < f.source()->num_objects(); ++x) c[x] = f.target()->identity(f(x));
  return NatTransformation(f, f, std::move(c));
}

ValidationReport validate_nat_transformation(const NatTransformation& eta) {
  const Functor& F = eta.from();
  const Functor& G = eta.to();
  if (!same_category(F.source(), G.source()) || !same_category(F.target(), G.target()))
    return ValidationReport::fail("Malformed", "transformation between functors with different categories");
  const FinCategory& s = *F.source();
  const FinCategory& t = *F.target();
  for (Obj x = 0; x < s.num_objects(); ++x) {
    Mor c = eta.component(x);
    if (c < 0 || c >= t.num_morphisms() || t.dom(c) != F(x) || t.cod(c) != G(x))
      return ValidationReport::fail("ComponentTypeMismatch",
                                    "component at '" + s.object_id(x) + "' is not F(X) -> G(X)",
                                    {s.object_id(x)});
  }
  for (Mor f = 0; f < s.num_morphisms(); ++f) {
    Mor lhs = t.compose(G.map(f), eta.component(s.dom(f)));
    Mor rhs = t.compose(eta.component(s.cod(f)), F.map(f));
    if (lhs != rhs)
      return ValidationReport::fail("NaturalitySquareFails", "square at '" + s.morphism_id(f) + "' fails",
                                    {s.morphism_id(f)});
  }
  return ValidationReport::pass();
}

bool is_nat_iso(const NatTransformation& eta) {
  if (!validate_nat_transformation(eta)) return false;
  const FinCategory& t = *eta.from().target();
  for (Mor c : eta.components())
    if (!t.is_iso(c)) return false;
  return true;
}

NatTransformation inverse(const NatTransformation& eta) {
  if (!is_nat_iso(eta)) throw Error("NotNaturalIso", "transformation is not a natural isomorphism");
  const FinCategory& t = *eta.from().target();
  std::vector<Mor> c;
  for (Mor m : eta.components()) c.push_back(*t.inverse(m));
  std::string name = eta.name().empty() ? std::string() : eta.name() + "^-1";
  return NatTransformation(eta.to(), eta.from(), std::move(c), std::move(name));
}

std::optional<NatTransformation> functors_isomorphic(const Functor& F, const Functor& G) {
  if (!same_category(F.source(), G.source()) || !same_category(F.target(), G.target())) return std::nullopt;
  const FinCategory& s = *F.source();
  const FinCategory& t = *F.target();
  const int n = s.num_objects();

  std::vector<std::vector<Mor>> candidates(n);
  for (Obj x = 0; x < n; ++x) {
    candidates[x] = t.isos(F(x), G(x));
    if (candidates[x].empty()) return std::nullopt;
  }
  // Squares to check once the later of their two endpoints is assigned.
  std::vector<std::vector<Mor>> squares(n);
  for (Mor f = 0; f < s.num_morphisms(); ++f) squares[std::max(s.dom(f), s.cod(f))].push_back(f);

  std::vector<Mor> comp(n, kNone);
  auto consistent = [&](Obj x) {
    for (Mor f : squares[x])
      if (t.compose(G.map(f), comp[s.dom(f)]) != t.compose(comp[s.cod(f)], F.map(f))) return false;
    return true;
  };
  std::vector<std::size_t> choice(n, 0);
  Obj x = 0;
  while (x >= 0) {
    if (x == n) return NatTransformation(F, G, comp);
    if (choice[x] == candidates[x].size()) {
      choice[x] = 0;
      comp[x] = kNone;
      --x;
      if (x >= 0) ++choice[x];
      continue;
    }
    comp[x] = candidates[x][choice[x]];
    if (consistent(x)) {
      ++x;
    } else {
      ++choice[x];
    }
  }
  return std::nullopt;
}

}  // namespace fixcat
