#include "fixcat/catalog.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace fixcat::catalog {

namespace {

CategoryPtr build(CategoryData d, std::string name) { return FinCategory::from_data(d, std::move(name)); }

bool subset_of(const std::string& x, const std::string& y) {
  return std::all_of(x.begin(), x.end(), [&](char ch) { return y.find(ch) != std::string::npos; });
}

std::string members_of(const std::string& subset_id) {
  std::string out;
  for (char ch : subset_id)
    if (ch != '{' && ch != '}' && ch != ',') out.push_back(ch);
  return out;
}

std::string map_chars(std::string s, const std::string& from, const std::string& to) {
  for (char& ch : s) {
    auto pos = from.find(ch);
    if (pos != std::string::npos) ch = to[pos];
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

CategoryPtr empty_category() { return build({}, "empty"); }

CategoryPtr terminal_category() {
  CategoryData d;
  d.objects = {"*"};
  d.morphisms = {{"id*", "*", "*"}};
  d.identities = {{"*", "id*"}};
  d.composition = {{"id*", "id*", "id*"}};
  return build(d, "terminal");
}

CategoryPtr walking_arrow() {
  CategoryData d;
  d.objects = {"0", "1"};
  d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}};
  d.identities = {{"0", "id0"}, {"1", "id1"}};
  d.composition = {{"id0", "id0", "id0"}, {"id1", "id1", "id1"}, {"a", "id0", "a"}, {"id1", "a", "a"}};
  return build(d, "walking_arrow");
}

CategoryPtr discrete(const std::vector<std::string>& objects) {
  CategoryData d;
  d.objects = objects;
  for (const auto& x : objects) {
    d.morphisms.push_back({"id_" + x, x, x});
    d.identities[x] = "id_" + x;
    d.composition.push_back({"id_" + x, "id_" + x, "id_" + x});
  }
  return build(d, "discrete");
}

CategoryPtr codiscrete(const std::vector<std::string>& objects) {
  auto name = [](const std::string& x, const std::string& y) { return x == y ? "id_" + x : x + ">" + y; };
  CategoryData d;
  d.objects = objects;
  for (const auto& x : objects) {
    d.identities[x] = name(x, x);
    for (const auto& y : objects) d.morphisms.push_back({name(x, y), x, y});
  }
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects) d.composition.push_back({name(y, z), name(x, y), name(x, z)});
  return build(d, "codiscrete");
}

CategoryPtr parallel_pair() {
  CategoryData d;
  d.objects = {"A", "B"};
  d.morphisms = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"f", "A", "B"}, {"g", "A", "B"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}};
  d.composition = {{"idA", "idA", "idA"}, {"idB", "idB", "idB"}, {"f", "idA", "f"},
                   {"g", "idA", "g"},     {"idB", "f", "f"},     {"idB", "g", "g"}};
  return build(d, "parallel_pair");
}

CategoryPtr cospan() {
  CategoryData d;
  d.objects = {"A", "B", "C"};
  d.morphisms = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"idC", "C", "C"}, {"f", "A", "C"}, {"g", "B", "C"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}, {"C", "idC"}};
  d.composition = {{"idA", "idA", "idA"}, {"idB", "idB", "idB"}, {"idC", "idC", "idC"}, {"f", "idA", "f"},
                   {"idC", "f", "f"},     {"g", "idB", "g"},     {"idC", "g", "g"}};
  return build(d, "cospan");
}

CategoryPtr span() {
  CategoryData d;
  d.objects = {"A", "B", "C"};
  d.morphisms = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"idC", "C", "C"}, {"f", "C", "A"}, {"g", "C", "B"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}, {"C", "idC"}};
  d.composition = {{"idA", "idA", "idA"}, {"idB", "idB", "idB"}, {"idC", "idC", "idC"}, {"f", "idC", "f"},
                   {"idA", "f", "f"},     {"g", "idC", "g"},     {"idB", "g", "g"}};
  return build(d, "span");
}

CategoryPtr poset(const std::vector<std::string>& elements,
                  const std::function<bool(const std::string&, const std::string&)>& leq, std::string name) {
  auto arrow = [](const std::string& x, const std::string& y) { return x + "<=" + y; };
  CategoryData d;
  d.objects = elements;
  for (const auto& x : elements) {
    d.identities[x] = arrow(x, x);
    for (const auto& y : elements)
      if (leq(x, y)) d.morphisms.push_back({arrow(x, y), x, y});
  }
  for (const auto& x : elements)
    for (const auto& y : elements) {
      if (!leq(x, y)) continue;
      for (const auto& z : elements)
        if (leq(y, z)) d.composition.push_back({arrow(y, z), arrow(x, y), arrow(x, z)});
    }
  return build(d, std::move(name));
}

CategoryPtr chain(int n) {
  std::vector<std::string> e;
  for (int i = 0; i < n; ++i) e.push_back(std::to_string(i));
  return poset(e, [](const std::string& x, const std::string& y) { return std::stoi(x) <= std::stoi(y); },
               "chain" + std::to_string(n));
}

std::string subset_name(const std::string& members) {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += members[i];
  }
  return s + "}";
}

CategoryPtr subset_lattice(const std::string& atoms) {
  std::vector<std::string> e;
  const std::size_t n = atoms.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::string m;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) m.push_back(atoms[i]);
    e.push_back(subset_name(m));
  }
  return poset(e,
               [](const std::string& x, const std::string& y) { return subset_of(members_of(x), members_of(y)); },
               "subsets(" + atoms + ")");
}

CategoryPtr hexagon() {
  std::vector<std::string> e;
  for (const char* m : {"a", "b", "c", "ab", "ac", "bc"}) e.push_back(subset_name(m));
  return poset(e, [](const std::string& x, const std::string& y) { return subset_of(members_of(x), members_of(y)); },
               "hexagon");
}

CategoryPtr group_category(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& mult,
                           std::string name) {
  CategoryData d;
  d.objects = {"*"};
  for (const auto& g : elements) d.morphisms.push_back({g, "*", "*"});
  d.identities["*"] = elements.at(0);
  for (std::size_t g = 0; g < elements.size(); ++g)
    for (std::size_t f = 0; f < elements.size(); ++f)
      d.composition.push_back({elements[g], elements[f], elements[mult.at(g).at(f)]});
  return build(d, std::move(name));
}

CategoryPtr cyclic_group(int n) {
  std::vector<std::string> e{"e"};
  for (int i = 1; i < n; ++i) e.push_back(i == 1 ? "g" : "g" + std::to_string(i));
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  return group_category(e, mult, "Z/" + std::to_string(n));
}

CategoryPtr symmetric_group_s3() {
  const std::vector<std::string> names{"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<int>> mult(6, std::vector<int>(6));
  for (int g = 0; g < 6; ++g)
    for (int f = 0; f < 6; ++f) {
      std::array<int, 3> gf{};
      for (int x = 0; x < 3; ++x) gf[x] = perms[g][perms[f][x]];
      mult[g][f] = static_cast<int>(std::find(perms.begin(), perms.end(), gf) - perms.begin());
    }
  return group_category(names, mult, "S3");
}

std::string z2_matrix_id(int m, int n, const std::vector<int>& bits) {
  std::string s = std::to_string(m) + ">" + std::to_string(n) + ":";
  for (int b : bits) s += static_cast<char>('0' + b);
  return s;
}

CategoryPtr z2_matrix_category(int max_dim) {
  auto all = [](int m, int n) {
    std::vector<std::vector<int>> out;
    const int cells = m * n;
    for (int mask = 0; mask < (1 << cells); ++mask) {
      std::vector<int> bits(cells);
      for (int i = 0; i < cells; ++i) bits[i] = (mask >> (cells - 1 - i)) & 1;
      out.push_back(bits);
    }
    return out;
  };
  CategoryData d;
  for (int m = 0; m <= max_dim; ++m) d.objects.push_back(std::to_string(m));
  for (int m = 0; m <= max_dim; ++m)
    for (int n = 0; n <= max_dim; ++n)
      for (const auto& bits : all(m, n)) d.morphisms.push_back({z2_matrix_id(m, n, bits), std::to_string(m), std::to_string(n)});
  for (int m = 0; m <= max_dim; ++m) {
    std::vector<int> id(m * m, 0);
    for (int i = 0; i < m; ++i) id[i * m + i] = 1;
    d.identities[std::to_string(m)] = z2_matrix_id(m, m, id);
  }
  // B∘A for A: m -> n (n x m) and B: n -> p (p x n).
  for (int m = 0; m <= max_dim; ++m)
    for (int n = 0; n <= max_dim; ++n)
      for (int p = 0; p <= max_dim; ++p)
        for (const auto& a : all(m, n))
          for (const auto& b : all(n, p)) {
            std::vector<int> c(p * m, 0);
            for (int i = 0; i < p; ++i)
              for (int j = 0; j < m; ++j) {
                int s = 0;
                for (int k = 0; k < n; ++k) s += b[i * n + k] * a[k * m + j];
                c[i * m + j] = s % 2;
              }
            d.composition.push_back({z2_matrix_id(n, p, b), z2_matrix_id(m, n, a), z2_matrix_id(m, p, c)});
          }
  return build(d, "Z2-matrices");
}

CategoryPtr pseudocircle() {
  return poset({"a", "b", "ab", "abc", "abd", "abcd"}, subset_of, "pseudocircle");
}

CategoryPtr xuvw() {
  return poset({"W", "U", "V", "X"},
               [](const std::string& x, const std::string& y) { return x == y || x == "W" || y == "X"; }, "xuvw");
}

Functor poset_functor(const CategoryPtr& source, const CategoryPtr& target,
                      const std::vector<std::string>& object_images, std::string name) {
  const FinCategory& s = *source;
  const FinCategory& t = *target;
  if (static_cast<int>(object_images.size()) != s.num_objects())
    throw Error("Malformed", "object image list does not match the source");
  std::vector<Obj> om;
  for (const auto& y : object_images) om.push_back(t.object(y));
  std::vector<Mor> mm(s.num_morphisms());
  for (Mor f = 0; f < s.num_morphisms(); ++f) {
    const auto& h = t.hom(om[s.dom(f)], om[s.cod(f)]);
    if (h.size() != 1)
      throw Error("NotMonotone", "no unique image for " + s.morphism_id(f));
    mm[f] = h.front();
  }
  return Functor(source, target, std::move(om), std::move(mm), std::move(name));
}

Functor conjugation(const CategoryPtr& group, const std::string& element, std::string name) {
  const FinCategory& g = *group;
  if (g.num_objects() != 1) throw Error("Malformed", "conjugation needs a one-object category");
  Mor x = g.morphism(element);
  auto inv = g.inverse(x);
  if (!inv) throw Error("NotInvertible", element + " is not invertible");
  std::vector<Mor> mm(g.num_morphisms());
  for (Mor f = 0; f < g.num_morphisms(); ++f) mm[f] = g.compose(g.compose(x, f), *inv);
  return Functor(group, group, {0}, std::move(mm), std::move(name));
}

Functor hexagon_rotation() {
  auto h = hexagon();
  std::vector<std::string> images;
  for (const auto& o : h->object_ids()) images.push_back(subset_name(map_chars(members_of(o), "abc", "bca")));
  return poset_functor(h, h, images, "rot");
}

Functor pseudocircle_symmetry(const CategoryPtr& p) {
  std::vector<std::string> images;
  for (const auto& o : p->object_ids()) images.push_back(map_chars(o, "abcd", "badc"));
  return poset_functor(p, p, images, "sym");
}

Functor discrete_swap() {
  auto d = discrete({"A", "B"});
  return Functor(d, d, {1, 0}, {1, 0}, "swap");
}

Functor codiscrete_swap() {
  auto c = codiscrete({"A", "B"});
  std::map<std::string, std::string> om{{"A", "B"}, {"B", "A"}};
  std::map<std::string, std::string> mm{{"id_A", "id_B"}, {"id_B", "id_A"}, {"A>B", "B>A"}, {"B>A", "A>B"}};
  return Functor::from_ids(c, c, om, mm, "swap");
}

Functor xuvw_swap(const CategoryPtr& c) { return poset_functor(c, c, {"V", "U", "W", "X"}, "swap"); }

// ------------------------------------------------------------------ sites

namespace {

Pretopology site_from_cover(const CategoryPtr& base, const std::string& apex, const std::vector<std::string>& legs,
                            std::string name) {
  const FinCategory& c = *base;
  std::vector<std::vector<CoveringFamily>> gens(c.num_objects());
  CoveringFamily uv{"UV", {}};
  for (const auto& leg : legs) uv.members.push_back(c.morphism(leg));
  gens[c.object(apex)].push_back(std::move(uv));
  return close_pretopology(base, gens, std::move(name));
}

}  // namespace

Pretopology pseudocircle_site(const CategoryPtr& base) {
  return site_from_cover(base, "abcd", {"abc<=abcd", "abd<=abcd"}, "pseudocircle");
}

Pretopology xuvw_site(const CategoryPtr& base) { return site_from_cover(base, "X", {"U<=X", "V<=X"}, "xuvw"); }

Pretopology trivial_site(const CategoryPtr& base) { return close_pretopology(base, {}, "trivial"); }

// ------------------------------------------------------------- presheaves

Presheaf constant_presheaf(const Pretopology& site, const PresentedAbGroup& group, std::string name) {
  const FinCategory& c = *site.base;
  Presheaf mu{std::move(name), site, std::vector<PresentedAbGroup>(c.num_objects(), group), {}};
  mu.restrictions.assign(c.num_morphisms(), AbHom::identity(group));
  return mu;
}

Presheaf components_presheaf(const Pretopology& site, std::string name) {
  const FinCategory& c = *site.base;
  std::string points;
  for (const auto& o : c.object_ids()) points += o;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Minimal open neighbourhood of each point.
  auto minimal_open = [&](char pt) {
    std::string best;
    for (const auto& o : c.object_ids())
      if (o.find(pt) != std::string::npos && (best.empty() || o.size() < best.size())) best = o;
    return best;
  };
  // Component label per point of an open, labels numbered in point order.
  auto components = [&](const std::string& open) {
    std::vector<int> parent(open.size());
    for (std::size_t i = 0; i < open.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (std::size_t i = 0; i < open.size(); ++i)
      for (char q : minimal_open(open[i])) {
        auto j = open.find(q);
        if (j != std::string::npos) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
      }
    std::vector<int> label(open.size(), -1);
    std::map<int, int> renumber;
    for (std::size_t i = 0; i < open.size(); ++i)
      label[i] = renumber.emplace(find(static_cast<int>(i)), static_cast<int>(renumber.size())).first->second;
    return std::make_pair(label, static_cast<int>(renumber.size()));
  };

  Presheaf mu{std::move(name), site, {}, {}};
  std::vector<std::pair<std::vector<int>, int>> comp;
  for (Obj x = 0; x < c.num_objects(); ++x) {
    comp.push_back(components(c.object_id(x)));
    mu.values.push_back(PresentedAbGroup::from_orders(IntVector(comp.back().second, 2)));
  }
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    const std::string& small = c.object_id(c.dom(f));
    const std::string& big = c.object_id(c.cod(f));
    const auto& [ls, ns] = comp[c.dom(f)];
    const auto& [lb, nb] = comp[c.cod(f)];
    IntMatrix m(ns, nb);
    for (std::size_t i = 0; i < small.size(); ++i) m(ls[i], lb[big.find(small[i])]) = 1;
    mu.restrictions.push_back(AbHom{mu.values[c.cod(f)], mu.values[c.dom(f)], std::move(m)});
  }
  return mu;
}

Presheaf xuvw_nonsheaf(const Pretopology& site, std::string name) {
  const FinCategory& c = *site.base;
  const PresentedAbGroup z2 = PresentedAbGroup::cyclic(2);
  Presheaf mu{std::move(name), site, {}, {}};
  for (Obj x = 0; x < c.num_objects(); ++x)
    mu.values.push_back(c.object_id(x) == "X" ? PresentedAbGroup::trivial() : z2);
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    const auto& src = mu.values[c.cod(f)];
    const auto& tgt = mu.values[c.dom(f)];
    mu.restrictions.push_back(src.is_trivial() || tgt.is_trivial() ? AbHom::zero(src, tgt) : AbHom::identity(src));
  }
  return mu;
}

// ------------------------------------------------------------- enrichment

AbEnrichment z2_matrix_enrichment(const CategoryPtr& base) {
  const FinCategory& c = *base;
  AbEnrichment e = empty_enrichment(base);
  auto parse = [&](Mor f) {
    const std::string& id = c.morphism_id(f);
    return id.substr(id.find(':') + 1);
  };
  const std::size_t m = c.num_morphisms();
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    for (Mor g : c.hom(c.dom(f), c.cod(f))) {
      std::string a = parse(f), b = parse(g);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] == b[i] ? '0' : '1';
      const std::string& id = c.morphism_id(f);
      e.sum[f * m + g] = c.morphism(id.substr(0, id.find(':') + 1) + a);
    }
  const std::size_t k = c.num_objects();
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (Obj y = 0; y < c.num_objects(); ++y) {
      const int rows = std::stoi(c.object_id(y)), cols = std::stoi(c.object_id(x));
      e.zero[x * k + y] = c.morphism(z2_matrix_id(cols, rows, std::vector<int>(rows * cols, 0)));
    }
  Obj zero = c.object("0");
  for (Obj x = 0; x < c.num_objects(); ++x) {
    e.biproducts.push_back({x, zero, x, c.identity(x), e.zero_of(zero, x), c.identity(x), e.zero_of(x, zero)});
    if (x != zero)
      e.biproducts.push_back({zero, x, x, e.zero_of(zero, x), c.identity(x), e.zero_of(x, zero), c.identity(x)});
  }
  if (auto two = c.find_object("2")) {
    Obj one = c.object("1");
    e.biproducts.push_back({one, one, *two, c.morphism("1>2:10"), c.morphism("1>2:01"), c.morphism("2>1:10"),
                            c.morphism("2>1:01")});
  }
  return e;
}

}  // namespace fixcat::catalog
