#include "fixcat/generators.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <map>
#include <set>
#include <string>

#include "fixcat/catalog.hpp"

namespace fixcat::gen {

std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

long between(Rng& rng, long lo, long hi) { return lo + static_cast<long>(below(rng, static_cast<std::size_t>(hi - lo + 1))); }

namespace {

std::string letter(int i) { return std::string(1, static_cast<char>('A' + i)); }

struct Fn {
  int dom;
  int cod;
  std::vector<int> values;
  auto operator<=>(const Fn&) const = default;
};

std::string fn_id(const Fn& f) {
  std::string s = letter(f.dom) + ">" + letter(f.cod) + ":";
  for (int v : f.values) s += static_cast<char>('0' + v);
  return s;
}

Fn after(const Fn& g, const Fn& f) {
  Fn h{f.dom, g.cod, {}};
  for (int v : f.values) h.values.push_back(g.values[v]);
  return h;
}

// Closure of identities and generators; empty when it grows past the cap.
std::vector<Fn> close(const std::vector<int>& sizes, const std::vector<Fn>& gens, int cap) {
  std::set<Fn> all;
  for (int x = 0; x < static_cast<int>(sizes.size()); ++x) {
    Fn id{x, x, {}};
    for (int i = 0; i < sizes[x]; ++i) id.values.push_back(i);
    all.insert(id);
  }
  all.insert(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Fn> now(all.begin(), all.end());
    for (const Fn& f : now)
      for (const Fn& g : now)
        if (f.cod == g.dom && all.insert(after(g, f)).second) {
          grew = true;
          if (static_cast<int>(all.size()) > cap) return {};
        }
  }
  return {all.begin(), all.end()};
}

}  // namespace

CategoryData random_concrete_data(Rng& rng, int max_objects, int max_morphisms) {
  const int k = static_cast<int>(between(rng, 1, max_objects));
  std::vector<int> sizes;
  for (int i = 0; i < k; ++i) sizes.push_back(static_cast<int>(between(rng, 1, 3)));

  std::vector<Fn> gens;
  const int count = static_cast<int>(between(rng, 0, k + 2));
  for (int i = 0; i < count; ++i) {
    Fn f{static_cast<int>(below(rng, k)), static_cast<int>(below(rng, k)), {}};
    if (sizes[f.dom] == sizes[f.cod] && below(rng, 3) == 0) {
      for (int j = 0; j < sizes[f.dom]; ++j) f.values.push_back(j);
      for (int j = sizes[f.dom] - 1; j > 0; --j) std::swap(f.values[j], f.values[below(rng, j + 1)]);
    } else {
      for (int j = 0; j < sizes[f.dom]; ++j) f.values.push_back(static_cast<int>(below(rng, sizes[f.cod])));
    }
    gens.push_back(std::move(f));
  }
  std::vector<Fn> mors;
  while ((mors = close(sizes, gens, max_morphisms)).empty()) gens.pop_back();

  CategoryData d;
  for (int x = 0; x < k; ++x) d.objects.push_back(letter(x));
  for (const Fn& f : mors) {
    d.morphisms.push_back({fn_id(f), letter(f.dom), letter(f.cod)});
    if (f.dom == f.cod && std::is_sorted(f.values.begin(), f.values.end()) &&
        std::adjacent_find(f.values.begin(), f.values.end()) == f.values.end())
      d.identities[letter(f.dom)] = fn_id(f);
  }
  for (const Fn& f : mors)
    for (const Fn& g : mors)
      if (f.cod == g.dom) d.composition.push_back({fn_id(g), fn_id(f), fn_id(after(g, f))});
  return d;
}

CategoryPtr random_concrete_category(Rng& rng, int max_objects, int max_morphisms) {
  return FinCategory::from_data(random_concrete_data(rng, max_objects, max_morphisms), "random");
}

CategoryData random_table(Rng& rng, int max_objects, int max_morphisms) {
  const int k = static_cast<int>(between(rng, 1, max_objects));
  CategoryData d;
  std::vector<int> dom, cod;
  for (int x = 0; x < k; ++x) {
    d.objects.push_back(letter(x));
    d.morphisms.push_back({"id" + letter(x), letter(x), letter(x)});
    d.identities[letter(x)] = "id" + letter(x);
    dom.push_back(x);
    cod.push_back(x);
  }
  const int extra = static_cast<int>(between(rng, 0, std::max(0, max_morphisms - k)));
  for (int i = 0; i < extra; ++i) {
    int a = static_cast<int>(below(rng, k)), b = static_cast<int>(below(rng, k));
    d.morphisms.push_back({"m" + std::to_string(i), letter(a), letter(b)});
    dom.push_back(a);
    cod.push_back(b);
  }
  const std::size_t n = d.morphisms.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (cod[f] != dom[g]) continue;
      std::string value;
      if (static_cast<int>(g) < k && below(rng, 10) != 0) {
        value = d.morphisms[f].id;
      } else if (static_cast<int>(f) < k && below(rng, 10) != 0) {
        value = d.morphisms[g].id;
      } else {
        std::vector<std::size_t> typed;
        for (std::size_t h = 0; h < n; ++h)
          if (dom[h] == dom[f] && cod[h] == cod[g]) typed.push_back(h);
        value = d.morphisms[typed.empty() || below(rng, 20) == 0 ? below(rng, n) : typed[below(rng, typed.size())]].id;
      }
      d.composition.push_back({d.morphisms[g].id, d.morphisms[f].id, value});
    }
  return d;
}

CategoryPtr random_poset(Rng& rng, int max_objects) {
  const int n = static_cast<int>(between(rng, 1, max_objects));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) leq[i][j] = below(rng, 2) == 0;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][m] && leq[m][j]) leq[i][j] = true;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return catalog::poset(
      names, [&](const std::string& a, const std::string& b) { return leq[std::stoi(a.substr(1))][std::stoi(b.substr(1))]; },
      "random-poset");
}

CategoryPtr random_free_dag(Rng& rng, int max_objects, int max_morphisms) {
  const int n = static_cast<int>(between(rng, 1, max_objects));
  struct Edge {
    int from, to;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (below(rng, 5) < 2) edges.push_back({i, j});
      if (below(rng, 8) == 0) edges.push_back({i, j});
    }
  // Paths as edge-index sequences, grown until the cap.
  auto paths_of = [&](const std::vector<Edge>& es) {
    std::vector<std::vector<int>> paths;
    std::vector<std::vector<int>> frontier;
    for (int e = 0; e < static_cast<int>(es.size()); ++e) frontier.push_back({e});
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (auto& p : frontier) {
        for (int e = 0; e < static_cast<int>(es.size()); ++e)
          if (es[e].from == es[p.back()].to) {
            auto q = p;
            q.push_back(e);
            next.push_back(std::move(q));
          }
        paths.push_back(std::move(p));
      }
      frontier = std::move(next);
      if (static_cast<int>(paths.size()) + n > max_morphisms) return std::optional<std::vector<std::vector<int>>>();
    }
    return std::optional(paths);
  };
  std::optional<std::vector<std::vector<int>>> paths;
  while (!(paths = paths_of(edges))) edges.erase(edges.begin() + below(rng, edges.size()));

  auto vname = [](int v) { return "v" + std::to_string(v); };
  auto pname = [](const std::vector<int>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + ("e" + std::to_string(p[i]));
    return s;
  };
  CategoryData d;
  for (int v = 0; v < n; ++v) {
    d.objects.push_back(vname(v));
    d.morphisms.push_back({"id_" + vname(v), vname(v), vname(v)});
    d.identities[vname(v)] = "id_" + vname(v);
  }
  for (const auto& p : *paths) d.morphisms.push_back({pname(p), vname(edges[p.front()].from), vname(edges[p.back()].to)});
  for (int v = 0; v < n; ++v) d.composition.push_back({"id_" + vname(v), "id_" + vname(v), "id_" + vname(v)});
  for (const auto& p : *paths) {
    const std::string id = pname(p);
    const std::string a = vname(edges[p.front()].from), b = vname(edges[p.back()].to);
    d.composition.push_back({id, "id_" + a, id});
    d.composition.push_back({"id_" + b, id, id});
    for (const auto& q : *paths)
      if (edges[p.back()].to == edges[q.front()].from) {
        auto pq = p;
        pq.insert(pq.end(), q.begin(), q.end());
        d.composition.push_back({pname(q), id, pname(pq)});
      }
  }
  return FinCategory::from_data(d, "random-dag");
}

CategoryPtr random_loop_free(Rng& rng, int max_objects, int max_morphisms) {
  if (below(rng, 2) == 0) return random_poset(rng, max_objects);
  return random_free_dag(rng, max_objects, max_morphisms);
}

void for_each_endofunctor(const CategoryPtr& cp, const EndofunctorVisitor& visit) {
  const FinCategory& c = *cp;
  const int k = c.num_objects();
  const int m = c.num_morphisms();
  if (k == 0) {
    visit({}, {});
    return;
  }
  // Assignment order: identities, then morphisms with no factorization
  // through two non-identities, then composites after one of their
  // factorizations, so that composites are forced by the checks below.
  auto factorizations = [&](Mor h, auto&& visit) {
    for (Mor f = 0; f < m; ++f)
      if (c.dom(f) == c.dom(h) && !c.is_identity(f) && f != h)
        for (Mor g : c.hom(c.cod(f), c.cod(h)))
          if (!c.is_identity(g) && g != h && c.compose(g, f) == h) visit(f, g);
  };
  const int unreached = m + 1;
  std::vector<int> depth(m, unreached);
  for (Mor h = 0; h < m; ++h) {
    if (c.is_identity(h)) {
      depth[h] = 0;
      continue;
    }
    bool decomposable = false;
    factorizations(h, [&](Mor, Mor) { decomposable = true; });
    if (!decomposable) depth[h] = 1;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (Mor h = 0; h < m; ++h) {
      if (depth[h] != unreached) continue;
      int best = unreached;
      factorizations(h, [&](Mor f, Mor g) { best = std::min(best, std::max(depth[f], depth[g]) + 1); });
      if (best < unreached) {
        depth[h] = best;
        changed = true;
      }
    }
  }
  std::vector<Mor> order(m);
  for (Mor f = 0; f < m; ++f) order[f] = f;
  std::stable_sort(order.begin(), order.end(), [&](Mor a, Mor b) { return depth[a] < depth[b]; });
  std::vector<int> position(m);
  for (int i = 0; i < m; ++i) position[order[i]] = i;

  // Composition constraints (g, f, g∘f) keyed by their latest position.
  std::vector<std::vector<std::array<Mor, 3>>> checks(m);
  for (Mor f = 0; f < m; ++f)
    for (Mor g = 0; g < m; ++g)
      if (c.cod(f) == c.dom(g)) {
        Mor h = c.compose(g, f);
        checks[std::max({position[f], position[g], position[h]})].push_back({g, f, h});
      }

  std::vector<Obj> om(k, 0);
  std::vector<Mor> mm(m, kNone);
  bool going = true;
  std::function<void(int)> assign = [&](int step) {
    if (!going) return;
    if (step == m) {
      going = visit(om, mm);
      return;
    }
    const Mor i = order[step];
    auto candidates = [&]() -> std::vector<Mor> {
      if (c.is_identity(i)) return {c.identity(om[c.dom(i)])};
      return c.hom(om[c.dom(i)], om[c.cod(i)]);
    }();
    for (Mor img : candidates) {
      mm[i] = img;
      bool ok = true;
      for (const auto& [g, f, h] : checks[step])
        if (c.compose(mm[g], mm[f]) != mm[h]) {
          ok = false;
          break;
        }
      if (ok) assign(step + 1);
    }
    mm[i] = kNone;
  };
  while (true) {
    assign(0);
    int pos = k - 1;
    while (pos >= 0 && om[pos] == k - 1) om[pos--] = 0;
    if (pos < 0 || !going) break;
    ++om[pos];
  }
}

std::vector<Functor> all_endofunctors(const CategoryPtr& c, std::size_t limit) {
  std::vector<Functor> out;
  if (limit == 0) return out;
  for_each_endofunctor(c, [&](const std::vector<Obj>& om, const std::vector<Mor>& mm) {
    out.emplace_back(c, c, om, mm);
    return out.size() < limit;
  });
  return out;
}

bool is_full(const Functor& f) {
  const FinCategory& s = *f.source();
  for (Obj x = 0; x < s.num_objects(); ++x)
    for (Obj y = 0; y < s.num_objects(); ++y) {
      std::set<Mor> image;
      for (Mor h : s.hom(x, y)) image.insert(f.map(h));
      if (image.size() != f.target()->hom(f(x), f(y)).size()) return false;
    }
  return true;
}

bool is_faithful(const Functor& f) {
  const FinCategory& s = *f.source();
  for (Obj x = 0; x < s.num_objects(); ++x)
    for (Obj y = 0; y < s.num_objects(); ++y) {
      std::set<Mor> image;
      for (Mor h : s.hom(x, y)) image.insert(f.map(h));
      if (image.size() != s.hom(x, y).size()) return false;
    }
  return true;
}

IsoPair random_iso_pair(Rng& rng, const Functor& f) {
  f.require_endofunctor();
  const FinCategory& c = *f.source();
  std::vector<Obj> gm(c.num_objects());
  std::vector<Mor> theta(c.num_objects());
  for (Obj x = 0; x < c.num_objects(); ++x) {
    std::vector<Mor> options;
    for (Obj y = 0; y < c.num_objects(); ++y)
      for (Mor t : c.isos(f(x), y)) options.push_back(t);
    theta[x] = options[below(rng, options.size())];
    gm[x] = c.cod(theta[x]);
  }
  std::vector<Mor> gmor(c.num_morphisms());
  for (Mor h = 0; h < c.num_morphisms(); ++h)
    gmor[h] = c.compose_path({*c.inverse(theta[c.dom(h)]), f.map(h), theta[c.cod(h)]});
  Functor g(f.source(), f.target(), gm, gmor, f.name() + "^theta");
  NatTransformation eta(f, g, theta, "theta");
  return {f, g, eta};
}

std::vector<CategoryData> single_entry_mutations(const CategoryData& d) {
  std::vector<CategoryData> out;
  for (std::size_t e = 0; e < d.composition.size(); ++e)
    for (const auto& m : d.morphisms) {
      if (m.id == d.composition[e][2]) continue;
      CategoryData copy = d;
      copy.composition[e][2] = m.id;
      out.push_back(std::move(copy));
    }
  return out;
}

IntMatrix random_matrix(Rng& rng, std::size_t max_rows, std::size_t max_cols, long lo, long hi) {
  const std::size_t r = static_cast<std::size_t>(between(rng, 1, static_cast<long>(max_rows)));
  const std::size_t c = static_cast<std::size_t>(between(rng, 1, static_cast<long>(max_cols)));
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = between(rng, lo, hi);
  return m;
}

}  // namespace fixcat::gen
