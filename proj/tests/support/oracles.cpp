#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace oracle {

using fixcat::FinCategory;
using fixcat::Functor;
using fixcat::IntMatrix;
using fixcat::IntVector;
using fixcat::kNone;
using fixcat::Mor;
using fixcat::Obj;
using fixcat::Rational;

bool category_laws_hold(const CategoryData& d) {
  std::set<std::string> objects(d.objects.begin(), d.objects.end());
  if (objects.size() != d.objects.size()) return false;
  std::map<std::string, std::pair<std::string, std::string>> type;
  for (const auto& m : d.morphisms) {
    if (!objects.count(m.dom) || !objects.count(m.cod)) return false;
    if (!type.emplace(m.id, std::make_pair(m.dom, m.cod)).second) return false;
  }
  if (d.identities.size() != objects.size()) return false;
  for (const auto& [x, id] : d.identities) {
    if (!objects.count(x)) return false;
    auto it = type.find(id);
    if (it == type.end() || it->second != std::make_pair(x, x)) return false;
  }

  std::map<std::pair<std::string, std::string>, std::string> comp;
  for (const auto& [g, f, gf] : d.composition) {
    if (!type.count(g) || !type.count(f) || !type.count(gf)) return false;
    if (!comp.emplace(std::make_pair(g, f), gf).second) return false;
    if (type[f].second != type[g].first) return false;
    if (type[gf] != std::make_pair(type[f].first, type[g].second)) return false;
  }
  for (const auto& [g, tg] : type)
    for (const auto& [f, tf] : type)
      if (tf.second == tg.first && !comp.count({g, f})) return false;

  for (const auto& [f, tf] : type) {
    if (comp[{f, d.identities.at(tf.first)}] != f) return false;
    if (comp[{d.identities.at(tf.second), f}] != f) return false;
  }
  for (const auto& [f, tf] : type)
    for (const auto& [g, tg] : type) {
      if (tf.second != tg.first) continue;
      for (const auto& [h, th] : type) {
        if (tg.second != th.first) continue;
        if (comp[{h, comp[{g, f}]}] != comp[{comp[{h, g}], f}]) return false;
      }
    }
  return true;
}

std::size_t hom_colimit_classes(const Functor& f, Obj x) {
  const FinCategory& c = *f.source();
  std::vector<std::pair<Obj, Mor>> nodes;
  std::map<std::pair<Obj, Mor>, std::size_t> at;
  for (Obj i = 0; i < c.num_objects(); ++i)
    for (Mor phi : c.hom(x, f(i))) {
      at[{i, phi}] = nodes.size();
      nodes.emplace_back(i, phi);
    }
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (Mor m = 0; m < c.num_morphisms(); ++m)
    for (Mor phi : c.hom(x, f(c.dom(m)))) {
      std::size_t a = at.at({c.dom(m), phi});
      std::size_t b = at.at({c.cod(m), c.compose(f.map(m), phi)});
      parent[find(a)] = find(b);
    }
  std::size_t roots = 0;
  for (std::size_t v = 0; v < nodes.size(); ++v) roots += find(v) == v;
  return roots;
}

namespace {

// Leibniz expansion over the permutations of the chosen columns.
Integer leibniz(const IntMatrix& m, const std::vector<std::size_t>& rows, std::vector<std::size_t> cols) {
  Integer total = 0;
  std::sort(cols.begin(), cols.end());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i + 1; j < cols.size(); ++j) inversions += cols[i] > cols[j];
    Integer term = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) term *= m(rows[i], cols[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(cols.begin(), cols.end()));
  return total;
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> go = [&](std::size_t next) {
    if (pick.size() == k) {
      visit(pick);
      return;
    }
    for (std::size_t i = next; i < n; ++i) {
      pick.push_back(i);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
}

// Rank over Q by fraction-valued elimination.
std::size_t rank_q(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational factor = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= factor * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

struct Chain {
  Obj start;
  std::vector<Mor> arrows;
  bool operator<(const Chain& o) const { return std::tie(start, arrows) < std::tie(o.start, o.arrows); }
};

// Identity-free chains of each length up to max_len, filtered by `keep`.
std::vector<std::vector<Chain>> chains(const FinCategory& c, int max_len, const std::function<bool(Mor)>& keep) {
  std::vector<std::vector<Chain>> out(max_len + 1);
  for (Obj x = 0; x < c.num_objects(); ++x) out[0].push_back({x, {}});
  for (int n = 1; n <= max_len; ++n)
    for (const Chain& ch : out[n - 1]) {
      Obj end = ch.arrows.empty() ? ch.start : c.cod(ch.arrows.back());
      for (Mor f = 0; f < c.num_morphisms(); ++f) {
        if (c.dom(f) != end || c.is_identity(f) || !keep(f)) continue;
        Chain next = ch;
        next.arrows.push_back(f);
        out[n].push_back(std::move(next));
      }
    }
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

}  // namespace

Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  if (k == 0) return 1;
  subsets(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    subsets(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      Integer det = leibniz(m, rows, cols);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
    });
  });
  return g;
}

std::vector<std::size_t> nerve_betti(const FinCategory& c, int n) {
  auto levels = chains(c, n + 1, [](Mor) { return true; });
  auto boundary = [&](int q) {
    // q >= 1: rows index (q-1)-chains, columns q-chains.
    std::vector<std::vector<Rational>> d(levels[q - 1].size(), std::vector<Rational>(levels[q].size(), 0));
    auto row_of = [&](const Chain& ch) {
      auto it = std::lower_bound(levels[q - 1].begin(), levels[q - 1].end(), ch);
      return static_cast<std::size_t>(it - levels[q - 1].begin());
    };
    for (std::size_t j = 0; j < levels[q].size(); ++j) {
      const Chain& ch = levels[q][j];
      for (int i = 0; i <= q; ++i) {
        Chain f;
        if (i == 0) {
          f.start = c.cod(ch.arrows[0]);
          f.arrows.assign(ch.arrows.begin() + 1, ch.arrows.end());
        } else if (i == q) {
          f.start = ch.start;
          f.arrows.assign(ch.arrows.begin(), ch.arrows.end() - 1);
        } else {
          f.start = ch.start;
          for (int k = 0; k < q; ++k) {
            if (k == i - 1) continue;
            f.arrows.push_back(k == i ? c.compose(ch.arrows[i], ch.arrows[i - 1]) : ch.arrows[k]);
          }
          if (c.is_identity(f.arrows[i - 1])) continue;
        }
        d[row_of(f)][j] += (i % 2 ? -1 : 1);
      }
    }
    return d;
  };
  std::vector<std::size_t> ranks(n + 2, 0);
  for (int q = 1; q <= n + 1; ++q)
    if (!levels[q].empty() && !levels[q - 1].empty()) ranks[q] = rank_q(boundary(q));
  std::vector<std::size_t> betti;
  for (int q = 0; q <= n; ++q) betti.push_back(levels[q].size() - ranks[q] - ranks[q + 1]);
  return betti;
}

Integer fixed_chain_count(const Functor& f) {
  const FinCategory& c = *f.source();
  auto levels = chains(c, c.num_objects(), [&](Mor m) { return f.map(m) == m; });
  Integer total = 0;
  for (std::size_t q = 0; q < levels.size(); ++q)
    for (const Chain& ch : levels[q])
      if (f(ch.start) == ch.start) total += q % 2 ? -1 : 1;
  return total;
}

bool is_full(const Functor& f) {
  const FinCategory& c = *f.source();
  const FinCategory& d = *f.target();
  for (Obj x = 0; x < c.num_objects(); ++x)
    for (Obj y = 0; y < c.num_objects(); ++y) {
      std::set<Mor> image;
      for (Mor m : c.hom(x, y)) image.insert(f.map(m));
      if (image.size() != d.hom(f(x), f(y)).size()) return false;
    }
  return true;
}

bool has_initial(const FinCategory& c) {
  for (Obj x = 0; x < c.num_objects(); ++x) {
    bool initial = true;
    for (Obj y = 0; y < c.num_objects() && initial; ++y) initial = c.hom(x, y).size() == 1;
    if (initial) return true;
  }
  return false;
}

bool is_mono(const FinCategory& c, Mor f) {
  for (Mor g = 0; g < c.num_morphisms(); ++g)
    for (Mor h = 0; h < c.num_morphisms(); ++h)
      if (g != h && c.cod(g) == c.dom(f) && c.cod(h) == c.dom(f) && c.dom(g) == c.dom(h) &&
          c.compose(f, g) == c.compose(f, h))
        return false;
  return true;
}

bool is_epi(const FinCategory& c, Mor f) {
  for (Mor g = 0; g < c.num_morphisms(); ++g)
    for (Mor h = 0; h < c.num_morphisms(); ++h)
      if (g != h && c.dom(g) == c.cod(f) && c.dom(h) == c.cod(f) && c.cod(g) == c.cod(h) &&
          c.compose(g, f) == c.compose(h, f))
        return false;
  return true;
}

bool is_balanced(const FinCategory& c) {
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    if (!oracle::is_mono(c, f) || !oracle::is_epi(c, f)) continue;
    bool invertible = false;
    for (Mor g = 0; g < c.num_morphisms() && !invertible; ++g)
      invertible = c.dom(g) == c.cod(f) && c.cod(g) == c.dom(f) && c.is_identity(c.compose(g, f)) &&
                   c.is_identity(c.compose(f, g));
    if (!invertible) return false;
  }
  return true;
}

namespace {

bool leq(const FinCategory& c, Obj a, Obj b) { return !c.hom(a, b).empty(); }

std::optional<Obj> extremal(const FinCategory& c, const std::function<bool(Obj)>& bound, bool greatest) {
  for (Obj m = 0; m < c.num_objects(); ++m) {
    if (!bound(m)) continue;
    bool best = true;
    for (Obj z = 0; z < c.num_objects() && best; ++z)
      if (bound(z)) best = greatest ? leq(c, z, m) : leq(c, m, z);
    if (best) return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Obj> meet(const FinCategory& c, Obj a, Obj b) {
  return extremal(c, [&](Obj z) { return leq(c, z, a) && leq(c, z, b); }, true);
}

std::optional<Obj> join(const FinCategory& c, Obj a, Obj b) {
  return extremal(c, [&](Obj z) { return leq(c, a, z) && leq(c, b, z); }, false);
}

bool hom_counts_match(const Functor& left, const Functor& right) {
  const FinCategory& a = *left.source();
  const FinCategory& b = *left.target();
  for (Obj x = 0; x < a.num_objects(); ++x)
    for (Obj y = 0; y < b.num_objects(); ++y)
      if (b.hom(left(x), y).size() != a.hom(x, right(y)).size()) return false;
  return true;
}

namespace {

// Per-generator orders of a group presented by one relation d_i e_i per
// generator (or none for a free generator, which is rejected).
std::vector<long> diagonal_orders(const fixcat::PresentedAbGroup& g) {
  std::vector<long> orders(g.generators(), 0);
  const IntMatrix& r = g.relations();
  for (std::size_t j = 0; j < r.cols(); ++j) {
    int row = -1;
    for (std::size_t i = 0; i < r.rows(); ++i)
      if (r(i, j) != 0) {
        if (row >= 0) throw std::runtime_error("oracle needs a diagonal presentation");
        row = static_cast<int>(i);
      }
    if (row < 0) continue;
    if (orders[row] != 0) throw std::runtime_error("oracle needs one relation per generator");
    orders[row] = std::abs(r(row, j).get_si());
  }
  for (long o : orders)
    if (o == 0) throw std::runtime_error("oracle needs a finite group");
  return orders;
}

using Residues = std::vector<long>;

Residues reduce(const IntVector& v, const std::vector<long>& orders) {
  Residues out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer r = v[i] % orders[i];
    if (r < 0) r += orders[i];
    out[i] = r.get_si();
  }
  return out;
}

// Every residue vector of the box prod [0, orders_i).
template <class Visit>
void for_each_residue(const std::vector<long>& orders, Visit&& visit) {
  Residues x(orders.size(), 0);
  while (true) {
    visit(x);
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == orders[i]) x[i++] = 0;
    if (i == x.size()) return;
  }
}

IntVector to_int(const Residues& r) { return IntVector(r.begin(), r.end()); }

}  // namespace

KernelImage kernel_image(const fixcat::AbHom& h) {
  auto src = diagonal_orders(h.source);
  auto tgt = diagonal_orders(h.target);
  KernelImage out;
  std::set<Residues> image;
  for_each_residue(src, [&](const Residues& x) {
    Residues y = reduce(h.matrix * to_int(x), tgt);
    out.kernel += std::all_of(y.begin(), y.end(), [](long v) { return v == 0; });
    image.insert(y);
  });
  out.image = image.size();
  return out;
}

std::vector<Integer> cech_orders(const fixcat::Presheaf& mu, const std::vector<Mor>& cover, std::size_t n,
                                 std::size_t budget) {
  const FinCategory& c = *mu.base();
  const std::size_t a = cover.size();

  // Cochains of degree q: tuples of cover indices with repetition, each with
  // its iterated meet.
  struct Degree {
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<Obj> meets;
    std::vector<std::vector<long>> orders;
    std::size_t size = 1;
  };
  auto build = [&](std::size_t q, bool enumerated) {
    Degree d;
    std::vector<std::size_t> t(q + 1, 0);
    while (true) {
      Obj m = c.dom(cover[t[0]]);
      for (std::size_t i = 1; i <= q; ++i) {
        auto next = meet(c, m, c.dom(cover[t[i]]));
        if (!next) throw std::runtime_error("oracle needs meets");
        m = *next;
      }
      d.tuples.push_back(t);
      d.meets.push_back(m);
      d.orders.push_back(diagonal_orders(mu.value(m)));
      for (long o : d.orders.back()) {
        if (!enumerated) continue;
        if (d.size > budget / static_cast<std::size_t>(o)) throw std::runtime_error("cochain budget exceeded");
        d.size *= static_cast<std::size_t>(o);
      }
      std::size_t i = q + 1;
      while (i > 0 && ++t[i - 1] == a) t[--i] = 0;
      if (i == 0) break;
    }
    return d;
  };

  std::vector<Degree> degrees;
  for (std::size_t q = 0; q <= n + 1; ++q) degrees.push_back(build(q, q <= n));

  auto index_of = [&](const Degree& d, const std::vector<std::size_t>& t) {
    auto it = std::find(d.tuples.begin(), d.tuples.end(), t);
    return static_cast<std::size_t>(it - d.tuples.begin());
  };

  // |ker d^q| by enumerating C^q.
  auto kernel_size = [&](std::size_t q) {
    const Degree& src = degrees[q];
    const Degree& dst = degrees[q + 1];
    std::vector<long> flat;
    for (const auto& o : src.orders) flat.insert(flat.end(), o.begin(), o.end());
    std::vector<std::size_t> offset;
    std::size_t acc = 0;
    for (const auto& o : src.orders) {
      offset.push_back(acc);
      acc += o.size();
    }
    std::size_t count = 0;
    for_each_residue(flat, [&](const Residues& x) {
      for (std::size_t j = 0; j < dst.tuples.size(); ++j) {
        IntVector sum(dst.orders[j].size(), 0);
        for (std::size_t k = 0; k <= q + 1; ++k) {
          auto face = dst.tuples[j];
          face.erase(face.begin() + static_cast<long>(k));
          std::size_t s = index_of(src, face);
          Mor r = c.hom(dst.meets[j], src.meets[s]).front();
          IntVector local(x.begin() + static_cast<long>(offset[s]),
                          x.begin() + static_cast<long>(offset[s] + src.orders[s].size()));
          IntVector image = mu.restriction(r).matrix * local;
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += k % 2 ? -image[i] : image[i];
        }
        Residues y = reduce(sum, dst.orders[j]);
        if (std::any_of(y.begin(), y.end(), [](long v) { return v != 0; })) return;
      }
      ++count;
    });
    return count;
  };

  std::vector<Integer> out;
  std::size_t previous_image = 1;
  for (std::size_t q = 0; q <= n; ++q) {
    std::size_t ker = kernel_size(q);
    out.push_back(Integer(ker) / Integer(previous_image));
    previous_image = degrees[q].size / ker;
  }
  return out;
}

std::vector<std::vector<std::vector<bool>>> all_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::vector<bool>>> out;
  for (unsigned long mask = 0; mask < (1ul << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) r[pairs[k].first][pairs[k].second] = true;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && r[i][j] && r[j][i]) ok = false;
        for (int k = 0; k < n && ok; ++k)
          if (r[i][j] && r[j][k] && !r[i][k]) ok = false;
      }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace oracle
