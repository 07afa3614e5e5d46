#include "fixcat/nerve.hpp"

#include <algorithm>
#include <map>

#include "fixcat/fixpoint.hpp"

namespace fixcat {

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      Rational factor = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k) a[r][k] -= factor * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

QMatrix to_q(const IntMatrix& m) {
  QMatrix q(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q[r][c] = m(r, c);
  return q;
}

// Basis of {x : A x = 0} over Q, as vectors of length cols.
std::vector<std::vector<Rational>> nullspace(const IntMatrix& m) {
  QMatrix a = to_q(m);
  auto pivots = rref(a, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

// ------------------------------------------------------------------ nerve

LoopFreeReport is_loop_free(const FinCategory& c) {
  const int n = c.num_objects();
  std::vector<std::vector<Obj>> succ(n);
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    if (c.dom(f) == c.cod(f)) return {false, 0};
    succ[c.dom(f)].push_back(c.cod(f));
  }
  // Longest path by memoized DFS; a grey vertex on re-entry means a cycle.
  std::vector<int> state(n, 0), longest(n, 0);
  bool cyclic = false;
  auto visit = [&](auto&& self, Obj x) -> void {
    state[x] = 1;
    for (Obj y : succ[x]) {
      if (state[y] == 1) {
        cyclic = true;
        continue;
      }
      if (state[y] == 0) self(self, y);
      longest[x] = std::max(longest[x], longest[y] + 1);
    }
    state[x] = 2;
  };
  for (Obj x = 0; x < n; ++x)
    if (state[x] == 0) visit(visit, x);
  if (cyclic) return {false, 0};
  int best = 0;
  for (int l : longest) best = std::max(best, l);
  return {true, best};
}

int NerveTruncation::index_of(const Simplex& s) const {
  if (s.dim() > max_dim) return -1;
  const auto& list = simplices[s.dim()];
  if (s.dim() == 0) return s.start < static_cast<int>(list.size()) ? s.start : -1;
  auto it = std::lower_bound(list.begin(), list.end(), s,
                             [](const Simplex& a, const Simplex& b) { return a.arrows < b.arrows; });
  if (it == list.end() || it->arrows != s.arrows) return -1;
  return static_cast<int>(it - list.begin());
}

std::vector<std::size_t> NerveTruncation::counts() const {
  std::vector<std::size_t> out;
  for (const auto& l : simplices) out.push_back(l.size());
  return out;
}

NerveTruncation nerve(const CategoryPtr& cp, int max_dim) {
  if (max_dim < 0) throw Error("DegreeOutOfRange", "negative truncation degree");
  const FinCategory& c = *cp;
  NerveTruncation nv;
  nv.category = cp;
  nv.max_dim = max_dim;
  nv.simplices.resize(max_dim + 1);
  for (Obj x = 0; x < c.num_objects(); ++x) nv.simplices[0].push_back({x, {}});
  std::vector<std::vector<Mor>> out(c.num_objects());
  for (Mor f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_identity(f)) out[c.dom(f)].push_back(f);
  for (int n = 1; n <= max_dim; ++n) {
    for (const Simplex& s : nv.simplices[n - 1]) {
      Obj end = s.arrows.empty() ? s.start : c.cod(s.arrows.back());
      for (Mor f : out[end]) {
        Simplex t = s;
        t.arrows.push_back(f);
        nv.simplices[n].push_back(std::move(t));
      }
    }
    std::sort(nv.simplices[n].begin(), nv.simplices[n].end(),
              [](const Simplex& a, const Simplex& b) { return a.arrows < b.arrows; });
  }
  auto lf = is_loop_free(c);
  nv.exact = lf.loop_free && lf.longest_chain <= max_dim;
  return nv;
}

std::optional<Simplex> face(const FinCategory& c, const Simplex& s, int i) {
  const int n = s.dim();
  if (n == 0 || i < 0 || i > n) return std::nullopt;
  Simplex t;
  if (i == 0) {
    t.start = c.cod(s.arrows.front());
    t.arrows.assign(s.arrows.begin() + 1, s.arrows.end());
  } else if (i == n) {
    t.start = s.start;
    t.arrows.assign(s.arrows.begin(), s.arrows.end() - 1);
  } else {
    Mor composite = c.compose(s.arrows[i], s.arrows[i - 1]);
    if (c.is_identity(composite)) return std::nullopt;
    t.start = s.start;
    t.arrows = s.arrows;
    t.arrows[i - 1] = composite;
    t.arrows.erase(t.arrows.begin() + i);
  }
  return t;
}

ChainComplexZ chain_complex(const NerveTruncation& nv) {
  const FinCategory& c = *nv.category;
  ChainComplexZ cx;
  cx.exact = nv.exact;
  cx.ranks = nv.counts();
  cx.boundary.push_back(IntMatrix(0, cx.ranks[0]));
  for (int n = 1; n <= nv.max_dim; ++n) {
    IntMatrix d(cx.ranks[n - 1], cx.ranks[n]);
    for (std::size_t col = 0; col < nv.simplices[n].size(); ++col)
      for (int i = 0; i <= n; ++i)
        if (auto f = face(c, nv.simplices[n][col], i)) {
          int row = nv.index_of(*f);
          if (row < 0) throw Error("NotAComplex", "face outside the truncation");
          d(row, col) += (i % 2 == 0) ? 1 : -1;
        }
    cx.boundary.push_back(std::move(d));
  }
  for (int n = 2; n <= nv.max_dim; ++n)
    if (!(cx.boundary[n - 1] * cx.boundary[n]).is_zero())
      throw Error("NotAComplex", "d o d != 0 in degree " + std::to_string(n));
  return cx;
}

AbGroupInvariants homology(const ChainComplexZ& cx, int n) {
  if (n < 0 || n > cx.top()) throw Error("DegreeOutOfRange", "degree " + std::to_string(n) + " outside the truncation");
  const std::size_t rn = cx.ranks[n];
  IntMatrix in = n + 1 <= cx.top() ? cx.boundary[n + 1] : IntMatrix(rn, 0);
  const IntMatrix& out = cx.boundary[n];
  AbHom hin{PresentedAbGroup::free(in.cols()), PresentedAbGroup::free(rn), in};
  AbHom hout{PresentedAbGroup::free(rn), PresentedAbGroup::free(out.rows()), out};
  return homology_group(hin, hout).invariants();
}

std::vector<IntMatrix> induced_chain_map(const Functor& F, const NerveTruncation& nv) {
  F.require_endofunctor();
  const FinCategory& c = *nv.category;
  std::vector<IntMatrix> maps;
  for (int n = 0; n <= nv.max_dim; ++n) {
    const auto& list = nv.simplices[n];
    IntMatrix m(list.size(), list.size());
    for (std::size_t col = 0; col < list.size(); ++col) {
      Simplex img{F(list[col].start), {}};
      bool degenerate = false;
      for (Mor f : list[col].arrows) {
        Mor g = F.map(f);
        if (c.is_identity(g)) degenerate = true;
        img.arrows.push_back(g);
      }
      if (degenerate) continue;
      int row = nv.index_of(img);
      if (row < 0) throw Error("NotAChainMap", "image simplex outside the truncation");
      m(row, col) = 1;
    }
    maps.push_back(std::move(m));
  }
  auto cx = chain_complex(nv);
  for (int n = 1; n <= nv.max_dim; ++n)
    if (!(cx.boundary[n] * maps[n] == maps[n - 1] * cx.boundary[n]))
      throw Error("NotAChainMap", "induced map does not commute with d in degree " + std::to_string(n));
  return maps;
}

Rational homology_trace(const ChainComplexZ& cx, const std::vector<IntMatrix>& map, int n) {
  if (n < 0 || n > cx.top()) throw Error("DegreeOutOfRange", "degree outside the truncation");
  const std::size_t rn = cx.ranks[n];
  if (rn == 0) return 0;

  // Columns: a basis of the boundaries, then cycles extending it.
  QMatrix cand(rn);
  std::size_t width = 0;
  if (n + 1 <= cx.top()) {
    const IntMatrix& d = cx.boundary[n + 1];
    for (std::size_t r = 0; r < rn; ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) cand[r].push_back(Rational(d(r, c)));
    width = d.cols();
  }
  const std::size_t boundary_cols = width;
  for (const auto& z : nullspace(cx.boundary[n])) {
    for (std::size_t r = 0; r < rn; ++r) cand[r].push_back(z[r]);
    ++width;
  }
  QMatrix reduced = cand;
  auto pivots = rref(reduced, width);
  std::size_t k = 0;
  while (k < pivots.size() && pivots[k] < boundary_cols) ++k;
  if (k == pivots.size()) return 0;

  // Coordinates of M q_j in the basis q_0..q_{d-1}.
  const std::size_t dim = pivots.size();
  QMatrix aug(rn, std::vector<Rational>(2 * dim));
  const IntMatrix& m = map.at(n);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t r = 0; r < rn; ++r) aug[r][j] = cand[r][pivots[j]];
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t r = 0; r < rn; ++r) {
      Rational s = 0;
      for (std::size_t t = 0; t < rn; ++t)
        if (sgn(m(r, t)) != 0) s += Rational(m(r, t)) * cand[t][pivots[j]];
      aug[r][dim + j] = s;
    }
  rref(aug, dim);
  Rational trace = 0;
  for (std::size_t j = k; j < dim; ++j) trace += aug[j][dim + j];
  return trace;
}

LefschetzReport lefschetz(const Functor& F, int max_dim) {
  F.require_endofunctor();
  auto lf = is_loop_free(*F.source());
  if (!lf.loop_free) throw Error("NerveNotFinite", "the nerve has nondegenerate simplices in every degree");
  if (lf.longest_chain > max_dim)
    throw Error("NerveNotFinite", "longest chain " + std::to_string(lf.longest_chain) + " exceeds degree bound " +
                                      std::to_string(max_dim));
  auto nv = nerve(F.source(), max_dim);
  auto cx = chain_complex(nv);
  auto maps = induced_chain_map(F, nv);
  LefschetzReport r;
  r.chain_level = 0;
  r.homology_level = 0;
  for (int n = 0; n <= max_dim; ++n) {
    Integer t = 0;
    for (std::size_t i = 0; i < maps[n].rows(); ++i) t += maps[n](i, i);
    Rational h = homology_trace(cx, maps, n);
    r.chain_traces.push_back(t);
    r.homology_traces.push_back(h);
    if (n % 2 == 0) {
      r.chain_level += t;
      r.homology_level += h;
    } else {
      r.chain_level -= t;
      r.homology_level -= h;
    }
  }
  r.equal = Rational(r.chain_level) == r.homology_level;
  return r;
}

LefschetzReport lefschetz(const Functor& F) {
  auto lf = is_loop_free(*F.source());
  if (!lf.loop_free) throw Error("NerveNotFinite", "the nerve has nondegenerate simplices in every degree");
  return lefschetz(F, lf.longest_chain);
}

Integer lefschetz_number(const Functor& F) { return lefschetz(F).chain_level; }

Integer fixed_simplex_count(const NerveTruncation& nv, const std::vector<Obj>& om, const std::vector<Mor>& mm) {
  if (!nv.exact) throw Error("NerveNotFinite", "the truncation does not hold every simplex");
  Integer total = 0;
  for (std::size_t n = 0; n < nv.simplices.size(); ++n) {
    long fixed = 0;
    for (const Simplex& s : nv.simplices[n])
      if (om[s.start] == s.start && std::all_of(s.arrows.begin(), s.arrows.end(), [&](Mor a) { return mm[a] == a; }))
        ++fixed;
    total += n % 2 ? -fixed : fixed;
  }
  return total;
}

CertificateReport strict_certificate(const Functor& F) {
  auto l = lefschetz(F);
  CertificateReport r;
  r.lefschetz = l.chain_level;
  r.hopf_equal = l.equal;
  r.has_initial = F.source()->has_initial_object();
  r.prediction = sgn(r.lefschetz) != 0 || r.has_initial;
  r.actual = !strict_fixed_points(F).empty();
  r.consistent = !r.prediction || r.actual;
  return r;
}

CertificateReport strict_certificate(const Functor& F, const NatTransformation& eta) {
  if (!(eta.from() == F)) throw Error("Malformed", "transformation does not start at the functor");
  if (auto v = validate_nat_transformation(eta); !v) throw ValidationError(v);
  CertificateReport r = strict_certificate(F);
  const Functor& G = eta.to();
  auto lf = lefschetz(F);
  auto lg = lefschetz(G);
  r.has_other = true;
  r.traces_match = lf.homology_traces == lg.homology_traces;
  r.other_prediction = sgn(r.lefschetz) != 0;
  r.other_actual = !strict_fixed_points(G).empty();
  r.other_consistent = !r.other_prediction || r.other_actual;
  return r;
}

}  // namespace fixcat
