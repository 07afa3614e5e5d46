#include "fixcat/abgrp.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>
#include <utility>

#include "fixcat/error.hpp"

namespace fixcat {

namespace {
int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw Error("IllTypedHom", "matrix data does not match its shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("IllTypedHom", "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error("IllTypedHom", "column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("IllTypedHom", "matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Integer& b = rhs(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw Error("IllTypedHom", "matrix-vector shape mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn(v[k]) != 0 && sgn((*this)(i, k)) != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("IllTypedHom", "matrix sum shape mismatch");
  IntMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const { return *this + (-rhs); }

IntMatrix IntMatrix::operator-() const {
  IntMatrix out(*this);
  for (auto& x : out.data_) x = -x;
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::column_slice(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

IntMatrix IntMatrix::row_slice(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(first + r, c);
  return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw Error("IllTypedHom", "hstack row mismatch");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw Error("IllTypedHom", "vstack column mismatch");
  IntMatrix out(a.rows_ + b.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) out(a.rows_ + r, c) = b(r, c);
  return out;
}

IntMatrix IntMatrix::block_diagonal(std::span<const IntMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows_;
    cols += b.cols_;
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) out(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows_;
    c0 += b.cols_;
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c).get_str();
  }
  os << ']';
  return os.str();
}

// -------------------------------------------------------------------- Smith

namespace {

// Dense elimination with optional bookkeeping of U, V and their inverses.
// Row ops act on A and U (and on the columns of U_inv); column ops on A and V
// (and on the rows of V_inv).
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, bool track)
      : a_(m), track_(track), rows_(m.rows()), cols_(m.cols()) {
    if (track_) {
      u_ = IntMatrix::identity(rows_);
      u_inv_ = IntMatrix::identity(rows_);
      v_ = IntMatrix::identity(cols_);
      v_inv_ = IntMatrix::identity(cols_);
    }
  }

  void run() {
    const std::size_t n = std::min(rows_, cols_);
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (!select_pivot(t, t, rows_, t, cols_)) break;
      eliminate(t);
    }
    rank_ = t;
    fix_divisibility();
    for (std::size_t i = 0; i < rank_; ++i)
      if (sgn(a_(i, i)) < 0) negate_row(i);
  }

  SmithForm result() && {
    SmithForm sf;
    sf.rank = rank_;
    const std::size_t n = std::min(rows_, cols_);
    sf.diagonal.resize(n);
    for (std::size_t i = 0; i < n; ++i) sf.diagonal[i] = a_(i, i);
    sf.D = std::move(a_);
    if (track_) {
      sf.U = std::move(u_);
      sf.U_inv = std::move(u_inv_);
      sf.V = std::move(v_);
      sf.V_inv = std::move(v_inv_);
    }
    return sf;
  }

 private:
  // Moves the smallest nonzero entry of the block into (t, t).
  bool select_pivot(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    std::size_t br = 0, bc = 0;
    bool found = false;
    Integer best;
    for (std::size_t r = r0; r < r1; ++r) {
      for (std::size_t c = c0; c < c1; ++c) {
        const Integer& x = a_(r, c);
        if (sgn(x) == 0) continue;
        if (!found || cmpabs(x, best) < 0) {
          best = x;
          br = r;
          bc = c;
          found = true;
          if (best == 1 || best == -1) break;
        }
      }
      if (found && (best == 1 || best == -1)) break;
    }
    if (!found) return false;
    if (br != t) swap_rows(br, t);
    if (bc != t) swap_cols(bc, t);
    return true;
  }

  void eliminate(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (sgn(a_(i, t)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        if (sgn(q) != 0) add_row(i, t, -q);
        if (sgn(a_(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (sgn(a_(t, j)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        if (sgn(q) != 0) add_col(j, t, -q);
        if (sgn(a_(t, j)) != 0) clean = false;
      }
      if (clean) return;
      // A remainder is smaller than the pivot; bring the smallest into place.
      std::size_t br = t, bc = t;
      Integer best = a_(t, t);
      for (std::size_t i = t + 1; i < rows_; ++i)
        if (sgn(a_(i, t)) != 0 && cmpabs(a_(i, t), best) < 0) {
          best = a_(i, t);
          br = i;
          bc = t;
        }
      for (std::size_t j = t + 1; j < cols_; ++j)
        if (sgn(a_(t, j)) != 0 && cmpabs(a_(t, j), best) < 0) {
          best = a_(t, j);
          br = t;
          bc = j;
        }
      if (br != t) swap_rows(br, t);
      if (bc != t) swap_cols(bc, t);
    }
  }

  // Makes the diagonal a divisibility chain with 2x2 unimodular moves.
  void fix_divisibility() {
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = i + 1; j < rank_; ++j) {
        const Integer a = a_(i, i), b = a_(j, j);
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        // Column i += column j puts b below a; then [s t; -b/g a/g] on rows i, j.
        add_col(i, j, Integer(1));
        const Integer bg = b / g, ag = a / g;
        combine_rows(i, j, s, t, -bg, ag);
        // Row i now reads (g, t*b); clear the off-diagonal entry.
        const Integer q = a_(i, j) / g;
        if (sgn(q) != 0) add_col(j, i, -q);
      }
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) swap(a_(i, c), a_(j, c));
    if (!track_) return;
    for (std::size_t c = 0; c < rows_; ++c) swap(u_(i, c), u_(j, c));
    for (std::size_t r = 0; r < rows_; ++r) swap(u_inv_(r, i), u_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) swap(a_(r, i), a_(r, j));
    if (!track_) return;
    for (std::size_t r = 0; r < cols_; ++r) swap(v_(r, i), v_(r, j));
    for (std::size_t c = 0; c < cols_; ++c) swap(v_inv_(i, c), v_inv_(j, c));
  }

  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(a_(j, c)) != 0) a_(i, c) += q * a_(j, c);
    if (!track_) return;
    for (std::size_t c = 0; c < rows_; ++c)
      if (sgn(u_(j, c)) != 0) u_(i, c) += q * u_(j, c);
    for (std::size_t r = 0; r < rows_; ++r)
      if (sgn(u_inv_(r, i)) != 0) u_inv_(r, j) -= q * u_inv_(r, i);
  }

  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < rows_; ++r)
      if (sgn(a_(r, j)) != 0) a_(r, i) += q * a_(r, j);
    if (!track_) return;
    for (std::size_t r = 0; r < cols_; ++r)
      if (sgn(v_(r, j)) != 0) v_(r, i) += q * v_(r, j);
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(v_inv_(i, c)) != 0) v_inv_(j, c) -= q * v_inv_(i, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) a_(i, c) = -a_(i, c);
    if (!track_) return;
    for (std::size_t c = 0; c < rows_; ++c) u_(i, c) = -u_(i, c);
    for (std::size_t r = 0; r < rows_; ++r) u_inv_(r, i) = -u_inv_(r, i);
  }

  // [row_i; row_j] <- [p q; r s] [row_i; row_j], determinant 1.
  void combine_rows(std::size_t i, std::size_t j, const Integer& p, const Integer& q,
                    const Integer& r, const Integer& s) {
    auto mix = [&](IntMatrix& m, std::size_t width) {
      for (std::size_t c = 0; c < width; ++c) {
        const Integer x = m(i, c), y = m(j, c);
        m(i, c) = p * x + q * y;
        m(j, c) = r * x + s * y;
      }
    };
    mix(a_, cols_);
    if (!track_) return;
    mix(u_, rows_);
    // U_inv <- U_inv * [s -q; -r p] on columns i, j.
    for (std::size_t row = 0; row < rows_; ++row) {
      const Integer x = u_inv_(row, i), y = u_inv_(row, j);
      u_inv_(row, i) = s * x - r * y;
      u_inv_(row, j) = -q * x + p * y;
    }
  }

  IntMatrix a_, u_, u_inv_, v_, v_inv_;
  bool track_;
  std::size_t rows_, cols_;
  std::size_t rank_ = 0;
};

// Basis of the lattice spanned by the columns of K, with a coordinate map.
struct LatticeBasis {
  IntMatrix basis;  // ambient x rank
  SmithForm sf;

  explicit LatticeBasis(const IntMatrix& k) : sf(smith_normal_form(k)) {
    basis = IntMatrix(k.rows(), sf.rank);
    for (std::size_t i = 0; i < sf.rank; ++i)
      for (std::size_t r = 0; r < k.rows(); ++r) basis(r, i) = sf.U_inv(r, i) * sf.diagonal[i];
  }

  std::size_t rank() const { return sf.rank; }

  // Coordinates of a lattice vector in the basis; throws if v is outside.
  IntVector coordinates(const IntVector& v) const {
    const IntVector y = sf.U * v;
    IntVector out(sf.rank);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < sf.rank) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), sf.diagonal[i].get_mpz_t()))
          throw Error("InternalError", "vector outside lattice");
        out[i] = y[i] / sf.diagonal[i];
      } else if (sgn(y[i]) != 0) {
        throw Error("InternalError", "vector outside lattice");
      }
    }
    return out;
  }

  IntMatrix coordinates(const IntMatrix& columns) const {
    IntMatrix out(sf.rank, columns.cols());
    for (std::size_t c = 0; c < columns.cols(); ++c) {
      const IntVector y = coordinates(columns.column(c));
      for (std::size_t r = 0; r < sf.rank; ++r) out(r, c) = y[r];
    }
    return out;
  }
};

// Generators of {x : M x in span(R)} (first block of ker [M | R]).
IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& r) {
  const IntMatrix ker = integer_kernel(IntMatrix::hstack(m, r));
  return ker.row_slice(0, m.cols());
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWorker w(m, true);
  w.run();
  return std::move(w).result();
}

IntVector smith_diagonal(const IntMatrix& m) {
  SmithWorker w(m, false);
  w.run();
  return std::move(w).result().diagonal;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm sf = smith_normal_form(m);
  return sf.V.column_slice(sf.rank, m.cols() - sf.rank);
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw Error("IllTypedHom", "right-hand side length mismatch");
  const SmithForm sf = smith_normal_form(a);
  const IntVector ub = sf.U * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < sf.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), sf.diagonal[i].get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / sf.diagonal[i];
    } else if (sgn(ub[i]) != 0) {
      return std::nullopt;
    }
  }
  return sf.V * y;
}

// --------------------------------------------------------------- invariants

std::size_t AbGroupInvariants::free_rank() const {
  return static_cast<std::size_t>(
      std::count_if(factors.begin(), factors.end(), [](const Integer& d) { return sgn(d) == 0; }));
}

IntVector AbGroupInvariants::torsion() const {
  IntVector out;
  for (const auto& d : factors)
    if (sgn(d) != 0) out.push_back(d);
  return out;
}

std::string AbGroupInvariants::to_string() const {
  if (factors.empty()) return "0";
  std::ostringstream os;
  const std::size_t rank = free_rank();
  bool first = true;
  for (const auto& d : factors) {
    if (sgn(d) == 0) continue;
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  if (rank > 0) {
    os << (first ? "" : " + ") << "Z";
    if (rank > 1) os << '^' << rank;
  }
  return os.str();
}

AbGroupInvariants AbGroupInvariants::from_diagonal(const IntVector& diag, std::size_t generators) {
  AbGroupInvariants inv;
  IntVector torsion;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < generators; ++i) {
    Integer d = i < diag.size() ? Integer(abs(diag[i])) : Integer(0);
    if (d == 1) continue;
    if (sgn(d) == 0)
      ++zeros;
    else
      torsion.push_back(d);
  }
  inv.factors = std::move(torsion);
  inv.factors.insert(inv.factors.end(), zeros, Integer(0));
  return inv;
}

// ----------------------------------------------------------------- groups

PresentedAbGroup::PresentedAbGroup(std::size_t generators, IntMatrix relations)
    : generators_(generators), relations_(std::move(relations)) {
  if (relations_.rows() != generators_)
    throw Error("IllTypedHom", "relation matrix must have one row per generator");
  smith_ = std::make_shared<const SmithForm>(smith_normal_form(relations_));
  invariants_ = AbGroupInvariants::from_diagonal(smith_->diagonal, generators_);
}

PresentedAbGroup PresentedAbGroup::free(std::size_t rank) { return PresentedAbGroup(rank, IntMatrix(rank, 0)); }

PresentedAbGroup PresentedAbGroup::cyclic(const Integer& order) {
  IntMatrix r(1, 1);
  r(0, 0) = order;
  return PresentedAbGroup(1, std::move(r));
}

PresentedAbGroup PresentedAbGroup::from_orders(const IntVector& orders) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (sgn(orders[i]) == 0) continue;
    IntVector c(orders.size());
    c[i] = orders[i];
    cols.push_back(std::move(c));
  }
  return PresentedAbGroup(orders.size(), IntMatrix::from_columns(orders.size(), cols));
}

PresentedAbGroup PresentedAbGroup::direct_sum(std::span<const PresentedAbGroup> parts) {
  std::vector<IntMatrix> blocks;
  std::size_t k = 0;
  for (const auto& p : parts) {
    blocks.push_back(p.relations());
    k += p.generators();
  }
  return PresentedAbGroup(k, IntMatrix::block_diagonal(blocks));
}

Integer PresentedAbGroup::order() const {
  if (!is_finite()) throw Error("InfiniteGroup", "order of an infinite group");
  Integer n = 1;
  for (const auto& d : invariants_.factors) n *= d;
  return n;
}

bool PresentedAbGroup::is_zero(const IntVector& element) const {
  if (element.size() != generators_) throw Error("IllTypedHom", "element has wrong length");
  if (std::all_of(element.begin(), element.end(), [](const Integer& x) { return sgn(x) == 0; })) return true;
  const SmithForm& sf = relation_smith();
  const IntVector y = sf.U * element;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < sf.rank) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), sf.diagonal[i].get_mpz_t())) return false;
    } else if (sgn(y[i]) != 0) {
      return false;
    }
  }
  return true;
}

bool PresentedAbGroup::equal(const IntVector& a, const IntVector& b) const {
  if (a.size() != b.size()) throw Error("IllTypedHom", "elements of different length");
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return is_zero(d);
}

IntVector PresentedAbGroup::canonical_coordinates(const IntVector& element) const {
  const SmithForm& sf = relation_smith();
  const IntVector y = sf.U * element;
  IntVector out;
  for (std::size_t i = 0; i < generators_; ++i) {
    const Integer d = i < sf.rank ? sf.diagonal[i] : Integer(0);
    if (d == 1) continue;
    if (sgn(d) == 0) {
      out.push_back(y[i]);
    } else {
      Integer m;
      mpz_fdiv_r(m.get_mpz_t(), y[i].get_mpz_t(), d.get_mpz_t());
      out.push_back(m);
    }
  }
  return out;
}

std::vector<IntVector> PresentedAbGroup::elements() const {
  if (!is_finite()) throw Error("InfiniteGroup", "cannot enumerate an infinite group");
  const SmithForm& sf = relation_smith();
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < generators_; ++i)
    if (i < sf.rank && sf.diagonal[i] != 1) slots.push_back(i);
  std::vector<IntVector> out;
  IntVector digits(slots.size());
  for (;;) {
    IntVector y(generators_);
    for (std::size_t s = 0; s < slots.size(); ++s) y[slots[s]] = digits[s];
    out.push_back(sf.U_inv * y);
    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      digits[s] += 1;
      if (digits[s] < sf.diagonal[slots[s]]) break;
      digits[s] = 0;
    }
    if (s == slots.size()) break;
  }
  return out;
}

// -------------------------------------------------------------------- homs

AbHom AbHom::identity(const PresentedAbGroup& g) { return {g, g, IntMatrix::identity(g.generators())}; }

AbHom AbHom::zero(const PresentedAbGroup& source, const PresentedAbGroup& target) {
  return {source, target, IntMatrix(target.generators(), source.generators())};
}

void require_typed(const AbHom& h) {
  if (h.matrix.rows() != h.target.generators() || h.matrix.cols() != h.source.generators())
    throw Error("IllTypedHom", "matrix shape " + std::to_string(h.matrix.rows()) + "x" +
                                   std::to_string(h.matrix.cols()) + " does not match groups");
}

bool hom_is_well_defined(const AbHom& h) {
  if (h.matrix.rows() != h.target.generators() || h.matrix.cols() != h.source.generators()) return false;
  const IntMatrix image_of_relations = h.matrix * h.source.relations();
  for (std::size_t c = 0; c < image_of_relations.cols(); ++c)
    if (!h.target.is_zero(image_of_relations.column(c))) return false;
  return true;
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (g.source.generators() != f.target.generators()) throw Error("IllTypedHom", "composition of non-composable homs");
  return {f.source, g.target, g.matrix * f.matrix};
}

AbHom add(const AbHom& a, const AbHom& b) {
  require_typed(a);
  require_typed(b);
  return {a.source, a.target, a.matrix + b.matrix};
}

AbHom subtract(const AbHom& a, const AbHom& b) {
  require_typed(a);
  require_typed(b);
  return {a.source, a.target, a.matrix - b.matrix};
}

bool homs_equal(const AbHom& a, const AbHom& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) return false;
  const IntMatrix d = a.matrix - b.matrix;
  for (std::size_t c = 0; c < d.cols(); ++c)
    if (!a.target.is_zero(d.column(c))) return false;
  return true;
}

bool is_zero_hom(const AbHom& h) {
  for (std::size_t c = 0; c < h.matrix.cols(); ++c)
    if (!h.target.is_zero(h.matrix.column(c))) return false;
  return true;
}

DerivedGroup kernel(const AbHom& h) {
  require_typed(h);
  const IntMatrix gens = preimage_lattice(h.matrix, h.target.relations());
  const LatticeBasis lattice(gens);
  IntMatrix rel = lattice.coordinates(h.source.relations());
  PresentedAbGroup k(lattice.rank(), std::move(rel));
  return {k, AbHom{k, h.source, lattice.basis}};
}

DerivedGroup image(const AbHom& h) {
  require_typed(h);
  const IntMatrix gens = preimage_lattice(h.matrix, h.target.relations());
  PresentedAbGroup im(h.source.generators(), gens);
  return {im, AbHom{im, h.target, h.matrix}};
}

DerivedGroup cokernel(const AbHom& h) {
  require_typed(h);
  PresentedAbGroup q(h.target.generators(), IntMatrix::hstack(h.target.relations(), h.matrix));
  return {q, AbHom{h.target, q, IntMatrix::identity(h.target.generators())}};
}

DerivedGroup equalizer(const AbHom& h1, const AbHom& h2) {
  if (!(h1.source == h2.source) || !(h1.target == h2.target))
    throw Error("NotParallel", "equalizer needs maps with equal source and target");
  return kernel(subtract(h1, h2));
}

bool is_injective(const AbHom& h) { return kernel(h).group.is_trivial(); }
bool is_surjective(const AbHom& h) { return cokernel(h).group.is_trivial(); }
bool is_isomorphism(const AbHom& h) { return is_injective(h) && is_surjective(h); }

PresentedAbGroup homology_group(const AbHom& in, const AbHom& out) {
  require_typed(in);
  require_typed(out);
  const PresentedAbGroup& mid = out.source;
  if (in.target.generators() != mid.generators()) throw Error("NotAComplex", "maps do not chain");
  const IntMatrix cycles = preimage_lattice(out.matrix, out.target.relations());
  const LatticeBasis z(cycles);
  const IntMatrix boundaries = IntMatrix::hstack(in.matrix, mid.relations());
  IntMatrix rel;
  try {
    rel = z.coordinates(boundaries);
  } catch (const Error&) {
    throw Error("NotAComplex", "image of the incoming map is not inside the kernel");
  }
  return PresentedAbGroup(z.rank(), std::move(rel));
}

AbGroupInvariants homology_at(std::span<const AbHom> complex, std::size_t n) {
  if (complex.empty()) throw Error("DegreeOutOfRange", "empty complex has no groups");
  if (n > complex.size()) throw Error("DegreeOutOfRange", "position " + std::to_string(n) + " beyond the complex");
  for (std::size_t i = 0; i < complex.size(); ++i) {
    require_typed(complex[i]);
    if (i + 1 < complex.size()) {
      if (!(complex[i].target == complex[i + 1].source))
        throw Error("NotAComplex", "map " + std::to_string(i) + " does not chain into map " + std::to_string(i + 1));
      if (!is_zero_hom(compose(complex[i + 1], complex[i])))
        throw Error("NotAComplex", "consecutive maps at " + std::to_string(i) + " do not compose to zero");
    }
  }
  const PresentedAbGroup& g = n < complex.size() ? complex[n].source : complex[n - 1].target;
  const AbHom in = n > 0 ? complex[n - 1] : AbHom::zero(PresentedAbGroup::trivial(), g);
  const AbHom out = n < complex.size() ? complex[n] : AbHom::zero(g, PresentedAbGroup::trivial());
  return homology_group(in, out).invariants();
}

IsoTest iso_test(const PresentedAbGroup& g, const PresentedAbGroup& h) {
  IsoTest result;
  if (!(g.invariants() == h.invariants())) return result;
  result.isomorphic = true;
  const SmithForm& sg = g.relation_smith();
  const SmithForm& sh = h.relation_smith();
  auto nonunit_slots = [](const SmithForm& sf, std::size_t k) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < k; ++i)
      if (!(i < sf.rank && sf.diagonal[i] == 1)) slots.push_back(i);
    return slots;
  };
  const auto slots_g = nonunit_slots(sg, g.generators());
  const auto slots_h = nonunit_slots(sh, h.generators());
  IntMatrix m(h.generators(), g.generators());
  for (std::size_t s = 0; s < slots_g.size(); ++s)
    for (std::size_t r = 0; r < h.generators(); ++r)
      for (std::size_t c = 0; c < g.generators(); ++c)
        m(r, c) += sh.U_inv(r, slots_h[s]) * sg.U(slots_g[s], c);
  result.witness = AbHom{g, h, std::move(m)};
  return result;
}

AbHom inverse(const AbHom& h) {
  if (!is_isomorphism(h)) throw Error("NotInvertible", "homomorphism is not an isomorphism");
  const IntMatrix system = IntMatrix::hstack(h.matrix, h.target.relations());
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < h.target.generators(); ++j) {
    IntVector e(h.target.generators());
    e[j] = 1;
    auto x = solve_integer(system, e);
    if (!x) throw Error("InternalError", "surjective map without preimage");
    x->resize(h.source.generators());
    cols.push_back(std::move(*x));
  }
  return {h.target, h.source, IntMatrix::from_columns(h.source.generators(), cols)};
}

}  // namespace fixcat
