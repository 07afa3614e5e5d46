#pragma once

// Exact integer linear algebra and finitely presented abelian groups.
//
// A PresentedAbGroup is Z^k modulo the column span of a k x r relation
// matrix. Homomorphisms carry the images of the source generators as matrix
// columns. Every derived group (kernel, image, cokernel, homology) is again
// given by generators and relations; the invariant-factor list is the
// canonical equality.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fixcat {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  bool is_zero() const;
  bool is_identity() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& rhs) const = default;

  // Columns [first, first+count).
  IntMatrix column_slice(std::size_t first, std::size_t count) const;
  // Rows [first, first+count).
  IntMatrix row_slice(std::size_t first, std::size_t count) const;

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// U * M * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
// U_inv and V_inv are the exact inverses, tracked alongside.
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;
  IntVector diagonal;  // min(rows, cols) entries
};

SmithForm smith_normal_form(const IntMatrix& m);

// Diagonal of the Smith form without tracking transforms.
IntVector smith_diagonal(const IntMatrix& m);

// Basis (as columns) of the integer kernel {x : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

// Some integer solution of A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// Invariant factors of a finitely generated abelian group. Units are dropped,
// torsion factors come first in divisibility order, free summands are zeros
// at the end: Z/2 + Z -> [2, 0]; the trivial group -> [].
struct AbGroupInvariants {
  IntVector factors;

  std::size_t free_rank() const;
  IntVector torsion() const;
  bool is_trivial() const { return factors.empty(); }
  bool is_finite() const { return free_rank() == 0; }
  std::string to_string() const;
  bool operator==(const AbGroupInvariants&) const = default;

  static AbGroupInvariants from_diagonal(const IntVector& diag, std::size_t generators);
};

class PresentedAbGroup {
 public:
  PresentedAbGroup() : PresentedAbGroup(0, IntMatrix(0, 0)) {}
  PresentedAbGroup(std::size_t generators, IntMatrix relations);

  static PresentedAbGroup trivial() { return PresentedAbGroup(); }
  static PresentedAbGroup free(std::size_t rank);
  static PresentedAbGroup cyclic(const Integer& order);
  // Direct sum of cyclic groups Z/n_i (n_i = 0 gives Z).
  static PresentedAbGroup from_orders(const IntVector& orders);
  static PresentedAbGroup direct_sum(std::span<const PresentedAbGroup> parts);

  std::size_t generators() const noexcept { return generators_; }
  const IntMatrix& relations() const noexcept { return relations_; }
  const AbGroupInvariants& invariants() const noexcept { return invariants_; }
  // Smith form of the relation matrix (computed once at construction).
  const SmithForm& relation_smith() const noexcept { return *smith_; }

  bool is_trivial() const { return invariants_.is_trivial(); }
  bool is_finite() const { return invariants_.is_finite(); }
  // Group order; requires a finite group.
  Integer order() const;

  // Whether an element given in generator coordinates is zero.
  bool is_zero(const IntVector& element) const;
  bool equal(const IntVector& a, const IntVector& b) const;

  // Coordinates in the cyclic decomposition (one residue per non-unit slot).
  IntVector canonical_coordinates(const IntVector& element) const;

  // Every element once, in generator coordinates; requires a finite group.
  std::vector<IntVector> elements() const;

  bool operator==(const PresentedAbGroup& rhs) const {
    return generators_ == rhs.generators_ && relations_ == rhs.relations_;
  }

 private:
  std::size_t generators_;
  IntMatrix relations_;
  std::shared_ptr<const SmithForm> smith_;
  AbGroupInvariants invariants_;
};

// Homomorphism given by the images of the source generators (columns).
struct AbHom {
  PresentedAbGroup source;
  PresentedAbGroup target;
  IntMatrix matrix;  // target.generators() x source.generators()

  static AbHom identity(const PresentedAbGroup& g);
  static AbHom zero(const PresentedAbGroup& source, const PresentedAbGroup& target);

  IntVector apply(const IntVector& element) const { return matrix * element; }
};

// Shapes match and relations are sent into the relation span of the target.
bool hom_is_well_defined(const AbHom& h);
// Throws Error("IllTypedHom") when the matrix shape does not fit the groups.
void require_typed(const AbHom& h);

// g after f.
AbHom compose(const AbHom& g, const AbHom& f);
AbHom subtract(const AbHom& a, const AbHom& b);
AbHom add(const AbHom& a, const AbHom& b);
// Equal as maps (column differences vanish in the target).
bool homs_equal(const AbHom& a, const AbHom& b);
bool is_zero_hom(const AbHom& h);

// A derived group together with its structure map (inclusion into the source
// for kernels/equalizers, inclusion into the target for images, projection
// from the target for cokernels).
struct DerivedGroup {
  PresentedAbGroup group;
  AbHom map;
};

DerivedGroup kernel(const AbHom& h);
DerivedGroup image(const AbHom& h);
DerivedGroup cokernel(const AbHom& h);
// Throws Error("NotParallel") unless both maps share source and target.
DerivedGroup equalizer(const AbHom& h1, const AbHom& h2);

bool is_injective(const AbHom& h);
bool is_surjective(const AbHom& h);
bool is_isomorphism(const AbHom& h);

// Homology of a cochain sequence G_0 -d_0-> G_1 -d_1-> ... at position n:
// ker(d_n) / im(d_{n-1}), where missing maps are zero. Throws
// Error("NotAComplex") when consecutive maps do not compose to zero or do not
// chain, Error("DegreeOutOfRange") when n exceeds the last group.
AbGroupInvariants homology_at(std::span<const AbHom> complex, std::size_t n);

// Homology ker(out)/im(in) at the shared middle group.
PresentedAbGroup homology_group(const AbHom& in, const AbHom& out);

struct IsoTest {
  bool isomorphic = false;
  std::optional<AbHom> witness;  // G -> H isomorphism when isomorphic
};

IsoTest iso_test(const PresentedAbGroup& g, const PresentedAbGroup& h);

// Inverse of an isomorphism; throws Error("NotInvertible") otherwise.
AbHom inverse(const AbHom& h);

}  // namespace fixcat
