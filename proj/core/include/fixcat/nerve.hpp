#pragma once

// Normalized chains on the nerve of a finite category, their integral
// homology, the chain maps induced by endofunctors, Lefschetz numbers and
// strict-fixed-point certificates.

#include <optional>
#include <vector>

#include "fixcat/abgrp.hpp"
#include "fixcat/fincat.hpp"

namespace fixcat {

struct LoopFreeReport {
  bool loop_free = false;
  // Longest identity-free composable chain; only meaningful when loop free.
  int longest_chain = 0;
};

// Only identities as endomorphisms and no cycles among non-identity arrows.
LoopFreeReport is_loop_free(const FinCategory& c);

// X0 -f0-> X1 -> ... -> Xn with no identity among the f_i.
struct Simplex {
  Obj start = kNone;
  std::vector<Mor> arrows;

  int dim() const { return static_cast<int>(arrows.size()); }
  auto operator<=>(const Simplex&) const = default;
};

struct NerveTruncation {
  CategoryPtr category;
  int max_dim = 0;
  // simplices[n] in canonical order: objects by id order in degree 0, arrow
  // index sequences lexicographically above.
  std::vector<std::vector<Simplex>> simplices;
  bool exact = false;

  // Position of a simplex in its degree, or -1.
  int index_of(const Simplex& s) const;
  std::vector<std::size_t> counts() const;
};

NerveTruncation nerve(const CategoryPtr& c, int max_dim);

// i-th face, or nothing when it is degenerate.
std::optional<Simplex> face(const FinCategory& c, const Simplex& s, int i);

struct ChainComplexZ {
  std::vector<std::size_t> ranks;
  // boundary[n]: ranks[n-1] x ranks[n]; boundary[0] has zero rows.
  std::vector<IntMatrix> boundary;
  bool exact = false;

  int top() const { return static_cast<int>(ranks.size()) - 1; }
};

// d_n = sum (-1)^i (i-th face); verifies d∘d = 0 (Error "NotAComplex").
ChainComplexZ chain_complex(const NerveTruncation& nv);

// ker d_n / im d_{n+1}; Error("DegreeOutOfRange") past the truncation.
AbGroupInvariants homology(const ChainComplexZ& cx, int n);

// Per degree, the matrix sending a simplex to its image (or 0 when the image
// is degenerate). Throws Error("NotAChainMap") if a square fails.
std::vector<IntMatrix> induced_chain_map(const Functor& f, const NerveTruncation& nv);

// Trace of the map induced on H_n(-; Q) by a chain map.
Rational homology_trace(const ChainComplexZ& cx, const std::vector<IntMatrix>& map, int n);

struct LefschetzReport {
  std::vector<Integer> chain_traces;
  std::vector<Rational> homology_traces;
  Integer chain_level;
  Rational homology_level;
  bool equal = false;
};

// Over the full nerve; throws Error("NerveNotFinite") unless the category is
// loop free (and, with a bound, its longest chain fits within it).
LefschetzReport lefschetz(const Functor& f);
LefschetzReport lefschetz(const Functor& f, int max_dim);
Integer lefschetz_number(const Functor& f);
// Chain-level number from maps alone: the alternating count of simplices
// fixed by (obj_map, mor_map). The nerve must be exact.
Integer fixed_simplex_count(const NerveTruncation& nv, const std::vector<Obj>& obj_map,
                            const std::vector<Mor>& mor_map);

struct CertificateReport {
  Integer lefschetz;
  bool hopf_equal = false;
  bool has_initial = false;
  bool prediction = false;  // L != 0 or an initial object exists
  bool actual = false;      // a strict fixed point exists
  bool consistent = false;  // prediction implies actual

  // Along a natural transformation F => F'.
  bool has_other = false;
  bool traces_match = false;  // equal homology traces in every degree
  bool other_prediction = false;
  bool other_actual = false;
  bool other_consistent = false;
};

CertificateReport strict_certificate(const Functor& f);
// Throws Error("NaturalitySquareFails") if eta is not natural.
CertificateReport strict_certificate(const Functor& f, const NatTransformation& eta);

}  // namespace fixcat
