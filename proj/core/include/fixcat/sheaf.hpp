#pragma once

// Presheaves of finitely presented abelian groups on a finite site, the
// sheaf condition, pullback along an endofunctor, Čech complexes over
// covering families with the comparison maps along a site morphism, and the
// Čech-level cohomological fixed-point report.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fixcat/abgrp.hpp"
#include "fixcat/site.hpp"

namespace fixcat {

// Contravariant: f: X -> Y gives restrictions[f]: values[Y] -> values[X].
struct Presheaf {
  std::string name;
  Pretopology site;
  std::vector<PresentedAbGroup> values;  // by object
  std::vector<AbHom> restrictions;       // by morphism

  const CategoryPtr& base() const { return site.base; }
  const PresentedAbGroup& value(Obj x) const { return values[x]; }
  const AbHom& restriction(Mor f) const { return restrictions[f]; }
};

// Errors: Malformed, RestrictionIllTyped, FunctorialityFails.
ValidationReport validate_presheaf(const Presheaf& mu);

// Components by object, values[X] of `from` -> values[X] of `to`.
struct PresheafMorphism {
  std::string name;
  Presheaf from;
  Presheaf to;
  std::vector<AbHom> components;
};

// Errors: Malformed, ComponentIllTyped, NaturalityFails.
ValidationReport validate_presheaf_morphism(const PresheafMorphism& m);

// X ↦ mu(F X), f ↦ mu(F f). Throws Error("NotEndofunctor") unless F is an
// endofunctor of the base.
Presheaf pullback_presheaf(const Presheaf& mu, const Functor& f);
// Components X ↦ m(F X) between the pulled-back presheaves.
PresheafMorphism pullback_morphism(const PresheafMorphism& m, const Functor& f);

struct SheafReport {
  bool sheaf = true;
  Obj object = kNone;  // first failure
  std::string cover;
  std::string reason;  // "not injective", "not exact at the product"
};

// mu(X) -> prod mu(X_i) => prod mu(X_i x_X X_j) is an equalizer for every
// listed cover. Throws Error("NoPullback").
SheafReport is_sheaf(const Presheaf& mu);

// The Čech complex C^0 -> C^1 -> ... -> C^{N+1} of an ordered family of
// morphisms into one object. Tuples run over A^{q+1} with repetitions, in
// lexicographic order; fiber products are left-associated canonical
// pullbacks.
struct CechComplex {
  std::vector<Mor> cover;
  std::size_t max_degree = 0;                       // N
  std::vector<std::vector<std::vector<int>>> tuples;  // per degree 0..N+1
  std::vector<std::vector<Obj>> vertices;             // per degree, per tuple
  std::vector<PresentedAbGroup> groups;               // C^0 .. C^{N+1}
  std::vector<AbHom> differentials;                   // d^0 .. d^N
};

// Throws Error("NoPullback"), Error("Malformed") for an empty or
// non-cospan family.
CechComplex cech_complex(const FinCategory& c, const std::vector<Mor>& cover, const Presheaf& mu,
                         std::size_t max_degree);
// H^n for n <= N. Throws Error("DegreeOutOfRange").
AbGroupInvariants cech_cohomology(const CechComplex& cx, std::size_t n);
AbGroupInvariants cech_cohomology(const FinCategory& c, const std::vector<Mor>& cover, const Presheaf& mu,
                                  std::size_t n);

struct FlabbyReport {
  bool flabby = true;
  std::size_t max_degree = 0;  // the verdict covers 0 < n <= max_degree only
  Obj object = kNone;
  std::string cover;
  std::size_t degree = 0;
  AbGroupInvariants group;
};

FlabbyReport is_flabby(const Presheaf& mu, std::size_t max_degree);

struct ComparisonReport {
  std::vector<AbHom> phi;       // C^q(U, mu∘F) -> C^q(F(U), mu), q = 0..N+1
  bool all_iso = false;
  bool ladder_commutes = false;
  std::vector<AbGroupInvariants> pulled;  // H^n(U, mu∘F)
  std::vector<AbGroupInvariants> image;   // H^n(F(U), mu)
  bool cohomology_matches = false;
};

// Throws Error("NotSiteMorphism") when a comparison of iterated fiber
// products is missing or not invertible.
ComparisonReport comparison_iso(const std::vector<Mor>& cover, const Presheaf& mu, const Functor& f,
                                std::size_t max_degree);

struct CechFixedPointEntry {
  std::string presheaf;
  std::string cover;
  std::size_t degree = 0;
  AbGroupInvariants direct;  // H^n(U, mu)
  AbGroupInvariants pulled;  // H^n(U, mu∘F)
  AbGroupInvariants image;   // H^n(F(U), mu)
};

struct CechFixedPointReport {
  Obj object = kNone;
  std::size_t max_degree = 0;
  std::vector<CechFixedPointEntry> entries;
  // H^n(U, mu) ≅ H^n(F(U), mu) for every entry: a Čech-cohomological fixed
  // point relative to the test family and the degree bound.
  bool declared = false;
  // H^n(U, mu) ≅ H^n(U, mu∘F) for every entry.
  bool pulled_agrees = false;
  // The comparison maps were isomorphisms commuting with the differentials.
  bool comparison_ok = false;
  // pulled_agrees == declared.
  bool bridge_ok = false;
};

CechFixedPointReport cech_fixed_point_report(Obj x, const Functor& f, const std::vector<Presheaf>& tests,
                                             std::size_t max_degree);

struct ExactnessReport {
  bool preserved = true;
  Obj object = kNone;  // first object where the image sequence fails
  std::string reason;
};

// Pointwise short exactness of 0 -> A -m1-> B -m2-> C -> 0.
ValidationReport pointwise_exact(const PresheafMorphism& m1, const PresheafMorphism& m2);

// Throws Error("NotExactInput") when the input sequence is not pointwise short
// exact.
ExactnessReport check_exactness_preserved(const Functor& f, const PresheafMorphism& m1, const PresheafMorphism& m2);

}  // namespace fixcat
