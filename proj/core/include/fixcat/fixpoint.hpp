#pragma once

// Fixed points of endofunctors, the category S(F) of fixed points with its
// forgetful functor, transport of S(F) along natural isomorphisms, and the
// hom-set colimit at an object.

#include <string>
#include <utility>
#include <vector>

#include "fixcat/fincat.hpp"

namespace fixcat {

// A pair (X, alpha) with alpha: X -> F(X) an isomorphism.
struct FixedPoint {
  Obj object = kNone;
  Mor iso = kNone;
  auto operator<=>(const FixedPoint&) const = default;
};

// Objects with F(X) = X on the nose. Throws NotEndofunctor.
std::vector<Obj> strict_fixed_points(const Functor& f);

// Every (X, alpha), ordered by object then witness.
std::vector<FixedPoint> fixed_points(const Functor& f);

// "(X|alpha)"
std::string fixed_point_id(const FinCategory& c, const FixedPoint& p);
// "f:(X|alpha)>(Y|beta)"
std::string fixed_point_morphism_id(const FinCategory& c, Mor f, const FixedPoint& from, const FixedPoint& to);

struct FixCategoryResult {
  Functor functor;
  std::vector<FixedPoint> points;  // indexed by carrier object
  CategoryPtr carrier;
  Functor forgetful;  // carrier -> base

  Obj object_of(const FixedPoint& p) const;
  // The carrier morphism over f between two carrier objects, or kNone.
  Mor morphism_of(Mor f, Obj from, Obj to) const;
};

// A base morphism f: X -> Y underlies (X, alpha) -> (Y, beta) iff
// F(f)∘alpha = beta∘f.
FixCategoryResult fix_category(const Functor& f);

struct TransportResult {
  FixCategoryResult source;  // S(F)
  FixCategoryResult target;  // S(F')
  Functor forward;           // (X, alpha) ↦ (X, eta_X∘alpha)
  Functor backward;          // along eta^-1
  bool round_trip_identity = false;
};

// Throws Error("NotNaturalIso") unless eta is a natural isomorphism between
// endofunctors.
TransportResult transport(const NatTransformation& eta);

// Colimit over C of i ↦ Hom(X, F(X_i)), transitions phi ↦ F(f)∘phi.
struct ColimitReport {
  std::size_t size = 0;
  // Each class as (index object, morphism) pairs, classes and members sorted.
  std::vector<std::vector<std::pair<Obj, Mor>>> classes;
};

ColimitReport hom_colimit(const Functor& f, Obj x);

}  // namespace fixcat
