#pragma once

// Pretopologies (covering families per object) and their axioms, site
// morphisms, the pretopology and pullbacks induced on S(F), and explicit
// additive enrichments with the additive structure induced on S(F).

#include <optional>
#include <string>
#include <vector>

#include "fixcat/fincat.hpp"
#include "fixcat/fixpoint.hpp"
#include "fixcat/limits.hpp"

namespace fixcat {

struct CoveringFamily {
  std::string name;
  std::vector<Mor> members;  // common codomain; order is data for Čech
};

struct Pretopology {
  std::string name;
  CategoryPtr base;
  std::vector<std::vector<CoveringFamily>> covers;  // indexed by object

  // Throws Error("UnknownCover").
  const CoveringFamily& cover(Obj x, const std::string& name) const;
  // The object a named cover lives over; throws Error("UnknownCover").
  Obj cover_object(const std::string& name) const;
};

// How listed families are compared. Families are sets either way: order and
// repetition never matter.
enum class Membership {
  UpToIsomorphism,  // members identified up to isomorphism over the base object
  Strict,           // literal morphism sets
};

// Whether two families into the same object agree as sets.
bool families_match(const FinCategory& c, const std::vector<Mor>& a, const std::vector<Mor>& b, Membership mode);
// Index of a listed family of cov(x) matching the given one, if any.
std::optional<std::size_t> find_family(const Pretopology& p, Obj x, const std::vector<Mor>& family, Membership mode);

// "{m1,m2,...}" over the member ids in index order.
std::string default_family_name(const FinCategory& c, std::vector<Mor> members);

// Iso singletons, stability under pullback, closure under composition.
// Errors: Malformed, IsoSingletonMissing, BaseChangeMissing,
// CompositionMissing, NoPullback.
ValidationReport check_pretopology(const Pretopology& p, Membership mode = Membership::UpToIsomorphism);

// Smallest set of families containing the generators and satisfying the
// three axioms (families whose pullbacks do not exist are skipped). Listed
// generators keep their names and come first.
Pretopology close_pretopology(const CategoryPtr& base, const std::vector<std::vector<CoveringFamily>>& generators,
                              std::string name = {}, Membership mode = Membership::UpToIsomorphism);

// The comparison F(A ×_C B) -> F(A) ×_{F C} F(B) for a cospan with a pullback.
struct PullbackComparison {
  PullbackResult source;  // canonical pullback of (f, g)
  PullbackResult image;   // canonical pullback of (F f, F g)
  Mor comparison = kNone;
};
// Throws Error("NoPullback") when either pullback is missing, or
// Error("NotSiteMorphism") when the comparison does not exist.
PullbackComparison pullback_comparison(const Functor& f, Mor a, Mor b);

// Cover images must match a listed family member for member, so a functor
// that merges two members of a cover does not preserve it.
// Errors: CoverNotPreserved, PullbackNotPreserved.
ValidationReport check_site_morphism(const Functor& f, const Pretopology& p,
                                     Membership mode = Membership::UpToIsomorphism);

// A family of S(F)-morphisms covers (X, alpha) iff its forgetful image is a
// listed family of cov(X). Throws Error("TooLarge") past 4096 candidate
// families per listed family.
Pretopology induced_fix_pretopology(const Functor& f, const Pretopology& p, const FixCategoryResult& sf,
                                    Membership mode = Membership::UpToIsomorphism);

struct FixPullbackResult {
  PullbackResult pullback;  // in the S(F) carrier
  PullbackResult base;      // canonical base pullback
  Mor sigma = kNone;        // base morphism P -> F(P)
  Mor sigma1 = kNone;       // P -> F(X2) ×_{F X1} F(X3)
  Mor sigma2 = kNone;       // F(P) -> F(X2) ×_{F X1} F(X3)
  bool universal = false;   // verified in S(F)
};

// Pullback in S(F) of carrier morphisms f, g with a common codomain.
// Errors: NoPullback, NotSiteMorphism.
FixPullbackResult fix_pullback(const FixCategoryResult& sf, Mor f, Mor g);

struct Biproduct {
  Obj left = kNone;
  Obj right = kNone;
  Obj sum = kNone;
  Mor in_left = kNone, in_right = kNone;
  Mor out_left = kNone, out_right = kNone;
};

struct AbEnrichment {
  CategoryPtr base;
  // sum[f * M + g] = f + g for parallel f, g; kNone elsewhere.
  std::vector<Mor> sum;
  // zero[x * K + y] is the zero morphism x -> y.
  std::vector<Mor> zero;
  std::vector<Biproduct> biproducts;

  Mor add(Mor f, Mor g) const {
    return sum[static_cast<std::size_t>(f) * base->num_morphisms() + g];
  }
  Mor zero_of(Obj x, Obj y) const { return zero[static_cast<std::size_t>(x) * base->num_objects() + y]; }
  const Biproduct* biproduct(Obj x, Obj y) const;
};

// Empty tables sized for the base category.
AbEnrichment empty_enrichment(const CategoryPtr& base);

// Errors: Malformed, HomNotGroup, CompositionNotBilinear, BiproductLawFails,
// ZeroObjectMissing.
ValidationReport check_additive(const AbEnrichment& e);

std::optional<Obj> zero_object(const AbEnrichment& e);
// A listed biproduct of (x, y), else one found by search.
std::optional<Biproduct> find_biproduct(const AbEnrichment& e, Obj x, Obj y);
bool biproduct_laws_hold(const AbEnrichment& e, const Biproduct& b);

// sigma_XY = i1'F(p1) + i2'F(p2): F(X ⊕ Y) -> F(X) ⊕ F(Y).
std::optional<Mor> additive_comparison(const Functor& f, const AbEnrichment& e, const Biproduct& b,
                                       const Biproduct& image);

// Error: FunctorNotAdditive.
ValidationReport check_additive_functor(const Functor& f, const AbEnrichment& e);

// Additive structure on S(F): restricted hom-tables, the zero object
// (0, alpha_0), and (X, alpha) ⊕ (Y, beta) = (X ⊕ Y, sigma^-1∘(alpha ⊕ beta)).
// Throws ValidationError when an input check fails.
AbEnrichment fix_additive(const Functor& f, const AbEnrichment& e, const FixCategoryResult& sf);

}  // namespace fixcat
