#pragma once

// Pullbacks and pushouts by exhaustive cone search, slice and coslice
// categories with the base-change and composition functors between them,
// and exhaustive adjunction / equivalence / balancedness checks.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fixcat/fincat.hpp"

namespace fixcat {

// Pullback of the cospan f: A -> C <- B: g, with f∘proj_left = g∘proj_right.
struct PullbackResult {
  Obj vertex = kNone;
  Mor proj_left = kNone;   // vertex -> dom f
  Mor proj_right = kNone;  // vertex -> dom g
};

// Pushout of the span f: C -> A, g: C -> B, with inj_left∘f = inj_right∘g.
struct PushoutResult {
  Obj vertex = kNone;
  Mor inj_left = kNone;   // cod f -> vertex
  Mor inj_right = kNone;  // cod g -> vertex
};

// The lexicographically least universal cone, or nothing. Throws
// Error("NotACospan") when cod f != cod g.
std::optional<PullbackResult> find_pullback(const FinCategory& c, Mor f, Mor g);
// As above; throws Error("NoPullback") when no universal cone exists.
PullbackResult pullback(const FinCategory& c, Mor f, Mor g);

std::optional<PushoutResult> find_pushout(const FinCategory& c, Mor f, Mor g);
PushoutResult pushout(const FinCategory& c, Mor f, Mor g);

// Whether a commuting cone over (f, g) is universal.
bool is_pullback(const FinCategory& c, Mor f, Mor g, const PullbackResult& cone);

// The unique u with proj_left∘u = p and proj_right∘u = q.
std::optional<Mor> pullback_factor(const FinCategory& c, const PullbackResult& pb, Mor p, Mor q);
// The unique u with u∘inj_left = p and u∘inj_right = q.
std::optional<Mor> pushout_factor(const FinCategory& c, const PushoutResult& po, Mor p, Mor q);

// Memoized canonical pullbacks over one category.
class PullbackCache {
 public:
  explicit PullbackCache(const FinCategory& c) : c_(&c) {}
  std::optional<PullbackResult> find(Mor f, Mor g);
  PullbackResult get(Mor f, Mor g);
  const FinCategory& category() const { return *c_; }

 private:
  const FinCategory* c_;
  std::map<std::pair<Mor, Mor>, std::optional<PullbackResult>> memo_;
};

struct SliceCategory {
  CategoryPtr base;
  Obj apex = kNone;
  bool coslice = false;
  CategoryPtr carrier;
  Functor projection;          // carrier -> base
  std::vector<Mor> object_leg;  // carrier object -> base morphism
  // (base morphism, carrier source, carrier target) -> carrier morphism
  std::map<std::array<int, 3>, Mor> triangle;

  Obj object_of(Mor leg) const;
  Mor morphism_of(Mor h, Obj source, Obj target) const;
};

// Object id = base morphism id; morphism id = "(h;source;target)".
SliceCategory slice(const CategoryPtr& c, Obj x);
SliceCategory coslice(const CategoryPtr& c, Obj x);

std::string triangle_id(const std::string& leg, const std::string& source, const std::string& target);

// A functor between two slice categories, carrying both endpoints.
struct SliceFunctor {
  SliceCategory source;
  SliceCategory target;
  Functor functor;
};

// Pullback along sigma: C/cod(sigma) -> C/dom(sigma). Throws NoPullback.
SliceFunctor base_change(const CategoryPtr& c, Mor sigma);
// Pushout along sigma: dom(sigma)/C -> cod(sigma)/C. Throws NoPushout.
SliceFunctor cobase_change(const CategoryPtr& c, Mor sigma);
// f ↦ sigma∘f: C/dom(sigma) -> C/cod(sigma).
SliceFunctor postcompose(const CategoryPtr& c, Mor sigma);
// g ↦ g∘sigma: cod(sigma)/C -> dom(sigma)/C.
SliceFunctor precompose(const CategoryPtr& c, Mor sigma);

struct AdjunctionReport {
  bool found = false;
  std::vector<Mor> unit;    // A-object a -> (a -> R L a)
  std::vector<Mor> counit;  // B-object b -> (L R b -> b)
};

// Whether L ⊣ R, by searching for a natural family of universal arrows.
AdjunctionReport check_adjunction(const Functor& left, const Functor& right);

struct EquivalenceReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool equivalence() const { return fully_faithful && essentially_surjective; }
};

EquivalenceReport is_equivalence(const Functor& f);

bool is_mono(const FinCategory& c, Mor f);
bool is_epi(const FinCategory& c, Mor f);

struct BalancedReport {
  bool balanced = true;
  std::optional<Mor> witness;  // mono and epi but not iso
};

BalancedReport is_balanced(const FinCategory& c);

struct CriterionReport {
  bool sigma_iso = false;
  bool tau_equiv = false;
  bool s_equiv = false;
  bool balanced = false;
  bool forward_ok = false;        // sigma_iso implies both equivalences
  bool biconditional_ok = false;  // under balancedness, the converse too
};

// sigma: X -> F(X). Throws Error("NotFixedPointCandidate") otherwise.
CriterionReport fixpoint_criterion(const Functor& f, Obj x, Mor sigma);

}  // namespace fixcat
