#pragma once

// Finite categories given by explicit composition tables, together with
// functors and natural transformations between them.
//
// Objects and morphisms carry opaque string ids. Internally both are indexed
// by their position in lexicographic id order, so every enumeration below is
// deterministic.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fixcat/error.hpp"

namespace fixcat {

using Obj = int;
using Mor = int;
inline constexpr Mor kNone = -1;

struct MorphismDecl {
  std::string id;
  std::string dom;
  std::string cod;
  bool operator==(const MorphismDecl&) const = default;
};

// Raw, unvalidated category description as it appears in documents.
struct CategoryData {
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::map<std::string, std::string> identities;
  // Entries {g, f, g∘f}.
  std::vector<std::array<std::string, 3>> composition;
};

// Checks structure, identities, totality, unit laws, associativity and the
// typing of table entries, reporting the first failure found.
ValidationReport validate_category(const CategoryData& raw);

class FinCategory;
using CategoryPtr = std::shared_ptr<const FinCategory>;

class FinCategory {
 public:
  // Validates and freezes; throws ValidationError on a failing table.
  static CategoryPtr from_data(const CategoryData& raw, std::string name = {});

  const std::string& name() const noexcept { return name_; }
  int num_objects() const noexcept { return static_cast<int>(objects_.size()); }
  int num_morphisms() const noexcept { return static_cast<int>(morphisms_.size()); }

  const std::string& object_id(Obj x) const { return objects_.at(x); }
  const std::string& morphism_id(Mor f) const { return morphisms_.at(f).id; }
  const std::vector<std::string>& object_ids() const noexcept { return objects_; }

  // Index lookups; throw Error("UnknownObject"/"UnknownMorphism").
  Obj object(const std::string& id) const;
  Mor morphism(const std::string& id) const;
  std::optional<Obj> find_object(const std::string& id) const;
  std::optional<Mor> find_morphism(const std::string& id) const;

  Obj dom(Mor f) const { return morphisms_[f].dom; }
  Obj cod(Mor f) const { return morphisms_[f].cod; }
  Mor identity(Obj x) const { return identities_[x]; }
  bool is_identity(Mor f) const { return identities_[dom(f)] == f; }

  // g∘f, or kNone when cod f != dom g.
  Mor compose(Mor g, Mor f) const { return table_[static_cast<std::size_t>(g) * morphisms_.size() + f]; }
  // Composite of a path given first-to-last: path[k]∘...∘path[0].
  Mor compose_path(const std::vector<Mor>& path) const;

  // Morphisms a -> b in id order.
  const std::vector<Mor>& hom(Obj a, Obj b) const { return hom_[static_cast<std::size_t>(a) * objects_.size() + b]; }

  // Two-sided inverse, if any (unique when it exists).
  std::optional<Mor> inverse(Mor f) const;
  bool is_iso(Mor f) const { return inverse_[f] != kNone; }
  // Isomorphisms a -> b in id order.
  std::vector<Mor> isos(Obj a, Obj b) const;
  bool isomorphic(Obj a, Obj b) const;

  bool has_initial_object() const;
  std::optional<Obj> initial_object() const;

  // Same ids, reversed arrows; compose_op(g, f) = compose(f, g).
  CategoryPtr opposite() const;

  CategoryData to_data() const;

 private:
  struct MorRec {
    std::string id;
    Obj dom;
    Obj cod;
  };

  FinCategory() = default;

  std::string name_;
  std::vector<std::string> objects_;
  std::map<std::string, Obj> object_index_;
  std::vector<MorRec> morphisms_;
  std::map<std::string, Mor> morphism_index_;
  std::vector<Mor> identities_;
  std::vector<Mor> table_;
  std::vector<std::vector<Mor>> hom_;
  std::vector<Mor> inverse_;
};

// Pointer identity, or identical ids, endpoints and composition tables.
bool same_category(const CategoryPtr& a, const CategoryPtr& b);

// Membership test by id with an UnknownMorphism error, plus the inverse.
struct IsoResult {
  bool iso = false;
  std::optional<std::string> inverse;
};
IsoResult is_iso(const FinCategory& c, const std::string& morphism_id);

class Functor {
 public:
  Functor() = default;
  Functor(CategoryPtr source, CategoryPtr target, std::vector<Obj> obj_map, std::vector<Mor> mor_map,
          std::string name = {});

  // Builds from id maps; throws Error("Malformed") when a map is partial or
  // names unknown ids. Laws are not checked here (see validate_functor).
  static Functor from_ids(CategoryPtr source, CategoryPtr target, const std::map<std::string, std::string>& objects,
                          const std::map<std::string, std::string>& morphisms, std::string name = {});

  static Functor identity(CategoryPtr c);
  static Functor constant(CategoryPtr source, CategoryPtr target, Obj value);

  const CategoryPtr& source() const noexcept { return source_; }
  const CategoryPtr& target() const noexcept { return target_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  Obj operator()(Obj x) const { return obj_map_[x]; }
  Mor map(Mor f) const { return mor_map_[f]; }
  const std::vector<Obj>& obj_map() const noexcept { return obj_map_; }
  const std::vector<Mor>& mor_map() const noexcept { return mor_map_; }

  bool is_endofunctor() const { return same_category(source_, target_); }
  // Throws Error("NotEndofunctor").
  void require_endofunctor() const;
  bool is_identity() const;

  // Same categories and the same maps.
  bool operator==(const Functor& rhs) const;

 private:
  CategoryPtr source_;
  CategoryPtr target_;
  std::vector<Obj> obj_map_;
  std::vector<Mor> mor_map_;
  std::string name_;
};

ValidationReport validate_functor(const Functor& f);

// g∘f; throws Error("NotComposable") when the middle categories differ.
Functor compose(const Functor& g, const Functor& f);

class NatTransformation {
 public:
  NatTransformation() = default;
  NatTransformation(Functor from, Functor to, std::vector<Mor> components, std::string name = {});

  static NatTransformation identity(const Functor& f);

  const Functor& from() const noexcept { return from_; }
  const Functor& to() const noexcept { return to_; }
  Mor component(Obj x) const { return components_[x]; }
  const std::vector<Mor>& components() const noexcept { return components_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  Functor from_;
  Functor to_;
  std::vector<Mor> components_;
  std::string name_;
};

ValidationReport validate_nat_transformation(const NatTransformation& eta);
bool is_nat_iso(const NatTransformation& eta);
// Componentwise inverse; throws Error("NotNaturalIso").
NatTransformation inverse(const NatTransformation& eta);

// A natural isomorphism F => G, searched by backtracking over iso components.
std::optional<NatTransformation> functors_isomorphic(const Functor& f, const Functor& g);

}  // namespace fixcat
