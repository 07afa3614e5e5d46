#pragma once

// The workbench file: one JSON object with a section per entity kind, every
// entity named and cross-referenced by name.
//
//   categories          [{name, objects, morphisms: [{id, dom, cod}],
//                         identities: {X: id}, composition: [[g, f, g∘f]]}]
//   functors            [{name, source, target, objects: {X: Y}, morphisms: {f: g}}]
//   transformations     [{name, from, to, components: {X: m}}]
//   pretopologies       [{name, category, covers: {X: [{name, members}]},
//                         closure: bool}]
//   enrichments         [{name, category, addition: [[f, g, f+g]],
//                         zero: [[X, Y, z]], biproducts: [{left, right, sum,
//                         in_left, in_right, out_left, out_right}]}]
//   presheaves          [{name, site, values: {X: group},
//                         restrictions: {f: matrix}}]
//   presheaf_morphisms  [{name, from, to, components: {X: matrix}}]
//
// A group is {generators: k, relations: [[k entries], ...]} (one array per
// relation) or {orders: [n1, n2, ...]}. A matrix is a list of rows.

#include <filesystem>
#include <map>
#include <string>

#include "fixcat/error.hpp"
#include "fixcat/fincat.hpp"
#include "fixcat/sheaf.hpp"
#include "fixcat/site.hpp"

namespace fixcat {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line) : Error("ParseError", message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ReferenceError : public Error {
 public:
  ReferenceError(std::string name, const std::string& message, int line)
      : Error("ReferenceError", message), name_(std::move(name)), line_(line) {}
  const std::string& name() const noexcept { return name_; }
  int line() const noexcept { return line_; }

 private:
  std::string name_;
  int line_;
};

struct Document {
  std::map<std::string, CategoryPtr> categories;
  std::map<std::string, Functor> functors;
  std::map<std::string, NatTransformation> transformations;
  std::map<std::string, Pretopology> pretopologies;
  std::map<std::string, AbEnrichment> enrichments;
  std::map<std::string, Presheaf> presheaves;
  std::map<std::string, PresheafMorphism> presheaf_morphisms;

  // Lookups throw Error("UnknownEntity").
  const CategoryPtr& category(const std::string& name) const;
  const Functor& functor(const std::string& name) const;
  const NatTransformation& transformation(const std::string& name) const;
  const Pretopology& pretopology(const std::string& name) const;
  const AbEnrichment& enrichment(const std::string& name) const;
  const Presheaf& presheaf(const std::string& name) const;
  const PresheafMorphism& presheaf_morphism(const std::string& name) const;
};

struct LoadOptions {
  Membership membership = Membership::UpToIsomorphism;
};

// Parses and validates every entity in order. Errors: ParseError,
// ReferenceError, ValidationError (message prefixed by the entity).
Document parse_document(const std::string& text, const LoadOptions& options = {});
Document load_document(const std::filesystem::path& path, const LoadOptions& options = {});

// Canonical JSON text (sorted keys, entities by name, two-space indent).
std::string serialize_document(const Document& doc);

}  // namespace fixcat
