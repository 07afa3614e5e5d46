// Writes the bundled workbench documents. Usage: fixcat-fixtures <directory>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "fixcat/catalog.hpp"
#include "fixcat/document.hpp"

namespace fs = std::filesystem;
using namespace fixcat;

namespace {

Functor named(Functor f, const std::string& name) {
  f.set_name(name);
  return f;
}

void add(Document& d, const CategoryPtr& c) { d.categories[c->name()] = c; }
void add(Document& d, const Functor& f) { d.functors[f.name()] = f; }
void add(Document& d, const NatTransformation& t) { d.transformations[t.name()] = t; }
void add(Document& d, const Pretopology& p) { d.pretopologies[p.name] = p; }
void add(Document& d, const Presheaf& p) { d.presheaves[p.name] = p; }
void add(Document& d, const PresheafMorphism& m) { d.presheaf_morphisms[m.name] = m; }

Document walking_arrow() {
  Document d;
  CategoryPtr c = catalog::walking_arrow();
  add(d, c);
  Functor id = named(Functor::identity(c), "Id");
  Functor k = named(Functor::constant(c, c, c->object("0")), "const0");
  add(d, id);
  add(d, k);
  add(d, NatTransformation(k, id, {c->morphism("id0"), c->morphism("a")}, "eta"));
  return d;
}

Document codiscrete() {
  Document d;
  Functor f = named(catalog::codiscrete_swap(), "F");
  add(d, f.source());
  add(d, f);
  add(d, named(Functor::identity(f.source()), "Id"));
  return d;
}

Document discrete3() {
  Document d;
  CategoryPtr c = catalog::discrete({"A", "B", "C"});
  add(d, c);
  add(d, named(Functor::identity(c), "Id"));
  return d;
}

Document hexagon() {
  Document d;
  Functor rot = catalog::hexagon_rotation();
  add(d, rot.source());
  add(d, rot);
  add(d, named(Functor::identity(rot.source()), "Id"));
  return d;
}

Document s3() {
  Document d;
  CategoryPtr c = catalog::symmetric_group_s3();
  add(d, c);
  Functor id = named(Functor::identity(c), "Id");
  Functor conj = catalog::conjugation(c, "(12)", "c12");
  add(d, id);
  add(d, conj);
  add(d, NatTransformation(id, conj, {c->morphism("(12)")}, "eta"));
  return d;
}

Document lattice() {
  Document d;
  CategoryPtr c = catalog::subset_lattice("abc");
  add(d, c);
  add(d, named(Functor::identity(c), "Id"));
  return d;
}

Document pseudocircle() {
  Document d;
  CategoryPtr c = catalog::pseudocircle();
  Pretopology site = catalog::pseudocircle_site(c);
  add(d, c);
  add(d, site);
  add(d, catalog::pseudocircle_symmetry(c));
  add(d, named(Functor::identity(c), "Id"));
  add(d, named(Functor::constant(c, c, c->object("abcd")), "top"));
  add(d, catalog::components_presheaf(site, "comp"));
  add(d, catalog::constant_presheaf(site, PresentedAbGroup::cyclic(2), "const"));
  return d;
}

Document xuvw() {
  Document d;
  CategoryPtr c = catalog::xuvw();
  Pretopology site = catalog::xuvw_site(c);
  add(d, c);
  add(d, site);
  add(d, catalog::xuvw_swap(c));
  add(d, named(Functor::identity(c), "Id"));
  add(d, catalog::poset_functor(c, c, {"W", "W", "W", "X"}, "collapse"));
  const PresentedAbGroup two = PresentedAbGroup::cyclic(2), four = PresentedAbGroup::cyclic(4);
  Presheaf z2 = catalog::constant_presheaf(site, two, "z2");
  Presheaf z4 = catalog::constant_presheaf(site, four, "z4");
  add(d, z2);
  add(d, z4);
  add(d, catalog::xuvw_nonsheaf(site, "gap"));
  PresheafMorphism incl{"incl", z2, z4, {}}, proj{"proj", z4, z2, {}};
  for (Obj x = 0; x < c->num_objects(); ++x) {
    incl.components.push_back(AbHom{two, four, IntMatrix::from_rows({{2}})});
    proj.components.push_back(AbHom{four, two, IntMatrix::from_rows({{1}})});
  }
  add(d, incl);
  add(d, proj);
  return d;
}

Document z2_matrices() {
  Document d;
  CategoryPtr c = catalog::z2_matrix_category(2);
  add(d, c);
  add(d, named(Functor::identity(c), "Id"));
  d.enrichments["xor"] = catalog::z2_matrix_enrichment(c);
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: fixcat-fixtures <directory>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  const std::map<std::string, std::function<Document()>> files{
      {"walking_arrow", walking_arrow}, {"codiscrete", codiscrete}, {"discrete3", discrete3},
      {"hexagon", hexagon},             {"s3", s3},                 {"lattice", lattice},
      {"pseudocircle", pseudocircle},   {"xuvw", xuvw},             {"z2_matrices", z2_matrices},
  };
  for (const auto& [name, build] : files) {
    std::ofstream out(dir / (name + ".fixcat.json"), std::ios::binary);
    out << serialize_document(build());
  }
  return 0;
}
