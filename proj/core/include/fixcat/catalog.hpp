#pragma once

// Small named categories, functors, sites and presheaves used by the
// fixtures, the CLI and the test suites.

#include <functional>
#include <string>
#include <vector>

#include "fixcat/fincat.hpp"
#include "fixcat/sheaf.hpp"
#include "fixcat/site.hpp"

namespace fixcat::catalog {

CategoryPtr empty_category();
// Object "*" with identity "id*".
CategoryPtr terminal_category();
// Objects 0, 1; morphisms id0, id1, a: 0 -> 1.
CategoryPtr walking_arrow();
// Identities "id_X" only.
CategoryPtr discrete(const std::vector<std::string>& objects);
// Exactly one morphism "X>Y" between any two objects; identities "id_X".
CategoryPtr codiscrete(const std::vector<std::string>& objects);
// Objects A, B; morphisms f, g: A -> B.
CategoryPtr parallel_pair();
// f: A -> C <- B: g, with no other non-identity morphisms.
CategoryPtr cospan();
// f: C -> A, g: C -> B, with no other non-identity morphisms.
CategoryPtr span();

// Thin category on the given elements; x -> y named "x<=y" when leq(x, y).
// leq must be a partial order.
CategoryPtr poset(const std::vector<std::string>& elements,
                  const std::function<bool(const std::string&, const std::string&)>& leq, std::string name = {});
// 0 < 1 < ... < n-1.
CategoryPtr chain(int n);
// Subsets of the atom string ordered by inclusion, rendered "{}", "{a}", "{a,b}".
CategoryPtr subset_lattice(const std::string& atoms);
std::string subset_name(const std::string& members);
// Proper nonempty subsets of {a,b,c}; its nerve is a circle.
CategoryPtr hexagon();

// One-object category "*" over a finite group; mult[i][j] = index of e_i e_j,
// element 0 the unit.
CategoryPtr group_category(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& mult,
                           std::string name = {});
// Elements e, g, g2, ..., g{n-1}.
CategoryPtr cyclic_group(int n);
// Elements e, (12), (13), (23), (123), (132).
CategoryPtr symmetric_group_s3();

// Matrices over Z/2: objects 0..max_dim, Hom(m, n) the n x m matrices, ids
// "m>n:bits" with the bits row-major.
CategoryPtr z2_matrix_category(int max_dim = 2);
std::string z2_matrix_id(int m, int n, const std::vector<int>& bits);

// Nonempty opens of the pseudocircle {a,b,c,d} (a, b open points):
// a, b, ab, abc, abd, abcd, ordered by inclusion.
CategoryPtr pseudocircle();
// W <= U, W <= V, U <= X, V <= X.
CategoryPtr xuvw();

// Functor between posets induced by a monotone object map; throws
// Error("NotMonotone").
Functor poset_functor(const CategoryPtr& source, const CategoryPtr& target,
                      const std::vector<std::string>& object_images, std::string name = {});
// Automorphism of a one-object group category x ↦ g x g^-1.
Functor conjugation(const CategoryPtr& group, const std::string& element, std::string name = {});

Functor hexagon_rotation();  // a -> b -> c -> a
// a <-> b, c <-> d on the given copy of the pseudocircle.
Functor pseudocircle_symmetry(const CategoryPtr& base = pseudocircle());
// U <-> V on the given copy of xuvw.
Functor xuvw_swap(const CategoryPtr& base = xuvw());
Functor discrete_swap();             // on discrete {A, B}
Functor codiscrete_swap();           // on codiscrete {A, B}

// Closure of the cover "UV" = {abc, abd} of abcd under the pretopology axioms.
Pretopology pseudocircle_site(const CategoryPtr& base = pseudocircle());
// Closure of the cover "UV" = {U, V} of X.
Pretopology xuvw_site(const CategoryPtr& base = xuvw());
// Isomorphism singletons only.
Pretopology trivial_site(const CategoryPtr& base);

// The same group everywhere with identity restrictions.
Presheaf constant_presheaf(const Pretopology& site, const PresentedAbGroup& group, std::string name = "const");
// Z/2-valued locally constant functions on the opens of a finite space. The
// base must be a poset of opens named by their points (e.g. "abd"), ordered
// by inclusion; mu(O) = (Z/2)^{components of O}.
Presheaf components_presheaf(const Pretopology& site, std::string name = "comp");
// On xuvw: mu(X) = 0 and Z/2 elsewhere, identity restrictions below X.
Presheaf xuvw_nonsheaf(const Pretopology& site, std::string name = "gap");

// Entrywise XOR on every hom-set of the Z/2 matrix category, zero matrices,
// and the listed biproducts x + 0, 0 + x and 1 + 1 = 2 (when 2 is present).
AbEnrichment z2_matrix_enrichment(const CategoryPtr& base);

}  // namespace fixcat::catalog
