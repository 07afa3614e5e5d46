#pragma once

// Seeded random structures for the property suites: concrete categories of
// functions between small finite sets, loop-free categories (posets and free
// categories on DAGs), endofunctor enumeration, naturally isomorphic functor
// pairs, table mutations and random integer matrices.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fixcat/abgrp.hpp"
#include "fixcat/fincat.hpp"

namespace fixcat::gen {

using Rng = std::mt19937_64;

// Uniform in [0, n); portable across standard libraries.
std::size_t below(Rng& rng, std::size_t n);
// Uniform in [lo, hi].
long between(Rng& rng, long lo, long hi);

// Objects are sets {0..k-1} with k <= 3; morphisms are the closure under
// composition of a few random functions (bijections included with some
// probability). Always a valid category.
CategoryData random_concrete_data(Rng& rng, int max_objects = 5, int max_morphisms = 25);
CategoryPtr random_concrete_category(Rng& rng, int max_objects = 5, int max_morphisms = 25);

// A random composition table on random objects and morphisms with identities
// declared; usually not a category.
CategoryData random_table(Rng& rng, int max_objects = 3, int max_morphisms = 6);

// Random partial order on 1..max_objects elements named p0, p1, ...
CategoryPtr random_poset(Rng& rng, int max_objects = 5);
// Free category on a random DAG (morphisms are paths), at most max_morphisms.
CategoryPtr random_free_dag(Rng& rng, int max_objects = 5, int max_morphisms = 25);
// A poset or a free DAG category, alternating on a coin.
CategoryPtr random_loop_free(Rng& rng, int max_objects = 5, int max_morphisms = 25);

// Every endofunctor as (object map, morphism map), object maps in
// lexicographic order, in a fixed order within each. The visitor returns
// false to stop.
using EndofunctorVisitor = std::function<bool(const std::vector<Obj>&, const std::vector<Mor>&)>;
void for_each_endofunctor(const CategoryPtr& c, const EndofunctorVisitor& visit);
// The first `limit` of them.
std::vector<Functor> all_endofunctors(const CategoryPtr& c, std::size_t limit = SIZE_MAX);

// Hom(X, Y) -> Hom(F X, F Y) surjective for all X, Y.
bool is_full(const Functor& f);
bool is_faithful(const Functor& f);

// (F, G, eta) with eta: F => G a natural isomorphism. G is F conjugated by a
// random family of isomorphisms theta_X: F(X) -> G(X).
struct IsoPair {
  Functor f;
  Functor g;
  NatTransformation eta;
};
IsoPair random_iso_pair(Rng& rng, const Functor& f);

// Every table obtained by changing the result of one composition entry.
std::vector<CategoryData> single_entry_mutations(const CategoryData& d);

// Entries in [lo, hi], 1..max_rows x 1..max_cols.
IntMatrix random_matrix(Rng& rng, std::size_t max_rows, std::size_t max_cols, long lo = -9, long hi = 9);

}  // namespace fixcat::gen
