#pragma once

// Brute-force reference implementations used to cross-check the library.
// They work directly on tables, element lists and subsets, and share no code
// with the algorithms they check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixcat/abgrp.hpp"
#include "fixcat/fincat.hpp"
#include "fixcat/sheaf.hpp"

namespace oracle {

using fixcat::CategoryData;
using fixcat::Integer;

// Identities, totality, typing, unit and associativity laws of a raw table.
bool category_laws_hold(const CategoryData& d);

// Number of classes of the disjoint union of Hom(X, F(Xi)) over all objects
// Xi under phi ~ F(f)∘phi.
std::size_t hom_colimit_classes(const fixcat::Functor& f, fixcat::Obj x);

// gcd of all k x k minors (Leibniz expansion over exact integers).
Integer minor_gcd(const fixcat::IntMatrix& m, std::size_t k);

// Betti numbers of the nerve up to degree n from ranks over Q of boundary
// maps built from an independent chain enumeration.
std::vector<std::size_t> nerve_betti(const fixcat::FinCategory& c, int n);

// Alternating count of identity-free chains fixed by F, all lengths.
Integer fixed_chain_count(const fixcat::Functor& f);

// Hom(X, Y) -> Hom(F X, F Y) onto for every pair.
bool is_full(const fixcat::Functor& f);
// Some object with exactly one arrow to every object.
bool has_initial(const fixcat::FinCategory& c);

bool is_mono(const fixcat::FinCategory& c, fixcat::Mor f);
bool is_epi(const fixcat::FinCategory& c, fixcat::Mor f);
bool is_balanced(const fixcat::FinCategory& c);

// Greatest lower bound / least upper bound in a thin category, if unique.
std::optional<fixcat::Obj> meet(const fixcat::FinCategory& c, fixcat::Obj a, fixcat::Obj b);
std::optional<fixcat::Obj> join(const fixcat::FinCategory& c, fixcat::Obj a, fixcat::Obj b);

// |Hom(L a, b)| = |Hom(a, R b)| for all a, b.
bool hom_counts_match(const fixcat::Functor& left, const fixcat::Functor& right);

// Orders of the Čech cohomology groups H^0..H^n of a presheaf on a thin site,
// computed by enumerating cochains. Fiber products are meets. Values must be
// presented by one relation x_i = 0 mod d_i per generator. Throws
// std::runtime_error past `budget` cochains in one degree.
std::vector<Integer> cech_orders(const fixcat::Presheaf& mu, const std::vector<fixcat::Mor>& cover, std::size_t n,
                                 std::size_t budget = 1u << 17);

// Element counts of kernel and image of a hom between finite groups by
// enumeration of the source.
struct KernelImage {
  std::size_t kernel = 0;
  std::size_t image = 0;
};
KernelImage kernel_image(const fixcat::AbHom& h);

// All partial orders on n labeled elements as relation matrices.
std::vector<std::vector<std::vector<bool>>> all_posets(int n);

}  // namespace oracle
