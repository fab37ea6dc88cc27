#pragma once

#include "canon/object.hpp"

namespace canon {

/// Brute-force enumeration caps; oracles refuse larger inputs instead of
/// running unbounded.
struct OracleBudget {
    int max_factorial_base = 8;
    std::size_t max_group_enumeration = 100000;
};

/// All n! labelings of an n-element ground set, lexicographic in image tuples.
std::vector<Perm> all_labelings(int n, const OracleBudget& budget = {});

/// prec-minimal ordered image over all labelings; a canonical form by
/// construction.
ObjectDag brute_canonical_form(const ObjectDag& x, const OracleBudget& budget = {});

/// {sigma in Sym(V) : X^sigma = X} by full enumeration.
PermGroup brute_aut(const ObjectDag& x, const OracleBudget& budget = {});

/// Element-wise intersection of two labeling cosets, sorted.
std::vector<Perm> brute_coset_intersection(const LabelingCoset& t, const LabelingCoset& c,
                                           const OracleBudget& budget = {});

/// {g in G : g(A) = A} by full enumeration, sorted.
std::vector<Perm> brute_setwise_stab(const PermGroup& g, const IndexSet& a,
                                     const OracleBudget& budget = {});

/// All elements of a labeling coset, sorted by image tuple.
std::vector<Perm> coset_elements(const LabelingCoset& c, const OracleBudget& budget = {});

}  // namespace canon
