#pragma once

#include "canon/canon_set.hpp"
#include "canon/encoding.hpp"

namespace canon {

/// Canonical labeling for an arbitrary object over an unordered ground set:
/// structural recursion with per-node memoization (the ambient coset never
/// changes inside one run).
CanonResult cl_object(const ObjectDag& x, const LabelingCoset& c, const CanonContext& ctx = {});
/// Reference path without the memo table; must agree with cl_object.
CanonResult cl_object_nomemo(const ObjectDag& x, const LabelingCoset& c,
                             const CanonContext& ctx = {});

/// X^lambda for any lambda in cl_object(X, Label(V)); the result does not
/// depend on the chosen lambda.
ObjectDag canonical_form(const ObjectDag& x, const CanonContext& ctx = {});

CanonResult cl_colored_object(const ObjectDag& x, const std::vector<std::vector<int>>& color_classes,
                              const CanonContext& ctx = {});

/// An explicitly given code: words are maps positions -> alphabet indices.
struct Code {
    GroundSetPtr positions;
    std::vector<std::string> alphabet;
    std::vector<std::vector<int>> words;
};

/// Builds the code object (alphabet symbols as nested-empty-set towers, words
/// as sets of (position, symbol) pairs) and canonizes it. Codes are equivalent
/// up to position permutation iff their canonical encodings agree.
CanonResult cl_code(const Code& code, const CanonContext& ctx = {});
ObjectDag code_object(const Code& code);

/// Canonizes {M(delta) : delta in G} where M(delta) = {(v, v^delta)}; groups
/// are permutationally isomorphic iff their canonical encodings agree. Throws
/// BudgetError if |G| exceeds the enumeration cap.
CanonResult cl_permgroup(const PermGroup& g, const CanonContext& ctx = {},
                         std::size_t enumeration_cap = 1000000);
ObjectDag permgroup_object(const PermGroup& g, std::size_t enumeration_cap = 1000000);

}  // namespace canon
