#pragma once

#include "canon/canon_base.hpp"

namespace canon {

/// One generalized hyperedge: a labeling coset tied to a vertex subset.
struct HyperPair {
    LabelingCoset coset;
    IndexSet edge;
};

/// Canonical labeling for {(Delta_i rho_i, S_i)} with pairwise distinct edges;
/// the result's group is {delta in Delta : delta permutes the pairs}.
CanonResult cl_hyper(const std::vector<HyperPair>& k, const LabelingCoset& c,
                     const CanonContext& ctx = {});

/// Hypergraph with an ordered vertex coloring: edges paired with Label(V),
/// ambient restricted to labelings listing color classes in order. Runtime is
/// exponential only in the largest class.
CanonResult cl_colored_hypergraph(const std::vector<IndexSet>& edges,
                                  const std::vector<std::vector<int>>& color_classes,
                                  const GroundSetPtr& v, const CanonContext& ctx = {});

/// The color-respecting coset {lambda : lambda(C_i) < lambda(C_j) for i < j}.
LabelingCoset color_coset(const GroundSetPtr& v, const std::vector<std::vector<int>>& classes);

namespace detail {
CanonResult cl_hyper_rec(std::vector<HyperPair> k, IndexSet a, LabelingCoset c, CanonContext ctx);
}

}  // namespace canon
