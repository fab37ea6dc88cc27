#pragma once

#include "canon/canon_hyper.hpp"

namespace canon {

/// One element of the generalized instance: payload coset plus the guide
/// coset that drives bundling. The public problem starts with guide = payload
/// after preprocessing.
struct SetPair {
    LabelingCoset payload;
    LabelingCoset guide;
};

/// Canonical labeling for a set of labeling cosets J; the result's group is
/// {delta in Delta : delta^-1 permutes J}. Applies the preprocessing step
/// (per-element intersection with the ambient coset and ordering by canonical
/// images) before the generalized recursion.
CanonResult cl_set(const std::vector<LabelingCoset>& j, const LabelingCoset& c,
                   const CanonContext& ctx = {});

namespace detail {
CanonResult cl_set_rec(std::vector<SetPair> l, IndexSet a, IndexSet cset, LabelingCoset c,
                       CanonContext ctx);
}

}  // namespace canon
