#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canon/perm_group.hpp"

namespace canon {

class LabelingCoset;

/// The restriction of a labeling coset to an invariant position set A:
/// the set of partial maps {lambda|_A}. Determined by the common image label
/// set together with the induced coset on the sub-ground-set.
struct Restriction {
    std::vector<int> positions;           // A, ascending positions in V
    std::vector<int> labels;              // sorted 0-based labels rho(A)
    std::shared_ptr<const LabelingCoset> induced;

    bool equals(const Restriction& other) const;
};

/// A labeling coset Delta*rho <= Label(V): the set {delta*rho : delta in
/// Delta} of bijections V -> {1..|V|}. Immutable; copies share state and
/// lazily cache the lex-min element and the canonical byte key.
class LabelingCoset {
public:
    LabelingCoset() = default;

    /// rep maps positions of the group's domain to 0-based labels.
    static LabelingCoset make(PermGroup group, Perm rep);
    static LabelingCoset full(GroundSetPtr v);
    static LabelingCoset singleton(GroundSetPtr v, Perm rep);

    const GroundSetPtr& dom() const { return d_->group.dom(); }
    int degree() const { return d_->group.degree(); }
    const PermGroup& group() const { return d_->group; }
    const Perm& rep() const { return d_->rep; }
    const BigInt& size() const { return d_->group.order(); }

    bool member(const Perm& labeling) const;
    bool equals(const LabelingCoset& other) const;
    bool contains_coset(const LabelingCoset& sub) const;

    /// mu^-1 * Delta * rho over mu.dst.
    LabelingCoset apply_map(const Bijection& mu) const;

    /// Induced coset on the invariant position set A (ascending): restriction
    /// followed by the order-preserving renumbering onto {1..|A|}.
    LabelingCoset induce(const std::vector<int>& a, GroundSetPtr target = nullptr) const;
    Restriction restrict_to(const std::vector<int>& a) const;

    /// Lift of a coset T <= Label(A) to V: {gamma in Label(V) : gamma|_A in T}.
    /// `positions` locates A's elements inside V, parallel to T's order and
    /// strictly increasing.
    static LabelingCoset lift(const LabelingCoset& t, const std::vector<int>& positions,
                              GroundSetPtr v);
    /// {gamma in Label(V) : gamma|_A in R}: like lift but the image labels of
    /// A are R's label set rather than {1..|A|}.
    static LabelingCoset lift_restriction(const Restriction& r, GroundSetPtr v);

    /// Lex-min element with respect to the stored order of the domain.
    const Perm& lexmin() const;

    /// Total order on cosets over the ordered ground set: by size, then (for
    /// distinct cosets) by comparing min(A\B) with min(B\A) under the element
    /// order. Returns -1/0/+1.
    static int compare(const LabelingCoset& a, const LabelingCoset& b);

    /// (canonical strong generating set of Delta, lex-min element); a pure
    /// function of the coset as a set of maps.
    std::pair<std::vector<Perm>, Perm> canonical_generators() const;

    /// Deterministic bytes of canonical_generators(); two cosets over the same
    /// ground set are equal iff their keys are equal.
    const std::string& canonical_key() const;

    /// Smallest labeling coset containing every input (inputs share a domain).
    static LabelingCoset span(const std::vector<LabelingCoset>& cosets);

private:
    struct Data {
        PermGroup group;
        Perm rep;
        mutable std::mutex mu;
        mutable std::unique_ptr<Perm> lexmin;
        mutable std::unique_ptr<std::string> key;
    };
    explicit LabelingCoset(std::shared_ptr<Data> d) : d_(std::move(d)) {}

    std::shared_ptr<Data> d_;
};

/// min(C1 \ C2) under the element order w.r.t. the stored order, or nullopt
/// when C1 is contained in C2. Exposed for tests.
std::optional<Perm> coset_min_difference(const LabelingCoset& c1, const LabelingCoset& c2);

}  // namespace canon
