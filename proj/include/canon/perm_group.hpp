#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "canon/index_set.hpp"
#include "canon/stab_chain.hpp"

namespace canon {

/// An immutable permutation group on a ground set, backed by a stabilizer
/// chain. The observable chain contract is deterministic: base 0..n-1 and
/// lex-min transversal representatives; the canonical view is materialized
/// lazily so that internal plumbing (conjugates, direct sums) stays cheap.
class PermGroup {
public:
    PermGroup() = default;

    static PermGroup from_generators(GroundSetPtr dom, const std::vector<Perm>& gens);
    static PermGroup from_chain(GroundSetPtr dom, StabChain chain);
    static PermGroup trivial(GroundSetPtr dom);
    static PermGroup symmetric(GroundSetPtr dom);
    /// Direct product of symmetric groups on the given blocks (blocks are
    /// position lists; unlisted positions are fixed).
    static PermGroup symmetric_blocks(GroundSetPtr dom, const std::vector<std::vector<int>>& blocks);

    const GroundSetPtr& dom() const { return d_->dom; }
    int degree() const { return d_->chain.n(); }
    const BigInt& order() const { return d_->chain.order(); }
    bool is_trivial() const { return order() == 1; }

    /// Strong generators of the working chain.
    std::vector<Perm> generators() const { return d_->chain.strong_generators(); }
    const StabChain& chain() const { return d_->chain; }
    /// Chain with base 0..n-1 (rebased on demand, cached).
    const StabChain& natural_chain() const;
    /// Canonical strong generating set: for each level of the natural chain in
    /// base order and each fundamental-orbit point in increasing order, the
    /// lex-min element of the corresponding subcoset. A pure function of the
    /// group as a set.
    const std::vector<Perm>& canonical_generators() const;

    bool contains(const Perm& g) const;
    bool is_subgroup_of(const PermGroup& other) const;
    bool equals(const PermGroup& other) const;

    std::vector<int> orbit_of(int v) const;
    /// Orbits on a G-invariant subset, each sorted, listed by minimal element.
    std::vector<std::vector<int>> orbits_on(const IndexSet& a) const;
    /// BFS transversal of the orbit of v: pairs (point, g) with g(v) = point.
    std::vector<std::pair<int, Perm>> orbit_transversal(int v) const;

    PermGroup pointwise_stabilizer(int v) const;
    PermGroup setwise_stabilizer(const IndexSet& a) const;
    PermGroup setwise_stabilizer(const std::vector<IndexSet>& tuple) const;

    /// Representatives t_1,...,t_s with G as the disjoint union of the cosets
    /// t_i H; each representative is the lex-min element of its coset and the
    /// list is sorted by the element order. Requires H <= G.
    std::vector<Perm> left_cosets(const PermGroup& h) const;

    /// {mu^-1 g mu : g in G} over new_dom (same size).
    PermGroup conjugated(const Perm& mu, GroundSetPtr new_dom) const;
    /// Image group {g|_A} over the sub-ground-set of the invariant position
    /// set `a` (listed ascending).
    PermGroup restricted(const std::vector<int>& a, GroundSetPtr sub) const;

    std::vector<Perm> elements(std::size_t budget) const;

private:
    struct Data {
        GroundSetPtr dom;
        StabChain chain;
        mutable std::mutex mu;
        mutable std::unique_ptr<StabChain> natural;
        mutable std::unique_ptr<std::vector<Perm>> canonical;
    };
    explicit PermGroup(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    static PermGroup wrap(GroundSetPtr dom, StabChain chain);

    std::shared_ptr<Data> d_;
};

}  // namespace canon
