#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "canon/common.hpp"
#include "canon/perm.hpp"

namespace canon {

/// A stabilizer chain over positions {0..n-1} along a full base (every
/// position occurs in the base). Level l realizes the pointwise stabilizer of
/// base[0..l-1]; transversal entries map the level's base point onto its
/// fundamental orbit.
class StabChain {
public:
    struct Level {
        int point = -1;
        std::vector<int> orbit;    // orbit[0] == point
        std::vector<Perm> trans;   // parallel to orbit; trans[k](point) == orbit[k]
        std::vector<int> slot;     // position -> index into orbit, or -1
        std::vector<Perm> gens;    // strong generators first moving this base point
    };

    StabChain() = default;

    /// Deterministic Schreier-Sims. `base` must be a permutation of 0..n-1
    /// (natural order if empty). When the exact order of <gens> is known,
    /// completion stops as soon as the chain reaches it.
    static StabChain build(int n, const std::vector<Perm>& gens, std::vector<int> base = {},
                           const BigInt* known_order = nullptr);
    static StabChain trivial(int n);
    /// Sym on `support`, identity elsewhere; natural base. O(n^2), no search.
    static StabChain symmetric_on(int n, const std::vector<int>& support);
    /// Chain of {mu^-1 g mu : g in this}; base becomes mu(base). O(size).
    StabChain conjugated(const Perm& mu) const;
    /// Product of chains with pairwise disjoint supports inside a common
    /// universe of size n. Each embedding must be strictly increasing; points
    /// hit by no part stay singleton levels. Parts keep their natural base.
    static StabChain direct_sum_many(
        const std::vector<std::pair<const StabChain*, std::vector<int>>>& parts, int n);

    int n() const { return n_; }
    const std::vector<int>& base() const { return base_; }
    bool natural_base() const;
    const BigInt& order() const { return order_; }
    const std::vector<Level>& levels() const { return levels_; }

    bool contains(const Perm& g) const;
    /// Sift from a level. Returns {level reached, residue}; level == n means
    /// the residue is the identity.
    std::pair<int, Perm> sift(Perm g, int from_level) const;

    /// All strong generators of the subgroup fixing base[0..level-1].
    std::vector<Perm> generators_from(int level) const;
    /// Strong generators of the whole group (level 0).
    std::vector<Perm> strong_generators() const { return generators_from(0); }

    /// Deterministic enumeration of all elements (transversal products).
    /// Throws BudgetError if the order exceeds `budget`.
    std::vector<Perm> elements(std::size_t budget) const;

private:
    void insert_generator(Perm g, int min_level);
    void refresh_orbit(int level);
    void refresh_all();
    void complete(const BigInt* known_order);
    void recompute_order();

    int n_ = 0;
    std::vector<int> base_;
    std::vector<int> level_of_;  // position -> base index
    std::vector<Level> levels_;
    std::vector<char> stale_;
    BigInt order_ = 1;
};

/// The lexicographically minimal element of {x*g*y : g ranging over the
/// subgroup at `from_level` of the chain}, where position j of such an
/// element is y(g(x(j))) and minimization is over the image tuple at
/// positions 0,1,...,n-1. Requires chain.base()[j] == x[j] for j >= from_level.
Perm lexmin_coset_element(const StabChain& ch, const Perm& x, const Perm& y, int from_level = 0);

}  // namespace canon
