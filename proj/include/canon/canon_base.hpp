#pragma once

#include <atomic>
#include <functional>
#include <variant>

#include "canon/index_set.hpp"
#include "canon/labeling_coset.hpp"
#include "canon/object.hpp"

namespace canon {

struct CanonStats {
    std::atomic<long long> match_calls{0};
    std::atomic<long long> hyper_calls{0};
    std::atomic<long long> set_calls{0};
};

struct CanonContext {
    int threads = 1;
    CanonStats* stats = nullptr;
    /// Expensive recursion-invariant checks run only when |V| <= check_limit.
    int check_limit = 8;
    int depth = 0;
};

/// Every canonizer returns a labeling coset Lambda = Aut(X) * pi.
struct CanonResult {
    LabelingCoset coset;
};

/// A partial matching between the two parts of V = part1 ⊎ part2.
struct Matching {
    std::vector<std::pair<int, int>> pairs;  // (v1, v2) positions, v1 in part1
    IndexSet part1;
    IndexSet part2;

    static Matching make(const GroundSetPtr& v, std::vector<std::pair<int, int>> pairs,
                         IndexSet part1, IndexSet part2);
    Matching image(const Perm& mu) const;
};

CanonResult cl_point(int v, const LabelingCoset& c, const CanonContext& ctx = {});
CanonResult cl_match(const Matching& m, const LabelingCoset& c, const CanonContext& ctx = {});
CanonResult cl_int(const LabelingCoset& t, const LabelingCoset& c, const CanonContext& ctx = {});

using CanonTask = std::variant<int, LabelingCoset, Matching>;
/// Threads the coset through the tasks: CL(X1,...,Xt; C) = CL(X2,...,Xt; CL(X1, C)).
CanonResult cl_iterated(const std::vector<CanonTask>& tasks, const LabelingCoset& c,
                        const CanonContext& ctx = {});

namespace detail {

/// Bijection from V onto {1..n} given by a coset element.
Bijection to_ordered(const GroundSetPtr& v, const Perm& rho);

/// Shared transitive-case machinery: canonically half-split the image of A,
/// decompose the image group over the split's setwise stabilizer, recurse per
/// left coset, keep the branches of `prec`-minimal ordered image and span.
/// `recurse` evaluates one branch; `key` maps a branch representative to the
/// ordered image object used for pruning.
CanonResult transitive_split(const LabelingCoset& c, const IndexSet& a, const CanonContext& ctx,
                             const std::function<CanonResult(const LabelingCoset&, const CanonContext&)>& recurse,
                             const std::function<ObjectDag(const Perm&)>& key);

int max_recursion_depth(int n);

/// Runs thunks (possibly) concurrently; results land in input order.
void run_indexed(int count, int threads, const std::function<void(int)>& fn);

}  // namespace detail

}  // namespace canon
