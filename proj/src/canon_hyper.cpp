#include "canon/canon_hyper.hpp"

#include <algorithm>
#include <map>

namespace canon {

namespace {

LabelingCoset lifted_edge_label(const IndexSet& edge, const GroundSetPtr& v) {
    std::vector<int> pos = edge.members();
    return LabelingCoset::lift(LabelingCoset::full(v->subset(pos)), pos, v);
}

const ObjectNode* edge_image_node(ObjectBuilder& b, const IndexSet& edge, const Perm& rho) {
    std::vector<const ObjectNode*> kids;
    for (int p : edge.members()) kids.push_back(b.vertex(rho[p]));
    return b.set(std::move(kids));
}

/// Ordered image of (K, Delta rho) under a labeling.
ObjectDag hyper_key_image(const std::vector<HyperPair>& k, const LabelingCoset& c,
                          const Perm& rho) {
    ObjectBuilder b(GroundSet::ordered(c.degree()));
    Bijection mu = detail::to_ordered(c.dom(), rho);
    std::vector<const ObjectNode*> pairs;
    pairs.reserve(k.size());
    for (const HyperPair& hp : k)
        pairs.push_back(b.tuple({b.coset(hp.coset.apply_map(mu)), edge_image_node(b, hp.edge, rho)}));
    return b.finish(b.tuple({b.set(std::move(pairs)), b.coset(c.apply_map(mu))}));
}

void check_condition_a(const std::vector<HyperPair>& k, const IndexSet& a) {
    std::vector<IndexSet> seen;
    for (const HyperPair& hp : k) {
        IndexSet cut = hp.edge.intersect(a);
        for (const IndexSet& other : seen)
            if (other == cut) throw InternalError("cl_hyper: condition (A) violated");
        seen.push_back(std::move(cut));
    }
}

IndexSet min_image_orbit(const std::vector<std::vector<int>>& orbits, const Perm& rho, int n) {
    int best = -1;
    std::vector<int> best_img;
    for (int i = 0; i < static_cast<int>(orbits.size()); ++i) {
        std::vector<int> img;
        img.reserve(orbits[static_cast<std::size_t>(i)].size());
        for (int p : orbits[static_cast<std::size_t>(i)]) img.push_back(rho[p]);
        std::sort(img.begin(), img.end());
        if (best < 0 || img.size() < best_img.size() ||
            (img.size() == best_img.size() && img < best_img)) {
            best = i;
            best_img = std::move(img);
        }
    }
    return IndexSet::of(n, orbits[static_cast<std::size_t>(best)]);
}

}  // namespace

namespace detail {

CanonResult cl_hyper_rec(std::vector<HyperPair> k, IndexSet a, LabelingCoset c, CanonContext ctx) {
    while (true) {
        if (ctx.stats) ctx.stats->hyper_calls.fetch_add(1);
        if (ctx.depth > max_recursion_depth(c.degree())) throw InternalError("cl_hyper: depth guard");
        if (c.degree() <= ctx.check_limit) check_condition_a(k, a);
        if (k.empty()) return CanonResult{std::move(c)};
        const GroundSetPtr& v = c.dom();
        if (k.size() == 1) {
            // Singleton instances have the A-independent base-case form.
            CanonResult out = cl_int(k[0].coset, c, ctx);
            return cl_int(lifted_edge_label(k[0].edge, v), out.coset, ctx);
        }
        if (a.count() <= 1) {
            if (k.size() != 2 || a.count() != 1)
                throw InternalError("cl_hyper: base case shape violates condition (A)");
            int i0 = k[0].edge.intersect(a).empty() ? 0 : 1;
            int i1 = 1 - i0;
            if (!k[static_cast<std::size_t>(i1)].edge.intersect(a).count())
                throw InternalError("cl_hyper: condition (A) violated at |A|=1");
            LabelingCoset acc = c;
            for (int idx : {i0, i1}) {
                acc = cl_int(k[static_cast<std::size_t>(idx)].coset, acc, ctx).coset;
                acc = cl_int(lifted_edge_label(k[static_cast<std::size_t>(idx)].edge, v), acc, ctx).coset;
            }
            return CanonResult{std::move(acc)};
        }
        auto orbits = c.group().orbits_on(a);
        if (orbits.size() > 1) {
            IndexSet a1 = min_image_orbit(orbits, c.rep(), c.degree());
            IndexSet a2 = a.minus(a1);
            std::map<IndexSet, std::vector<int>> buckets;
            for (int i = 0; i < static_cast<int>(k.size()); ++i)
                buckets[k[static_cast<std::size_t>(i)].edge.intersect(a1)].push_back(i);
            const std::size_t s = buckets.size();
            if (s == k.size()) {
                a = std::move(a1);
                continue;
            }
            if (s == 1) {
                a = std::move(a2);
                continue;
            }
            // Proper bundling: canonize each bundle with focus A2, replace the
            // bundles by their cosets over their common A1-trace, order the
            // parts by the images of (K_i, Delta rho), then recurse on A1.
            struct Bundle {
                std::vector<HyperPair> pairs;
                IndexSet trace;
                CanonResult canon;
                ObjectDag key;
            };
            std::vector<Bundle> bundles;
            bundles.reserve(s);
            for (auto& [trace, idxs] : buckets) {
                Bundle bd;
                bd.trace = trace;
                for (int i : idxs) bd.pairs.push_back(k[static_cast<std::size_t>(i)]);
                bundles.push_back(std::move(bd));
            }
            CanonContext sub = ctx;
            sub.depth = ctx.depth + 1;
            sub.threads = 1;
            run_indexed(static_cast<int>(bundles.size()), ctx.threads, [&](int i) {
                Bundle& bd = bundles[static_cast<std::size_t>(i)];
                bd.canon = cl_hyper_rec(bd.pairs, a2, c, sub);
                bd.key = hyper_key_image(bd.pairs, c, bd.canon.coset.rep());
                if (c.degree() <= ctx.check_limit) {
                    // The part key must not depend on the representative.
                    const auto& grp = bd.canon.coset.group();
                    if (!grp.is_trivial()) {
                        Perm alt = compose(grp.generators().front(), bd.canon.coset.rep());
                        ObjectDag key2 = hyper_key_image(bd.pairs, c, alt);
                        if (ordered_compare(bd.key, key2) != 0)
                            throw InternalError("cl_hyper: bundle key depends on representative");
                    }
                }
            });
            std::vector<int> order(bundles.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return ordered_compare(bundles[static_cast<std::size_t>(x)].key,
                                       bundles[static_cast<std::size_t>(y)].key) < 0;
            });
            LabelingCoset acc = c;
            std::size_t pos = 0;
            while (pos < order.size()) {
                std::size_t end = pos + 1;
                while (end < order.size() &&
                       ordered_compare(bundles[static_cast<std::size_t>(order[pos])].key,
                                       bundles[static_cast<std::size_t>(order[end])].key) == 0)
                    ++end;
                std::vector<HyperPair> part;
                for (std::size_t i = pos; i < end; ++i) {
                    const Bundle& bd = bundles[static_cast<std::size_t>(order[i])];
                    part.push_back(HyperPair{bd.canon.coset, bd.trace});
                }
                acc = cl_hyper_rec(std::move(part), a1, acc, sub).coset;
                pos = end;
            }
            return CanonResult{std::move(acc)};
        }
        // Transitive on A.
        const std::vector<HyperPair>& kk = k;
        return transitive_split(
            c, a, ctx,
            [&](const LabelingCoset& branch, const CanonContext& bctx) {
                return cl_hyper_rec(kk, a, branch, bctx);
            },
            [&](const Perm& rho) { return hyper_key_image(kk, c, rho); });
    }
}

}  // namespace detail

CanonResult cl_hyper(const std::vector<HyperPair>& k, const LabelingCoset& c,
                     const CanonContext& ctx) {
    for (const HyperPair& hp : k) {
        if (!same_ground(hp.coset.dom(), c.dom())) throw Error("cl_hyper: mixed domains");
        if (hp.edge.universe() != c.degree()) throw Error("cl_hyper: edge outside the ground set");
    }
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j)
            if (k[i].edge == k[j].edge) throw Error("cl_hyper: duplicate hyperedges");
    return detail::cl_hyper_rec(k, IndexSet::full(c.degree()), c, ctx);
}

LabelingCoset color_coset(const GroundSetPtr& v, const std::vector<std::vector<int>>& classes) {
    const int n = v->size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int covered = 0;
    for (const auto& cls : classes)
        for (int p : cls) {
            if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
                throw Error("color classes must partition the vertices");
            seen[static_cast<std::size_t>(p)] = 1;
            ++covered;
        }
    if (covered != n) throw Error("color classes must cover every vertex");
    PermGroup group = PermGroup::symmetric_blocks(v, classes);
    std::vector<int32_t> rep(static_cast<std::size_t>(n));
    int next = 0;
    for (const auto& cls : classes) {
        std::vector<int> sorted = cls;
        std::sort(sorted.begin(), sorted.end());
        for (int p : sorted) rep[static_cast<std::size_t>(p)] = next++;
    }
    return LabelingCoset::make(std::move(group), Perm(std::move(rep)));
}

CanonResult cl_colored_hypergraph(const std::vector<IndexSet>& edges,
                                  const std::vector<std::vector<int>>& color_classes,
                                  const GroundSetPtr& v, const CanonContext& ctx) {
    std::vector<std::vector<int>> classes = color_classes;
    if (classes.empty()) {
        std::vector<int> all(static_cast<std::size_t>(v->size()));
        for (int i = 0; i < v->size(); ++i) all[static_cast<std::size_t>(i)] = i;
        classes.push_back(std::move(all));
    }
    LabelingCoset ambient = color_coset(v, classes);
    std::vector<HyperPair> k;
    k.reserve(edges.size());
    for (const IndexSet& e : edges) k.push_back(HyperPair{LabelingCoset::full(v), e});
    return cl_hyper(k, ambient, ctx);
}

}  // namespace canon
