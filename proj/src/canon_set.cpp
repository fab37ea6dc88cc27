#include "canon/canon_set.hpp"

#include <algorithm>
#include <map>

namespace canon {

namespace {

struct Triple {
    std::vector<int> a_can;
    std::vector<int> c_can;
    LabelingCoset theta_can;  // over the ordered ground set, rep = identity
};

int compare_triples(const Triple& x, const Triple& y) {
    if (x.a_can != y.a_can) return x.a_can < y.a_can ? -1 : 1;
    if (x.c_can != y.c_can) return x.c_can < y.c_can ? -1 : 1;
    return LabelingCoset::compare(x.theta_can, y.theta_can);
}

std::vector<int> image_sorted(const IndexSet& s, const Perm& rho) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(s.count()));
    for (int p : s.members()) out.push_back(rho[p]);
    std::sort(out.begin(), out.end());
    return out;
}

/// Ordered image of (L, Delta rho) under a labeling.
ObjectDag set_key_image(const std::vector<SetPair>& l, const LabelingCoset& c, const Perm& rho) {
    ObjectBuilder b(GroundSet::ordered(c.degree()));
    Bijection mu = detail::to_ordered(c.dom(), rho);
    std::vector<const ObjectNode*> pairs;
    pairs.reserve(l.size());
    for (const SetPair& sp : l)
        pairs.push_back(b.tuple({b.coset(sp.payload.apply_map(mu)), b.coset(sp.guide.apply_map(mu))}));
    return b.finish(b.tuple({b.set(std::move(pairs)), b.coset(c.apply_map(mu))}));
}

LabelingCoset lifted_full_label(const IndexSet& s, const GroundSetPtr& v) {
    std::vector<int> pos = s.members();
    return LabelingCoset::lift(LabelingCoset::full(v->subset(pos)), pos, v);
}

std::string restriction_bucket_key(const Restriction& r) {
    std::string key;
    for (int l : r.labels) {
        key.push_back(static_cast<char>(l >> 8));
        key.push_back(static_cast<char>(l & 0xff));
    }
    key += r.induced->canonical_key();
    return key;
}

void check_conditions(const std::vector<SetPair>& l, const IndexSet& a, const IndexSet& cset,
                      const CanonContext& ctx, int degree) {
    if (degree > ctx.check_limit) return;
    if (!a.intersect(cset).empty()) throw InternalError("cl_set: A and C overlap");
    std::vector<int> cpos = cset.members();
    std::vector<int> acpos = a.unite(cset).members();
    std::vector<Restriction> rc, rac;
    for (const SetPair& sp : l) {
        for (const Perm& g : sp.guide.group().generators())
            if (a.image(g) != a || cset.image(g) != cset)
                throw InternalError("cl_set: guide does not stabilize A and C");
        rc.push_back(sp.guide.restrict_to(cpos));
        rac.push_back(sp.guide.restrict_to(acpos));
    }
    for (std::size_t i = 1; i < rc.size(); ++i)
        if (!rc[0].equals(rc[i])) throw InternalError("cl_set: condition (C) violated");
    for (std::size_t i = 0; i < rac.size(); ++i)
        for (std::size_t j = i + 1; j < rac.size(); ++j)
            if (rac[i].equals(rac[j])) throw InternalError("cl_set: condition (AC) violated");
}

}  // namespace

namespace detail {

CanonResult cl_set_rec(std::vector<SetPair> l, IndexSet a, IndexSet cset, LabelingCoset c,
                       CanonContext ctx) {
    while (true) {
        if (ctx.stats) ctx.stats->set_calls.fetch_add(1);
        if (ctx.depth > max_recursion_depth(c.degree())) throw InternalError("cl_set: depth guard");
        check_conditions(l, a, cset, ctx, c.degree());
        const GroundSetPtr& v = c.dom();
        const int t = static_cast<int>(l.size());
        if (t == 0) {
            LabelingCoset acc = cl_int(lifted_full_label(a, v), c, ctx).coset;
            acc = cl_int(lifted_full_label(cset, v), acc, ctx).coset;
            return CanonResult{std::move(acc)};
        }
        if (t == 1) {
            // Singleton instances have the A-independent base-case form.
            LabelingCoset acc = cl_int(l[0].payload, c, ctx).coset;
            acc = cl_int(l[0].guide, acc, ctx).coset;
            return CanonResult{std::move(acc)};
        }
        if (a.count() <= 1) {
            if (a.count() == 0) throw InternalError("cl_set: |A|=0 with several pairs breaks (AC)");
            int apos = a.members().front();
            std::vector<int> order(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return l[static_cast<std::size_t>(x)].guide.rep()[apos] <
                       l[static_cast<std::size_t>(y)].guide.rep()[apos];
            });
            for (std::size_t i = 1; i < order.size(); ++i)
                if (l[static_cast<std::size_t>(order[i - 1])].guide.rep()[apos] ==
                    l[static_cast<std::size_t>(order[i])].guide.rep()[apos])
                    throw InternalError("cl_set: A-image ordering is not strict");
            LabelingCoset acc = c;
            for (int i : order) acc = cl_int(l[static_cast<std::size_t>(i)].payload, acc, ctx).coset;
            for (int i : order) acc = cl_int(l[static_cast<std::size_t>(i)].guide, acc, ctx).coset;
            return CanonResult{std::move(acc)};
        }

        // Canonical triples (A, C, Theta)^{tau_i}; split unless uniform (D).
        std::vector<Triple> triples(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) {
            const Perm& tau = l[i].guide.rep();
            triples[i].a_can = image_sorted(a, tau);
            triples[i].c_can = image_sorted(cset, tau);
            triples[i].theta_can = l[i].guide.apply_map(to_ordered(v, tau));
        }
        bool uniform = true;
        for (std::size_t i = 1; i < l.size() && uniform; ++i)
            if (compare_triples(triples[0], triples[i]) != 0) uniform = false;
        if (!uniform) {
            std::vector<int> order(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return compare_triples(triples[static_cast<std::size_t>(x)],
                                       triples[static_cast<std::size_t>(y)]) < 0;
            });
            CanonContext sub = ctx;
            sub.depth = ctx.depth + 1;
            LabelingCoset acc = c;
            std::size_t pos = 0;
            while (pos < order.size()) {
                std::size_t end = pos + 1;
                while (end < order.size() &&
                       compare_triples(triples[static_cast<std::size_t>(order[pos])],
                                       triples[static_cast<std::size_t>(order[end])]) == 0)
                    ++end;
                std::vector<SetPair> part;
                for (std::size_t i = pos; i < end; ++i)
                    part.push_back(l[static_cast<std::size_t>(order[i])]);
                acc = cl_set_rec(std::move(part), a, cset, acc, sub).coset;
                pos = end;
            }
            return CanonResult{std::move(acc)};
        }

        auto orbits0 = l[0].guide.group().orbits_on(a);
        if (orbits0.size() > 1) {
            // Every guide is intransitive on A; attach to each its minimal
            // orbit A_{i,1}.
            std::vector<IndexSet> min_orbit(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) {
                auto orbs = i == 0 ? orbits0 : l[i].guide.group().orbits_on(a);
                const Perm& tau = l[i].guide.rep();
                int best = -1;
                std::vector<int> best_img;
                for (int oi = 0; oi < static_cast<int>(orbs.size()); ++oi) {
                    std::vector<int> img;
                    img.reserve(orbs[static_cast<std::size_t>(oi)].size());
                    for (int p : orbs[static_cast<std::size_t>(oi)]) img.push_back(tau[p]);
                    std::sort(img.begin(), img.end());
                    if (best < 0 || img.size() < best_img.size() ||
                        (img.size() == best_img.size() && img < best_img)) {
                        best = oi;
                        best_img = std::move(img);
                    }
                }
                min_orbit[i] = IndexSet::of(a.universe(), orbs[static_cast<std::size_t>(best)]);
            }
            bool same_orbit = true;
            for (std::size_t i = 1; i < l.size() && same_orbit; ++i)
                if (!(min_orbit[i] == min_orbit[0])) same_orbit = false;

            if (same_orbit) {
                IndexSet a1 = min_orbit[0];
                IndexSet a2 = a.minus(a1);
                IndexSet x = a1.unite(cset);
                std::vector<int> xpos = x.members();
                std::vector<Restriction> restr;
                restr.reserve(l.size());
                for (const SetPair& sp : l) restr.push_back(sp.guide.restrict_to(xpos));
                std::map<std::string, std::vector<int>> buckets;
                for (std::size_t i = 0; i < l.size(); ++i)
                    buckets[restriction_bucket_key(restr[i])].push_back(static_cast<int>(i));
                const std::size_t s = buckets.size();
                if (s == l.size()) {
                    a = std::move(a1);
                    continue;
                }
                if (s == 1) {
                    a = std::move(a2);
                    cset = std::move(x);
                    continue;
                }
                // Proper bundling: recurse per bundle with focus A2 and
                // parameter set A1 ∪ C, rectify the shared restrictions into
                // labeling cosets, order parts by bundle images, recurse on A1.
                struct Bundle {
                    std::vector<SetPair> pairs;
                    const Restriction* shared;
                    CanonResult canon;
                    ObjectDag key;
                };
                std::vector<Bundle> bundles;
                for (auto& [key, idxs] : buckets) {
                    Bundle bd;
                    bd.shared = &restr[static_cast<std::size_t>(idxs.front())];
                    for (int i : idxs) bd.pairs.push_back(l[static_cast<std::size_t>(i)]);
                    bundles.push_back(std::move(bd));
                }
                CanonContext sub = ctx;
                sub.depth = ctx.depth + 1;
                sub.threads = 1;
                run_indexed(static_cast<int>(bundles.size()), ctx.threads, [&](int i) {
                    Bundle& bd = bundles[static_cast<std::size_t>(i)];
                    bd.canon = cl_set_rec(bd.pairs, a2, x, c, sub);
                    bd.key = set_key_image(bd.pairs, c, bd.canon.coset.rep());
                });
                std::vector<int> order(bundles.size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
                std::sort(order.begin(), order.end(), [&](int p, int q) {
                    return ordered_compare(bundles[static_cast<std::size_t>(p)].key,
                                           bundles[static_cast<std::size_t>(q)].key) < 0;
                });
                LabelingCoset acc = c;
                std::size_t pos = 0;
                while (pos < order.size()) {
                    std::size_t end = pos + 1;
                    while (end < order.size() &&
                           ordered_compare(bundles[static_cast<std::size_t>(order[pos])].key,
                                           bundles[static_cast<std::size_t>(order[end])].key) == 0)
                        ++end;
                    std::vector<SetPair> part;
                    for (std::size_t i = pos; i < end; ++i) {
                        const Bundle& bd = bundles[static_cast<std::size_t>(order[i])];
                        part.push_back(SetPair{bd.canon.coset,
                                               LabelingCoset::lift_restriction(*bd.shared, v)});
                    }
                    acc = cl_set_rec(std::move(part), a1, cset, acc, sub).coset;
                    pos = end;
                }
                return CanonResult{std::move(acc)};
            }

            // Minimal orbits differ: bundle by them and hand the bundle
            // cosets, tagged with their orbits, to the hypergraph canonizer.
            std::map<IndexSet, std::vector<int>> buckets;
            for (std::size_t i = 0; i < l.size(); ++i)
                buckets[min_orbit[i]].push_back(static_cast<int>(i));
            struct OrbBundle {
                std::vector<SetPair> pairs;
                IndexSet orbit;
                CanonResult canon;
                ObjectDag key;
            };
            std::vector<OrbBundle> bundles;
            for (auto& [orb, idxs] : buckets) {
                OrbBundle bd;
                bd.orbit = orb;
                for (int i : idxs) bd.pairs.push_back(l[static_cast<std::size_t>(i)]);
                bundles.push_back(std::move(bd));
            }
            if (bundles.size() <= 1) throw InternalError("cl_set: orbit bundling must be proper");
            CanonContext sub = ctx;
            sub.depth = ctx.depth + 1;
            sub.threads = 1;
            run_indexed(static_cast<int>(bundles.size()), ctx.threads, [&](int i) {
                OrbBundle& bd = bundles[static_cast<std::size_t>(i)];
                bd.canon = cl_set_rec(bd.pairs, a, cset, c, sub);
                bd.key = set_key_image(bd.pairs, c, bd.canon.coset.rep());
            });
            std::vector<int> order(bundles.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int p, int q) {
                return ordered_compare(bundles[static_cast<std::size_t>(p)].key,
                                       bundles[static_cast<std::size_t>(q)].key) < 0;
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
                    const OrbBundle& bd = bundles[static_cast<std::size_t>(order[i])];
                    part.push_back(HyperPair{bd.canon.coset, bd.orbit});
                }
                acc = cl_hyper_rec(std::move(part), IndexSet::full(c.degree()), acc, sub).coset;
                pos = end;
            }
            return CanonResult{std::move(acc)};
        }

        // Every guide is transitive on A: decompose each guide over the
        // half-split stabilizer of the common canonical image, group the
        // refined pairs by their restriction to C, recurse per group, keep
        // the prec-minimal classes and span.
        const std::vector<int>& a_can = triples[0].a_can;
        const std::vector<int>& c_can = triples[0].c_can;
        const PermGroup& theta_can = triples[0].theta_can.group();
        GroundSetPtr ord = GroundSet::ordered(c.degree());
        const int half = static_cast<int>(a_can.size()) / 2;
        IndexSet a1_can(c.degree()), a2_can(c.degree());
        for (int i = 0; i < static_cast<int>(a_can.size()); ++i)
            (i < half ? a1_can : a2_can).insert(a_can[static_cast<std::size_t>(i)]);
        PermGroup psi_can = theta_can.setwise_stabilizer({a1_can, a2_can});
        std::vector<Perm> theta_reps = theta_can.left_cosets(psi_can);

        GroundSetPtr c_sub = ord->subset(c_can);
        PermGroup theta_c = theta_can.restricted(c_can, c_sub);
        PermGroup psi_c = psi_can.restricted(c_can, c_sub);
        std::vector<Perm> gamma_reps = theta_c.left_cosets(psi_c);
        const int r = static_cast<int>(gamma_reps.size());

        auto restrict_to_c = [&](const Perm& g) {
            std::vector<int32_t> img(c_can.size());
            std::vector<int> where(static_cast<std::size_t>(c.degree()), -1);
            for (std::size_t i = 0; i < c_can.size(); ++i)
                where[static_cast<std::size_t>(c_can[i])] = static_cast<int>(i);
            for (std::size_t i = 0; i < c_can.size(); ++i)
                img[i] = where[static_cast<std::size_t>(g[c_can[i]])];
            return Perm(std::move(img));
        };
        std::vector<int> class_of(theta_reps.size(), -1);
        for (std::size_t li = 0; li < theta_reps.size(); ++li) {
            Perm gc = restrict_to_c(theta_reps[li]);
            for (int i = 0; i < r; ++i)
                if (psi_c.contains(compose(inverse(gamma_reps[static_cast<std::size_t>(i)]), gc))) {
                    class_of[li] = i;
                    break;
                }
            if (class_of[li] < 0) throw InternalError("cl_set: refined coset matches no class");
        }

        std::vector<std::vector<SetPair>> groups(static_cast<std::size_t>(r));
        for (const SetPair& sp : l) {
            const Perm& tau = sp.guide.rep();
            for (std::size_t li = 0; li < theta_reps.size(); ++li) {
                Perm b = compose(tau, theta_reps[li]);
                PermGroup refined_group = psi_can.conjugated(inverse(b), v);
                LabelingCoset refined = LabelingCoset::make(std::move(refined_group), std::move(b));
                groups[static_cast<std::size_t>(class_of[li])].push_back(
                    SetPair{sp.payload, std::move(refined)});
            }
        }
        CanonContext sub = ctx;
        sub.depth = ctx.depth + 1;
        sub.threads = 1;
        std::vector<CanonResult> results(static_cast<std::size_t>(r));
        std::vector<ObjectDag> keys(static_cast<std::size_t>(r));
        run_indexed(r, ctx.threads, [&](int i) {
            if (groups[static_cast<std::size_t>(i)].empty())
                throw InternalError("cl_set: empty refined group");
            results[static_cast<std::size_t>(i)] =
                cl_set_rec(groups[static_cast<std::size_t>(i)], a, cset, c, sub);
            keys[static_cast<std::size_t>(i)] =
                set_key_image(l, c, results[static_cast<std::size_t>(i)].coset.rep());
        });
        int best = 0;
        for (int i = 1; i < r; ++i)
            if (ordered_compare(keys[static_cast<std::size_t>(i)], keys[static_cast<std::size_t>(best)]) < 0)
                best = i;
        std::vector<LabelingCoset> kept;
        for (int i = 0; i < r; ++i)
            if (ordered_compare(keys[static_cast<std::size_t>(i)], keys[static_cast<std::size_t>(best)]) == 0)
                kept.push_back(results[static_cast<std::size_t>(i)].coset);
        return CanonResult{LabelingCoset::span(kept)};
    }
}

}  // namespace detail

CanonResult cl_set(const std::vector<LabelingCoset>& j, const LabelingCoset& c,
                   const CanonContext& ctx) {
    for (const LabelingCoset& x : j)
        if (!same_ground(x.dom(), c.dom())) throw Error("cl_set: mixed domains");
    // J is a set: collapse duplicate cosets.
    std::vector<LabelingCoset> dedup;
    {
        std::map<std::string, int> seen;
        for (const LabelingCoset& x : j)
            if (seen.emplace(x.canonical_key(), 1).second) dedup.push_back(x);
    }
    // Preprocessing: intersect each element with the ambient coset so that
    // element orbits are bounded by ambient orbits, then order by the
    // canonical images of (element, ambient).
    struct Pre {
        LabelingCoset inter;
        ObjectDag key;
    };
    std::vector<Pre> pres;
    pres.reserve(dedup.size());
    for (const LabelingCoset& x : dedup) {
        Pre p;
        p.inter = cl_int(x, c, ctx).coset;
        ObjectBuilder b(GroundSet::ordered(c.degree()));
        Bijection mu = detail::to_ordered(c.dom(), p.inter.rep());
        p.key = b.finish(b.tuple({b.coset(x.apply_map(mu)), b.coset(c.apply_map(mu))}));
        pres.push_back(std::move(p));
    }
    std::vector<int> order(pres.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return ordered_compare(pres[static_cast<std::size_t>(x)].key,
                               pres[static_cast<std::size_t>(y)].key) < 0;
    });
    CanonContext sub = ctx;
    sub.depth = ctx.depth + 1;
    LabelingCoset acc = c;
    std::size_t pos = 0;
    while (pos < order.size()) {
        std::size_t end = pos + 1;
        while (end < order.size() &&
               ordered_compare(pres[static_cast<std::size_t>(order[pos])].key,
                               pres[static_cast<std::size_t>(order[end])].key) == 0)
            ++end;
        std::vector<SetPair> part;
        for (std::size_t i = pos; i < end; ++i) {
            const LabelingCoset& inter = pres[static_cast<std::size_t>(order[i])].inter;
            part.push_back(SetPair{inter, inter});
        }
        acc = detail::cl_set_rec(std::move(part), IndexSet::full(c.degree()), IndexSet(c.degree()),
                                 acc, sub)
                  .coset;
        pos = end;
    }
    return CanonResult{std::move(acc)};
}

}  // namespace canon
