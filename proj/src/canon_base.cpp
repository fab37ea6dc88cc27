#include "canon/canon_base.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <thread>

namespace canon {

namespace detail {

int max_recursion_depth(int n) {
    int log = 1;
    while ((1 << log) < n + 2) ++log;
    return (n + 4) * (log + 4) + 64;
}

void run_indexed(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= count || failed.load()) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

Bijection to_ordered(const GroundSetPtr& v, const Perm& rho) {
    return Bijection{v, GroundSet::ordered(v->size()), rho};
}

CanonResult transitive_split(const LabelingCoset& c, const IndexSet& a, const CanonContext& ctx,
                             const std::function<CanonResult(const LabelingCoset&, const CanonContext&)>& recurse,
                             const std::function<ObjectDag(const Perm&)>& key) {
    const int n = c.degree();
    if (ctx.depth > max_recursion_depth(n)) throw InternalError("recursion depth guard tripped");
    const Perm& rho = c.rep();
    GroundSetPtr ord = GroundSet::ordered(n);
    PermGroup delta_can = c.group().conjugated(rho, ord);
    std::vector<int> a_can;
    for (int p : a.members()) a_can.push_back(rho[p]);
    std::sort(a_can.begin(), a_can.end());
    const int half = static_cast<int>(a_can.size()) / 2;
    IndexSet a1_can(n), a2_can(n);
    for (int i = 0; i < static_cast<int>(a_can.size()); ++i)
        (i < half ? a1_can : a2_can).insert(a_can[static_cast<std::size_t>(i)]);
    PermGroup psi_can = delta_can.setwise_stabilizer({a1_can, a2_can});
    std::vector<Perm> reps = delta_can.left_cosets(psi_can);

    CanonContext branch_ctx = ctx;
    branch_ctx.threads = 1;
    branch_ctx.depth = ctx.depth + 1;
    std::vector<CanonResult> results(reps.size(), CanonResult{});
    run_indexed(static_cast<int>(reps.size()), ctx.threads, [&](int i) {
        Perm b = compose(rho, reps[static_cast<std::size_t>(i)]);
        PermGroup branch_group = psi_can.conjugated(inverse(b), c.dom());
        LabelingCoset branch = LabelingCoset::make(std::move(branch_group), std::move(b));
        results[static_cast<std::size_t>(i)] = recurse(branch, branch_ctx);
    });

    std::vector<ObjectDag> keys(results.size());
    run_indexed(static_cast<int>(results.size()), ctx.threads,
                [&](int i) { keys[static_cast<std::size_t>(i)] = key(results[static_cast<std::size_t>(i)].coset.rep()); });
    int best = 0;
    for (int i = 1; i < static_cast<int>(results.size()); ++i)
        if (ordered_compare(keys[static_cast<std::size_t>(i)], keys[static_cast<std::size_t>(best)]) < 0) best = i;
    std::vector<LabelingCoset> kept;
    for (int i = 0; i < static_cast<int>(results.size()); ++i)
        if (ordered_compare(keys[static_cast<std::size_t>(i)], keys[static_cast<std::size_t>(best)]) == 0)
            kept.push_back(results[static_cast<std::size_t>(i)].coset);
    return CanonResult{LabelingCoset::span(kept)};
}

}  // namespace detail

Matching Matching::make(const GroundSetPtr& v, std::vector<std::pair<int, int>> pairs,
                        IndexSet part1, IndexSet part2) {
    const int n = v->size();
    if (part1.universe() != n || part2.universe() != n)
        throw Error("matching: parts must live on the ground set");
    if (!part1.intersect(part2).empty()) throw Error("matching: parts overlap");
    if (part1.unite(part2).count() != n) throw Error("matching: parts must partition V");
    IndexSet seen1(n), seen2(n);
    for (auto [x, y] : pairs) {
        if (!part1.contains(x) || !part2.contains(y))
            throw Error("matching: pair outside part1 x part2");
        if (seen1.contains(x) || seen2.contains(y))
            throw Error("matching: repeated coordinate");
        seen1.insert(x);
        seen2.insert(y);
    }
    std::sort(pairs.begin(), pairs.end());
    return Matching{std::move(pairs), std::move(part1), std::move(part2)};
}

Matching Matching::image(const Perm& mu) const {
    Matching out;
    out.part1 = part1.image(mu);
    out.part2 = part2.image(mu);
    out.pairs.reserve(pairs.size());
    for (auto [x, y] : pairs) out.pairs.emplace_back(mu[x], mu[y]);
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

CanonResult cl_point(int v, const LabelingCoset& c, const CanonContext&) {
    if (v < 0 || v >= c.degree()) throw Error("cl_point: vertex not in the ground set");
    auto transversal = c.group().orbit_transversal(v);
    const Perm& rho = c.rep();
    int best = 0;
    for (int i = 1; i < static_cast<int>(transversal.size()); ++i)
        if (rho[transversal[static_cast<std::size_t>(i)].first] < rho[transversal[static_cast<std::size_t>(best)].first])
            best = i;
    Perm rep_star = compose(transversal[static_cast<std::size_t>(best)].second, rho);
    return CanonResult{LabelingCoset::make(c.group().pointwise_stabilizer(v), std::move(rep_star))};
}

namespace {

/// Ordered image of (M, Delta rho) under a branch representative.
ObjectDag match_key_image(const Matching& m, const LabelingCoset& c, const Perm& rho) {
    GroundSetPtr ord = GroundSet::ordered(c.degree());
    ObjectBuilder b(ord);
    std::vector<const ObjectNode*> pairs;
    pairs.reserve(m.pairs.size());
    for (auto [x, y] : m.pairs) pairs.push_back(b.tuple({b.vertex(rho[x]), b.vertex(rho[y])}));
    const ObjectNode* mimg = b.set(std::move(pairs));
    const ObjectNode* cimg = b.coset(c.apply_map(detail::to_ordered(c.dom(), rho)));
    return b.finish(b.tuple({mimg, cimg}));
}

CanonResult cl_match_rec(std::vector<std::pair<int, int>> pairs, IndexSet a, LabelingCoset c,
                         CanonContext ctx) {
    while (true) {
        if (ctx.stats) ctx.stats->match_calls.fetch_add(1);
        if (pairs.empty()) return CanonResult{std::move(c)};
        if (a.count() == 1) {
            if (pairs.size() != 1) throw InternalError("cl_match: |A|=1 with several pairs");
            return cl_point(pairs.front().first, c, ctx);
        }
        auto orbits = c.group().orbits_on(a);
        if (orbits.size() > 1) {
            // Pick the orbit whose rho-image is prec-minimal (size, then the
            // sorted image lists lexicographically; orbits are disjoint).
            const Perm& rho = c.rep();
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
            IndexSet a1 = IndexSet::of(a.universe(), orbits[static_cast<std::size_t>(best)]);
            IndexSet a2 = a.minus(a1);
            std::vector<std::pair<int, int>> m1, m2;
            for (auto pr : pairs) (a1.contains(pr.second) ? m1 : m2).push_back(pr);
            CanonContext sub = ctx;
            sub.depth = ctx.depth + 1;
            CanonResult lambda1 = cl_match_rec(std::move(m1), std::move(a1), c, sub);
            pairs = std::move(m2);
            a = std::move(a2);
            c = std::move(lambda1.coset);
            continue;
        }
        // Transitive on A.
        Matching m;
        m.pairs = pairs;
        return detail::transitive_split(
            c, a, ctx,
            [&](const LabelingCoset& branch, const CanonContext& bctx) {
                return cl_match_rec(pairs, a, branch, bctx);
            },
            [&](const Perm& rho) { return match_key_image(m, c, rho); });
    }
}

}  // namespace

CanonResult cl_match(const Matching& m, const LabelingCoset& c, const CanonContext& ctx) {
    for (const Perm& g : c.group().generators())
        if (m.part1.image(g) != m.part1)
            throw Error("cl_match: group does not stabilize the parts");
    return cl_match_rec(m.pairs, m.part2, c, ctx);
}

CanonResult cl_int(const LabelingCoset& t, const LabelingCoset& c, const CanonContext& ctx) {
    if (!same_ground(t.dom(), c.dom())) throw Error("cl_int: domain mismatch");
    // Nested cosets need no matching reduction: the smaller coset is already
    // Aut * pi for the pair (isomorphism-invariant condition, so CL1 holds).
    if (t.contains_coset(c)) return CanonResult{c};
    if (c.contains_coset(t)) return CanonResult{t};

    const int n = t.degree();
    std::vector<std::string> u_names;
    u_names.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) u_names.push_back("copy:" + std::to_string(i));
    for (int i = 0; i < n; ++i) u_names.push_back("base:" + std::to_string(i));
    GroundSetPtr u = GroundSet::make(std::move(u_names));

    std::vector<int> embed_copy(static_cast<std::size_t>(n)), embed_base(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        embed_copy[static_cast<std::size_t>(i)] = i;
        embed_base[static_cast<std::size_t>(i)] = n + i;
    }
    const StabChain& tch = t.group().natural_chain();
    const StabChain& cch = c.group().natural_chain();
    StabChain chain_u = StabChain::direct_sum_many({{&tch, embed_copy}, {&cch, embed_base}}, 2 * n);
    std::vector<int32_t> rep_u(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        rep_u[static_cast<std::size_t>(i)] = t.rep()[i] + n;  // copies get labels shifted by |V|
        rep_u[static_cast<std::size_t>(n + i)] = c.rep()[i];
    }
    LabelingCoset coset_u =
        LabelingCoset::make(PermGroup::from_chain(u, std::move(chain_u)), Perm(std::move(rep_u)));

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, n + i);
    IndexSet v_side(2 * n);
    for (int i = 0; i < n; ++i) v_side.insert(n + i);

    CanonContext sub = ctx;
    sub.depth = ctx.depth + 1;
    CanonResult lambda_u = cl_match_rec(std::move(pairs), v_side, std::move(coset_u), sub);

    std::vector<int> base_positions(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) base_positions[static_cast<std::size_t>(i)] = n + i;
    return CanonResult{lambda_u.coset.induce(base_positions, t.dom())};
}

CanonResult cl_iterated(const std::vector<CanonTask>& tasks, const LabelingCoset& c,
                        const CanonContext& ctx) {
    LabelingCoset acc = c;
    for (const CanonTask& task : tasks) {
        if (std::holds_alternative<int>(task))
            acc = cl_point(std::get<int>(task), acc, ctx).coset;
        else if (std::holds_alternative<LabelingCoset>(task))
            acc = cl_int(std::get<LabelingCoset>(task), acc, ctx).coset;
        else
            acc = cl_match(std::get<Matching>(task), acc, ctx).coset;
    }
    return CanonResult{std::move(acc)};
}

}  // namespace canon
