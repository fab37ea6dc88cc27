#include "canon/stab_chain.hpp"

#include <algorithm>
#include <cassert>

namespace canon {

namespace {

std::vector<int> natural_base_vec(int n) {
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = i;
    return b;
}

}  // namespace

bool StabChain::natural_base() const {
    for (int i = 0; i < n_; ++i)
        if (base_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

StabChain StabChain::trivial(int n) {
    StabChain c;
    c.n_ = n;
    c.base_ = natural_base_vec(n);
    c.level_of_ = c.base_;
    c.levels_.resize(static_cast<std::size_t>(n));
    c.stale_.assign(static_cast<std::size_t>(n), 0);
    for (int l = 0; l < n; ++l) {
        auto& lv = c.levels_[static_cast<std::size_t>(l)];
        lv.point = l;
        lv.orbit = {l};
        lv.trans = {Perm::identity(n)};
        lv.slot.assign(static_cast<std::size_t>(n), -1);
        lv.slot[static_cast<std::size_t>(l)] = 0;
    }
    c.order_ = 1;
    return c;
}

StabChain StabChain::symmetric_on(int n, const std::vector<int>& support) {
    StabChain c = trivial(n);
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int p : support) in[static_cast<std::size_t>(p)] = 1;
    std::vector<int> remaining;
    for (int p = 0; p < n; ++p)
        if (in[static_cast<std::size_t>(p)]) remaining.push_back(p);
    for (int l = 0; l < n; ++l) {
        if (!in[static_cast<std::size_t>(l)]) continue;
        auto& lv = c.levels_[static_cast<std::size_t>(l)];
        lv.orbit.clear();
        lv.trans.clear();
        lv.orbit.push_back(l);
        lv.trans.push_back(Perm::identity(n));
        for (int q : remaining) {
            if (q == l) continue;
            Perm t = Perm::identity(n);
            t.at(l) = q;
            t.at(q) = l;
            lv.slot[static_cast<std::size_t>(q)] = static_cast<int>(lv.orbit.size());
            lv.orbit.push_back(q);
            lv.trans.push_back(t);
            lv.gens.push_back(std::move(t));
        }
        remaining.erase(std::find(remaining.begin(), remaining.end(), l));
    }
    c.recompute_order();
    return c;
}

StabChain StabChain::conjugated(const Perm& mu) const {
    if (mu.size() != n_) throw Error("conjugated: size mismatch");
    StabChain c;
    c.n_ = n_;
    const Perm mu_inv = inverse(mu);
    auto relabel = [&](const Perm& g) { return compose3(mu_inv, g, mu); };
    c.base_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) c.base_[static_cast<std::size_t>(i)] = mu[base_[i]];
    c.level_of_.assign(static_cast<std::size_t>(n_), -1);
    for (int i = 0; i < n_; ++i) c.level_of_[static_cast<std::size_t>(c.base_[static_cast<std::size_t>(i)])] = i;
    c.levels_.resize(static_cast<std::size_t>(n_));
    c.stale_.assign(static_cast<std::size_t>(n_), 0);
    for (int l = 0; l < n_; ++l) {
        const auto& src = levels_[static_cast<std::size_t>(l)];
        auto& dst = c.levels_[static_cast<std::size_t>(l)];
        dst.point = mu[src.point];
        dst.orbit.reserve(src.orbit.size());
        for (int p : src.orbit) dst.orbit.push_back(mu[p]);
        dst.trans.reserve(src.trans.size());
        for (const Perm& t : src.trans) dst.trans.push_back(relabel(t));
        dst.slot.assign(static_cast<std::size_t>(n_), -1);
        for (std::size_t k = 0; k < dst.orbit.size(); ++k)
            dst.slot[static_cast<std::size_t>(dst.orbit[k])] = static_cast<int>(k);
        dst.gens.reserve(src.gens.size());
        for (const Perm& g : src.gens) dst.gens.push_back(relabel(g));
    }
    c.order_ = order_;
    return c;
}

StabChain StabChain::direct_sum_many(
    const std::vector<std::pair<const StabChain*, std::vector<int>>>& parts, int n) {
    StabChain c = trivial(n);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto& [part_ptr, embed] : parts) {
        const StabChain& part = *part_ptr;
        if (static_cast<int>(embed.size()) != part.n_) throw Error("direct_sum: embedding size mismatch");
        for (std::size_t i = 0; i < embed.size(); ++i) {
            if (i > 0 && embed[i] <= embed[i - 1]) throw Error("direct_sum: embedding must be increasing");
            if (embed[i] < 0 || embed[i] >= n || used[static_cast<std::size_t>(embed[i])])
                throw Error("direct_sum: supports must be disjoint");
            used[static_cast<std::size_t>(embed[i])] = 1;
        }
        if (!part.natural_base()) throw Error("direct_sum: parts must carry the natural base");
        auto lift = [&](const Perm& g) {
            Perm out = Perm::identity(n);
            for (int i = 0; i < part.n_; ++i)
                out.at(embed[static_cast<std::size_t>(i)]) = embed[static_cast<std::size_t>(g[i])];
            return out;
        };
        for (int l = 0; l < part.n_; ++l) {
            const auto& src = part.levels_[static_cast<std::size_t>(l)];
            if (src.orbit.size() == 1 && src.gens.empty()) continue;
            int big_point = embed[static_cast<std::size_t>(src.point)];
            auto& dst = c.levels_[static_cast<std::size_t>(big_point)];
            dst.orbit.clear();
            dst.trans.clear();
            dst.slot.assign(static_cast<std::size_t>(n), -1);
            for (std::size_t k = 0; k < src.orbit.size(); ++k) {
                int q = embed[static_cast<std::size_t>(src.orbit[k])];
                dst.slot[static_cast<std::size_t>(q)] = static_cast<int>(dst.orbit.size());
                dst.orbit.push_back(q);
                dst.trans.push_back(lift(src.trans[k]));
            }
            if (dst.orbit[0] != big_point) throw InternalError("direct_sum: orbit head mismatch");
            for (const Perm& g : src.gens) dst.gens.push_back(lift(g));
        }
    }
    // Disjoint supports with increasing embeddings keep the natural-base
    // stabilizer structure intact: the prefix stabilizer at any point splits
    // into per-part prefix stabilizers.
    c.recompute_order();
    return c;
}

bool StabChain::contains(const Perm& g) const {
    if (g.size() != n_) return false;
    return sift(g, 0).first == n_;
}

std::pair<int, Perm> StabChain::sift(Perm g, int from_level) const {
    for (int l = from_level; l < n_; ++l) {
        const auto& lv = levels_[static_cast<std::size_t>(l)];
        int q = g[lv.point];
        if (q == lv.point) continue;
        int k = lv.slot[static_cast<std::size_t>(q)];
        if (k < 0) return {l, std::move(g)};
        g = compose(g, inverse(lv.trans[static_cast<std::size_t>(k)]));
    }
    if (!g.is_identity()) throw InternalError("sift: residue after full base");
    return {n_, std::move(g)};
}

std::vector<Perm> StabChain::generators_from(int level) const {
    std::vector<Perm> out;
    for (int l = level; l < n_; ++l)
        for (const Perm& g : levels_[static_cast<std::size_t>(l)].gens) out.push_back(g);
    return out;
}

void StabChain::insert_generator(Perm g, int min_level) {
    for (int l = min_level; l < n_; ++l) {
        if (g[levels_[static_cast<std::size_t>(l)].point] != levels_[static_cast<std::size_t>(l)].point) {
            levels_[static_cast<std::size_t>(l)].gens.push_back(std::move(g));
            for (int i = 0; i <= l; ++i) stale_[static_cast<std::size_t>(i)] = 1;
            return;
        }
    }
    // identity: nothing to do
}

void StabChain::refresh_orbit(int level) {
    auto& lv = levels_[static_cast<std::size_t>(level)];
    std::vector<Perm> gens = generators_from(level);
    lv.orbit.clear();
    lv.trans.clear();
    lv.slot.assign(static_cast<std::size_t>(n_), -1);
    lv.orbit.push_back(lv.point);
    lv.trans.push_back(Perm::identity(n_));
    lv.slot[static_cast<std::size_t>(lv.point)] = 0;
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
        int p = lv.orbit[head];
        for (const Perm& s : gens) {
            int q = s[p];
            if (lv.slot[static_cast<std::size_t>(q)] < 0) {
                lv.slot[static_cast<std::size_t>(q)] = static_cast<int>(lv.orbit.size());
                lv.orbit.push_back(q);
                lv.trans.push_back(compose(lv.trans[head], s));
            }
        }
    }
    stale_[static_cast<std::size_t>(level)] = 0;
}

void StabChain::refresh_all() {
    for (int l = 0; l < n_; ++l)
        if (stale_[static_cast<std::size_t>(l)]) refresh_orbit(l);
}

void StabChain::recompute_order() {
    order_ = 1;
    for (const auto& lv : levels_) order_ *= static_cast<unsigned long>(lv.orbit.size());
}

void StabChain::complete(const BigInt* known_order) {
    refresh_all();
    recompute_order();
    if (known_order && order_ == *known_order) return;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int l = n_ - 1; l >= 0; --l) {
            auto& lv = levels_[static_cast<std::size_t>(l)];
            std::vector<Perm> gens = generators_from(l);
            if (gens.empty()) continue;
            for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
                for (const Perm& s : gens) {
                    int q = s[lv.orbit[k]];
                    int kq = lv.slot[static_cast<std::size_t>(q)];
                    if (kq < 0) throw InternalError("complete: orbit not closed");
                    Perm h = compose(compose(lv.trans[k], s), inverse(lv.trans[static_cast<std::size_t>(kq)]));
                    auto [lvl, res] = sift(std::move(h), l + 1);
                    if (lvl < n_) {
                        insert_generator(std::move(res), l + 1);
                        refresh_all();
                        changed = true;
                        if (known_order) {
                            recompute_order();
                            if (order_ == *known_order) return;
                        }
                    }
                }
            }
        }
    }
    recompute_order();
    if (known_order && order_ != *known_order)
        throw InternalError("complete: generated order does not match the declared order");
}

StabChain StabChain::build(int n, const std::vector<Perm>& gens, std::vector<int> base,
                           const BigInt* known_order) {
    StabChain c = trivial(n);
    if (!base.empty()) {
        if (static_cast<int>(base.size()) != n) throw Error("build: base must list every position");
        c.base_ = std::move(base);
        c.level_of_.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            int p = c.base_[static_cast<std::size_t>(i)];
            if (p < 0 || p >= n || c.level_of_[static_cast<std::size_t>(p)] != -1)
                throw Error("build: base is not a permutation of positions");
            c.level_of_[static_cast<std::size_t>(p)] = i;
            c.levels_[static_cast<std::size_t>(i)].point = p;
            c.levels_[static_cast<std::size_t>(i)].orbit = {p};
            c.levels_[static_cast<std::size_t>(i)].trans = {Perm::identity(n)};
            c.levels_[static_cast<std::size_t>(i)].slot.assign(static_cast<std::size_t>(n), -1);
            c.levels_[static_cast<std::size_t>(i)].slot[static_cast<std::size_t>(p)] = 0;
        }
    }
    for (const Perm& g : gens) {
        if (g.size() != n) throw Error("build: generator size mismatch");
        if (!g.is_bijection()) throw Error("build: generator is not a bijection");
        auto [lvl, res] = c.sift(g, 0);
        if (lvl < n) {
            c.insert_generator(std::move(res), 0);
            c.refresh_all();
        }
    }
    c.complete(known_order);
    return c;
}

std::vector<Perm> StabChain::elements(std::size_t budget) const {
    if (order_ > BigInt(budget)) throw BudgetError("group enumeration exceeds budget");
    std::vector<Perm> out;
    out.reserve(static_cast<std::size_t>(order_));
    // Every element factors uniquely as t_{n-1} followed by ... followed by
    // t_0 over transversal choices (the inverse of sifting).
    auto dfs = [&](auto&& self, int l, const Perm& acc) -> void {
        if (l < 0) {
            out.push_back(acc);
            return;
        }
        const auto& lv = levels_[static_cast<std::size_t>(l)];
        if (lv.orbit.size() == 1) {
            self(self, l - 1, acc);
            return;
        }
        for (const Perm& t : lv.trans) self(self, l - 1, compose(acc, t));
    };
    dfs(dfs, n_ - 1, Perm::identity(n_));
    return out;
}

Perm lexmin_coset_element(const StabChain& ch, const Perm& x, const Perm& y, int from_level) {
    const int n = ch.n();
    if (x.size() != n || y.size() != n) throw Error("lexmin: size mismatch");
    Perm w = y;
    for (int j = from_level; j < n; ++j) {
        const auto& lv = ch.levels()[static_cast<std::size_t>(j)];
        if (ch.base()[static_cast<std::size_t>(j)] != x[j])
            throw InternalError("lexmin: chain base does not match evaluation order");
        if (lv.orbit.size() == 1) continue;
        int best_k = -1;
        int32_t best_v = 0;
        for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
            int32_t v = w[lv.orbit[k]];
            if (best_k < 0 || v < best_v) {
                best_k = static_cast<int>(k);
                best_v = v;
            }
        }
        if (best_k != 0) w = compose(lv.trans[static_cast<std::size_t>(best_k)], w);
    }
    return compose(x, w);
}

}  // namespace canon
