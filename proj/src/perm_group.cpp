#include "canon/perm_group.hpp"

#include <algorithm>
#include <map>

namespace canon {

PermGroup PermGroup::wrap(GroundSetPtr dom, StabChain chain) {
    auto d = std::make_shared<Data>();
    d->dom = std::move(dom);
    d->chain = std::move(chain);
    return PermGroup(std::move(d));
}

PermGroup PermGroup::from_generators(GroundSetPtr dom, const std::vector<Perm>& gens) {
    const int n = dom->size();
    for (const Perm& g : gens)
        if (g.size() != n) throw Error("from_generators: generator does not match the domain");
    return wrap(std::move(dom), StabChain::build(n, gens));
}

PermGroup PermGroup::from_chain(GroundSetPtr dom, StabChain chain) {
    if (chain.n() != dom->size()) throw Error("from_chain: size mismatch");
    return wrap(std::move(dom), std::move(chain));
}

PermGroup PermGroup::trivial(GroundSetPtr dom) {
    const int n = dom->size();
    return wrap(std::move(dom), StabChain::trivial(n));
}

PermGroup PermGroup::symmetric(GroundSetPtr dom) {
    const int n = dom->size();
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    return wrap(std::move(dom), StabChain::symmetric_on(n, all));
}

PermGroup PermGroup::symmetric_blocks(GroundSetPtr dom, const std::vector<std::vector<int>>& blocks) {
    const int n = dom->size();
    std::vector<StabChain> parts;
    parts.reserve(blocks.size());
    std::vector<std::pair<const StabChain*, std::vector<int>>> spec;
    for (const auto& block : blocks) {
        std::vector<int> embed = block;
        std::sort(embed.begin(), embed.end());
        std::vector<int> all(block.size());
        for (std::size_t i = 0; i < block.size(); ++i) all[i] = static_cast<int>(i);
        parts.push_back(StabChain::symmetric_on(static_cast<int>(block.size()), all));
        spec.emplace_back(nullptr, std::move(embed));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) spec[i].first = &parts[i];
    return wrap(std::move(dom), StabChain::direct_sum_many(spec, n));
}

const StabChain& PermGroup::natural_chain() const {
    if (d_->chain.natural_base()) return d_->chain;
    std::lock_guard<std::mutex> lock(d_->mu);
    if (!d_->natural) {
        BigInt ord = d_->chain.order();
        d_->natural = std::make_unique<StabChain>(
            StabChain::build(d_->chain.n(), d_->chain.strong_generators(), {}, &ord));
    }
    return *d_->natural;
}

const std::vector<Perm>& PermGroup::canonical_generators() const {
    {
        std::lock_guard<std::mutex> lock(d_->mu);
        if (d_->canonical) return *d_->canonical;
    }
    const StabChain& ch = natural_chain();
    auto out = std::make_unique<std::vector<Perm>>();
    const int n = ch.n();
    const Perm id = Perm::identity(n);
    for (int l = 0; l < n; ++l) {
        const auto& lv = ch.levels()[static_cast<std::size_t>(l)];
        std::vector<int> pts(lv.orbit.begin(), lv.orbit.end());
        std::sort(pts.begin(), pts.end());
        for (int p : pts) {
            if (p == lv.point) continue;
            const Perm& u = lv.trans[static_cast<std::size_t>(lv.slot[static_cast<std::size_t>(p)])];
            out->push_back(lexmin_coset_element(ch, id, u, l + 1));
        }
    }
    std::lock_guard<std::mutex> lock(d_->mu);
    if (!d_->canonical) d_->canonical = std::move(out);
    return *d_->canonical;
}

bool PermGroup::contains(const Perm& g) const {
    if (g.size() != degree()) throw Error("contains: domain mismatch");
    return d_->chain.contains(g);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
    if (!same_ground(dom(), other.dom())) throw Error("is_subgroup_of: domain mismatch");
    for (const Perm& g : generators())
        if (!other.contains(g)) return false;
    return true;
}

bool PermGroup::equals(const PermGroup& other) const {
    return order() == other.order() && is_subgroup_of(other);
}

std::vector<int> PermGroup::orbit_of(int v) const {
    std::vector<int> orbit{v};
    std::vector<char> seen(static_cast<std::size_t>(degree()), 0);
    seen[static_cast<std::size_t>(v)] = 1;
    auto gens = generators();
    for (std::size_t head = 0; head < orbit.size(); ++head)
        for (const Perm& g : gens) {
            int q = g[orbit[head]];
            if (!seen[static_cast<std::size_t>(q)]) {
                seen[static_cast<std::size_t>(q)] = 1;
                orbit.push_back(q);
            }
        }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

std::vector<std::vector<int>> PermGroup::orbits_on(const IndexSet& a) const {
    std::vector<std::vector<int>> out;
    std::vector<char> done(static_cast<std::size_t>(degree()), 0);
    for (int v : a.members()) {
        if (done[static_cast<std::size_t>(v)]) continue;
        std::vector<int> orb = orbit_of(v);
        for (int p : orb) {
            if (!a.contains(p)) throw Error("orbits_on: set is not invariant");
            done[static_cast<std::size_t>(p)] = 1;
        }
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<std::pair<int, Perm>> PermGroup::orbit_transversal(int v) const {
    std::vector<std::pair<int, Perm>> out;
    std::vector<int> slot(static_cast<std::size_t>(degree()), -1);
    auto gens = generators();
    out.emplace_back(v, Perm::identity(degree()));
    slot[static_cast<std::size_t>(v)] = 0;
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const Perm& g : gens) {
            int q = g[out[head].first];
            if (slot[static_cast<std::size_t>(q)] < 0) {
                slot[static_cast<std::size_t>(q)] = static_cast<int>(out.size());
                out.emplace_back(q, compose(out[head].second, g));
            }
        }
    return out;
}

PermGroup PermGroup::pointwise_stabilizer(int v) const {
    if (v < 0 || v >= degree()) throw Error("pointwise_stabilizer: vertex not in domain");
    auto transversal = orbit_transversal(v);
    std::vector<int> slot(static_cast<std::size_t>(degree()), -1);
    for (std::size_t k = 0; k < transversal.size(); ++k)
        slot[static_cast<std::size_t>(transversal[k].first)] = static_cast<int>(k);
    auto gens = generators();
    std::vector<Perm> schreier;
    for (const auto& [p, tp] : transversal)
        for (const Perm& s : gens) {
            int q = s[p];
            Perm h = compose(compose(tp, s), inverse(transversal[static_cast<std::size_t>(slot[static_cast<std::size_t>(q)])].second));
            if (!h.is_identity()) schreier.push_back(std::move(h));
        }
    BigInt target = order() / static_cast<unsigned long>(transversal.size());
    return wrap(dom(), StabChain::build(degree(), schreier, {}, &target));
}

PermGroup PermGroup::setwise_stabilizer(const IndexSet& a) const {
    if (a.universe() != degree()) throw Error("setwise_stabilizer: set does not live on the domain");
    auto gens = generators();
    // BFS over the orbit of the set; Schreier generators of the stabilizer.
    std::map<IndexSet, int> index_of;
    std::vector<IndexSet> states{a};
    std::vector<Perm> pull{Perm::identity(degree())};
    index_of.emplace(a, 0);
    std::vector<Perm> schreier;
    for (std::size_t head = 0; head < states.size(); ++head) {
        for (const Perm& s : gens) {
            IndexSet b = states[head].image(s);
            auto it = index_of.find(b);
            if (it == index_of.end()) {
                index_of.emplace(b, static_cast<int>(states.size()));
                states.push_back(std::move(b));
                pull.push_back(compose(pull[head], s));
            } else {
                Perm h = compose(compose(pull[head], s), inverse(pull[static_cast<std::size_t>(it->second)]));
                if (!h.is_identity()) schreier.push_back(std::move(h));
            }
        }
    }
    BigInt target = order() / static_cast<unsigned long>(states.size());
    return wrap(dom(), StabChain::build(degree(), schreier, {}, &target));
}

PermGroup PermGroup::setwise_stabilizer(const std::vector<IndexSet>& tuple) const {
    PermGroup g = *this;
    for (const IndexSet& a : tuple) g = g.setwise_stabilizer(a);
    return g;
}

std::vector<Perm> PermGroup::left_cosets(const PermGroup& h) const {
    if (!same_ground(dom(), h.dom())) throw Error("left_cosets: domain mismatch");
    if (!h.is_subgroup_of(*this)) throw Error("left_cosets: H is not a subgroup of G");
    BigInt index_big = order() / h.order();
    if (index_big * h.order() != order()) throw InternalError("left_cosets: order not divisible");
    std::size_t index = static_cast<std::size_t>(index_big);
    auto gens = generators();
    std::vector<Perm> reps{Perm::identity(degree())};
    for (std::size_t head = 0; head < reps.size() && reps.size() < index; ++head) {
        for (const Perm& s : gens) {
            Perm cand = compose(s, reps[head]);
            bool fresh = true;
            for (const Perm& r : reps)
                if (h.contains(compose(inverse(r), cand))) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                reps.push_back(std::move(cand));
                if (reps.size() == index) break;
            }
        }
    }
    if (reps.size() != index) throw InternalError("left_cosets: BFS did not reach every coset");
    // Canonicalize each representative to the lex-min element of its coset.
    std::vector<Perm> h_gens = h.generators();
    BigInt h_ord = h.order();
    std::vector<Perm> out;
    out.reserve(reps.size());
    for (const Perm& r : reps) {
        std::vector<int> base(static_cast<std::size_t>(degree()));
        for (int j = 0; j < degree(); ++j) base[static_cast<std::size_t>(j)] = r[j];
        StabChain ch = StabChain::build(degree(), h_gens, base, &h_ord);
        out.push_back(lexmin_coset_element(ch, r, Perm::identity(degree())));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PermGroup PermGroup::conjugated(const Perm& mu, GroundSetPtr new_dom) const {
    if (mu.size() != degree() || new_dom->size() != degree())
        throw Error("conjugated: size mismatch");
    return wrap(std::move(new_dom), d_->chain.conjugated(mu));
}

PermGroup PermGroup::restricted(const std::vector<int>& a, GroundSetPtr sub) const {
    const int m = static_cast<int>(a.size());
    if (sub->size() != m) throw Error("restricted: sub-ground-set size mismatch");
    std::vector<int> where(static_cast<std::size_t>(degree()), -1);
    for (int i = 0; i < m; ++i) where[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] = i;
    std::vector<Perm> gens;
    for (const Perm& g : generators()) {
        std::vector<int32_t> img(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            int q = g[a[static_cast<std::size_t>(i)]];
            int w = (q >= 0) ? where[static_cast<std::size_t>(q)] : -1;
            if (w < 0) throw Error("restricted: set is not invariant");
            img[static_cast<std::size_t>(i)] = w;
        }
        gens.emplace_back(std::move(img));
    }
    return wrap(std::move(sub), StabChain::build(m, gens));
}

std::vector<Perm> PermGroup::elements(std::size_t budget) const {
    return d_->chain.elements(budget);
}

}  // namespace canon
