#include "canon/labeling_coset.hpp"

#include <algorithm>
#include <cassert>

namespace canon {

bool Restriction::equals(const Restriction& other) const {
    return positions == other.positions && labels == other.labels &&
           induced->equals(*other.induced);
}

LabelingCoset LabelingCoset::make(PermGroup group, Perm rep) {
    if (rep.size() != group.degree()) throw Error("labeling coset: rep does not match the domain");
    if (!rep.is_bijection()) throw Error("labeling coset: rep is not a bijection onto {1..n}");
    auto d = std::make_shared<Data>();
    d->group = std::move(group);
    d->rep = std::move(rep);
    return LabelingCoset(std::move(d));
}

LabelingCoset LabelingCoset::full(GroundSetPtr v) {
    const int n = v->size();
    return make(PermGroup::symmetric(std::move(v)), Perm::identity(n));
}

LabelingCoset LabelingCoset::singleton(GroundSetPtr v, Perm rep) {
    return make(PermGroup::trivial(std::move(v)), std::move(rep));
}

bool LabelingCoset::member(const Perm& labeling) const {
    if (labeling.size() != degree()) throw Error("member: size mismatch");
    return d_->group.contains(compose(labeling, inverse(d_->rep)));
}

bool LabelingCoset::equals(const LabelingCoset& other) const {
    if (!same_ground(dom(), other.dom())) return false;
    return size() == other.size() && member(other.rep()) &&
           other.group().is_subgroup_of(group());
}

bool LabelingCoset::contains_coset(const LabelingCoset& sub) const {
    if (!same_ground(dom(), sub.dom())) return false;
    return member(sub.rep()) && sub.group().is_subgroup_of(group());
}

LabelingCoset LabelingCoset::apply_map(const Bijection& mu) const {
    if (!same_ground(mu.src, dom())) throw Error("apply_map: map domain mismatch");
    if (!mu.perm.is_bijection()) throw Error("apply_map: map is not a bijection");
    Perm mu_inv = inverse(mu.perm);
    return make(d_->group.conjugated(mu.perm, mu.dst), compose(mu_inv, d_->rep));
}

LabelingCoset LabelingCoset::induce(const std::vector<int>& a, GroundSetPtr target) const {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1]) throw Error("induce: positions must be ascending");
    GroundSetPtr sub = target ? target : dom()->subset(a);
    PermGroup g = d_->group.restricted(a, sub);
    // kappa: order-preserving renumbering of rho(A) onto {1..|A|}.
    std::vector<int> labels;
    labels.reserve(a.size());
    for (int p : a) labels.push_back(d_->rep[p]);
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int32_t> img(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        img[i] = static_cast<int32_t>(
            std::lower_bound(sorted.begin(), sorted.end(), labels[i]) - sorted.begin());
    return make(std::move(g), Perm(std::move(img)));
}

Restriction LabelingCoset::restrict_to(const std::vector<int>& a) const {
    Restriction r;
    r.positions = a;
    for (int p : a) r.labels.push_back(d_->rep[p]);
    std::sort(r.labels.begin(), r.labels.end());
    r.induced = std::make_shared<LabelingCoset>(induce(a));
    return r;
}

namespace {

LabelingCoset lift_with_labels(const LabelingCoset& t, const std::vector<int>& positions,
                               const std::vector<int>& labels_sorted, GroundSetPtr v) {
    const int n = v->size();
    const int m = static_cast<int>(positions.size());
    if (t.degree() != m) throw Error("lift: coset does not match the embedded set");
    for (int i = 1; i < m; ++i)
        if (positions[static_cast<std::size_t>(i)] <= positions[static_cast<std::size_t>(i - 1)])
            throw Error("lift: positions must be ascending");
    std::vector<char> in_a(static_cast<std::size_t>(n), 0);
    for (int p : positions) {
        if (p < 0 || p >= n) throw Error("lift: position outside V");
        in_a[static_cast<std::size_t>(p)] = 1;
    }
    std::vector<int> rest;
    for (int p = 0; p < n; ++p)
        if (!in_a[static_cast<std::size_t>(p)]) rest.push_back(p);
    std::vector<char> label_used(static_cast<std::size_t>(n), 0);
    for (int l : labels_sorted) label_used[static_cast<std::size_t>(l)] = 1;
    std::vector<int> rest_labels;
    for (int l = 0; l < n; ++l)
        if (!label_used[static_cast<std::size_t>(l)]) rest_labels.push_back(l);

    const StabChain& tch = t.group().natural_chain();
    std::vector<int> all_rest(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) all_rest[i] = static_cast<int>(i);
    StabChain sym_rest = StabChain::symmetric_on(static_cast<int>(rest.size()), all_rest);
    StabChain chain = StabChain::direct_sum_many({{&tch, positions}, {&sym_rest, rest}}, n);

    std::vector<int32_t> rep(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i)
        rep[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] =
            static_cast<int32_t>(labels_sorted[static_cast<std::size_t>(t.rep()[i])]);
    for (std::size_t i = 0; i < rest.size(); ++i)
        rep[static_cast<std::size_t>(rest[i])] = static_cast<int32_t>(rest_labels[i]);
    return LabelingCoset::make(PermGroup::from_chain(v, std::move(chain)), Perm(std::move(rep)));
}

}  // namespace

LabelingCoset LabelingCoset::lift(const LabelingCoset& t, const std::vector<int>& positions,
                                  GroundSetPtr v) {
    std::vector<int> labels(static_cast<std::size_t>(t.degree()));
    for (int i = 0; i < t.degree(); ++i) labels[static_cast<std::size_t>(i)] = i;
    return lift_with_labels(t, positions, labels, std::move(v));
}

LabelingCoset LabelingCoset::lift_restriction(const Restriction& r, GroundSetPtr v) {
    return lift_with_labels(*r.induced, r.positions, r.labels, std::move(v));
}

const Perm& LabelingCoset::lexmin() const {
    {
        std::lock_guard<std::mutex> lock(d_->mu);
        if (d_->lexmin) return *d_->lexmin;
    }
    const StabChain& ch = d_->group.natural_chain();
    auto val = std::make_unique<Perm>(
        lexmin_coset_element(ch, Perm::identity(degree()), d_->rep));
    std::lock_guard<std::mutex> lock(d_->mu);
    if (!d_->lexmin) d_->lexmin = std::move(val);
    return *d_->lexmin;
}

namespace {

/// Is the level-j subcoset {k*wa : k in A_j} contained in {k*wb : k in B_j}?
bool subcoset_subset(const StabChain& ca, const Perm& wa, const StabChain& cb, const Perm& wb,
                     int j) {
    Perm m = compose(wa, inverse(wb));
    if (cb.sift(std::move(m), j).first != cb.n()) return false;
    for (const Perm& g : ca.generators_from(j))
        if (cb.sift(g, j).first != cb.n()) return false;
    return true;
}

}  // namespace

std::optional<Perm> coset_min_difference(const LabelingCoset& c1, const LabelingCoset& c2) {
    if (!same_ground(c1.dom(), c2.dom())) throw Error("min_difference: domain mismatch");
    const int n = c1.degree();
    const StabChain& ca = c1.group().natural_chain();
    const StabChain& cb = c2.group().natural_chain();
    Perm wa = c1.rep();
    Perm wb = c2.rep();
    Perm id = Perm::identity(n);
    for (int j = 0; j < n; ++j) {
        if (subcoset_subset(ca, wa, cb, wb, j)) return std::nullopt;
        const auto& la = ca.levels()[static_cast<std::size_t>(j)];
        const auto& lb = cb.levels()[static_cast<std::size_t>(j)];
        Perm wb_inv = inverse(wb);
        std::vector<std::pair<int32_t, int>> cands;  // (image value, orbit point)
        cands.reserve(la.orbit.size());
        for (int q : la.orbit) cands.emplace_back(wa[q], q);
        std::sort(cands.begin(), cands.end());
        bool descended = false;
        for (const auto& [v, q] : cands) {
            Perm wa2 = (q == la.point)
                           ? wa
                           : compose(la.trans[static_cast<std::size_t>(la.slot[static_cast<std::size_t>(q)])], wa);
            int p2 = wb_inv[v];
            int kb = lb.slot[static_cast<std::size_t>(p2)];
            if (kb < 0) {
                // The matching subcoset of C2 is empty: min(C1\C2) is the
                // lex-min of C1's subcoset.
                return lexmin_coset_element(ca, id, wa2, j + 1);
            }
            Perm wb2 = (p2 == lb.point) ? wb : compose(lb.trans[static_cast<std::size_t>(kb)], wb);
            if (subcoset_subset(ca, wa2, cb, wb2, j + 1)) continue;
            wa = std::move(wa2);
            wb = std::move(wb2);
            descended = true;
            break;
        }
        if (!descended) throw InternalError("min_difference: no branch although not a subset");
    }
    if (wa == wb) return std::nullopt;
    return wa;
}

int LabelingCoset::compare(const LabelingCoset& a, const LabelingCoset& b) {
    if (!a.dom()->is_ordered() || !same_ground(a.dom(), b.dom()))
        throw Error("compare: cosets must live over the same ordered ground set");
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    auto ma = coset_min_difference(a, b);
    if (!ma) return 0;  // equal sizes and a ⊆ b means equality
    auto mb = coset_min_difference(b, a);
    if (!mb) throw InternalError("compare: asymmetric containment with equal sizes");
    return *ma < *mb ? -1 : 1;
}

std::pair<std::vector<Perm>, Perm> LabelingCoset::canonical_generators() const {
    return {d_->group.canonical_generators(), lexmin()};
}

const std::string& LabelingCoset::canonical_key() const {
    {
        std::lock_guard<std::mutex> lock(d_->mu);
        if (d_->key) return *d_->key;
    }
    auto [gens, rep] = canonical_generators();
    auto out = std::make_unique<std::string>();
    auto put32 = [&](int32_t v) {
        out->push_back(static_cast<char>((v >> 24) & 0xff));
        out->push_back(static_cast<char>((v >> 16) & 0xff));
        out->push_back(static_cast<char>((v >> 8) & 0xff));
        out->push_back(static_cast<char>(v & 0xff));
    };
    put32(degree());
    put32(static_cast<int32_t>(gens.size()));
    for (const Perm& g : gens)
        for (int i = 0; i < degree(); ++i) put32(g[i]);
    for (int i = 0; i < degree(); ++i) put32(rep[i]);
    std::lock_guard<std::mutex> lock(d_->mu);
    if (!d_->key) d_->key = std::move(out);
    return *d_->key;
}

LabelingCoset LabelingCoset::span(const std::vector<LabelingCoset>& cosets) {
    if (cosets.empty()) throw Error("span: empty input");
    const LabelingCoset& first = cosets.front();
    std::vector<Perm> gens;
    Perm rep_inv = inverse(first.rep());
    for (const LabelingCoset& c : cosets) {
        if (!same_ground(c.dom(), first.dom())) throw Error("span: mixed domains");
        for (const Perm& g : c.group().generators()) gens.push_back(g);
        Perm q = compose(c.rep(), rep_inv);
        if (!q.is_identity()) gens.push_back(std::move(q));
    }
    return make(PermGroup::from_generators(first.dom(), gens), first.rep());
}

}  // namespace canon
