#include "canon/oracle.hpp"

#include <algorithm>

namespace canon {

std::vector<Perm> all_labelings(int n, const OracleBudget& budget) {
    if (n > budget.max_factorial_base) throw BudgetError("oracle: factorial base exceeds budget");
    std::vector<int32_t> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
    std::vector<Perm> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

ObjectDag brute_canonical_form(const ObjectDag& x, const OracleBudget& budget) {
    const int n = x.ground()->size();
    GroundSetPtr ord = GroundSet::ordered(n);
    bool have = false;
    ObjectDag best;
    for (const Perm& lab : all_labelings(n, budget)) {
        ObjectDag img = apply_map(x, Bijection{x.ground(), ord, lab});
        if (!have || ordered_compare(img, best) < 0) {
            best = std::move(img);
            have = true;
        }
    }
    return best;
}

PermGroup brute_aut(const ObjectDag& x, const OracleBudget& budget) {
    const int n = x.ground()->size();
    std::vector<Perm> auts;
    for (const Perm& sigma : all_labelings(n, budget)) {
        ObjectDag img = apply_map(x, Bijection{x.ground(), x.ground(), sigma});
        if (object_equal(img, x)) auts.push_back(sigma);
    }
    return PermGroup::from_generators(x.ground(), auts);
}

std::vector<Perm> coset_elements(const LabelingCoset& c, const OracleBudget& budget) {
    std::vector<Perm> out;
    for (const Perm& g : c.group().elements(budget.max_group_enumeration))
        out.push_back(compose(g, c.rep()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Perm> brute_coset_intersection(const LabelingCoset& t, const LabelingCoset& c,
                                           const OracleBudget& budget) {
    std::vector<Perm> out;
    for (const Perm& lab : coset_elements(t, budget))
        if (c.member(lab)) out.push_back(lab);
    return out;
}

std::vector<Perm> brute_setwise_stab(const PermGroup& g, const IndexSet& a,
                                     const OracleBudget& budget) {
    std::vector<Perm> out;
    for (const Perm& p : g.elements(budget.max_group_enumeration))
        if (a.image(p) == a) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace canon
