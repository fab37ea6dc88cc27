#include "canon/index_set.hpp"

#include <bit>

#include "canon/common.hpp"

namespace canon {

int IndexSet::count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

bool IndexSet::empty() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
    IndexSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
}

IndexSet IndexSet::unite(const IndexSet& o) const {
    IndexSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
}

IndexSet IndexSet::minus(const IndexSet& o) const {
    IndexSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
}

bool IndexSet::subset_of(const IndexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

std::vector<int> IndexSet::members() const {
    std::vector<int> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        uint64_t w = words_[wi];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(static_cast<int>(wi * 64) + b);
            w &= w - 1;
        }
    }
    return out;
}

IndexSet IndexSet::image(const Perm& p) const {
    if (p.size() != n_) throw Error("IndexSet::image: size mismatch");
    IndexSet r(n_);
    for (int m : members()) r.insert(p[m]);
    return r;
}

}  // namespace canon
