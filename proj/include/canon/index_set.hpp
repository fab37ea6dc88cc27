#pragma once

#include <cstdint>
#include <vector>

#include "canon/perm.hpp"

namespace canon {

/// Subset of {0..n-1} as a word-packed bitset. Hyperedges and focus sets are
/// stored this way; intersections dominate the bundling inner loops.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}
    static IndexSet of(int n, const std::vector<int>& members) {
        IndexSet s(n);
        for (int m : members) s.insert(m);
        return s;
    }
    static IndexSet full(int n) {
        IndexSet s(n);
        for (int i = 0; i < n; ++i) s.insert(i);
        return s;
    }

    int universe() const { return n_; }
    void insert(int i) { words_[static_cast<std::size_t>(i) >> 6] |= (uint64_t{1} << (i & 63)); }
    void erase(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool contains(int i) const {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
    }
    int count() const;
    bool empty() const;

    IndexSet intersect(const IndexSet& o) const;
    IndexSet unite(const IndexSet& o) const;
    IndexSet minus(const IndexSet& o) const;
    bool subset_of(const IndexSet& o) const;

    /// Members ascending.
    std::vector<int> members() const;
    /// Image under a permutation of the universe.
    IndexSet image(const Perm& p) const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }
    friend bool operator!=(const IndexSet& a, const IndexSet& b) { return !(a == b); }
    friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.words_ < b.words_; }

private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace canon
