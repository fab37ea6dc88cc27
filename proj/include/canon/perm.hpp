#pragma once

#include <cstdint>
#include <vector>

#include "canon/ground_set.hpp"

namespace canon {

/// A bijection on positions {0..n-1}. Composition is left-to-right
/// throughout the library: (p * q)(x) = q(p(x)).
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int32_t> images) : img_(std::move(images)) {}
    static Perm identity(int n) {
        std::vector<int32_t> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
        return Perm(std::move(v));
    }

    int size() const { return static_cast<int>(img_.size()); }
    int32_t operator[](int i) const { return img_[static_cast<std::size_t>(i)]; }
    int32_t& at(int i) { return img_[static_cast<std::size_t>(i)]; }
    const std::vector<int32_t>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }
    bool is_bijection() const;

    friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
    friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
    /// Lexicographic order on image tuples; over the ordered ground set this
    /// is the element order used by the coset order.
    friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

private:
    std::vector<int32_t> img_;
};

/// Apply p first, then q.
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
/// compose(a, compose(b, c))
Perm compose3(const Perm& a, const Perm& b, const Perm& c);

/// Spec-facing permutation: a bijection of a ground set onto itself.
struct Permutation {
    GroundSetPtr domain;
    Perm perm;
};

/// A labeling V -> {1..|V|}; perm maps positions of `source` to value-1.
struct Labeling {
    GroundSetPtr source;
    Perm perm;

    /// 1-based label of the element at `pos`.
    int label_of(int pos) const { return perm[pos] + 1; }
};

/// A bijection between two (possibly different) ground sets, src pos -> dst pos.
struct Bijection {
    GroundSetPtr src;
    GroundSetPtr dst;
    Perm perm;

    Bijection inverted() const { return Bijection{dst, src, inverse(perm)}; }
    static Bijection identity(const GroundSetPtr& g) {
        return Bijection{g, g, Perm::identity(g->size())};
    }
};

}  // namespace canon
