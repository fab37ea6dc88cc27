#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "canon/common.hpp"

namespace canon {

class GroundSet;
using GroundSetPtr = std::shared_ptr<const GroundSet>;

/// An indexed vertex universe. Elements are opaque names; algorithms work on
/// 0-based positions in the stored order. A ground set is "ordered" exactly
/// when its names are the decimal integers 1..n in increasing order; ordered
/// sets carry the natural linear order used by `prec` comparisons.
class GroundSet {
public:
    static GroundSetPtr make(std::vector<std::string> names);
    /// The canonical ordered set {1..n}; instances are cached per n.
    static GroundSetPtr ordered(int n);

    int size() const { return static_cast<int>(names_.size()); }
    bool is_ordered() const { return ordered_; }
    const std::string& name(int pos) const { return names_[static_cast<std::size_t>(pos)]; }
    const std::vector<std::string>& names() const { return names_; }
    /// Position of a name, or -1.
    int position(const std::string& name) const;

    /// Ground set consisting of the given positions (in stored order).
    GroundSetPtr subset(const std::vector<int>& positions) const;

    bool same_as(const GroundSet& other) const;

private:
    explicit GroundSet(std::vector<std::string> names);

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    bool ordered_ = false;
};

inline bool same_ground(const GroundSetPtr& a, const GroundSetPtr& b) {
    return a == b || (a && b && a->same_as(*b));
}

}  // namespace canon
