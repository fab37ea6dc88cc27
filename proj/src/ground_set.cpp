#include "canon/ground_set.hpp"

#include <mutex>

namespace canon {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        auto [it, fresh] = index_.emplace(names_[i], static_cast<int>(i));
        if (!fresh) throw Error("ground set elements must be distinct: duplicate \"" + names_[i] + "\"");
    }
    // Only GroundSet::ordered(n) instances carry the ordered flag; a user set
    // that happens to be named 1..n is still treated as unordered.
    ordered_ = false;
}

GroundSetPtr GroundSet::make(std::vector<std::string> names) {
    return GroundSetPtr(new GroundSet(std::move(names)));
}

GroundSetPtr GroundSet::ordered(int n) {
    static std::mutex mu;
    static std::vector<GroundSetPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(cache.size()) <= n) cache.resize(static_cast<std::size_t>(n) + 1);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) {
        std::vector<std::string> names;
        names.reserve(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
        auto gs = new GroundSet(std::move(names));
        gs->ordered_ = true;
        slot = GroundSetPtr(gs);
    }
    return slot;
}

int GroundSet::position(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

GroundSetPtr GroundSet::subset(const std::vector<int>& positions) const {
    std::vector<std::string> names;
    names.reserve(positions.size());
    for (int p : positions) names.push_back(name(p));
    return make(std::move(names));
}

bool GroundSet::same_as(const GroundSet& other) const {
    return this == &other || (ordered_ == other.ordered_ && names_ == other.names_);
}

}  // namespace canon
