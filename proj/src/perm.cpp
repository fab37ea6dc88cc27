#include "canon/perm.hpp"

#include "canon/common.hpp"

namespace canon {

bool Perm::is_bijection() const {
    const int n = size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int32_t v = img_[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

Perm compose(const Perm& p, const Perm& q) {
    if (p.size() != q.size()) throw Error("compose: size mismatch");
    const int n = p.size();
    std::vector<int32_t> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = q[p[i]];
    return Perm(std::move(out));
}

Perm inverse(const Perm& p) {
    const int n = p.size();
    std::vector<int32_t> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(p[i])] = i;
    return Perm(std::move(out));
}

Perm compose3(const Perm& a, const Perm& b, const Perm& c) {
    if (a.size() != b.size() || b.size() != c.size()) throw Error("compose3: size mismatch");
    const int n = a.size();
    std::vector<int32_t> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = c[b[a[i]]];
    return Perm(std::move(out));
}

}  // namespace canon
