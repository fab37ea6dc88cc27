#include "canon/object.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace canon {

namespace {

int kind_rank(NodeKind k) {
    switch (k) {
        case NodeKind::Vertex: return 0;
        case NodeKind::Coset: return 1;
        case NodeKind::Tuple: return 2;
        case NodeKind::Set: return 3;
    }
    return 4;
}

int compare_nodes(bool ordered, const ObjectNode* a, const ObjectNode* b) {
    if (a == b) return 0;
    int ra = kind_rank(a->kind()), rb = kind_rank(b->kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a->kind()) {
        case NodeKind::Vertex: {
            int va = a->vertex(), vb = b->vertex();
            return va == vb ? 0 : (va < vb ? -1 : 1);
        }
        case NodeKind::Coset: {
            if (ordered) return LabelingCoset::compare(a->coset(), b->coset());
            const std::string& ka = a->coset().canonical_key();
            const std::string& kb = b->coset().canonical_key();
            return ka == kb ? 0 : (ka < kb ? -1 : 1);
        }
        case NodeKind::Tuple:
        case NodeKind::Set: {
            const auto& ca = a->children();
            const auto& cb = b->children();
            if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
            // Tuples: first differing entry. Sets: children are sorted
            // ascending, so the first difference is the minimum of the
            // symmetric difference on both sides.
            for (std::size_t i = 0; i < ca.size(); ++i) {
                int c = compare_nodes(ordered, ca[i], cb[i]);
                if (c != 0) return c;
            }
            return 0;
        }
    }
    throw InternalError("compare_nodes: bad kind");
}

}  // namespace

struct ObjectBuilder::Arena {
    GroundSetPtr ground;
    std::deque<ObjectNode> nodes;
    std::unordered_map<int, const ObjectNode*> vertex_table;
    std::unordered_map<std::string, const ObjectNode*> coset_table;
    std::map<std::pair<int, std::vector<const ObjectNode*>>, const ObjectNode*> composite_table;
};

ObjectBuilder::ObjectBuilder(GroundSetPtr ground) : arena_(std::make_shared<Arena>()) {
    arena_->ground = std::move(ground);
}
ObjectBuilder::~ObjectBuilder() = default;
ObjectBuilder::ObjectBuilder(ObjectBuilder&&) noexcept = default;
ObjectBuilder& ObjectBuilder::operator=(ObjectBuilder&&) noexcept = default;

const GroundSetPtr& ObjectBuilder::ground() const { return arena_->ground; }

const ObjectNode* ObjectBuilder::vertex(int pos) {
    if (pos < 0 || pos >= arena_->ground->size()) throw Error("vertex atom outside the ground set");
    auto it = arena_->vertex_table.find(pos);
    if (it != arena_->vertex_table.end()) return it->second;
    ObjectNode n;
    n.kind_ = NodeKind::Vertex;
    n.vertex_ = pos;
    arena_->nodes.push_back(std::move(n));
    const ObjectNode* p = &arena_->nodes.back();
    arena_->vertex_table.emplace(pos, p);
    return p;
}

const ObjectNode* ObjectBuilder::coset(LabelingCoset c) {
    if (!same_ground(c.dom(), arena_->ground)) throw Error("coset atom over a different ground set");
    const std::string& key = c.canonical_key();
    auto it = arena_->coset_table.find(key);
    if (it != arena_->coset_table.end()) return it->second;
    ObjectNode n;
    n.kind_ = NodeKind::Coset;
    n.coset_ = std::move(c);
    arena_->nodes.push_back(std::move(n));
    const ObjectNode* p = &arena_->nodes.back();
    arena_->coset_table.emplace(key, p);
    return p;
}

const ObjectNode* ObjectBuilder::tuple(std::vector<const ObjectNode*> children) {
    auto key = std::make_pair(kind_rank(NodeKind::Tuple), children);
    auto it = arena_->composite_table.find(key);
    if (it != arena_->composite_table.end()) return it->second;
    ObjectNode n;
    n.kind_ = NodeKind::Tuple;
    n.children_ = std::move(children);
    arena_->nodes.push_back(std::move(n));
    const ObjectNode* p = &arena_->nodes.back();
    arena_->composite_table.emplace(std::move(key), p);
    return p;
}

const ObjectNode* ObjectBuilder::set(std::vector<const ObjectNode*> children) {
    const bool ordered = arena_->ground->is_ordered();
    std::sort(children.begin(), children.end(), [&](const ObjectNode* a, const ObjectNode* b) {
        return compare_nodes(ordered, a, b) < 0;
    });
    children.erase(std::unique(children.begin(), children.end()), children.end());
    auto key = std::make_pair(kind_rank(NodeKind::Set), children);
    auto it = arena_->composite_table.find(key);
    if (it != arena_->composite_table.end()) return it->second;
    ObjectNode n;
    n.kind_ = NodeKind::Set;
    n.children_ = std::move(children);
    arena_->nodes.push_back(std::move(n));
    const ObjectNode* p = &arena_->nodes.back();
    arena_->composite_table.emplace(std::move(key), p);
    return p;
}

ObjectDag ObjectBuilder::finish(const ObjectNode* root) {
    ObjectDag d;
    d.ground_ = arena_->ground;
    d.arena_ = arena_;
    d.root_ = root;
    return d;
}

ObjectDag subobject(const ObjectDag& dag, const ObjectNode* node) {
    ObjectDag d = dag;
    d.root_ = node;
    return d;
}

std::vector<const ObjectNode*> ObjectDag::tclosure() const {
    std::vector<const ObjectNode*> out;
    std::unordered_set<const ObjectNode*> seen;
    std::vector<const ObjectNode*> stack{root_};
    while (!stack.empty()) {
        const ObjectNode* n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) continue;
        out.push_back(n);
        for (const ObjectNode* c : n->children()) stack.push_back(c);
    }
    return out;
}

int object_compare(const GroundSetPtr& ground, const ObjectNode* a, const ObjectNode* b) {
    return compare_nodes(ground->is_ordered(), a, b);
}

int ordered_compare(const ObjectDag& a, const ObjectDag& b) {
    if (!a.ground()->is_ordered() || !same_ground(a.ground(), b.ground()))
        throw Error("ordered_compare: objects must share one ordered ground set");
    return compare_nodes(true, a.root(), b.root());
}

bool object_equal(const ObjectDag& a, const ObjectDag& b) {
    if (!same_ground(a.ground(), b.ground())) return false;
    return compare_nodes(a.ground()->is_ordered(), a.root(), b.root()) == 0;
}

ObjectDag apply_map(const ObjectDag& x, const Bijection& mu) {
    if (!same_ground(x.ground(), mu.src)) throw Error("apply_map: object/map domain mismatch");
    ObjectBuilder b(mu.dst);
    std::unordered_map<const ObjectNode*, const ObjectNode*> memo;
    auto rec = [&](auto&& self, const ObjectNode* n) -> const ObjectNode* {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        const ObjectNode* out = nullptr;
        switch (n->kind()) {
            case NodeKind::Vertex:
                out = b.vertex(mu.perm[n->vertex()]);
                break;
            case NodeKind::Coset:
                out = b.coset(n->coset().apply_map(mu));
                break;
            case NodeKind::Tuple:
            case NodeKind::Set: {
                std::vector<const ObjectNode*> kids;
                kids.reserve(n->children().size());
                for (const ObjectNode* c : n->children()) kids.push_back(self(self, c));
                out = n->kind() == NodeKind::Tuple ? b.tuple(std::move(kids)) : b.set(std::move(kids));
                break;
            }
        }
        memo.emplace(n, out);
        return out;
    };
    return b.finish(rec(rec, x.root()));
}

}  // namespace canon
