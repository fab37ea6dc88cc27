#include "canon/canon_object.hpp"

#include <algorithm>
#include <unordered_map>

namespace canon {

namespace {

struct ObjectCanonizer {
    const ObjectDag& dag;
    const LabelingCoset& ambient;
    CanonContext ctx;
    std::unordered_map<const ObjectNode*, LabelingCoset> memo;
    bool use_memo = true;

    LabelingCoset run(const ObjectNode* node) {
        if (use_memo) {
            auto it = memo.find(node);
            if (it != memo.end()) return it->second;
        }
        LabelingCoset out = compute(node);
        if (use_memo) memo.emplace(node, out);
        return out;
    }

    LabelingCoset compute(const ObjectNode* node) {
        switch (node->kind()) {
            case NodeKind::Vertex:
                return cl_point(node->vertex(), ambient, ctx).coset;
            case NodeKind::Coset:
                return cl_int(node->coset(), ambient, ctx).coset;
            case NodeKind::Tuple: {
                std::vector<LabelingCoset> child;
                child.reserve(node->children().size());
                for (const ObjectNode* k : node->children()) child.push_back(run(k));
                LabelingCoset acc = ambient;
                for (const LabelingCoset& lc : child) acc = cl_int(lc, acc, ctx).coset;
                return acc;
            }
            case NodeKind::Set: {
                const auto& kids = node->children();
                std::vector<LabelingCoset> child;
                child.reserve(kids.size());
                std::vector<ObjectDag> images(kids.size());
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    child.push_back(run(kids[i]));
                    images[i] = apply_map(subobject(dag, kids[i]),
                                          detail::to_ordered(dag.ground(), child[i].rep()));
                }
                std::vector<int> order(kids.size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
                std::sort(order.begin(), order.end(), [&](int x, int y) {
                    return ordered_compare(images[static_cast<std::size_t>(x)],
                                           images[static_cast<std::size_t>(y)]) < 0;
                });
                LabelingCoset acc = ambient;
                std::size_t pos = 0;
                while (pos < order.size()) {
                    std::size_t end = pos + 1;
                    while (end < order.size() &&
                           ordered_compare(images[static_cast<std::size_t>(order[pos])],
                                           images[static_cast<std::size_t>(order[end])]) == 0)
                        ++end;
                    std::vector<LabelingCoset> part;
                    for (std::size_t i = pos; i < end; ++i)
                        part.push_back(child[static_cast<std::size_t>(order[i])]);
                    acc = cl_set(part, acc, ctx).coset;
                    pos = end;
                }
                return acc;
            }
        }
        throw InternalError("cl_object: bad node kind");
    }
};

}  // namespace

CanonResult cl_object(const ObjectDag& x, const LabelingCoset& c, const CanonContext& ctx) {
    if (x.ground()->is_ordered())
        throw Error("cl_object: canonical labelings are defined for unordered objects only");
    if (!same_ground(x.ground(), c.dom())) throw Error("cl_object: domain mismatch");
    ObjectCanonizer oc{x, c, ctx, {}, true};
    return CanonResult{oc.run(x.root())};
}

CanonResult cl_object_nomemo(const ObjectDag& x, const LabelingCoset& c, const CanonContext& ctx) {
    if (x.ground()->is_ordered())
        throw Error("cl_object: canonical labelings are defined for unordered objects only");
    ObjectCanonizer oc{x, c, ctx, {}, false};
    return CanonResult{oc.run(x.root())};
}

ObjectDag canonical_form(const ObjectDag& x, const CanonContext& ctx) {
    CanonResult r = cl_object(x, LabelingCoset::full(x.ground()), ctx);
    return apply_map(x, detail::to_ordered(x.ground(), r.coset.rep()));
}

CanonResult cl_colored_object(const ObjectDag& x, const std::vector<std::vector<int>>& color_classes,
                              const CanonContext& ctx) {
    return cl_object(x, color_coset(x.ground(), color_classes), ctx);
}

ObjectDag code_object(const Code& code) {
    const int n = code.positions->size();
    ObjectBuilder b(code.positions);
    // Alphabet symbols become the towers {}, {{}}, {{{}}},... in declared
    // order; they are fixed by every map, so words stay position-keyed.
    std::vector<const ObjectNode*> towers;
    const ObjectNode* cur = b.set({});
    towers.push_back(cur);
    for (std::size_t i = 1; i < code.alphabet.size(); ++i) {
        cur = b.set({cur});
        towers.push_back(cur);
    }
    std::vector<const ObjectNode*> words;
    words.reserve(code.words.size());
    for (const auto& w : code.words) {
        if (static_cast<int>(w.size()) != n) throw Error("cl_code: word is not total on positions");
        std::vector<const ObjectNode*> cells;
        cells.reserve(w.size());
        for (int p = 0; p < n; ++p) {
            int sym = w[static_cast<std::size_t>(p)];
            if (sym < 0 || sym >= static_cast<int>(code.alphabet.size()))
                throw Error("cl_code: symbol outside the alphabet");
            cells.push_back(b.tuple({b.vertex(p), towers[static_cast<std::size_t>(sym)]}));
        }
        words.push_back(b.set(std::move(cells)));
    }
    return b.finish(b.set(std::move(words)));
}

CanonResult cl_code(const Code& code, const CanonContext& ctx) {
    ObjectDag obj = code_object(code);
    return cl_object(obj, LabelingCoset::full(code.positions), ctx);
}

ObjectDag permgroup_object(const PermGroup& g, std::size_t enumeration_cap) {
    std::vector<Perm> elems = g.elements(enumeration_cap);
    ObjectBuilder b(g.dom());
    std::vector<const ObjectNode*> maps;
    maps.reserve(elems.size());
    for (const Perm& d : elems) {
        std::vector<const ObjectNode*> pairs;
        pairs.reserve(static_cast<std::size_t>(d.size()));
        for (int v = 0; v < d.size(); ++v) pairs.push_back(b.tuple({b.vertex(v), b.vertex(d[v])}));
        maps.push_back(b.set(std::move(pairs)));
    }
    return b.finish(b.set(std::move(maps)));
}

CanonResult cl_permgroup(const PermGroup& g, const CanonContext& ctx, std::size_t enumeration_cap) {
    ObjectDag obj = permgroup_object(g, enumeration_cap);
    return cl_object(obj, LabelingCoset::full(g.dom()), ctx);
}

}  // namespace canon
