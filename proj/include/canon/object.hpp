#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "canon/labeling_coset.hpp"

namespace canon {

enum class NodeKind : uint8_t { Vertex = 1, Coset = 2, Tuple = 3, Set = 4 };

/// One node of a hereditarily finite set: a vertex atom, a labeling-coset
/// atom, a tuple, or a set. Nodes are interned per arena, so pointer equality
/// is structural equality within one ObjectDag.
class ObjectNode {
public:
    NodeKind kind() const { return kind_; }
    int vertex() const { return vertex_; }
    const LabelingCoset& coset() const { return *coset_; }
    const std::vector<const ObjectNode*>& children() const { return children_; }

private:
    friend class ObjectBuilder;
    NodeKind kind_ = NodeKind::Vertex;
    int vertex_ = -1;
    std::optional<LabelingCoset> coset_;
    std::vector<const ObjectNode*> children_;  // sets: sorted ascending, distinct
};

class ObjectDag;

/// Interning builder. Set children are normalized: sorted ascending under the
/// node order and deduplicated. Over an ordered ground set the node order is
/// the object order `prec`; over an unordered one it is a deterministic
/// structural order that is not isomorphism-invariant.
class ObjectBuilder {
public:
    explicit ObjectBuilder(GroundSetPtr ground);
    ~ObjectBuilder();
    ObjectBuilder(ObjectBuilder&&) noexcept;
    ObjectBuilder& operator=(ObjectBuilder&&) noexcept;

    const GroundSetPtr& ground() const;

    const ObjectNode* vertex(int pos);
    const ObjectNode* coset(LabelingCoset c);
    const ObjectNode* tuple(std::vector<const ObjectNode*> children);
    const ObjectNode* set(std::vector<const ObjectNode*> children);

    ObjectDag finish(const ObjectNode* root);

private:
    struct Arena;
    std::shared_ptr<Arena> arena_;
};

/// An object (V, X) with shared subobjects.
class ObjectDag {
public:
    ObjectDag() = default;

    const GroundSetPtr& ground() const { return ground_; }
    const ObjectNode* root() const { return root_; }
    /// Number of interned nodes reachable from the root (= |TClosure|).
    std::vector<const ObjectNode*> tclosure() const;

private:
    friend class ObjectBuilder;
    friend ObjectDag subobject(const ObjectDag&, const ObjectNode*);
    GroundSetPtr ground_;
    std::shared_ptr<const void> arena_;  // keeps nodes alive
    const ObjectNode* root_ = nullptr;
};

/// Compare nodes of two objects over the same ground set. Over an ordered
/// ground set this is exactly the object order `prec` (integers, then cosets,
/// then tuples, then sets).
int object_compare(const GroundSetPtr& ground, const ObjectNode* a, const ObjectNode* b);

/// `prec` on ordered objects; throws unless both share one ordered ground set.
int ordered_compare(const ObjectDag& a, const ObjectDag& b);
bool object_equal(const ObjectDag& a, const ObjectDag& b);

/// Image of an object under a bijection of ground sets.
ObjectDag apply_map(const ObjectDag& x, const Bijection& mu);

/// View of a shared subnode as an object in its own right.
ObjectDag subobject(const ObjectDag& dag, const ObjectNode* node);

}  // namespace canon
