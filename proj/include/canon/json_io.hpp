#pragma once

#include <string>

#include "canon/canon_object.hpp"

namespace canon {

struct ParsedHypergraph {
    GroundSetPtr vertices;
    std::vector<IndexSet> edges;
    std::vector<std::vector<int>> colors;  // empty: single color class
};

/// {"vertices":[names], "edges":[[names]], "colors":[[names]] optional}.
/// graph_mode additionally requires every edge to have exactly two vertices.
ParsedHypergraph parse_hypergraph(const std::string& text, bool graph_mode);

/// {"positions":[names], "alphabet":[symbols], "words":[[symbol,...],...]}.
Code parse_code(const std::string& text);

/// {"domain":[names], "generators":[{name:name,...},...]}.
PermGroup parse_group(const std::string& text);

/// {"ground":[names], "object": {"vertex":name} | {"coset":{...}} |
/// {"set":[...]} | {"tuple":[...]}}.
ObjectDag parse_object(const std::string& text);

/// The edge-set object of a hypergraph (paired with the color partition as an
/// ordered tuple when colors are present).
ObjectDag hypergraph_object(const ParsedHypergraph& h);

}  // namespace canon
