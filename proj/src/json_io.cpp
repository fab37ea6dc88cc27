#include "canon/json_io.hpp"

#include <json.hpp>

namespace canon {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

GroundSetPtr ground_from(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw ParseError(std::string("missing \"") + field + "\" array");
    std::vector<std::string> names;
    for (const auto& v : j[field]) {
        if (!v.is_string()) throw ParseError("vertex names must be strings");
        names.push_back(v.get<std::string>());
    }
    return GroundSet::make(std::move(names));
}

int position_of(const GroundSetPtr& g, const json& v) {
    if (!v.is_string()) throw ParseError("vertex names must be strings");
    int p = g->position(v.get<std::string>());
    if (p < 0) throw ParseError("unknown vertex \"" + v.get<std::string>() + "\"");
    return p;
}

Perm perm_from_map(const GroundSetPtr& g, const json& j) {
    if (!j.is_object()) throw ParseError("permutations are {name:name} objects");
    const int n = g->size();
    std::vector<int32_t> img(static_cast<std::size_t>(n), -1);
    if (static_cast<int>(j.size()) != n) throw ParseError("permutation must map every vertex");
    for (auto it = j.begin(); it != j.end(); ++it) {
        int from = g->position(it.key());
        if (from < 0) throw ParseError("unknown vertex \"" + it.key() + "\"");
        img[static_cast<std::size_t>(from)] = position_of(g, it.value());
    }
    Perm p{std::move(img)};
    if (!p.is_bijection()) throw ParseError("permutation is not a bijection");
    return p;
}

}  // namespace

ParsedHypergraph parse_hypergraph(const std::string& text, bool graph_mode) {
    json j = parse_text(text);
    ParsedHypergraph out;
    out.vertices = ground_from(j, "vertices");
    if (!j.contains("edges") || !j["edges"].is_array()) throw ParseError("missing \"edges\" array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array()) throw ParseError("each edge is an array of vertex names");
        IndexSet s(out.vertices->size());
        for (const auto& v : e) {
            int p = position_of(out.vertices, v);
            if (s.contains(p)) throw ParseError("repeated vertex inside an edge");
            s.insert(p);
        }
        if (graph_mode && s.count() != 2) throw ParseError("graph edges must have exactly two vertices");
        out.edges.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < out.edges.size(); ++i)
        for (std::size_t k = i + 1; k < out.edges.size(); ++k)
            if (out.edges[i] == out.edges[k]) throw ParseError("duplicate edges");
    if (j.contains("colors")) {
        if (!j["colors"].is_array()) throw ParseError("\"colors\" must be an array of classes");
        for (const auto& cls : j["colors"]) {
            if (!cls.is_array()) throw ParseError("each color class is an array of vertex names");
            std::vector<int> c;
            for (const auto& v : cls) c.push_back(position_of(out.vertices, v));
            out.colors.push_back(std::move(c));
        }
    }
    return out;
}

Code parse_code(const std::string& text) {
    json j = parse_text(text);
    Code code;
    code.positions = ground_from(j, "positions");
    if (!j.contains("alphabet") || !j["alphabet"].is_array())
        throw ParseError("missing \"alphabet\" array");
    for (const auto& s : j["alphabet"]) {
        if (!s.is_string()) throw ParseError("alphabet symbols must be strings");
        code.alphabet.push_back(s.get<std::string>());
    }
    for (std::size_t i = 0; i < code.alphabet.size(); ++i)
        for (std::size_t k = i + 1; k < code.alphabet.size(); ++k)
            if (code.alphabet[i] == code.alphabet[k]) throw ParseError("duplicate alphabet symbol");
    if (!j.contains("words") || !j["words"].is_array()) throw ParseError("missing \"words\" array");
    for (const auto& w : j["words"]) {
        if (!w.is_array() || static_cast<int>(w.size()) != code.positions->size())
            throw ParseError("each word lists one symbol per position");
        std::vector<int> word;
        for (const auto& s : w) {
            if (!s.is_string()) throw ParseError("word entries must be alphabet symbols");
            auto it = std::find(code.alphabet.begin(), code.alphabet.end(), s.get<std::string>());
            if (it == code.alphabet.end())
                throw ParseError("word symbol \"" + s.get<std::string>() + "\" not in the alphabet");
            word.push_back(static_cast<int>(it - code.alphabet.begin()));
        }
        code.words.push_back(std::move(word));
    }
    return code;
}

PermGroup parse_group(const std::string& text) {
    json j = parse_text(text);
    GroundSetPtr dom = ground_from(j, "domain");
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ParseError("missing \"generators\" array");
    std::vector<Perm> gens;
    for (const auto& g : j["generators"]) gens.push_back(perm_from_map(dom, g));
    return PermGroup::from_generators(dom, gens);
}

namespace {

const ObjectNode* object_from(ObjectBuilder& b, const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ParseError("object nodes are single-key objects: vertex/coset/set/tuple");
    if (j.contains("vertex")) return b.vertex(position_of(b.ground(), j["vertex"]));
    if (j.contains("coset")) {
        const json& c = j["coset"];
        if (!c.is_object() || !c.contains("generators") || !c.contains("rep"))
            throw ParseError("coset atoms need \"generators\" and \"rep\"");
        std::vector<Perm> gens;
        for (const auto& g : c["generators"]) gens.push_back(perm_from_map(b.ground(), g));
        const json& r = c["rep"];
        if (!r.is_object() || static_cast<int>(r.size()) != b.ground()->size())
            throw ParseError("coset rep must label every vertex");
        std::vector<int32_t> img(static_cast<std::size_t>(b.ground()->size()), -1);
        for (auto it = r.begin(); it != r.end(); ++it) {
            int from = b.ground()->position(it.key());
            if (from < 0) throw ParseError("unknown vertex \"" + it.key() + "\"");
            if (!it.value().is_number_integer()) throw ParseError("rep labels are integers 1..n");
            long long lab = it.value().get<long long>();
            if (lab < 1 || lab > b.ground()->size()) throw ParseError("rep label out of range 1..n");
            img[static_cast<std::size_t>(from)] = static_cast<int32_t>(lab - 1);
        }
        Perm rep{std::move(img)};
        if (!rep.is_bijection()) throw ParseError("coset rep is not a bijection onto {1..n}");
        return b.coset(LabelingCoset::make(PermGroup::from_generators(b.ground(), gens), rep));
    }
    if (j.contains("set") || j.contains("tuple")) {
        bool is_set = j.contains("set");
        const json& arr = is_set ? j["set"] : j["tuple"];
        if (!arr.is_array()) throw ParseError("set/tuple children must be an array");
        std::vector<const ObjectNode*> kids;
        for (const auto& child : arr) kids.push_back(object_from(b, child));
        return is_set ? b.set(std::move(kids)) : b.tuple(std::move(kids));
    }
    throw ParseError("unknown object node kind");
}

}  // namespace

ObjectDag parse_object(const std::string& text) {
    json j = parse_text(text);
    GroundSetPtr ground = ground_from(j, "ground");
    if (!j.contains("object")) throw ParseError("missing \"object\"");
    ObjectBuilder b(ground);
    return b.finish(object_from(b, j["object"]));
}

ObjectDag hypergraph_object(const ParsedHypergraph& h) {
    ObjectBuilder b(h.vertices);
    std::vector<const ObjectNode*> edges;
    edges.reserve(h.edges.size());
    for (const IndexSet& e : h.edges) {
        std::vector<const ObjectNode*> vs;
        for (int p : e.members()) vs.push_back(b.vertex(p));
        edges.push_back(b.set(std::move(vs)));
    }
    const ObjectNode* edge_set = b.set(std::move(edges));
    if (h.colors.empty()) return b.finish(edge_set);
    std::vector<const ObjectNode*> classes;
    for (const auto& cls : h.colors) {
        std::vector<const ObjectNode*> vs;
        for (int p : cls) vs.push_back(b.vertex(p));
        classes.push_back(b.set(std::move(vs)));
    }
    return b.finish(b.tuple({edge_set, b.tuple(std::move(classes))}));
}

}  // namespace canon
