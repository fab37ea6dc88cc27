#include "canon/encoding.hpp"

#include <unordered_map>

namespace canon {

namespace {

void put_u32(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

void put_perm_1based(std::string& out, const Perm& p) {
    for (int i = 0; i < p.size(); ++i) put_u32(out, static_cast<uint32_t>(p[i]) + 1);
}

void encode_node(std::string& out, const ObjectNode* n,
                 std::unordered_map<const ObjectNode*, int>& depth_guard) {
    switch (n->kind()) {
        case NodeKind::Vertex:
            out.push_back(0x01);
            put_u32(out, static_cast<uint32_t>(n->vertex()) + 1);
            break;
        case NodeKind::Coset: {
            out.push_back(0x02);
            auto [gens, rep] = n->coset().canonical_generators();
            put_u32(out, static_cast<uint32_t>(gens.size()));
            for (const Perm& g : gens) put_perm_1based(out, g);
            put_perm_1based(out, rep);
            break;
        }
        case NodeKind::Tuple:
        case NodeKind::Set:
            out.push_back(n->kind() == NodeKind::Tuple ? 0x03 : 0x04);
            put_u32(out, static_cast<uint32_t>(n->children().size()));
            for (const ObjectNode* c : n->children()) encode_node(out, c, depth_guard);
            break;
    }
}

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(bytes_[pos_++]);
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<uint8_t>(bytes_[pos_++]);
        return v;
    }
    Perm perm_1based(int n) {
        std::vector<int32_t> img(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            uint32_t v = u32();
            if (v < 1 || v > static_cast<uint32_t>(n))
                throw ParseError("image out of range {1..n}", pos_);
            img[static_cast<std::size_t>(i)] = static_cast<int32_t>(v - 1);
        }
        Perm p(std::move(img));
        if (!p.is_bijection()) throw ParseError("image array is not a bijection", pos_);
        return p;
    }
    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ == bytes_.size(); }
    void expect_literal(const char* lit, std::size_t len) {
        need(len);
        for (std::size_t i = 0; i < len; ++i)
            if (bytes_[pos_ + i] != lit[i]) throw ParseError("bad magic; expected HFS1", pos_ + i);
        pos_ += len;
    }

private:
    void need(std::size_t k) {
        if (pos_ + k > bytes_.size()) throw ParseError("unexpected end of input", bytes_.size());
    }
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

const ObjectNode* decode_node(Reader& r, ObjectBuilder& b, int n, int depth) {
    if (depth > 100000) throw ParseError("nesting too deep", r.pos());
    uint8_t tag = r.u8();
    switch (tag) {
        case 0x01: {
            uint32_t label = r.u32();
            if (label < 1 || label > static_cast<uint32_t>(n))
                throw ParseError("vertex label out of range", r.pos());
            return b.vertex(static_cast<int>(label) - 1);
        }
        case 0x02: {
            uint32_t count = r.u32();
            if (count > 1u << 24) throw ParseError("unreasonable generator count", r.pos());
            std::vector<Perm> gens;
            gens.reserve(count);
            for (uint32_t i = 0; i < count; ++i) gens.push_back(r.perm_1based(n));
            Perm rep = r.perm_1based(n);
            return b.coset(
                LabelingCoset::make(PermGroup::from_generators(b.ground(), gens), std::move(rep)));
        }
        case 0x03:
        case 0x04: {
            uint32_t count = r.u32();
            if (count > 1u << 28) throw ParseError("unreasonable child count", r.pos());
            std::vector<const ObjectNode*> kids;
            kids.reserve(count);
            for (uint32_t i = 0; i < count; ++i)
                kids.push_back(decode_node(r, b, n, depth + 1));
            if (tag == 0x04) {
                for (std::size_t i = 1; i < kids.size(); ++i)
                    if (object_compare(b.ground(), kids[i - 1], kids[i]) >= 0)
                        throw ParseError("set children not strictly ascending", r.pos());
                return b.set(std::move(kids));
            }
            return b.tuple(std::move(kids));
        }
        default:
            throw ParseError("unknown node tag", r.pos());
    }
}

}  // namespace

std::string encode(const ObjectDag& x) {
    if (!x.ground()->is_ordered())
        throw Error("encode: only ordered objects are encodable; canonize first");
    std::string out;
    out += "HFS1";
    put_u32(out, static_cast<uint32_t>(x.ground()->size()));
    std::unordered_map<const ObjectNode*, int> guard;
    encode_node(out, x.root(), guard);
    return out;
}

ObjectDag decode(const std::string& bytes) {
    Reader r(bytes);
    r.expect_literal("HFS1", 4);
    uint32_t n = r.u32();
    if (n > 1u << 20) throw ParseError("unreasonable ground set size", r.pos());
    ObjectBuilder b(GroundSet::ordered(static_cast<int>(n)));
    const ObjectNode* root = decode_node(r, b, static_cast<int>(n), 0);
    if (!r.at_end()) throw ParseError("trailing bytes after object", r.pos());
    return b.finish(root);
}

std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

}  // namespace canon
