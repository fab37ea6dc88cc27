#pragma once

#include <string>

#include "canon/object.hpp"

namespace canon {

/// Injective byte encoding of an ordered object. Grammar: header "HFS1" +
/// 4-byte big-endian n, then one node: 0x01 vertex (4-byte 1-based label),
/// 0x02 coset atom (4-byte generator count, each generator and the lex-min
/// representative as n 4-byte 1-based images, generators canonical), 0x03
/// tuple (4-byte length, children in order), 0x04 set (4-byte cardinality,
/// children ascending under `prec`). Equal ordered objects encode to equal
/// bytes regardless of DAG sharing or coset generating sets.
std::string encode(const ObjectDag& x);

/// Inverse of encode; rejects malformed bytes with a ParseError carrying the
/// offending byte offset.
ObjectDag decode(const std::string& bytes);

std::string to_hex(const std::string& bytes);

}  // namespace canon
