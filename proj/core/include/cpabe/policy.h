#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cpabe/errors.h"

namespace cpabe {

using NodeId = std::uint32_t;
using AttributeSet = std::set<std::string>;

// Threshold-gate policy tree. A gate with threshold k over n children is
// satisfied when at least k children are; AND is k = n, OR is k = 1.
struct AccessNode {
    enum class Kind { kLeaf, kGate };
    Kind kind = Kind::kLeaf;
    std::uint32_t threshold = 1;   // k_x, always 1 for leaves
    std::vector<NodeId> children;  // gates; interpolation index of a child is position + 1
    std::string attribute;         // leaves
};

struct AccessTree {
    std::vector<AccessNode> nodes;
    NodeId root = 0;

    const AccessNode& node(NodeId id) const { return nodes.at(id); }
    bool empty() const { return nodes.empty(); }
    std::vector<NodeId> leaf_ids() const;  // depth-first, the canonical component order
    void validate() const;                 // throws Error when invariants are broken
};

// Grammar:
//   policy  := or_expr
//   or_expr := and_expr ('or' and_expr)*
//   and_expr:= atom ('and' atom)*
//   atom    := ATTR | INT 'of' '(' policy (',' policy)+ ')' | '(' policy ')'
// Keywords are case-insensitive; attributes are case-sensitive tokens
// [A-Za-z_][A-Za-z0-9_]*. 'and' binds tighter than 'or'; children are
// indexed left to right in parse order.
AccessTree parse_policy(std::string_view text);  // SyntaxError, ThresholdOutOfRange

// Canonical text form; parsing it back yields a structurally equal tree.
std::string print_policy(const AccessTree& tree);

// The satisfaction recursion: a leaf holds iff its attribute is present, a
// gate iff at least threshold children hold.
bool satisfies(const AccessTree& tree, const AttributeSet& attrs);

bool structurally_equal(const AccessTree& a, const AccessTree& b);

void validate_attribute_set(const AttributeSet& attrs);  // throws InvalidAttributeToken

}  // namespace cpabe
