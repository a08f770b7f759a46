#pragma once

// Random access-tree corpus shared by the property tests and the acceptance
// suite. Trees stay small (depth <= 4, attributes drawn from a six-element
// universe) so every attribute subset can be enumerated.

#include <random>
#include <string>
#include <vector>

#include "cpabe/policy.h"

namespace testsupport {

inline const std::vector<std::string>& corpus_universe() {
    static const std::vector<std::string> u = {"a", "b", "c", "d", "e", "f"};
    return u;
}

inline cpabe::NodeId gen_subtree(cpabe::AccessTree& tree, std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<size_t> attr_pick(0, corpus_universe().size() - 1);
    bool leaf = depth <= 0 || pct(rng) < 35;
    if (leaf) {
        cpabe::AccessNode n;
        n.kind = cpabe::AccessNode::Kind::kLeaf;
        n.threshold = 1;
        n.attribute = corpus_universe()[attr_pick(rng)];
        tree.nodes.push_back(std::move(n));
        return static_cast<cpabe::NodeId>(tree.nodes.size() - 1);
    }
    std::uniform_int_distribution<int> width_pick(2, 4);
    int width = width_pick(rng);
    std::vector<cpabe::NodeId> children;
    children.reserve(width);
    for (int i = 0; i < width; ++i) children.push_back(gen_subtree(tree, rng, depth - 1));
    std::uniform_int_distribution<int> kind(0, 2);
    std::uint32_t k;
    switch (kind(rng)) {
        case 0: k = 1; break;                                   // OR
        case 1: k = static_cast<std::uint32_t>(width); break;   // AND
        default: {
            std::uniform_int_distribution<std::uint32_t> kp(1, static_cast<std::uint32_t>(width));
            k = kp(rng);
        }
    }
    cpabe::AccessNode n;
    n.kind = cpabe::AccessNode::Kind::kGate;
    n.threshold = k;
    n.children = std::move(children);
    tree.nodes.push_back(std::move(n));
    return static_cast<cpabe::NodeId>(tree.nodes.size() - 1);
}

inline cpabe::AccessTree gen_tree(std::mt19937_64& rng, int max_depth = 3) {
    cpabe::AccessTree tree;
    tree.root = gen_subtree(tree, rng, max_depth);
    tree.validate();
    return tree;
}

// All subsets of the corpus universe, the empty set included.
inline std::vector<cpabe::AttributeSet> all_universe_subsets() {
    const auto& u = corpus_universe();
    std::vector<cpabe::AttributeSet> subsets;
    subsets.reserve(1u << u.size());
    for (unsigned mask = 0; mask < (1u << u.size()); ++mask) {
        cpabe::AttributeSet s;
        for (size_t i = 0; i < u.size(); ++i) {
            if (mask >> i & 1) s.insert(u[i]);
        }
        subsets.push_back(std::move(s));
    }
    return subsets;
}

}  // namespace testsupport
