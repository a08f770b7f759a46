#include "cpabe/sharing.h"

#include <functional>

namespace cpabe {

LeafShareMap share_secret(const AccessTree& tree, const Fr& s, const GroupContext& ctx,
                          RandomSource& rng) {
    tree.validate();
    LeafShareMap shares;
    std::function<void(NodeId, const Fr&)> assign = [&](NodeId id, const Fr& secret) {
        const AccessNode& n = tree.node(id);
        if (n.kind == AccessNode::Kind::kLeaf) {
            shares.emplace(id, secret);
            return;
        }
        std::vector<Fr> coeffs;
        coeffs.reserve(n.threshold);
        coeffs.push_back(secret);
        for (std::uint32_t i = 1; i < n.threshold; ++i) coeffs.push_back(random_scalar(ctx, rng));
        for (size_t pos = 0; pos < n.children.size(); ++pos) {
            Fr x = Fr::from_u64(pos + 1);
            Fr value = coeffs.back();  // Horner
            for (size_t k = coeffs.size() - 1; k-- > 0;) value = value * x + coeffs[k];
            assign(n.children[pos], value);
        }
    };
    assign(tree.root, s);
    return shares;
}

Fr lagrange_coeff(const Fr& i, const std::vector<Fr>& point_set) {
    bool found = false;
    for (size_t a = 0; a < point_set.size(); ++a) {
        if (point_set[a].is_zero()) throw DegenerateSet("zero evaluation point");
        for (size_t b = a + 1; b < point_set.size(); ++b) {
            if (point_set[a] == point_set[b]) throw DegenerateSet("duplicate evaluation point");
        }
        if (point_set[a] == i) found = true;
    }
    if (!found) throw PointNotInSet("interpolation point not in the set");
    Fr num = Fr::one();
    Fr den = Fr::one();
    for (const Fr& j : point_set) {
        if (j == i) continue;
        num *= -j;
        den *= i - j;
    }
    return num * den.inverse();
}

SatisfyingSelection min_satisfying_selection(const AccessTree& tree, const AttributeSet& attrs) {
    tree.validate();
    std::vector<signed char> sat(tree.nodes.size(), -1);
    std::function<bool(NodeId)> eval = [&](NodeId id) {
        if (sat[id] >= 0) return sat[id] == 1;
        const AccessNode& n = tree.node(id);
        bool ok;
        if (n.kind == AccessNode::Kind::kLeaf) {
            ok = attrs.count(n.attribute) > 0;
        } else {
            std::uint32_t hits = 0;
            for (NodeId c : n.children) {
                if (eval(c)) ++hits;
            }
            ok = hits >= n.threshold;
        }
        sat[id] = ok ? 1 : 0;
        return ok;
    };
    if (!eval(tree.root)) throw NotSatisfied("attribute set does not satisfy the tree");

    SatisfyingSelection sel;
    std::function<void(NodeId)> choose = [&](NodeId id) {
        const AccessNode& n = tree.node(id);
        if (n.kind == AccessNode::Kind::kLeaf) {
            sel.leaves.push_back(id);
            return;
        }
        std::vector<NodeId> chosen;
        for (NodeId c : n.children) {
            if (chosen.size() == n.threshold) break;
            if (sat[c] == 1) chosen.push_back(c);
        }
        sel.gate_children.emplace(id, chosen);
        for (NodeId c : chosen) choose(c);
    };
    choose(tree.root);
    return sel;
}

}  // namespace cpabe
