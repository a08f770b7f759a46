#pragma once

#include <map>
#include <vector>

#include "cpabe/group.h"
#include "cpabe/policy.h"

namespace cpabe {

using LeafShareMap = std::map<NodeId, Fr>;

// Splits s over the tree: every gate x carries a fresh random polynomial q_x
// of degree k_x - 1 with q_x(0) equal to the share it received from its
// parent (q_root(0) = s); child i receives q_x(i). Leaves collect q_y(0).
LeafShareMap share_secret(const AccessTree& tree, const Fr& s, const GroupContext& ctx,
                          RandomSource& rng = system_rng());

// Lagrange basis coefficient at zero: prod_{j in S, j != i} (0 - j) / (i - j).
// Throws PointNotInSet when i is absent and DegenerateSet on duplicate or
// zero evaluation points.
Fr lagrange_coeff(const Fr& i, const std::vector<Fr>& point_set);

// The frontier a decryptor combines: for every gate used, exactly threshold
// satisfied children (lowest indices first), down to the contributing leaves.
struct SatisfyingSelection {
    std::map<NodeId, std::vector<NodeId>> gate_children;
    std::vector<NodeId> leaves;
};

SatisfyingSelection min_satisfying_selection(const AccessTree& tree,
                                             const AttributeSet& attrs);  // NotSatisfied

}  // namespace cpabe
