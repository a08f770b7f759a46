#include "cpabe/scheme.h"

namespace cpabe {

std::pair<PublicParams, MasterKey> setup(const GroupContext& ctx, RandomSource& rng) {
    Fr alpha = random_scalar(ctx, rng);
    Fr beta = random_scalar(ctx, rng);
    while (beta.is_zero()) beta = random_scalar(ctx, rng);  // beta is inverted in keygen

    MasterKey mk{beta, ctx.g2().mul(alpha)};
    PublicParams pk{ctx, ctx.g1().mul(beta), pairing(ctx.g1(), mk.g_alpha)};
    return {std::move(pk), std::move(mk)};
}

PrivateKey keygen(const MasterKey& mk, const PublicParams& pk, const AttributeSet& attrs,
                  RandomSource& rng
#ifdef CPABE_ENABLE_TEST_HOOKS
                  ,
                  KeygenTrace* trace
#endif
) {
    if (attrs.empty()) throw EmptyAttributeSet("private keys need at least one attribute");
    validate_attribute_set(attrs);

    const GroupContext& ctx = pk.ctx;
    Fr r = random_scalar(ctx, rng);
#ifdef CPABE_ENABLE_TEST_HOOKS
    if (trace != nullptr) trace->r = r;
#endif

    PrivateKey sk;
    sk.attrs = attrs;
    sk.d = (mk.g_alpha + ctx.g2().mul(r)).mul(mk.beta.inverse());
    G1 g1_r = ctx.g1().mul(r);
    for (const auto& attr : attrs) {
        Fr rj = random_scalar(ctx, rng);
        sk.components.emplace(
            attr, AttributeKey{g1_r + hash_to_group(ctx, attr).mul(rj), ctx.g2().mul(rj)});
    }
    return sk;
}

AbeCiphertext encrypt(const PublicParams& pk, const AccessTree& tree, const Gt& m,
                      RandomSource& rng
#ifdef CPABE_ENABLE_TEST_HOOKS
                      ,
                      EncryptTrace* trace
#endif
) {
    tree.validate();
    const GroupContext& ctx = pk.ctx;
    Fr s = random_scalar(ctx, rng);
#ifdef CPABE_ENABLE_TEST_HOOKS
    if (trace != nullptr) trace->s = s;
#endif

    LeafShareMap shares = share_secret(tree, s, ctx, rng);

    AbeCiphertext ct;
    ct.tree = tree;
    ct.c_tilde = m * pk.e_gg_alpha.pow(s);
    ct.c = pk.h.mul(s);
    for (const auto& [leaf, share] : shares) {
        const std::string& attr = tree.node(leaf).attribute;
        ct.leaf_components.emplace(
            leaf, LeafCiphertext{ctx.g2().mul(share), hash_to_group(ctx, attr).mul(share)});
    }
    return ct;
}

Gt decrypt_node(const AbeCiphertext& ct, const PrivateKey& sk, NodeId node,
                const SatisfyingSelection& selection) {
    const AccessNode& n = ct.tree.node(node);
    if (n.kind == AccessNode::Kind::kLeaf) {
        auto key_it = sk.components.find(n.attribute);
        if (key_it == sk.components.end()) {
            throw AttributeMissing("key lacks attribute '" + n.attribute + "'");
        }
        auto ct_it = ct.leaf_components.find(node);
        if (ct_it == ct.leaf_components.end()) {
            throw MalformedCiphertext("missing leaf components");
        }
        std::pair<G1, G2> terms[] = {
            {key_it->second.d_attr, ct_it->second.c_share},
            {-ct_it->second.c_attr, key_it->second.d_prime},
        };
        return pairing_product(terms);
    }

    auto chosen_it = selection.gate_children.find(node);
    if (chosen_it == selection.gate_children.end() || chosen_it->second.empty()) {
        throw NotSatisfied("selection does not cover this gate");
    }
    const std::vector<NodeId>& chosen = chosen_it->second;

    // interpolation x-coordinate of a child is its 1-based position
    std::vector<Fr> points;
    points.reserve(chosen.size());
    for (NodeId child : chosen) {
        for (size_t pos = 0; pos < n.children.size(); ++pos) {
            if (n.children[pos] == child) {
                points.push_back(Fr::from_u64(pos + 1));
                break;
            }
        }
    }
    if (points.size() != chosen.size()) throw NotSatisfied("selection child not under gate");

    Gt acc = Gt::one();
    for (size_t k = 0; k < chosen.size(); ++k) {
        Gt f = decrypt_node(ct, sk, chosen[k], selection);
        acc *= f.pow(lagrange_coeff(points[k], points));
    }
    return acc;
}

Gt decrypt(const PublicParams& pk, const AbeCiphertext& ct, const PrivateKey& sk) {
    (void)pk;
    ct.tree.validate();
    auto leaves = ct.tree.leaf_ids();
    if (leaves.size() != ct.leaf_components.size()) {
        throw MalformedCiphertext("leaf component count does not match the tree");
    }
    for (NodeId leaf : leaves) {
        if (ct.leaf_components.find(leaf) == ct.leaf_components.end()) {
            throw MalformedCiphertext("leaf component missing for a tree leaf");
        }
    }
    if (!satisfies(ct.tree, sk.attrs)) {
        throw PolicyNotSatisfied("attribute set does not satisfy the ciphertext policy");
    }
    SatisfyingSelection selection = min_satisfying_selection(ct.tree, sk.attrs);
    Gt a = decrypt_node(ct, sk, ct.tree.root, selection);  // e(g1,g2)^{r s}
    return ct.c_tilde * a / pairing(ct.c, sk.d);
}

Bytes abe_ciphertext_to_bytes(const AbeCiphertext& ct) {
    ByteWriter w;
    w.var16(print_policy(ct.tree));
    auto leaves = ct.tree.leaf_ids();
    w.u32(static_cast<std::uint32_t>(2 + 2 * leaves.size()));
    auto ctilde = ct.c_tilde.to_bytes();
    w.var16(ByteView(ctilde.data(), ctilde.size()));
    auto c = ct.c.to_bytes();
    w.var16(ByteView(c.data(), c.size()));
    for (NodeId leaf : leaves) {
        const LeafCiphertext& lc = ct.leaf_components.at(leaf);
        auto share = lc.c_share.to_bytes();
        w.var16(ByteView(share.data(), share.size()));
        auto attr = lc.c_attr.to_bytes();
        w.var16(ByteView(attr.data(), attr.size()));
    }
    return w.take();
}

AbeCiphertext abe_ciphertext_from_bytes(ByteView bytes) {
    ByteReader r(bytes);
    AbeCiphertext ct;
    ct.tree = parse_policy(r.var16_string());
    auto leaves = ct.tree.leaf_ids();
    std::uint32_t count = r.u32();
    if (count != 2 + 2 * leaves.size()) {
        throw CorruptContainer("component count does not match the policy");
    }
    ct.c_tilde = Gt::from_bytes(r.var16());
    ct.c = G1::from_bytes(r.var16());
    for (NodeId leaf : leaves) {
        G2 share = G2::from_bytes(r.var16());
        G1 attr = G1::from_bytes(r.var16());
        ct.leaf_components.emplace(leaf, LeafCiphertext{share, attr});
    }
    if (!r.done()) throw CorruptContainer("trailing bytes after ciphertext");
    return ct;
}

}  // namespace cpabe
