#pragma once

#include <map>
#include <utility>

#include "cpabe/sharing.h"

namespace cpabe {

// BSW-style CP-ABE on an asymmetric pairing. H maps attributes into G1, so
// per-attribute material is split across the two sides:
//
//   pk: h = g1^beta, e(g1,g2)^alpha          mk: beta, g2^alpha
//   sk: d = g2^((alpha+r)/beta)
//       per attribute j: d_attr = g1^r * H(j)^{r_j} (G1), d_prime = g2^{r_j} (G2)
//   ct: c_tilde = m * e(g1,g2)^{alpha s}, c = h^s
//       per leaf y:      c_share = g2^{q_y(0)} (G2), c_attr = H(att(y))^{q_y(0)} (G1)
//
// which keeps every decryption pairing well-typed:
//   e(d_attr, c_share) / e(c_attr, d_prime) = e(g1,g2)^{r q_y(0)}.

struct PublicParams {
    GroupContext ctx;
    G1 h;
    Gt e_gg_alpha;
};

struct MasterKey {
    Fr beta;
    G2 g_alpha;
};

struct AttributeKey {
    G1 d_attr;
    G2 d_prime;
};

struct PrivateKey {
    AttributeSet attrs;
    G2 d;
    std::map<std::string, AttributeKey> components;
};

struct LeafCiphertext {
    G2 c_share;
    G1 c_attr;
};

struct AbeCiphertext {
    AccessTree tree;
    Gt c_tilde;
    G1 c;
    std::map<NodeId, LeafCiphertext> leaf_components;
};

#ifdef CPABE_ENABLE_TEST_HOOKS
// Test-build-only taps for the per-call randomness; release builds do not
// compile these parameters at all.
struct KeygenTrace {
    Fr r;
};
struct EncryptTrace {
    Fr s;
};
#endif

std::pair<PublicParams, MasterKey> setup(const GroupContext& ctx,
                                         RandomSource& rng = system_rng());

PrivateKey keygen(const MasterKey& mk, const PublicParams& pk, const AttributeSet& attrs,
                  RandomSource& rng = system_rng()
#ifdef CPABE_ENABLE_TEST_HOOKS
                  ,
                  KeygenTrace* trace = nullptr
#endif
);

AbeCiphertext encrypt(const PublicParams& pk, const AccessTree& tree, const Gt& m,
                      RandomSource& rng = system_rng()
#ifdef CPABE_ENABLE_TEST_HOOKS
                      ,
                      EncryptTrace* trace = nullptr
#endif
);

// Recovers m when sk satisfies ct's tree; PolicyNotSatisfied otherwise.
// MalformedCiphertext when leaf components do not match the tree.
Gt decrypt(const PublicParams& pk, const AbeCiphertext& ct, const PrivateKey& sk);

// The recursion behind decrypt, exposed for combination at gate level:
// leaf x with attribute i yields e(d_attr_i, c_share_x) / e(c_attr_x, d_prime_i)
// = e(g1,g2)^{r q_x(0)}; a gate combines chosen children with Lagrange
// exponents. Throws AttributeMissing for a selected leaf absent from sk.
Gt decrypt_node(const AbeCiphertext& ct, const PrivateKey& sk, NodeId node,
                const SatisfyingSelection& selection);

// Policy text plus length-prefixed group elements; the payload embedded in
// wrapped-DEK containers.
Bytes abe_ciphertext_to_bytes(const AbeCiphertext& ct);
AbeCiphertext abe_ciphertext_from_bytes(ByteView bytes);

}  // namespace cpabe
