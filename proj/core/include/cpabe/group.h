#pragma once

#include <string_view>

#include "cpabe/pairing.h"
#include "cpabe/rng.h"

namespace cpabe {

inline constexpr unsigned kSupportedSecurityLevel = 128;

// Handle to the fixed BLS12-381 parameter set: prime-order r subgroups of a
// type-3 pairing e : G1 x G2 -> Gt with independent generators per side.
// Immutable and freely shareable across threads.
struct GroupContext {
    std::string_view group_id() const { return "BLS12-381"; }
    const G1& g1() const { return G1::generator(); }
    const G2& g2() const { return G2::generator(); }
    static std::array<std::uint8_t, 32> order_bytes() { return Fr::modulus_bytes(); }
    // e(g1, g2), the canonical Gt generator; computed once.
    const Gt& gt_generator() const;
};

// Only the 128-bit level is supported; anything else throws
// UnsupportedSecurityLevel.
GroupContext group_setup(unsigned security_level_bits);

// Uniform scalar in [0, r) by rejection sampling.
Fr random_scalar(const GroupContext& ctx, RandomSource& rng = system_rng());

// Attribute tokens are [A-Za-z_][A-Za-z0-9_]* and never a policy keyword.
bool is_valid_attribute(std::string_view token);

// Deterministic hash onto the G1 subgroup (expand_message_xmd with SHA-256,
// two Shallue-van de Woestijne map evaluations, cofactor cleared), domain
// separated with "CPABE-ATTR-V1". Throws InvalidAttributeToken.
G1 hash_to_group(const GroupContext& ctx, std::string_view attribute);

inline Gt pair(const G1& a, const G2& b) { return pairing(a, b); }

// Exposed for tests: raw XMD expansion and the field hash underlying
// hash_to_group.
Bytes expand_message_xmd(ByteView msg, ByteView dst, size_t len_in_bytes);

}  // namespace cpabe
