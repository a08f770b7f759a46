#include "cpabe/group.h"

#include <cctype>

#include "cpabe/digest.h"

namespace cpabe {

namespace {

constexpr std::string_view kHashDst = "CPABE-ATTR-V1";
constexpr u64 kG1CofactorEff = 0xD201000000010001ULL;  // 1 - x

Fp g_of(const Fp& x) { return x.square() * x + G1::curve_b(); }

// Constants of the Shallue-van de Woestijne map for y^2 = x^3 + 4.
// Z is the first candidate in 1, -1, 2, -2, ... satisfying the standard
// selection criteria; the rest follow from it.
struct SvdwConstants {
    Fp z;
    Fp c1;  // g(Z)
    Fp c2;  // -Z / 2
    Fp c3;  // sqrt(-g(Z) * 3Z^2), sign normalized
    Fp c4;  // -4 g(Z) / (3Z^2)
};

const SvdwConstants& svdw() {
    static const SvdwConstants k = [] {
        Fp z;
        bool found = false;
        for (u64 ctr = 1; !found && ctr < 64; ++ctr) {
            for (Fp cand : {Fp::from_u64(ctr), -Fp::from_u64(ctr)}) {
                Fp gz = g_of(cand);
                if (gz.is_zero()) continue;
                Fp three_z2 = cand.square() * Fp::from_u64(3);
                Fp h = -(three_z2 * (gz * Fp::from_u64(4)).inverse());
                if (h.is_zero() || !h.is_square()) continue;
                Fp neg_half = -(cand * Fp::from_u64(2).inverse());
                if (!g_of(cand).is_square() && !g_of(neg_half).is_square()) continue;
                z = cand;
                found = true;
                break;
            }
        }
        if (!found) throw Error("no SvdW Z constant found");
        SvdwConstants k2;
        k2.z = z;
        k2.c1 = g_of(z);
        k2.c2 = -(z * Fp::from_u64(2).inverse());
        Fp three_z2 = z.square() * Fp::from_u64(3);
        auto root = (-(k2.c1 * three_z2)).sqrt();
        if (!root) throw Error("SvdW c3 not a square");
        k2.c3 = root->sgn0() == 0 ? *root : -*root;
        k2.c4 = -(Fp::from_u64(4) * k2.c1) * three_z2.inverse();
        return k2;
    }();
    return k;
}

// RFC 9380 section 6.6.1.
std::pair<Fp, Fp> map_to_curve_svdw(const Fp& u) {
    const auto& k = svdw();
    Fp tv1 = u.square() * k.c1;
    Fp tv2 = Fp::one() + tv1;
    tv1 = Fp::one() - tv1;
    Fp tv3 = tv1 * tv2;
    tv3 = tv3.is_zero() ? Fp::zero() : tv3.inverse();
    Fp tv4 = u * tv1 * tv3 * k.c3;
    Fp x1 = k.c2 - tv4;
    Fp x2 = k.c2 + tv4;
    Fp x3 = k.z + k.c4 * (tv2.square() * tv3).square();
    Fp x;
    if (g_of(x1).is_square()) {
        x = x1;
    } else if (g_of(x2).is_square()) {
        x = x2;
    } else {
        x = x3;
    }
    auto y = g_of(x).sqrt();
    if (!y) throw Error("SvdW map internal failure");
    if (u.sgn0() != y->sgn0()) *y = -*y;
    return {x, *y};
}

}  // namespace

Bytes expand_message_xmd(ByteView msg, ByteView dst, size_t len_in_bytes) {
    const size_t ell = (len_in_bytes + 31) / 32;
    if (ell > 255 || dst.size() > 255) throw Error("expand_message_xmd parameter out of range");
    Bytes dst_prime(dst.begin(), dst.end());
    dst_prime.push_back(static_cast<std::uint8_t>(dst.size()));

    std::uint8_t z_pad[64] = {};  // SHA-256 block size
    std::uint8_t lens[2] = {static_cast<std::uint8_t>(len_in_bytes >> 8),
                            static_cast<std::uint8_t>(len_in_bytes)};
    Sha256 h0;
    h0.update(ByteView(z_pad, sizeof z_pad)).update(msg).update(ByteView(lens, 2));
    std::uint8_t zero = 0;
    h0.update(ByteView(&zero, 1)).update(ByteView(dst_prime.data(), dst_prime.size()));
    Digest32 b0 = h0.finish();

    Bytes out;
    Digest32 bi{};
    for (std::uint8_t i = 1; out.size() < len_in_bytes; ++i) {
        Sha256 h;
        if (i == 1) {
            h.update(ByteView(b0.data(), b0.size()));
        } else {
            Digest32 x;
            for (size_t j = 0; j < 32; ++j) x[j] = b0[j] ^ bi[j];
            h.update(ByteView(x.data(), x.size()));
        }
        h.update(ByteView(&i, 1)).update(ByteView(dst_prime.data(), dst_prime.size()));
        bi = h.finish();
        out.insert(out.end(), bi.begin(), bi.end());
    }
    out.resize(len_in_bytes);
    return out;
}

const Gt& GroupContext::gt_generator() const {
    static const Gt base = pairing(G1::generator(), G2::generator());
    return base;
}

GroupContext group_setup(unsigned security_level_bits) {
    if (security_level_bits != kSupportedSecurityLevel) {
        throw UnsupportedSecurityLevel("only the 128-bit parameter set is supported");
    }
    return GroupContext{};
}

Fr random_scalar(const GroupContext&, RandomSource& rng) { return Fr::random(rng); }

bool is_valid_attribute(std::string_view token) {
    if (token.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(token[0])) && token[0] != '_') return false;
    for (char c : token) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    // policy keywords are reserved, case-insensitively
    std::string lower(token);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return lower != "and" && lower != "or" && lower != "of";
}

G1 hash_to_group(const GroupContext&, std::string_view attribute) {
    if (!is_valid_attribute(attribute)) {
        throw InvalidAttributeToken("invalid attribute token: '" + std::string(attribute) + "'");
    }
    ByteView msg(reinterpret_cast<const std::uint8_t*>(attribute.data()), attribute.size());
    ByteView dst(reinterpret_cast<const std::uint8_t*>(kHashDst.data()), kHashDst.size());
    Bytes uniform = expand_message_xmd(msg, dst, 128);  // two 64-byte field elements

    Fp u0 = Fp::from_bytes_reduced(ByteView(uniform.data(), 64));
    Fp u1 = Fp::from_bytes_reduced(ByteView(uniform.data() + 64, 64));
    auto [x0, y0] = map_to_curve_svdw(u0);
    auto [x1, y1] = map_to_curve_svdw(u1);
    G1 q0{x0, y0, Fp::one()};
    G1 q1{x1, y1, Fp::one()};
    return (q0 + q1).mul_u64(kG1CofactorEff);
}

}  // namespace cpabe
