#include "cpabe/ec.h"

namespace cpabe {

namespace {

// Shared Jacobian formulas (curves here have a = 0 and odd order, so y != 0).

template <typename P>
P dbl_impl(const P& p) {
    if (p.is_identity()) return p;
    auto a = p.x.square();
    auto b = p.y.square();
    auto c = b.square();
    auto d = ((p.x + b).square() - a - c).dbl();
    auto e = a + a + a;
    auto f = e.square();
    P r;
    r.x = f - d.dbl();
    r.y = e * (d - r.x) - c.dbl().dbl().dbl();
    r.z = (p.y * p.z).dbl();
    return r;
}

template <typename P>
P add_impl(const P& p, const P& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    auto z1z1 = p.z.square();
    auto z2z2 = q.z.square();
    auto u1 = p.x * z2z2;
    auto u2 = q.x * z1z1;
    auto s1 = p.y * q.z * z2z2;
    auto s2 = q.y * p.z * z1z1;
    if (u1 == u2) {
        if (s1 == s2) return dbl_impl(p);
        return P::identity();
    }
    auto h = u2 - u1;
    auto i = h.dbl().square();
    auto j = h * i;
    auto rr = (s2 - s1).dbl();
    auto v = u1 * i;
    P r;
    r.x = rr.square() - j - v.dbl();
    r.y = rr * (v - r.x) - (s1 * j).dbl();
    r.z = ((p.z + q.z).square() - z1z1 - z2z2) * h;
    return r;
}

template <typename P>
P mul_bytes_impl(const P& p, ByteView be_scalar) {
    P acc = P::identity();
    for (auto byte : be_scalar) {
        for (int bit = 7; bit >= 0; --bit) {
            acc = dbl_impl(acc);
            if (byte >> bit & 1) acc = add_impl(acc, p);
        }
    }
    return acc;
}

template <typename P>
bool equals_impl(const P& p, const P& q) {
    if (p.is_identity() || q.is_identity()) return p.is_identity() == q.is_identity();
    auto z1z1 = p.z.square();
    auto z2z2 = q.z.square();
    if (p.x * z2z2 != q.x * z1z1) return false;
    return p.y * z2z2 * q.z == q.y * z1z1 * p.z;
}

template <typename P>
std::pair<typename P::Field, typename P::Field> affine_impl(const P& p) {
    if (p.is_identity()) throw Error("affine coordinates of the identity");
    auto zi = p.z.inverse();
    auto zi2 = zi.square();
    return {p.x * zi2, p.y * zi2 * zi};
}

template <typename P>
bool on_curve_impl(const P& p) {
    if (p.is_identity()) return true;
    // y^2 = x^3 + b z^6
    auto z2 = p.z.square();
    auto z6 = z2.square() * z2;
    return p.y.square() == p.x.square() * p.x + z6 * P::curve_b();
}

const auto kOrderBytes = Fr::modulus_bytes();

}  // namespace

G1 G1::dbl() const { return dbl_impl(*this); }
G1 G1::operator+(const G1& o) const { return add_impl(*this, o); }
G1 G1::mul_bytes(ByteView s) const { return mul_bytes_impl(*this, s); }
G1 G1::mul(const Fr& k) const {
    auto b = k.to_bytes();
    return mul_bytes(ByteView(b.data(), b.size()));
}
G1 G1::mul_u64(u64 k) const {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(k >> (56 - 8 * i));
    return mul_bytes(ByteView(b, sizeof b));
}
bool G1::equals(const G1& o) const { return equals_impl(*this, o); }
std::pair<Fp, Fp> G1::affine() const { return affine_impl(*this); }
bool G1::on_curve() const { return on_curve_impl(*this); }
bool G1::in_subgroup() const {
    return mul_bytes(ByteView(kOrderBytes.data(), kOrderBytes.size())).is_identity();
}

G2 G2::dbl() const { return dbl_impl(*this); }
G2 G2::operator+(const G2& o) const { return add_impl(*this, o); }
G2 G2::mul_bytes(ByteView s) const { return mul_bytes_impl(*this, s); }
G2 G2::mul(const Fr& k) const {
    auto b = k.to_bytes();
    return mul_bytes(ByteView(b.data(), b.size()));
}
bool G2::equals(const G2& o) const { return equals_impl(*this, o); }
std::pair<Fp2, Fp2> G2::affine() const { return affine_impl(*this); }
bool G2::on_curve() const { return on_curve_impl(*this); }
bool G2::in_subgroup() const {
    return mul_bytes(ByteView(kOrderBytes.data(), kOrderBytes.size())).is_identity();
}

namespace {

Fp fp_from_hex(const char* hex) {
    auto bytes = from_hex(hex);
    auto v = Fp::from_bytes(ByteView(bytes.data(), bytes.size()));
    if (!v) throw Error("bad field constant");
    return *v;
}

}  // namespace

const G1& G1::generator() {
    static const G1 gen = [] {
        G1 g{
            fp_from_hex("17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac58"
                        "6c55e83ff97a1aeffb3af00adb22c6bb"),
            fp_from_hex("08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3ed"
                        "d03cc744a2888ae40caa232946c5e7e1"),
            Fp::one(),
        };
        if (!g.on_curve() || !g.in_subgroup()) throw Error("G1 generator constant corrupt");
        return g;
    }();
    return gen;
}

const G2& G2::generator() {
    static const G2 gen = [] {
        G2 g{
            Fp2{fp_from_hex("024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d177"
                            "0bac0326a805bbefd48056c8c121bdb8"),
                fp_from_hex("13e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049"
                            "334cf11213945d57e5ac7d055d042b7e")},
            Fp2{fp_from_hex("0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a76d429a695160d12c"
                            "923ac9cc3baca289e193548608b82801"),
                fp_from_hex("0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af267492ab572e99ab"
                            "3f370d275cec1da1aaa9075ff05f79be")},
            Fp2::one(),
        };
        if (!g.on_curve() || !g.in_subgroup()) throw Error("G2 generator constant corrupt");
        return g;
    }();
    return gen;
}

std::array<std::uint8_t, 48> G1::to_bytes() const {
    std::array<std::uint8_t, 48> out{};
    if (is_identity()) {
        out[0] = 0xC0;
        return out;
    }
    auto [ax, ay] = affine();
    out = ax.to_bytes();
    out[0] |= 0x80;
    if (ay.is_lex_largest()) out[0] |= 0x20;
    return out;
}

G1 G1::from_bytes(ByteView bytes, bool subgroup_check) {
    if (bytes.size() != 48) throw InvalidGroupElement("G1 encoding must be 48 bytes");
    std::uint8_t flags = bytes[0];
    if (!(flags & 0x80)) throw InvalidGroupElement("uncompressed G1 encoding not supported");
    Bytes body(bytes.begin(), bytes.end());
    body[0] &= 0x1F;
    if (flags & 0x40) {
        if (flags & 0x20) throw InvalidGroupElement("G1 identity with sign bit");
        for (auto b : body) {
            if (b) throw InvalidGroupElement("G1 identity with non-zero payload");
        }
        return identity();
    }
    auto x = Fp::from_bytes(ByteView(body.data(), body.size()));
    if (!x) throw InvalidGroupElement("G1 x coordinate out of range");
    auto y2 = x->square() * *x + curve_b();
    auto y = y2.sqrt();
    if (!y) throw InvalidGroupElement("G1 x not on the curve");
    if (y->is_lex_largest() != bool(flags & 0x20)) *y = -*y;
    G1 p{*x, *y, Fp::one()};
    if (subgroup_check && !p.in_subgroup()) {
        throw InvalidGroupElement("G1 point outside the prime-order subgroup");
    }
    return p;
}

std::array<std::uint8_t, 96> G2::to_bytes() const {
    std::array<std::uint8_t, 96> out{};
    if (is_identity()) {
        out[0] = 0xC0;
        return out;
    }
    auto [ax, ay] = affine();
    auto hi = ax.c1.to_bytes();
    auto lo = ax.c0.to_bytes();
    std::copy(hi.begin(), hi.end(), out.begin());
    std::copy(lo.begin(), lo.end(), out.begin() + 48);
    out[0] |= 0x80;
    if (ay.is_lex_largest()) out[0] |= 0x20;
    return out;
}

G2 G2::from_bytes(ByteView bytes, bool subgroup_check) {
    if (bytes.size() != 96) throw InvalidGroupElement("G2 encoding must be 96 bytes");
    std::uint8_t flags = bytes[0];
    if (!(flags & 0x80)) throw InvalidGroupElement("uncompressed G2 encoding not supported");
    Bytes body(bytes.begin(), bytes.end());
    body[0] &= 0x1F;
    if (flags & 0x40) {
        if (flags & 0x20) throw InvalidGroupElement("G2 identity with sign bit");
        for (auto b : body) {
            if (b) throw InvalidGroupElement("G2 identity with non-zero payload");
        }
        return identity();
    }
    auto x1 = Fp::from_bytes(ByteView(body.data(), 48));
    auto x0 = Fp::from_bytes(ByteView(body.data() + 48, 48));
    if (!x0 || !x1) throw InvalidGroupElement("G2 x coordinate out of range");
    Fp2 x{*x0, *x1};
    auto y2 = x.square() * x + curve_b();
    auto y = y2.sqrt();
    if (!y) throw InvalidGroupElement("G2 x not on the curve");
    if (y->is_lex_largest() != bool(flags & 0x20)) *y = -*y;
    G2 p{x, *y, Fp2::one()};
    if (subgroup_check && !p.in_subgroup()) {
        throw InvalidGroupElement("G2 point outside the prime-order subgroup");
    }
    return p;
}

}  // namespace cpabe
