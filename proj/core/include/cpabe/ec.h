#pragma once

#include "cpabe/fp_tower.h"

namespace cpabe {

// Points are kept in Jacobian coordinates; z == 0 encodes the identity.
// Compressed encodings follow the common 3-bit flag convention: bit 7 set
// (compressed), bit 6 identity, bit 5 the sign of y (set when y is the
// lexicographically larger of the two roots).

struct G1 {
    using Field = Fp;
    Fp x, y, z;

    static G1 identity() { return {Fp::zero(), Fp::one(), Fp::zero()}; }
    static const G1& generator();
    static Fp curve_b() { return Fp::from_u64(4); }

    bool is_identity() const { return z.is_zero(); }
    G1 dbl() const;
    G1 operator+(const G1& o) const;
    G1 operator-() const { return {x, -y, z}; }
    G1& operator+=(const G1& o) { return *this = *this + o; }
    G1 mul(const Fr& k) const;
    G1 mul_bytes(ByteView be_scalar) const;
    G1 mul_u64(u64 k) const;

    bool equals(const G1& o) const;
    std::pair<Fp, Fp> affine() const;  // requires a non-identity point
    bool on_curve() const;
    bool in_subgroup() const;  // multiplies by the group order

    std::array<std::uint8_t, 48> to_bytes() const;
    static G1 from_bytes(ByteView bytes, bool subgroup_check = true);  // throws InvalidGroupElement
};

struct G2 {
    using Field = Fp2;
    Fp2 x, y, z;

    static G2 identity() { return {Fp2::zero(), Fp2::one(), Fp2::zero()}; }
    static const G2& generator();
    static Fp2 curve_b() { return {Fp::from_u64(4), Fp::from_u64(4)}; }

    bool is_identity() const { return z.is_zero(); }
    G2 dbl() const;
    G2 operator+(const G2& o) const;
    G2 operator-() const { return {x, -y, z}; }
    G2& operator+=(const G2& o) { return *this = *this + o; }
    G2 mul(const Fr& k) const;
    G2 mul_bytes(ByteView be_scalar) const;

    bool equals(const G2& o) const;
    std::pair<Fp2, Fp2> affine() const;
    bool on_curve() const;
    bool in_subgroup() const;

    std::array<std::uint8_t, 96> to_bytes() const;
    static G2 from_bytes(ByteView bytes, bool subgroup_check = true);  // throws InvalidGroupElement
};

}  // namespace cpabe
