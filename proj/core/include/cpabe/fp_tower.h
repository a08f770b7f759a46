#pragma once

#include <optional>

#include "cpabe/prime_field.h"

namespace cpabe {

// Tower: Fp2 = Fp[u]/(u^2 + 1), Fp6 = Fp2[v]/(v^3 - (u+1)), Fp12 = Fp6[w]/(w^2 - v).

struct Fp2 {
    Fp c0, c1;  // c0 + c1*u

    static Fp2 zero() { return {Fp::zero(), Fp::zero()}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fp2 operator-() const { return {-c0, -c1}; }
    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }

    Fp2 operator*(const Fp2& o) const {
        Fp aa = c0 * o.c0;
        Fp bb = c1 * o.c1;
        Fp cross = (c0 + c1) * (o.c0 + o.c1);
        return {aa - bb, cross - aa - bb};
    }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

    Fp2 square() const {
        Fp sum = c0 + c1;
        Fp diff = c0 - c1;
        Fp prod = c0 * c1;
        return {sum * diff, prod + prod};
    }

    Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }

    Fp2 mul_fp(const Fp& s) const { return {c0 * s, c1 * s}; }

    // Multiplication by the Fp6 non-residue xi = u + 1.
    Fp2 mul_xi() const { return {c0 - c1, c0 + c1}; }

    Fp2 conjugate() const { return {c0, -c1}; }

    Fp2 inverse() const {
        Fp norm_inv = (c0.square() + c1.square()).inverse();
        return {c0 * norm_inv, -(c1 * norm_inv)};
    }

    Fp2 pow(ByteView be_exponent) const;

    // Square root for p = 3 mod 4; nullopt when this is a non-residue.
    std::optional<Fp2> sqrt() const;

    // Sign convention for compressed G2 points: compare c1 first, fall back
    // to c0 when c1 is zero.
    bool is_lex_largest() const {
        if (!c1.is_zero()) return c1.is_lex_largest();
        return c0.is_lex_largest();
    }
};

struct Fp6 {
    Fp2 c0, c1, c2;  // c0 + c1*v + c2*v^2

    static Fp6 zero() { return {Fp2::zero(), Fp2::zero(), Fp2::zero()}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
    bool operator!=(const Fp6& o) const { return !(*this == o); }

    Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fp6 operator-() const { return {-c0, -c1, -c2}; }

    Fp6 operator*(const Fp6& o) const {
        Fp2 t0 = c0 * o.c0;
        Fp2 t1 = c1 * o.c1;
        Fp2 t2 = c2 * o.c2;
        Fp2 r0 = t0 + ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_xi();
        Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_xi();
        Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
        return {r0, r1, r2};
    }

    Fp6 square() const { return *this * *this; }

    // Multiplication by v: (c0, c1, c2) -> (xi*c2, c0, c1).
    Fp6 mul_v() const { return {c2.mul_xi(), c0, c1}; }

    Fp6 mul_fp2(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }

    Fp6 inverse() const {
        Fp2 a = c0.square() - (c1 * c2).mul_xi();
        Fp2 b = c2.square().mul_xi() - c0 * c1;
        Fp2 c = c1.square() - c0 * c2;
        Fp2 t = ((c2 * b + c1 * c).mul_xi() + c0 * a).inverse();
        return {a * t, b * t, c * t};
    }
};

struct Fp12 {
    Fp6 c0, c1;  // c0 + c1*w

    static Fp12 zero() { return {Fp6::zero(), Fp6::zero()}; }
    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool is_one() const { return *this == one(); }
    bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp12& o) const { return !(*this == o); }

    Fp12 operator*(const Fp12& o) const {
        Fp6 aa = c0 * o.c0;
        Fp6 bb = c1 * o.c1;
        Fp6 cross = (c0 + c1) * (o.c0 + o.c1);
        return {aa + bb.mul_v(), cross - aa - bb};
    }
    Fp12& operator*=(const Fp12& o) { return *this = *this * o; }

    Fp12 square() const {
        Fp6 prod = c0 * c1;
        Fp6 t = (c0 + c1) * (c0 + c1.mul_v());
        return {t - prod - prod.mul_v(), prod + prod};
    }

    // f^(p^6): negate the w coefficient.
    Fp12 conjugate() const { return {c0, -c1}; }

    Fp12 inverse() const {
        Fp6 t = (c0.square() - c1.square().mul_v()).inverse();
        return {c0 * t, -(c1 * t)};
    }

    // f^(p^2), via coefficient multiplication in the Fp2[w]/(w^6 - xi) view.
    Fp12 frobenius_sq() const;

    Fp12 pow(ByteView be_exponent) const;

    // Squaring restricted to the cyclotomic subgroup (where elements satisfy
    // f^(p^6+1) = f * conj(f) ... = 1); roughly half the cost of square().
    Fp12 cyclotomic_square() const;

    // Windowed exponentiation that uses cyclotomic squarings; only valid for
    // cyclotomic-subgroup elements (all final-exponentiation outputs are).
    Fp12 cyclotomic_pow(ByteView be_exponent) const;

    // 12 * 48 bytes, coefficients in tower order (c0 before c1 at every level,
    // Fp2 real part before u part), each Fp big-endian canonical.
    std::array<std::uint8_t, 576> to_bytes() const;
    static std::optional<Fp12> from_bytes(ByteView bytes);
};

}  // namespace cpabe
