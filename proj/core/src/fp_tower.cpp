#include "cpabe/fp_tower.h"

namespace cpabe {

Fp2 Fp2::pow(ByteView be_exponent) const {
    Fp2 acc = Fp2::one();
    bool started = false;
    for (auto byte : be_exponent) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) acc = acc.square();
            if (byte >> bit & 1) {
                if (started) {
                    acc *= *this;
                } else {
                    acc = *this;
                    started = true;
                }
            }
        }
    }
    return acc;
}

std::optional<Fp2> Fp2::sqrt() const {
    // Adj / Rodriguez-Henriquez square root for q = p^2, p = 3 mod 4.
    if (is_zero()) return Fp2::zero();
    static const auto e_p_minus_3_quarter = beops::shr(beops::sub_small(Fp::modulus_bytes(), 3), 2);
    static const auto e_p_minus_1_half = beops::shr(beops::sub_small(Fp::modulus_bytes(), 1), 1);

    Fp2 a1 = pow(ByteView(e_p_minus_3_quarter.data(), e_p_minus_3_quarter.size()));
    Fp2 x0 = a1 * *this;        // a^((p+1)/4)
    Fp2 alpha = a1 * x0;        // a^((p-1)/2)
    Fp2 cand;
    if (alpha == Fp2{-Fp::one(), Fp::zero()}) {
        cand = Fp2{-x0.c1, x0.c0};  // u * x0
    } else {
        Fp2 b = (Fp2::one() + alpha).pow(ByteView(e_p_minus_1_half.data(), e_p_minus_1_half.size()));
        cand = b * x0;
    }
    if (cand.square() == *this) return cand;
    return std::nullopt;
}

Fp12 Fp12::frobenius_sq() const {
    // In Fp2[w]/(w^6 - xi) the map multiplies the w^n coefficient by
    // gamma^n with gamma = xi^((p^2-1)/6), which lands in Fp. The exponent
    // is built as Norm(xi^((p-1)/6)) to stay within Fp2 arithmetic.
    static const std::array<Fp, 6> gammas = [] {
        auto e = beops::div_small(beops::shr(beops::sub_small(Fp::modulus_bytes(), 1), 1), 3);
        Fp2 t = Fp2{Fp::one(), Fp::one()}.pow(ByteView(e.data(), e.size()));  // xi^((p-1)/6)
        Fp2 norm = t * t.conjugate();                                         // = xi^((p^2-1)/6)
        if (!norm.c1.is_zero()) throw Error("frobenius constant not in Fp");
        std::array<Fp, 6> g;
        g[0] = Fp::one();
        for (int i = 1; i < 6; ++i) g[i] = g[i - 1] * norm.c0;
        return g;
    }();
    // Coefficient of w^n: n even -> c0.c_{n/2}, n odd -> c1.c_{(n-1)/2}.
    return Fp12{
        Fp6{c0.c0.mul_fp(gammas[0]), c0.c1.mul_fp(gammas[2]), c0.c2.mul_fp(gammas[4])},
        Fp6{c1.c0.mul_fp(gammas[1]), c1.c1.mul_fp(gammas[3]), c1.c2.mul_fp(gammas[5])},
    };
}

Fp12 Fp12::pow(ByteView be_exponent) const {
    Fp12 acc = Fp12::one();
    bool started = false;
    for (auto byte : be_exponent) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) acc = acc.square();
            if (byte >> bit & 1) {
                if (started) {
                    acc *= *this;
                } else {
                    acc = *this;
                    started = true;
                }
            }
        }
    }
    return acc;
}

Fp12 Fp12::cyclotomic_square() const {
    // Granger-Scott squaring over three implicit Fp4 subalgebras; the w^n
    // coefficients pair up as (c0.c0, c1.c1), (c1.c0, c0.c2), (c0.c1, c1.c2).
    auto sq = [](const Fp2& a) { return a.square(); };
    Fp2 t0 = sq(c1.c1);
    Fp2 t1 = sq(c0.c0);
    Fp2 t6 = (c1.c1 + c0.c0).square() - t0 - t1;  // 2 c1.c1 c0.c0
    Fp2 t2 = sq(c0.c2);
    Fp2 t3 = sq(c1.c0);
    Fp2 t7 = (c0.c2 + c1.c0).square() - t2 - t3;  // 2 c0.c2 c1.c0
    Fp2 t4 = sq(c1.c2);
    Fp2 t5 = sq(c0.c1);
    Fp2 t8 = ((c1.c2 + c0.c1).square() - t4 - t5).mul_xi();

    t0 = t0.mul_xi() + t1;
    t2 = t2.mul_xi() + t3;
    t4 = t4.mul_xi() + t5;

    Fp12 out;
    out.c0.c0 = (t0 - c0.c0).dbl() + t0;
    out.c0.c1 = (t2 - c0.c1).dbl() + t2;
    out.c0.c2 = (t4 - c0.c2).dbl() + t4;
    out.c1.c0 = (t8 + c1.c0).dbl() + t8;
    out.c1.c1 = (t6 + c1.c1).dbl() + t6;
    out.c1.c2 = (t7 + c1.c2).dbl() + t7;
    return out;
}

Fp12 Fp12::cyclotomic_pow(ByteView be_exponent) const {
    // fixed 4-bit windows over the exponent, squarings in the cyclotomic group
    Fp12 table[16];
    table[0] = Fp12::one();
    table[1] = *this;
    for (int i = 2; i < 16; ++i) table[i] = table[i - 1] * *this;

    Fp12 acc = Fp12::one();
    bool started = false;
    for (auto byte : be_exponent) {
        for (int half = 1; half >= 0; --half) {
            unsigned digit = half ? byte >> 4 : byte & 0xF;
            if (started) {
                for (int k = 0; k < 4; ++k) acc = acc.cyclotomic_square();
            }
            if (digit != 0) {
                if (started) {
                    acc *= table[digit];
                } else {
                    acc = table[digit];
                    started = true;
                }
            }
        }
    }
    return started ? acc : Fp12::one();
}

std::array<std::uint8_t, 576> Fp12::to_bytes() const {
    std::array<std::uint8_t, 576> out{};
    const Fp* coeffs[12] = {
        &c0.c0.c0, &c0.c0.c1, &c0.c1.c0, &c0.c1.c1, &c0.c2.c0, &c0.c2.c1,
        &c1.c0.c0, &c1.c0.c1, &c1.c1.c0, &c1.c1.c1, &c1.c2.c0, &c1.c2.c1,
    };
    for (int i = 0; i < 12; ++i) {
        auto b = coeffs[i]->to_bytes();
        std::copy(b.begin(), b.end(), out.begin() + 48 * i);
    }
    return out;
}

std::optional<Fp12> Fp12::from_bytes(ByteView bytes) {
    if (bytes.size() != 576) return std::nullopt;
    Fp coeffs[12];
    for (int i = 0; i < 12; ++i) {
        auto v = Fp::from_bytes(bytes.subspan(48 * i, 48));
        if (!v) return std::nullopt;
        coeffs[i] = *v;
    }
    return Fp12{
        Fp6{Fp2{coeffs[0], coeffs[1]}, Fp2{coeffs[2], coeffs[3]}, Fp2{coeffs[4], coeffs[5]}},
        Fp6{Fp2{coeffs[6], coeffs[7]}, Fp2{coeffs[8], coeffs[9]}, Fp2{coeffs[10], coeffs[11]}},
    };
}

}  // namespace cpabe
