#include "cpabe/pairing.h"

#include <vector>

namespace cpabe {

namespace {

#include "pairing_hard_exp.inc"

// |x| for the BLS parameter x = -0xd201000000010000.
constexpr u64 kXAbs = 0xD201000000010000ULL;

struct G2Proj {
    Fp2 x, y, z;
};

struct LineCoeffs {
    Fp2 c0, c1, c2;
};

const Fp& two_inv() {
    static const Fp v = Fp::from_u64(2).inverse();
    return v;
}

// Doubling and mixed-addition steps with line coefficients for an M-type
// twist, in homogeneous projective coordinates.
LineCoeffs doubling_step(G2Proj& r) {
    Fp2 a = (r.x * r.y).mul_fp(two_inv());
    Fp2 b = r.y.square();
    Fp2 c = r.z.square();
    Fp2 e = G2::curve_b() * (c.dbl() + c);
    Fp2 f = e.dbl() + e;
    Fp2 g = (b + f).mul_fp(two_inv());
    Fp2 h = (r.y + r.z).square() - (b + c);
    Fp2 i = e - b;
    Fp2 j = r.x.square();
    Fp2 e2 = e.square();
    r.x = a * (b - f);
    r.y = g.square() - (e2.dbl() + e2);
    r.z = b * h;
    return {i, j.dbl() + j, -h};
}

LineCoeffs addition_step(G2Proj& r, const Fp2& qx, const Fp2& qy) {
    Fp2 theta = r.y - qy * r.z;
    Fp2 lambda = r.x - qx * r.z;
    Fp2 c = theta.square();
    Fp2 d = lambda.square();
    Fp2 e = lambda * d;
    Fp2 f = r.z * c;
    Fp2 g = r.x * d;
    Fp2 h = e + f - g.dbl();
    r.x = lambda * h;
    r.y = theta * (g - h) - e * r.y;
    r.z = r.z * e;
    Fp2 j = theta * qx - lambda * qy;
    return {j, -theta, lambda};
}

void apply_line(Fp12& f, LineCoeffs coeffs, const Fp& px, const Fp& py) {
    coeffs.c2 = coeffs.c2.mul_fp(py);
    coeffs.c1 = coeffs.c1.mul_fp(px);
    Fp12 sparse{Fp6{coeffs.c0, coeffs.c1, Fp2::zero()}, Fp6{Fp2::zero(), coeffs.c2, Fp2::zero()}};
    f *= sparse;
}

Fp12 miller_loop(const std::vector<std::pair<std::pair<Fp, Fp>, std::pair<Fp2, Fp2>>>& pairs) {
    std::vector<G2Proj> state;
    state.reserve(pairs.size());
    for (const auto& pq : pairs) state.push_back({pq.second.first, pq.second.second, Fp2::one()});

    Fp12 f = Fp12::one();
    for (int bit = 62; bit >= 0; --bit) {
        f = f.square();
        for (size_t k = 0; k < pairs.size(); ++k) {
            apply_line(f, doubling_step(state[k]), pairs[k].first.first, pairs[k].first.second);
        }
        if (kXAbs >> bit & 1) {
            for (size_t k = 0; k < pairs.size(); ++k) {
                apply_line(f, addition_step(state[k], pairs[k].second.first, pairs[k].second.second),
                           pairs[k].first.first, pairs[k].first.second);
            }
        }
    }
    // x is negative
    return f.conjugate();
}

Fp12 final_exponentiation(const Fp12& f) {
    // easy part: f^((p^6 - 1)(p^2 + 1))
    Fp12 t = f.conjugate() * f.inverse();
    t = t.frobenius_sq() * t;
    // hard part: exponent (p^4 - p^2 + 1) / r, over the cyclotomic subgroup
    return t.cyclotomic_pow(ByteView(kHardPartExp, sizeof kHardPartExp));
}

}  // namespace

Gt pairing(const G1& p, const G2& q) {
    std::pair<G1, G2> one_pair[] = {{p, q}};
    return pairing_product(one_pair);
}

Gt pairing_product(std::span<const std::pair<G1, G2>> pairs) {
    std::vector<std::pair<std::pair<Fp, Fp>, std::pair<Fp2, Fp2>>> affine;
    affine.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
        if (p.is_identity() || q.is_identity()) continue;
        affine.push_back({p.affine(), q.affine()});
    }
    if (affine.empty()) return Gt::one();
    return Gt::from_fp12_unchecked(final_exponentiation(miller_loop(affine)));
}

Gt Gt::from_bytes(ByteView bytes) {
    auto v = Fp12::from_bytes(bytes);
    if (!v) throw InvalidGroupElement("malformed Gt encoding");
    auto order = Fr::modulus_bytes();
    if (!v->pow(ByteView(order.data(), order.size())).is_one()) {
        throw InvalidGroupElement("Gt element outside the order-r subgroup");
    }
    return Gt(*v);
}

}  // namespace cpabe
