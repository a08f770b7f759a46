#pragma once

#include <span>
#include <utility>

#include "cpabe/ec.h"

namespace cpabe {

// Element of the order-r subgroup of Fp12, written multiplicatively.
class Gt {
  public:
    Gt() : v_(Fp12::one()) {}

    static Gt one() { return Gt(); }

    Gt operator*(const Gt& o) const { return Gt(v_ * o.v_); }
    Gt& operator*=(const Gt& o) {
        v_ *= o.v_;
        return *this;
    }
    Gt operator/(const Gt& o) const { return *this * o.inverse(); }

    // Conjugation inverts elements of the cyclotomic subgroup; every value
    // constructed through this class lives there.
    Gt inverse() const { return Gt(v_.conjugate()); }

    Gt pow(const Fr& k) const {
        auto b = k.to_bytes();
        return pow_bytes(ByteView(b.data(), b.size()));
    }
    Gt pow_bytes(ByteView be_scalar) const { return Gt(v_.cyclotomic_pow(be_scalar)); }

    bool operator==(const Gt& o) const { return v_ == o.v_; }
    bool operator!=(const Gt& o) const { return !(*this == o); }
    bool is_one() const { return v_.is_one(); }

    std::array<std::uint8_t, 576> to_bytes() const { return v_.to_bytes(); }
    static Gt from_bytes(ByteView bytes);  // throws InvalidGroupElement; checks order

    static Gt from_fp12_unchecked(const Fp12& v) { return Gt(v); }
    const Fp12& value() const { return v_; }

  private:
    explicit Gt(const Fp12& v) : v_(v) {}
    Fp12 v_;
};

// Optimal ate pairing e : G1 x G2 -> Gt. Identity inputs map to one.
Gt pairing(const G1& p, const G2& q);

// prod_i e(p_i, q_i) with a single shared final exponentiation. To divide by
// a factor, pass the negated G1 point.
Gt pairing_product(std::span<const std::pair<G1, G2>> pairs);

}  // namespace cpabe
