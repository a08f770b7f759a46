#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "cpabe/bytes.h"
#include "cpabe/errors.h"
#include "cpabe/rng.h"

namespace cpabe {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Little-endian fixed-width helpers shared by both field instantiations.
namespace mp {

template <size_t N>
constexpr int cmp(const std::array<u64, N>& a, const std::array<u64, N>& b) {
    for (size_t i = N; i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

template <size_t N>
constexpr u64 add(std::array<u64, N>& a, const std::array<u64, N>& b) {
    u64 carry = 0;
    for (size_t i = 0; i < N; ++i) {
        u128 t = static_cast<u128>(a[i]) + b[i] + carry;
        a[i] = static_cast<u64>(t);
        carry = static_cast<u64>(t >> 64);
    }
    return carry;
}

template <size_t N>
constexpr u64 sub(std::array<u64, N>& a, const std::array<u64, N>& b) {
    u64 borrow = 0;
    for (size_t i = 0; i < N; ++i) {
        u128 t = static_cast<u128>(a[i]) - b[i] - borrow;
        a[i] = static_cast<u64>(t);
        borrow = static_cast<u64>(t >> 64) & 1;
    }
    return borrow;
}

// -m^{-1} mod 2^64 for odd m, by Newton iteration.
constexpr u64 mont_inv(u64 m0) {
    u64 inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - m0 * inv;
    return ~inv + 1;
}

// 2^(64*N*k) mod m computed by repeated modular doubling; k = 1 gives the
// Montgomery representation of one, k = 2 the conversion constant R^2.
template <size_t N>
constexpr std::array<u64, N> pow2_mod(const std::array<u64, N>& m, int k) {
    std::array<u64, N> x{};
    x[0] = 1;
    for (int i = 0; i < 64 * static_cast<int>(N) * k; ++i) {
        std::array<u64, N> d = x;
        u64 carry = add(d, x);
        if (carry || cmp(d, m) >= 0) sub(d, m);
        x = d;
    }
    return x;
}

// CIOS Montgomery multiplication. Requires m < 2^(64N)/4, which holds for
// both moduli used here, so a single conditional subtraction suffices.
template <size_t N>
inline void mont_mul(std::array<u64, N>& out, const std::array<u64, N>& a,
                     const std::array<u64, N>& b, const std::array<u64, N>& m, u64 inv) {
    u64 t[N + 1] = {};
    for (size_t i = 0; i < N; ++i) {
        u64 carry = 0;
        for (size_t j = 0; j < N; ++j) {
            u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
            t[j] = static_cast<u64>(s);
            carry = static_cast<u64>(s >> 64);
        }
        u64 t_hi = t[N] + carry;  // cannot overflow while m < R/4

        u64 k = t[0] * inv;
        u128 s = static_cast<u128>(k) * m[0] + t[0];
        carry = static_cast<u64>(s >> 64);
        for (size_t j = 1; j < N; ++j) {
            s = static_cast<u128>(k) * m[j] + t[j] + carry;
            t[j - 1] = static_cast<u64>(s);
            carry = static_cast<u64>(s >> 64);
        }
        u128 s2 = static_cast<u128>(t_hi) + carry;
        t[N - 1] = static_cast<u64>(s2);
        t[N] = static_cast<u64>(s2 >> 64);
    }
    bool ge = t[N] != 0;
    if (!ge) {
        ge = true;
        for (size_t i = N; i-- > 0;) {
            if (t[i] != m[i]) {
                ge = t[i] > m[i];
                break;
            }
        }
    }
    if (ge) {
        u64 borrow = 0;
        for (size_t i = 0; i < N; ++i) {
            u128 d = static_cast<u128>(t[i]) - m[i] - borrow;
            out[i] = static_cast<u64>(d);
            borrow = static_cast<u64>(d >> 64) & 1;
        }
    } else {
        for (size_t i = 0; i < N; ++i) out[i] = t[i];
    }
}

}  // namespace mp

// Big-endian byte-string arithmetic for building fixed exponents like
// (p - 1) / 2 out of the modulus at startup.
namespace beops {

template <size_t B>
constexpr std::array<std::uint8_t, B> sub_small(std::array<std::uint8_t, B> v, unsigned k) {
    for (size_t i = B; i-- > 0 && k;) {
        unsigned cur = v[i];
        if (cur >= (k & 0xFF)) {
            v[i] = static_cast<std::uint8_t>(cur - (k & 0xFF));
            k >>= 8;
        } else {
            v[i] = static_cast<std::uint8_t>(cur + 256 - (k & 0xFF));
            k = (k >> 8) + 1;
        }
    }
    return v;
}

template <size_t B>
constexpr std::array<std::uint8_t, B> add_small(std::array<std::uint8_t, B> v, unsigned k) {
    for (size_t i = B; i-- > 0 && k;) {
        unsigned cur = v[i] + (k & 0xFF);
        v[i] = static_cast<std::uint8_t>(cur);
        k = (k >> 8) + (cur >> 8);
    }
    return v;
}

template <size_t B>
constexpr std::array<std::uint8_t, B> shr(std::array<std::uint8_t, B> v, unsigned bits) {
    for (unsigned b = 0; b < bits; ++b) {
        std::uint8_t carry = 0;
        for (size_t i = 0; i < B; ++i) {
            std::uint8_t next = v[i] & 1;
            v[i] = static_cast<std::uint8_t>(v[i] >> 1 | carry << 7);
            carry = next;
        }
    }
    return v;
}

template <size_t B>
constexpr std::array<std::uint8_t, B> div_small(std::array<std::uint8_t, B> v, unsigned d) {
    unsigned rem = 0;
    for (size_t i = 0; i < B; ++i) {
        unsigned cur = rem * 256 + v[i];
        v[i] = static_cast<std::uint8_t>(cur / d);
        rem = cur % d;
    }
    return v;
}

}  // namespace beops

// Prime field in Montgomery representation. Params supplies the modulus;
// every other constant is derived from it at compile time.
template <typename Params>
class PrimeField {
  public:
    static constexpr size_t kLimbs = Params::kLimbs;
    static constexpr size_t kBytes = kLimbs * 8;
    static constexpr unsigned kBits = Params::kBits;
    using Limbs = std::array<u64, kLimbs>;
    using Encoding = std::array<std::uint8_t, kBytes>;

    static constexpr Limbs kModulus = Params::kModulus;
    static constexpr u64 kInv = mp::mont_inv(kModulus[0]);
    static constexpr Limbs kOneMont = mp::pow2_mod<kLimbs>(kModulus, 1);
    static constexpr Limbs kR2 = mp::pow2_mod<kLimbs>(kModulus, 2);
    static constexpr Limbs kHalfModulus = [] {
        Limbs h = kModulus;
        // (m - 1) / 2
        h[0] -= 1;
        for (size_t i = 0; i + 1 < kLimbs; ++i) h[i] = h[i] >> 1 | h[i + 1] << 63;
        h[kLimbs - 1] >>= 1;
        return h;
    }();

    constexpr PrimeField() : v_{} {}

    static constexpr PrimeField zero() { return PrimeField(); }
    static PrimeField one() { return PrimeField(kOneMont); }

    static PrimeField from_u64(u64 x) {
        PrimeField r;
        r.v_[0] = x;
        mp::mont_mul<kLimbs>(r.v_, r.v_, kR2, kModulus, kInv);
        return r;
    }

    // Strict canonical decoding: big-endian, exactly kBytes, value < modulus.
    static std::optional<PrimeField> from_bytes(ByteView bytes) {
        if (bytes.size() != kBytes) return std::nullopt;
        PrimeField r;
        for (size_t i = 0; i < kLimbs; ++i) {
            u64 limb = 0;
            for (size_t j = 0; j < 8; ++j) limb = limb << 8 | bytes[(kLimbs - 1 - i) * 8 + j];
            r.v_[i] = limb;
        }
        if (mp::cmp(r.v_, kModulus) >= 0) return std::nullopt;
        mp::mont_mul<kLimbs>(r.v_, r.v_, kR2, kModulus, kInv);
        return r;
    }

    // Reduces an arbitrary big-endian byte string mod m (used by hash_to_field).
    static PrimeField from_bytes_reduced(ByteView bytes) {
        PrimeField acc = zero();
        PrimeField base = from_u64(256);
        for (auto b : bytes) {
            acc = acc * base + from_u64(b);
        }
        return acc;
    }

    static PrimeField random(RandomSource& rng) {
        constexpr std::uint8_t top_mask =
            kBits % 8 == 0 ? 0xFF : static_cast<std::uint8_t>((1u << (kBits % 8)) - 1);
        Encoding buf;
        for (;;) {
            rng.fill(buf);
            buf[0] &= top_mask;
            if (auto v = from_bytes(buf)) return *v;
        }
    }

    Encoding to_bytes() const {
        Limbs c = canonical();
        Encoding out{};
        for (size_t i = 0; i < kLimbs; ++i) {
            for (size_t j = 0; j < 8; ++j) {
                out[(kLimbs - 1 - i) * 8 + j] = static_cast<std::uint8_t>(c[i] >> (56 - 8 * j));
            }
        }
        return out;
    }

    std::string to_hex() const {
        auto b = to_bytes();
        return cpabe::to_hex(ByteView(b.data(), b.size()));
    }

    PrimeField operator+(const PrimeField& o) const {
        PrimeField r = *this;
        mp::add<kLimbs>(r.v_, o.v_);  // no overflow: m < 2^(64N)/4
        if (mp::cmp(r.v_, kModulus) >= 0) mp::sub<kLimbs>(r.v_, kModulus);
        return r;
    }

    PrimeField operator-(const PrimeField& o) const {
        PrimeField r = *this;
        if (mp::sub<kLimbs>(r.v_, o.v_)) mp::add<kLimbs>(r.v_, kModulus);
        return r;
    }

    PrimeField operator-() const {
        if (is_zero()) return *this;
        PrimeField r;
        r.v_ = kModulus;
        mp::sub<kLimbs>(r.v_, v_);
        return r;
    }

    PrimeField operator*(const PrimeField& o) const {
        PrimeField r;
        mp::mont_mul<kLimbs>(r.v_, v_, o.v_, kModulus, kInv);
        return r;
    }

    PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
    PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
    PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }

    PrimeField square() const { return *this * *this; }
    PrimeField dbl() const { return *this + *this; }

    PrimeField pow(ByteView be_exponent) const {
        PrimeField acc;
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
        return started ? acc : one();
    }

    PrimeField inverse() const {
        static const Encoding e = beops::sub_small(modulus_bytes(), 2);
        return pow(ByteView(e.data(), e.size()));
    }

    bool is_square() const {
        static const Encoding e = beops::shr(beops::sub_small(modulus_bytes(), 1), 1);
        PrimeField chi = pow(ByteView(e.data(), e.size()));
        return chi.is_zero() || chi == one();
    }

    // Only valid for m = 3 mod 4 (true for the base field).
    std::optional<PrimeField> sqrt() const {
        static_assert((Params::kModulus[0] & 3) == 3, "sqrt rule needs m = 3 mod 4");
        static const Encoding e = beops::shr(beops::add_small(modulus_bytes(), 1), 2);
        PrimeField cand = pow(ByteView(e.data(), e.size()));
        if (cand.square() == *this) return cand;
        return std::nullopt;
    }

    bool is_zero() const {
        for (auto limb : v_) {
            if (limb) return false;
        }
        return true;
    }

    bool operator==(const PrimeField& o) const { return v_ == o.v_; }
    bool operator!=(const PrimeField& o) const { return !(*this == o); }

    // Parity of the canonical representative (RFC 9380 sgn0 for m = 1).
    unsigned sgn0() const { return canonical()[0] & 1; }

    // True when the canonical value exceeds (m - 1) / 2, i.e. this element is
    // "larger" than its negation; used for compressed-point sign bits.
    bool is_lex_largest() const { return mp::cmp(canonical(), kHalfModulus) > 0; }

    static constexpr Encoding modulus_bytes() {
        Encoding out{};
        for (size_t i = 0; i < kLimbs; ++i) {
            for (size_t j = 0; j < 8; ++j) {
                out[(kLimbs - 1 - i) * 8 + j] =
                    static_cast<std::uint8_t>(kModulus[i] >> (56 - 8 * j));
            }
        }
        return out;
    }

    Limbs canonical() const {
        Limbs one_limb{};
        one_limb[0] = 1;
        Limbs c;
        mp::mont_mul<kLimbs>(c, v_, one_limb, kModulus, kInv);
        return c;
    }

  private:
    explicit constexpr PrimeField(const Limbs& raw) : v_(raw) {}
    Limbs v_;  // Montgomery form: value * 2^(64*kLimbs) mod m
};

struct FpParams {
    static constexpr size_t kLimbs = 6;
    static constexpr unsigned kBits = 381;
    static constexpr std::array<u64, 6> kModulus = {
        0xB9FEFFFFFFFFAAABULL, 0x1EABFFFEB153FFFFULL, 0x6730D2A0F6B0F624ULL,
        0x64774B84F38512BFULL, 0x4B1BA7B6434BACD7ULL, 0x1A0111EA397FE69AULL,
    };
};

struct FrParams {
    static constexpr size_t kLimbs = 4;
    static constexpr unsigned kBits = 255;
    static constexpr std::array<u64, 4> kModulus = {
        0xFFFFFFFF00000001ULL, 0x53BDA402FFFE5BFEULL, 0x3339D80809A1D805ULL,
        0x73EDA753299D7D48ULL,
    };
};

using Fp = PrimeField<FpParams>;
using Fr = PrimeField<FrParams>;

}  // namespace cpabe
