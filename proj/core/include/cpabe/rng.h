#pragma once

#include <cstdint>
#include <span>

#include "cpabe/bytes.h"
#include "cpabe/digest.h"

namespace cpabe {

// Source of randomness for key material, encryption nonces and IVs.
// Implementations must be safe for concurrent fill() calls unless noted.
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;  // throws RandomnessUnavailable
};

// OS-backed CSPRNG (OpenSSL RAND_bytes). Thread safe.
class SystemRandom final : public RandomSource {
  public:
    void fill(std::span<std::uint8_t> out) override;
};

// Deterministic SHA-256 counter stream. Reproducible given the seed; meant
// for tests and seeded dataset generation, not for production key material.
// Not safe for concurrent use.
class SeededRandom final : public RandomSource {
  public:
    explicit SeededRandom(std::uint64_t seed);
    explicit SeededRandom(ByteView seed);
    void fill(std::span<std::uint8_t> out) override;

  private:
    Digest32 key_;
    std::uint64_t counter_ = 0;
    Digest32 block_{};
    size_t block_used_ = 32;  // start exhausted
};

RandomSource& system_rng();

}  // namespace cpabe
