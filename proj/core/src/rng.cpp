#include "cpabe/rng.h"

#include <openssl/rand.h>

#include <cstring>

#include "cpabe/errors.h"

namespace cpabe {

void SystemRandom::fill(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
        throw RandomnessUnavailable("system entropy source failed");
    }
}

SeededRandom::SeededRandom(std::uint64_t seed) {
    std::uint8_t enc[8];
    for (int i = 0; i < 8; ++i) enc[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
    key_ = sha256(ByteView(enc, sizeof enc));
}

SeededRandom::SeededRandom(ByteView seed) { key_ = sha256(seed); }

void SeededRandom::fill(std::span<std::uint8_t> out) {
    size_t done = 0;
    while (done < out.size()) {
        if (block_used_ == block_.size()) {
            Sha256 h;
            std::uint8_t ctr[8];
            for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
            h.update(ByteView(key_.data(), key_.size())).update(ByteView(ctr, sizeof ctr));
            block_ = h.finish();
            block_used_ = 0;
            ++counter_;
        }
        size_t n = std::min(out.size() - done, block_.size() - block_used_);
        std::memcpy(out.data() + done, block_.data() + block_used_, n);
        block_used_ += n;
        done += n;
    }
}

RandomSource& system_rng() {
    static SystemRandom rng;
    return rng;
}

}  // namespace cpabe
