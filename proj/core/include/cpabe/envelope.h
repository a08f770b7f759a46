#pragma once

#include "cpabe/digest.h"
#include "cpabe/scheme.h"

namespace cpabe {

// DET reuses the all-zero IV so equal plaintexts produce equal ciphertexts
// under one DEK; RND draws a fresh IV per call.
enum class SymMode : std::uint8_t { kDet = 0x00, kRnd = 0x01 };

// Long-lived data-encryption key. One DEK serves every value of one
// encrypted field, which scopes DET equality leakage to that field.
struct Dek {
    std::array<std::uint8_t, 32> key{};
    std::array<std::uint8_t, 16> id{};

    static Dek create(RandomSource& rng = system_rng());
};

// CP-ABE encapsulation of a DEK. Container format "CPWK":
//   magic (4) | version 0x01 | policy text (2-byte length prefix) |
//   component count (4) | length-prefixed group elements | key digest (32)
struct WrappedDek {
    AbeCiphertext abe_ct;
    Digest32 dek_digest{};

    Bytes to_bytes() const;
    static WrappedDek from_bytes(ByteView bytes);
};

// AES-256-CBC ciphertext of one field value. Container format "CPFC":
//   magic (4) | version 0x01 | mode (1) | iv (16) | dek id (16) |
//   body length (4, big-endian) | body
struct FieldCiphertext {
    SymMode mode = SymMode::kRnd;
    std::array<std::uint8_t, 16> iv{};
    std::array<std::uint8_t, 16> dek_id{};
    Bytes body;

    Bytes to_bytes() const;
    static FieldCiphertext from_bytes(ByteView bytes);
};

// Encapsulates a fresh target-group element under the tree and replaces
// dek.key with the key derived from it (SHA-256 with tag "CPABE-DEM-V1");
// the returned container binds a digest of those key bytes.
WrappedDek wrap_dek(const PublicParams& pk, const AccessTree& tree, Dek& dek,
                    RandomSource& rng = system_rng());

// Reverses wrap_dek. The returned Dek carries the recovered key bytes and a
// zero id; the caller re-binds whatever id it tracked for this wrap.
// Throws PolicyNotSatisfied or IntegrityFailure.
Dek unwrap_dek(const PublicParams& pk, const WrappedDek& wrapped, const PrivateKey& sk);

FieldCiphertext sym_encrypt(const Dek& dek, ByteView plaintext, SymMode mode,
                            RandomSource& rng = system_rng());

// Throws DekMismatch when fc references a different DEK and BadPadding when
// the body fails to decrypt cleanly.
Bytes sym_decrypt(const Dek& dek, const FieldCiphertext& fc);

}  // namespace cpabe
