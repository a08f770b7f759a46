#include "cpabe/envelope.h"

#include <openssl/evp.h>

#include <memory>

namespace cpabe {

namespace {

constexpr char kWrapMagic[4] = {'C', 'P', 'W', 'K'};
constexpr char kFieldMagic[4] = {'C', 'P', 'F', 'C'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::string_view kKdfTag = "CPABE-DEM-V1";

std::array<std::uint8_t, 32> derive_key(const Gt& element) {
    auto enc = element.to_bytes();
    return Sha256().update(kKdfTag).update(ByteView(enc.data(), enc.size())).finish();
}

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx make_cipher_ctx() {
    CipherCtx ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx) throw Error("EVP context allocation failed");
    return ctx;
}

}  // namespace

Dek Dek::create(RandomSource& rng) {
    Dek d;
    rng.fill(d.key);
    rng.fill(d.id);
    return d;
}

Bytes WrappedDek::to_bytes() const {
    ByteWriter w;
    w.raw(ByteView(reinterpret_cast<const std::uint8_t*>(kWrapMagic), 4));
    w.u8(kVersion);
    w.raw(abe_ciphertext_to_bytes(abe_ct));
    w.raw(ByteView(dek_digest.data(), dek_digest.size()));
    return w.take();
}

WrappedDek WrappedDek::from_bytes(ByteView bytes) {
    ByteReader r(bytes);
    auto magic = r.raw(4);
    if (!std::equal(magic.begin(), magic.end(), reinterpret_cast<const std::uint8_t*>(kWrapMagic))) {
        throw CorruptContainer("bad wrapped-DEK magic");
    }
    std::uint8_t version = r.u8();
    if (version != kVersion) throw VersionUnsupported("unsupported wrapped-DEK version");
    if (r.remaining() < 32) throw CorruptContainer("wrapped DEK too short");

    WrappedDek out;
    out.abe_ct = abe_ciphertext_from_bytes(bytes.subspan(5, bytes.size() - 5 - 32));
    auto digest = bytes.subspan(bytes.size() - 32);
    std::copy(digest.begin(), digest.end(), out.dek_digest.begin());
    return out;
}

WrappedDek wrap_dek(const PublicParams& pk, const AccessTree& tree, Dek& dek, RandomSource& rng) {
    Fr seed = random_scalar(pk.ctx, rng);
    Gt element = pk.ctx.gt_generator().pow(seed);
    WrappedDek out;
    out.abe_ct = encrypt(pk, tree, element, rng);
    dek.key = derive_key(element);
    out.dek_digest = sha256(ByteView(dek.key.data(), dek.key.size()));
    return out;
}

Dek unwrap_dek(const PublicParams& pk, const WrappedDek& wrapped, const PrivateKey& sk) {
    Gt element = decrypt(pk, wrapped.abe_ct, sk);
    Dek dek;
    dek.key = derive_key(element);
    if (sha256(ByteView(dek.key.data(), dek.key.size())) != wrapped.dek_digest) {
        throw IntegrityFailure("unwrapped key digest mismatch");
    }
    return dek;
}

Bytes FieldCiphertext::to_bytes() const {
    ByteWriter w;
    w.raw(ByteView(reinterpret_cast<const std::uint8_t*>(kFieldMagic), 4));
    w.u8(kVersion);
    w.u8(static_cast<std::uint8_t>(mode));
    w.raw(ByteView(iv.data(), iv.size()));
    w.raw(ByteView(dek_id.data(), dek_id.size()));
    w.u32(static_cast<std::uint32_t>(body.size()));
    w.raw(ByteView(body.data(), body.size()));
    return w.take();
}

FieldCiphertext FieldCiphertext::from_bytes(ByteView bytes) {
    ByteReader r(bytes);
    auto magic = r.raw(4);
    if (!std::equal(magic.begin(), magic.end(), reinterpret_cast<const std::uint8_t*>(kFieldMagic))) {
        throw CorruptContainer("bad field-ciphertext magic");
    }
    std::uint8_t version = r.u8();
    if (version != kVersion) throw VersionUnsupported("unsupported field-ciphertext version");
    std::uint8_t mode_byte = r.u8();
    if (mode_byte > 1) throw CorruptContainer("unknown field-ciphertext mode");

    FieldCiphertext fc;
    fc.mode = static_cast<SymMode>(mode_byte);
    auto iv = r.raw(16);
    std::copy(iv.begin(), iv.end(), fc.iv.begin());
    auto id = r.raw(16);
    std::copy(id.begin(), id.end(), fc.dek_id.begin());
    std::uint32_t len = r.u32();
    if (len == 0 || len % 16 != 0) throw CorruptContainer("field-ciphertext body length invalid");
    auto body = r.raw(len);
    fc.body.assign(body.begin(), body.end());
    if (!r.done()) throw CorruptContainer("trailing bytes after field ciphertext");
    if (fc.mode == SymMode::kDet) {
        for (auto b : fc.iv) {
            if (b) throw CorruptContainer("deterministic ciphertext with non-zero IV");
        }
    }
    return fc;
}

FieldCiphertext sym_encrypt(const Dek& dek, ByteView plaintext, SymMode mode, RandomSource& rng) {
    FieldCiphertext fc;
    fc.mode = mode;
    fc.dek_id = dek.id;
    if (mode == SymMode::kRnd) rng.fill(fc.iv);  // DET keeps the zero IV

    auto ctx = make_cipher_ctx();
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, dek.key.data(), fc.iv.data()) != 1) {
        throw Error("AES-CBC init failed");
    }
    fc.body.resize(plaintext.size() + 16);
    int n1 = 0;
    int n2 = 0;
    if (EVP_EncryptUpdate(ctx.get(), fc.body.data(), &n1, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1 ||
        EVP_EncryptFinal_ex(ctx.get(), fc.body.data() + n1, &n2) != 1) {
        throw Error("AES-CBC encryption failed");
    }
    fc.body.resize(static_cast<size_t>(n1) + static_cast<size_t>(n2));
    return fc;
}

Bytes sym_decrypt(const Dek& dek, const FieldCiphertext& fc) {
    if (fc.dek_id != dek.id) throw DekMismatch("ciphertext references a different DEK");
    if (fc.body.empty() || fc.body.size() % 16 != 0) {
        throw BadPadding("ciphertext body is not a positive multiple of the block size");
    }
    auto ctx = make_cipher_ctx();
    if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, dek.key.data(), fc.iv.data()) != 1) {
        throw Error("AES-CBC init failed");
    }
    Bytes out(fc.body.size() + 16);
    int n1 = 0;
    int n2 = 0;
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &n1, fc.body.data(),
                          static_cast<int>(fc.body.size())) != 1 ||
        EVP_DecryptFinal_ex(ctx.get(), out.data() + n1, &n2) != 1) {
        throw BadPadding("decryption failed (corrupt body or wrong key)");
    }
    out.resize(static_cast<size_t>(n1) + static_cast<size_t>(n2));
    return out;
}

}  // namespace cpabe
