#include "cpabe/digest.h"

#include <openssl/evp.h>

#include "cpabe/errors.h"

namespace cpabe {

Digest32 sha256(ByteView data) {
    Digest32 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size()) {
        throw Error("SHA-256 failed");
    }
    return out;
}

Digest32 sha256(std::string_view data) {
    return sha256(ByteView(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(static_cast<EVP_MD_CTX*>(ctx_), EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 init failed");
    }
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

Sha256& Sha256::update(ByteView data) {
    if (EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size()) != 1) {
        throw Error("SHA-256 update failed");
    }
    return *this;
}

Sha256& Sha256::update(std::string_view data) {
    return update(ByteView(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Digest32 Sha256::finish() {
    Digest32 out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), out.data(), &len) != 1 || len != out.size()) {
        throw Error("SHA-256 final failed");
    }
    return out;
}

}  // namespace cpabe
