#pragma once

#include <filesystem>
#include <vector>

#include "cpabe/envelope.h"

namespace cpabe {

// The attribute universe managed by the authority; issued keys must stay
// inside it.
struct AttributeUniverse {
    std::vector<std::string> attributes;  // insertion order, no duplicates

    static AttributeUniverse from_list(const std::vector<std::string>& attrs);
    bool contains(const std::string& attr) const;
};

struct UserRecord {
    std::string user_id;
    AttributeSet attrs;
    Digest32 key_fingerprint{};  // SHA-256 of the issued private-key container payload
};

enum class KeyKind : std::uint8_t { kPublic, kMaster, kPrivate };

// Versioned byte container for key material. Magics: CPPK / CPMK / CPSK.
struct KeyContainer {
    KeyKind kind = KeyKind::kPublic;
    std::uint8_t version = 1;
    Bytes payload;
};

Bytes key_container_to_bytes(const KeyContainer& c);
KeyContainer key_container_from_bytes(ByteView bytes);  // CorruptContainer, VersionUnsupported

KeyContainer export_public(const PublicParams& pk);
KeyContainer export_master(const MasterKey& mk);
KeyContainer export_private(const PrivateKey& sk);
PublicParams import_public(const KeyContainer& c);
MasterKey import_master(const KeyContainer& c);
PrivateKey import_private(const KeyContainer& c);

void write_key_file(const std::filesystem::path& path, const KeyContainer& c,
                    bool restrict_permissions = false);
KeyContainer read_key_file(const std::filesystem::path& path);

// Authority directory layout: pk.bin, mk.bin, universe.txt, users.tsv.
// Bootstrap refuses to overwrite an existing authority. Issuance appends to
// the user registry; concurrent issuers must be serialized externally.
std::pair<PublicParams, MasterKey> aa_bootstrap(const std::filesystem::path& dir,
                                                const AttributeUniverse& universe,
                                                RandomSource& rng = system_rng());

UserRecord issue_user_key(const std::filesystem::path& dir, const MasterKey& mk,
                          const PublicParams& pk, const std::string& user_id,
                          const AttributeSet& attrs, const AttributeUniverse& universe,
                          KeyContainer* key_out, RandomSource& rng = system_rng());

PublicParams load_public(const std::filesystem::path& dir);
MasterKey load_master(const std::filesystem::path& dir);
AttributeUniverse load_universe(const std::filesystem::path& dir);
std::vector<UserRecord> load_users(const std::filesystem::path& dir);

}  // namespace cpabe
