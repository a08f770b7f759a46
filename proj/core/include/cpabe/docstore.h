#pragma once

#include <filesystem>
#include <optional>

#include "cpabe/envelope.h"

namespace cpabe {

enum class FieldMode : std::uint8_t { kPlain, kDet, kRnd };

std::string_view field_mode_name(FieldMode mode);
FieldMode field_mode_from_name(std::string_view name);  // throws UsageError

// Requested shape of one collection field.
struct FieldSpec {
    std::string name;
    FieldMode mode = FieldMode::kPlain;
    std::string policy;  // required for encrypted modes
};

// A configured field: encrypted modes carry the policy, the wrapped DEK and
// its id. One DEK per (collection, field), so DET equality leaks only within
// a field.
struct FieldConfig {
    std::string name;
    FieldMode mode = FieldMode::kPlain;
    std::string policy;
    std::array<std::uint8_t, 16> dek_id{};
    std::optional<WrappedDek> wrapped_dek;
};

using Document = std::map<std::string, std::string>;

// Stored value: either a plaintext string or serialized FieldCiphertext
// bytes. The store itself never sees a key.
struct StoredValue {
    bool plain = false;
    std::string text;
    Bytes cipher;
};

struct StoredDocument {
    std::uint64_t id = 0;
    std::map<std::string, StoredValue> values;
};

struct Collection {
    std::string name;
    std::vector<FieldConfig> fields;
    std::vector<StoredDocument> docs;
    std::filesystem::path path;  // empty for a memory-only collection

    const FieldConfig* find_field(const std::string& name) const;
    std::uint64_t next_doc_id() const { return docs.empty() ? 1 : docs.back().id + 1; }
};

// Creates the collection and wraps one fresh DEK per encrypted field.
// A non-empty store_path must not already exist.
Collection create_collection(const std::filesystem::path& store_path, const std::string& name,
                             const std::vector<FieldSpec>& specs, const PublicParams& pk,
                             RandomSource& rng = system_rng());

// The writer's key must unwrap every encrypted field present in the document
// (encryption needs the DEK), otherwise PolicyNotSatisfied.
std::uint64_t insert(Collection& coll, const Document& doc, const PublicParams& pk,
                     const PrivateKey& sk_writer, RandomSource& rng = system_rng());

// Bulk insert; unwraps each field DEK once for the whole batch.
std::vector<std::uint64_t> insert_many(Collection& coll, const std::vector<Document>& docs,
                                       const PublicParams& pk, const PrivateKey& sk_writer,
                                       RandomSource& rng = system_rng());

struct DecodedField {
    enum class State { kPlain, kDecrypted, kOpaque };
    State state = State::kOpaque;
    std::string value;  // empty when opaque
};

struct DecodedDocument {
    std::uint64_t id = 0;
    std::map<std::string, DecodedField> fields;
};

// Q1: returns every document; fields whose DEK unwraps under sk come back
// decrypted, the rest stay opaque.
std::vector<DecodedDocument> find_all(const Collection& coll, const PublicParams& pk,
                                      const PrivateKey& sk);

// Q2: server-side equality. DET fields match by ciphertext-byte comparison
// against a freshly formed token; plaintext fields by direct comparison; RND
// fields reject with NotDeterministicField.
std::vector<DecodedDocument> find_eq(const Collection& coll, const std::string& field,
                                     const std::string& value, const PublicParams& pk,
                                     const PrivateKey& sk);

// Bit-stable persistence: one JSON header line (checksummed), then one JSON
// line per document with binary payloads base64-armored.
void save_collection(const Collection& coll, const std::filesystem::path& path);
Collection load_collection(const std::filesystem::path& path);  // CorruptStore, VersionUnsupported

}  // namespace cpabe
