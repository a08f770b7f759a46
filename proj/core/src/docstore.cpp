#include "cpabe/docstore.h"

#include <fstream>

#include "json.hpp"

namespace cpabe {

namespace {

using nlohmann::json;

constexpr int kStoreVersion = 1;

json header_json(const Collection& coll, const std::string& checksum) {
    json fields = json::array();
    for (const auto& f : coll.fields) {
        json jf;
        jf["name"] = f.name;
        jf["mode"] = std::string(field_mode_name(f.mode));
        if (f.mode != FieldMode::kPlain) {
            jf["policy"] = f.policy;
            jf["dek_id"] = to_hex(ByteView(f.dek_id.data(), f.dek_id.size()));
            Bytes wrapped = f.wrapped_dek->to_bytes();
            jf["wrapped_dek"] = base64_encode(ByteView(wrapped.data(), wrapped.size()));
        }
        fields.push_back(std::move(jf));
    }
    json h;
    h["format"] = "CPST";
    h["version"] = kStoreVersion;
    h["name"] = coll.name;
    h["fields"] = std::move(fields);
    h["checksum"] = checksum;
    return h;
}

std::string header_line(const Collection& coll) {
    // checksum covers the canonical dump with the checksum slot blanked
    json h = header_json(coll, "");
    auto digest = sha256(h.dump());
    h["checksum"] = to_hex(ByteView(digest.data(), digest.size()));
    return h.dump();
}

std::string doc_line(const StoredDocument& doc) {
    json values = json::object();
    for (const auto& [name, value] : doc.values) {
        if (value.plain) {
            values[name] = json{{"pt", value.text}};
        } else {
            values[name] = json{{"ct", base64_encode(ByteView(value.cipher.data(), value.cipher.size()))}};
        }
    }
    json d;
    d["id"] = doc.id;
    d["values"] = std::move(values);
    return d.dump();
}

void append_line(const std::filesystem::path& path, const std::string& line) {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw StorageError("cannot open store " + path.string());
    out << line << '\n';
    if (!out) throw StorageError("write failed for store " + path.string());
}

// Unwraps the DEKs of every encrypted field sk can open; nullopt for the rest.
std::map<std::string, std::optional<Dek>> unwrap_field_deks(const Collection& coll,
                                                            const PublicParams& pk,
                                                            const PrivateKey& sk) {
    std::map<std::string, std::optional<Dek>> deks;
    for (const auto& f : coll.fields) {
        if (f.mode == FieldMode::kPlain) continue;
        try {
            Dek dek = unwrap_dek(pk, *f.wrapped_dek, sk);
            dek.id = f.dek_id;
            deks.emplace(f.name, std::move(dek));
        } catch (const PolicyNotSatisfied&) {
            deks.emplace(f.name, std::nullopt);
        }
    }
    return deks;
}

DecodedDocument decode_document(const StoredDocument& doc,
                                const std::map<std::string, std::optional<Dek>>& deks) {
    DecodedDocument out;
    out.id = doc.id;
    for (const auto& [name, value] : doc.values) {
        DecodedField df;
        if (value.plain) {
            df.state = DecodedField::State::kPlain;
            df.value = value.text;
        } else {
            auto it = deks.find(name);
            if (it != deks.end() && it->second.has_value()) {
                FieldCiphertext fc = FieldCiphertext::from_bytes(ByteView(value.cipher.data(), value.cipher.size()));
                Bytes plain = sym_decrypt(*it->second, fc);
                df.state = DecodedField::State::kDecrypted;
                df.value.assign(plain.begin(), plain.end());
            } else {
                df.state = DecodedField::State::kOpaque;
            }
        }
        out.fields.emplace(name, std::move(df));
    }
    return out;
}

}  // namespace

std::string_view field_mode_name(FieldMode mode) {
    switch (mode) {
        case FieldMode::kPlain: return "plain";
        case FieldMode::kDet: return "det";
        case FieldMode::kRnd: return "rnd";
    }
    throw Error("unknown field mode");
}

FieldMode field_mode_from_name(std::string_view name) {
    if (name == "plain") return FieldMode::kPlain;
    if (name == "det") return FieldMode::kDet;
    if (name == "rnd") return FieldMode::kRnd;
    throw UsageError("unknown field mode '" + std::string(name) + "'");
}

const FieldConfig* Collection::find_field(const std::string& field_name) const {
    for (const auto& f : fields) {
        if (f.name == field_name) return &f;
    }
    return nullptr;
}

Collection create_collection(const std::filesystem::path& store_path, const std::string& name,
                             const std::vector<FieldSpec>& specs, const PublicParams& pk,
                             RandomSource& rng) {
    Collection coll;
    coll.name = name;
    coll.path = store_path;
    for (const auto& spec : specs) {
        if (coll.find_field(spec.name) != nullptr) {
            throw DuplicateField("duplicate field '" + spec.name + "'");
        }
        FieldConfig cfg;
        cfg.name = spec.name;
        cfg.mode = spec.mode;
        if (spec.mode != FieldMode::kPlain) {
            AccessTree tree = parse_policy(spec.policy);
            cfg.policy = print_policy(tree);
            Dek dek = Dek::create(rng);
            cfg.dek_id = dek.id;
            cfg.wrapped_dek = wrap_dek(pk, tree, dek, rng);
        }
        coll.fields.push_back(std::move(cfg));
    }
    if (!store_path.empty()) {
        if (std::filesystem::exists(store_path)) {
            throw StorageError("store already exists: " + store_path.string());
        }
        append_line(store_path, header_line(coll));
    }
    return coll;
}

std::vector<std::uint64_t> insert_many(Collection& coll, const std::vector<Document>& docs,
                                       const PublicParams& pk, const PrivateKey& sk_writer,
                                       RandomSource& rng) {
    // One unwrap per touched encrypted field for the whole batch.
    std::map<std::string, Dek> deks;
    for (const auto& doc : docs) {
        for (const auto& [name, _] : doc) {
            const FieldConfig* cfg = coll.find_field(name);
            if (cfg == nullptr) throw UnknownField("field '" + name + "' is not configured");
            if (cfg->mode == FieldMode::kPlain || deks.count(name)) continue;
            Dek dek = unwrap_dek(pk, *cfg->wrapped_dek, sk_writer);  // PolicyNotSatisfied propagates
            dek.id = cfg->dek_id;
            deks.emplace(name, std::move(dek));
        }
    }

    std::vector<std::uint64_t> ids;
    ids.reserve(docs.size());
    for (const auto& doc : docs) {
        StoredDocument stored;
        stored.id = coll.next_doc_id();
        for (const auto& [name, text] : doc) {
            const FieldConfig* cfg = coll.find_field(name);
            StoredValue value;
            if (cfg->mode == FieldMode::kPlain) {
                value.plain = true;
                value.text = text;
            } else {
                SymMode mode = cfg->mode == FieldMode::kDet ? SymMode::kDet : SymMode::kRnd;
                FieldCiphertext fc =
                    sym_encrypt(deks.at(name),
                                ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()),
                                mode, rng);
                value.cipher = fc.to_bytes();
            }
            stored.values.emplace(name, std::move(value));
        }
        if (!coll.path.empty()) append_line(coll.path, doc_line(stored));
        coll.docs.push_back(std::move(stored));
        ids.push_back(coll.docs.back().id);
    }
    return ids;
}

std::uint64_t insert(Collection& coll, const Document& doc, const PublicParams& pk,
                     const PrivateKey& sk_writer, RandomSource& rng) {
    return insert_many(coll, {doc}, pk, sk_writer, rng).front();
}

std::vector<DecodedDocument> find_all(const Collection& coll, const PublicParams& pk,
                                      const PrivateKey& sk) {
    auto deks = unwrap_field_deks(coll, pk, sk);
    std::vector<DecodedDocument> out;
    out.reserve(coll.docs.size());
    for (const auto& doc : coll.docs) out.push_back(decode_document(doc, deks));
    return out;
}

std::vector<DecodedDocument> find_eq(const Collection& coll, const std::string& field,
                                     const std::string& value, const PublicParams& pk,
                                     const PrivateKey& sk) {
    const FieldConfig* cfg = coll.find_field(field);
    if (cfg == nullptr) throw UnknownField("field '" + field + "' is not configured");
    if (cfg->mode == FieldMode::kRnd) {
        throw NotDeterministicField("field '" + field + "' is randomized; equality is not supported");
    }

    std::vector<const StoredDocument*> matches;
    if (cfg->mode == FieldMode::kPlain) {
        for (const auto& doc : coll.docs) {
            auto it = doc.values.find(field);
            if (it != doc.values.end() && it->second.plain && it->second.text == value) {
                matches.push_back(&doc);
            }
        }
    } else {
        Dek dek = unwrap_dek(pk, *cfg->wrapped_dek, sk);  // PolicyNotSatisfied propagates
        dek.id = cfg->dek_id;
        FieldCiphertext token = sym_encrypt(
            dek, ByteView(reinterpret_cast<const std::uint8_t*>(value.data()), value.size()),
            SymMode::kDet, system_rng());
        Bytes token_bytes = token.to_bytes();
        for (const auto& doc : coll.docs) {
            auto it = doc.values.find(field);
            if (it != doc.values.end() && !it->second.plain && it->second.cipher == token_bytes) {
                matches.push_back(&doc);
            }
        }
    }

    auto deks = unwrap_field_deks(coll, pk, sk);
    std::vector<DecodedDocument> out;
    out.reserve(matches.size());
    for (const StoredDocument* doc : matches) out.push_back(decode_document(*doc, deks));
    return out;
}

void save_collection(const Collection& coll, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot create store " + path.string());
    out << header_line(coll) << '\n';
    for (const auto& doc : coll.docs) out << doc_line(doc) << '\n';
    if (!out) throw StorageError("write failed for store " + path.string());
}

Collection load_collection(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot open store " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw CorruptStore("store is empty");

    json h = json::parse(line, nullptr, false);
    if (h.is_discarded() || !h.is_object()) throw CorruptStore("store header is not valid JSON");
    try {
        if (h.at("format").get<std::string>() != "CPST") throw CorruptStore("bad store format tag");
        if (h.at("version").get<int>() != kStoreVersion) {
            throw VersionUnsupported("unsupported store version");
        }
        std::string checksum = h.at("checksum").get<std::string>();
        json norm = h;
        norm["checksum"] = "";
        auto digest = sha256(norm.dump());
        if (checksum != to_hex(ByteView(digest.data(), digest.size()))) {
            throw CorruptStore("store header checksum mismatch");
        }

        Collection coll;
        coll.name = h.at("name").get<std::string>();
        coll.path = path;
        for (const auto& jf : h.at("fields")) {
            FieldConfig cfg;
            cfg.name = jf.at("name").get<std::string>();
            cfg.mode = field_mode_from_name(jf.at("mode").get<std::string>());
            if (cfg.mode != FieldMode::kPlain) {
                cfg.policy = jf.at("policy").get<std::string>();
                Bytes id = from_hex(jf.at("dek_id").get<std::string>());
                if (id.size() != cfg.dek_id.size()) throw CorruptStore("bad dek id");
                std::copy(id.begin(), id.end(), cfg.dek_id.begin());
                Bytes wrapped = base64_decode(jf.at("wrapped_dek").get<std::string>());
                cfg.wrapped_dek = WrappedDek::from_bytes(ByteView(wrapped.data(), wrapped.size()));
            }
            coll.fields.push_back(std::move(cfg));
        }

        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json d = json::parse(line, nullptr, false);
            if (d.is_discarded()) throw CorruptStore("corrupt document record");
            StoredDocument doc;
            doc.id = d.at("id").get<std::uint64_t>();
            if (!coll.docs.empty() && doc.id <= coll.docs.back().id) {
                throw CorruptStore("document ids out of order");
            }
            for (const auto& [name, jv] : d.at("values").items()) {
                StoredValue value;
                if (jv.contains("pt")) {
                    value.plain = true;
                    value.text = jv.at("pt").get<std::string>();
                } else {
                    value.cipher = base64_decode(jv.at("ct").get<std::string>());
                }
                doc.values.emplace(name, std::move(value));
            }
            coll.docs.push_back(std::move(doc));
        }
        return coll;
    } catch (const json::exception&) {
        throw CorruptStore("store record missing required fields");
    }
}

}  // namespace cpabe
