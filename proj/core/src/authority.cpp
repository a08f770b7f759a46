#include "cpabe/authority.h"

#include <sys/stat.h>

#include <fstream>
#include <sstream>

namespace cpabe {

namespace {

constexpr std::uint8_t kVersion = 1;

const char* magic_for(KeyKind kind) {
    switch (kind) {
        case KeyKind::kPublic: return "CPPK";
        case KeyKind::kMaster: return "CPMK";
        case KeyKind::kPrivate: return "CPSK";
    }
    throw Error("unknown key kind");
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string s = buf.str();
    return Bytes(s.begin(), s.end());
}

void write_file(const std::filesystem::path& path, ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw StorageError("write failed for " + path.string());
}

}  // namespace

AttributeUniverse AttributeUniverse::from_list(const std::vector<std::string>& attrs) {
    if (attrs.empty()) throw UsageError("attribute universe must not be empty");
    AttributeUniverse u;
    for (const auto& a : attrs) {
        if (!is_valid_attribute(a)) throw InvalidAttributeToken("invalid attribute token: '" + a + "'");
        if (u.contains(a)) throw UsageError("duplicate attribute in universe: '" + a + "'");
        u.attributes.push_back(a);
    }
    return u;
}

bool AttributeUniverse::contains(const std::string& attr) const {
    for (const auto& a : attributes) {
        if (a == attr) return true;
    }
    return false;
}

Bytes key_container_to_bytes(const KeyContainer& c) {
    ByteWriter w;
    const char* magic = magic_for(c.kind);
    w.raw(ByteView(reinterpret_cast<const std::uint8_t*>(magic), 4));
    w.u8(c.version);
    w.raw(ByteView(c.payload.data(), c.payload.size()));
    return w.take();
}

KeyContainer key_container_from_bytes(ByteView bytes) {
    ByteReader r(bytes);
    auto magic = r.raw(4);
    std::string m(magic.begin(), magic.end());
    KeyContainer c;
    if (m == "CPPK") {
        c.kind = KeyKind::kPublic;
    } else if (m == "CPMK") {
        c.kind = KeyKind::kMaster;
    } else if (m == "CPSK") {
        c.kind = KeyKind::kPrivate;
    } else {
        throw CorruptContainer("unknown key container magic");
    }
    c.version = r.u8();
    if (c.version != kVersion) throw VersionUnsupported("unsupported key container version");
    auto rest = r.raw(r.remaining());
    c.payload.assign(rest.begin(), rest.end());
    return c;
}

KeyContainer export_public(const PublicParams& pk) {
    ByteWriter w;
    w.var16(pk.ctx.group_id());
    auto h = pk.h.to_bytes();
    w.var16(ByteView(h.data(), h.size()));
    auto e = pk.e_gg_alpha.to_bytes();
    w.var16(ByteView(e.data(), e.size()));
    return {KeyKind::kPublic, kVersion, w.take()};
}

PublicParams import_public(const KeyContainer& c) {
    if (c.kind != KeyKind::kPublic) throw CorruptContainer("container is not a public key");
    ByteReader r(ByteView(c.payload.data(), c.payload.size()));
    PublicParams pk{group_setup(kSupportedSecurityLevel), G1::identity(), Gt::one()};
    std::string group = r.var16_string();
    if (group != pk.ctx.group_id()) throw CorruptContainer("public key for unknown group");
    pk.h = G1::from_bytes(r.var16());
    pk.e_gg_alpha = Gt::from_bytes(r.var16());
    if (!r.done()) throw CorruptContainer("trailing bytes in public key");
    if (pk.h.is_identity() || pk.e_gg_alpha.is_one()) {
        throw CorruptContainer("degenerate public parameters");
    }
    return pk;
}

KeyContainer export_master(const MasterKey& mk) {
    ByteWriter w;
    auto beta = mk.beta.to_bytes();
    w.var16(ByteView(beta.data(), beta.size()));
    auto ga = mk.g_alpha.to_bytes();
    w.var16(ByteView(ga.data(), ga.size()));
    return {KeyKind::kMaster, kVersion, w.take()};
}

MasterKey import_master(const KeyContainer& c) {
    if (c.kind != KeyKind::kMaster) throw CorruptContainer("container is not a master key");
    ByteReader r(ByteView(c.payload.data(), c.payload.size()));
    auto beta = Fr::from_bytes(r.var16());
    if (!beta || beta->is_zero()) throw CorruptContainer("master beta out of range");
    MasterKey mk{*beta, G2::from_bytes(r.var16())};
    if (!r.done()) throw CorruptContainer("trailing bytes in master key");
    return mk;
}

KeyContainer export_private(const PrivateKey& sk) {
    ByteWriter w;
    w.u16(static_cast<std::uint16_t>(sk.attrs.size()));
    for (const auto& attr : sk.attrs) w.var16(attr);  // std::set keeps them sorted
    auto d = sk.d.to_bytes();
    w.var16(ByteView(d.data(), d.size()));
    for (const auto& attr : sk.attrs) {
        const AttributeKey& ak = sk.components.at(attr);
        auto da = ak.d_attr.to_bytes();
        w.var16(ByteView(da.data(), da.size()));
        auto dp = ak.d_prime.to_bytes();
        w.var16(ByteView(dp.data(), dp.size()));
    }
    return {KeyKind::kPrivate, kVersion, w.take()};
}

PrivateKey import_private(const KeyContainer& c) {
    if (c.kind != KeyKind::kPrivate) throw CorruptContainer("container is not a private key");
    ByteReader r(ByteView(c.payload.data(), c.payload.size()));
    PrivateKey sk;
    std::uint16_t count = r.u16();
    if (count == 0) throw CorruptContainer("private key without attributes");
    std::vector<std::string> order;
    for (std::uint16_t i = 0; i < count; ++i) {
        std::string attr = r.var16_string();
        if (!is_valid_attribute(attr)) throw CorruptContainer("private key with invalid attribute");
        if (!sk.attrs.insert(attr).second) throw CorruptContainer("duplicate key attribute");
        order.push_back(std::move(attr));
    }
    sk.d = G2::from_bytes(r.var16());
    for (const auto& attr : order) {
        G1 d_attr = G1::from_bytes(r.var16());
        G2 d_prime = G2::from_bytes(r.var16());
        sk.components.emplace(attr, AttributeKey{d_attr, d_prime});
    }
    if (!r.done()) throw CorruptContainer("trailing bytes in private key");
    return sk;
}

void write_key_file(const std::filesystem::path& path, const KeyContainer& c,
                    bool restrict_permissions) {
    Bytes data = key_container_to_bytes(c);
    write_file(path, ByteView(data.data(), data.size()));
    if (restrict_permissions) ::chmod(path.c_str(), 0600);
}

KeyContainer read_key_file(const std::filesystem::path& path) {
    Bytes data = read_file(path);
    return key_container_from_bytes(ByteView(data.data(), data.size()));
}

std::pair<PublicParams, MasterKey> aa_bootstrap(const std::filesystem::path& dir,
                                                const AttributeUniverse& universe,
                                                RandomSource& rng) {
    if (universe.attributes.empty()) throw UsageError("attribute universe must not be empty");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (std::filesystem::exists(dir / "pk.bin") || std::filesystem::exists(dir / "mk.bin")) {
        throw StorageError("authority already bootstrapped in " + dir.string());
    }

    auto [pk, mk] = setup(group_setup(kSupportedSecurityLevel), rng);
    write_key_file(dir / "pk.bin", export_public(pk));
    write_key_file(dir / "mk.bin", export_master(mk), /*restrict_permissions=*/true);

    std::string universe_text;
    for (const auto& a : universe.attributes) {
        universe_text += a;
        universe_text += '\n';
    }
    write_file(dir / "universe.txt",
               ByteView(reinterpret_cast<const std::uint8_t*>(universe_text.data()),
                        universe_text.size()));
    write_file(dir / "users.tsv", ByteView());
    return {pk, mk};
}

UserRecord issue_user_key(const std::filesystem::path& dir, const MasterKey& mk,
                          const PublicParams& pk, const std::string& user_id,
                          const AttributeSet& attrs, const AttributeUniverse& universe,
                          KeyContainer* key_out, RandomSource& rng) {
    if (user_id.empty() || user_id.find('\t') != std::string::npos ||
        user_id.find('\n') != std::string::npos) {
        throw UsageError("invalid user id");
    }
    for (const auto& a : attrs) {
        if (!universe.contains(a)) throw UnknownAttribute("attribute '" + a + "' not in universe");
    }
    for (const auto& existing : load_users(dir)) {
        if (existing.user_id == user_id) throw DuplicateUser("user '" + user_id + "' already exists");
    }

    PrivateKey sk = keygen(mk, pk, attrs, rng);
    KeyContainer container = export_private(sk);
    UserRecord rec;
    rec.user_id = user_id;
    rec.attrs = attrs;
    rec.key_fingerprint = sha256(ByteView(container.payload.data(), container.payload.size()));

    std::ofstream out(dir / "users.tsv", std::ios::app);
    if (!out) throw StorageError("cannot open user registry");
    std::string attr_list;
    for (const auto& a : attrs) {
        if (!attr_list.empty()) attr_list += ',';
        attr_list += a;
    }
    out << rec.user_id << '\t' << attr_list << '\t'
        << to_hex(ByteView(rec.key_fingerprint.data(), rec.key_fingerprint.size())) << '\n';
    if (!out) throw StorageError("cannot append to user registry");

    if (key_out != nullptr) *key_out = std::move(container);
    return rec;
}

PublicParams load_public(const std::filesystem::path& dir) {
    return import_public(read_key_file(dir / "pk.bin"));
}

MasterKey load_master(const std::filesystem::path& dir) {
    return import_master(read_key_file(dir / "mk.bin"));
}

AttributeUniverse load_universe(const std::filesystem::path& dir) {
    std::ifstream in(dir / "universe.txt");
    if (!in) throw StorageError("cannot open universe file");
    std::vector<std::string> attrs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) attrs.push_back(line);
    }
    return AttributeUniverse::from_list(attrs);
}

std::vector<UserRecord> load_users(const std::filesystem::path& dir) {
    std::ifstream in(dir / "users.tsv");
    if (!in) throw StorageError("cannot open user registry");
    std::vector<UserRecord> users;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t t1 = line.find('\t');
        size_t t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw StorageError("corrupt user registry line");
        }
        UserRecord rec;
        rec.user_id = line.substr(0, t1);
        std::string attrs = line.substr(t1 + 1, t2 - t1 - 1);
        size_t start = 0;
        while (start < attrs.size()) {
            size_t comma = attrs.find(',', start);
            if (comma == std::string::npos) comma = attrs.size();
            rec.attrs.insert(attrs.substr(start, comma - start));
            start = comma + 1;
        }
        Bytes fp = from_hex(line.substr(t2 + 1));
        if (fp.size() != rec.key_fingerprint.size()) throw StorageError("corrupt fingerprint");
        std::copy(fp.begin(), fp.end(), rec.key_fingerprint.begin());
        users.push_back(std::move(rec));
    }
    return users;
}

}  // namespace cpabe
