#include "cpabe/docstore.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cpabe/bench.h"
#include "doctest.h"

using namespace cpabe;
namespace fs = std::filesystem;

namespace {

struct Fixture {
    GroupContext ctx = group_setup(128);
    SeededRandom rng{4242};
    PublicParams pk;
    MasterKey mk;
    PrivateKey admin, analyst;
    std::vector<FieldSpec> specs = {
        {"name", FieldMode::kDet, "analyst or admin"},
        {"salary", FieldMode::kRnd, "admin"},
        {"credit_card_number", FieldMode::kRnd, "admin"},
    };

    Fixture() {
        auto [p, m] = setup(ctx, rng);
        pk = p;
        mk = m;
        admin = keygen(mk, pk, {"admin"}, rng);
        analyst = keygen(mk, pk, {"analyst"}, rng);
    }

    Collection make(const fs::path& path = {}) {
        return create_collection(path, "employees", specs, pk, rng);
    }
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cpabe_store_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("collection creation wraps one DEK per encrypted field") {
    Fixture fx;
    Collection coll = fx.make();
    REQUIRE(coll.fields.size() == 3);
    CHECK(coll.fields[0].wrapped_dek.has_value());
    CHECK(coll.fields[1].wrapped_dek.has_value());
    CHECK(coll.fields[2].wrapped_dek.has_value());
    CHECK(coll.fields[0].dek_id != coll.fields[1].dek_id);

    std::vector<FieldSpec> plain = {{"note", FieldMode::kPlain, ""}};
    Collection c2 = create_collection({}, "notes", plain, fx.pk, fx.rng);
    CHECK_FALSE(c2.fields[0].wrapped_dek.has_value());

    std::vector<FieldSpec> dup = {{"x", FieldMode::kPlain, ""}, {"x", FieldMode::kDet, "admin"}};
    CHECK_THROWS_AS(create_collection({}, "dup", dup, fx.pk, fx.rng), DuplicateField);

    std::vector<FieldSpec> bad = {{"x", FieldMode::kDet, "admin and"}};
    CHECK_THROWS_AS(create_collection({}, "bad", bad, fx.pk, fx.rng), SyntaxError);
}

TEST_CASE("inserts assign monotone ids and enforce the field list") {
    Fixture fx;
    Collection coll = fx.make();
    Document doc = {{"name", "Alice"}, {"salary", "100"}, {"credit_card_number", "4111111111111111"}};
    CHECK(insert(coll, doc, fx.pk, fx.admin, fx.rng) == 1);
    CHECK(insert(coll, doc, fx.pk, fx.admin, fx.rng) == 2);

    Document stray = {{"name", "Bob"}, {"nickname", "bobby"}};
    CHECK_THROWS_AS(insert(coll, stray, fx.pk, fx.admin, fx.rng), UnknownField);

    // a writer that cannot unwrap the salary DEK cannot insert salary values
    Document salary_only = {{"salary", "123"}};
    CHECK_THROWS_AS(insert(coll, salary_only, fx.pk, fx.analyst, fx.rng), PolicyNotSatisfied);
}

TEST_CASE("DET fields repeat bytes for equal values, RND fields never do") {
    Fixture fx;
    Collection coll = fx.make();
    Document doc = {{"name", "Alice"}, {"salary", "100"}, {"credit_card_number", "4111111111111111"}};
    insert(coll, doc, fx.pk, fx.admin, fx.rng);
    insert(coll, doc, fx.pk, fx.admin, fx.rng);

    CHECK(coll.docs[0].values.at("name").cipher == coll.docs[1].values.at("name").cipher);
    CHECK(coll.docs[0].values.at("salary").cipher != coll.docs[1].values.at("salary").cipher);
    CHECK(coll.docs[0].values.at("credit_card_number").cipher !=
          coll.docs[1].values.at("credit_card_number").cipher);
}

TEST_CASE("find_all decrypts per-field according to the key") {
    Fixture fx;
    Collection coll = fx.make();
    CHECK(find_all(coll, fx.pk, fx.admin).empty());

    for (int i = 0; i < 5; ++i) {
        Document doc = {{"name", i % 2 ? "Alice" : "Bob"},
                        {"salary", std::to_string(1000 + i)},
                        {"credit_card_number", "4111111111111111"}};
        insert(coll, doc, fx.pk, fx.admin, fx.rng);
    }

    auto full = find_all(coll, fx.pk, fx.admin);
    REQUIRE(full.size() == 5);
    for (const auto& d : full) {
        CHECK(d.fields.at("name").state == DecodedField::State::kDecrypted);
        CHECK(d.fields.at("salary").state == DecodedField::State::kDecrypted);
    }
    CHECK(full[1].fields.at("name").value == "Alice");
    CHECK(full[0].fields.at("salary").value == "1000");

    auto partial = find_all(coll, fx.pk, fx.analyst);
    REQUIRE(partial.size() == 5);
    for (const auto& d : partial) {
        CHECK(d.fields.at("name").state == DecodedField::State::kDecrypted);
        CHECK(d.fields.at("salary").state == DecodedField::State::kOpaque);
        CHECK(d.fields.at("salary").value.empty());
        CHECK(d.fields.at("credit_card_number").state == DecodedField::State::kOpaque);
    }
}

TEST_CASE("find_eq matches the plaintext oracle over seeded datasets") {
    Fixture fx;
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        Collection coll = fx.make();
        auto dataset = bench::gen_dataset(seed, 100);
        insert_many(coll, dataset, fx.pk, fx.admin, fx.rng);

        for (const char* probe : {"Alice", "Bob", "Zelda"}) {
            std::vector<std::uint64_t> oracle_ids;
            for (size_t i = 0; i < dataset.size(); ++i) {
                if (dataset[i].at("name") == probe) oracle_ids.push_back(i + 1);
            }
            std::vector<std::uint64_t> got_ids;
            for (const auto& d : find_eq(coll, "name", probe, fx.pk, fx.admin)) {
                got_ids.push_back(d.id);
            }
            CHECK(got_ids == oracle_ids);
        }
    }
}

TEST_CASE("find_eq mode and policy contracts") {
    Fixture fx;
    Collection coll = fx.make();
    Document doc = {{"name", "Alice"}, {"salary", "100"}, {"credit_card_number", "4111111111111111"}};
    insert(coll, doc, fx.pk, fx.admin, fx.rng);

    CHECK_THROWS_AS(find_eq(coll, "salary", "100", fx.pk, fx.admin), NotDeterministicField);
    CHECK_THROWS_AS(find_eq(coll, "age", "30", fx.pk, fx.admin), UnknownField);
    CHECK(find_eq(coll, "name", "Nobody", fx.pk, fx.admin).empty());

    // a DET field whose policy the key fails
    std::vector<FieldSpec> specs = {{"secret", FieldMode::kDet, "admin"}};
    Collection c2 = create_collection({}, "secrets", specs, fx.pk, fx.rng);
    insert(c2, {{"secret", "x"}}, fx.pk, fx.admin, fx.rng);
    CHECK_THROWS_AS(find_eq(c2, "secret", "x", fx.pk, fx.analyst), PolicyNotSatisfied);

    // plaintext fields fall back to a trivial scan
    std::vector<FieldSpec> specs3 = {{"tag", FieldMode::kPlain, ""}};
    Collection c3 = create_collection({}, "tags", specs3, fx.pk, fx.rng);
    insert(c3, {{"tag", "red"}}, fx.pk, fx.admin, fx.rng);
    insert(c3, {{"tag", "blue"}}, fx.pk, fx.admin, fx.rng);
    auto hits = find_eq(c3, "tag", "red", fx.pk, fx.admin);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].id == 1);
}

TEST_CASE("equality leakage is scoped to a single field") {
    Fixture fx;
    // same value into two DET fields with distinct DEKs
    std::vector<FieldSpec> specs = {
        {"left", FieldMode::kDet, "admin"},
        {"right", FieldMode::kDet, "admin"},
    };
    Collection coll = create_collection({}, "two", specs, fx.pk, fx.rng);
    insert(coll, {{"left", "same"}, {"right", "same"}}, fx.pk, fx.admin, fx.rng);
    const auto& doc = coll.docs[0];
    CHECK(doc.values.at("left").cipher != doc.values.at("right").cipher);
}

TEST_CASE("persistence round trips bit-exactly and keeps DET equality") {
    Fixture fx;
    TempDir tmp;
    fs::path store = tmp.path / "employees.cpst";

    Collection coll = fx.make(store);
    auto dataset = bench::gen_dataset(7, 20);
    insert_many(coll, dataset, fx.pk, fx.admin, fx.rng);

    Collection loaded = load_collection(store);
    CHECK(loaded.name == coll.name);
    REQUIRE(loaded.docs.size() == coll.docs.size());
    for (size_t i = 0; i < coll.docs.size(); ++i) {
        CHECK(loaded.docs[i].values.at("name").cipher == coll.docs[i].values.at("name").cipher);
    }

    // save(load(file)) reproduces the exact file
    fs::path copy = tmp.path / "copy.cpst";
    save_collection(loaded, copy);
    std::ifstream a(store, std::ios::binary), b(copy, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    // queries behave identically after reload
    auto before = find_eq(coll, "name", "Alice", fx.pk, fx.admin);
    auto after = find_eq(loaded, "name", "Alice", fx.pk, fx.admin);
    REQUIRE(before.size() == after.size());
    for (size_t i = 0; i < before.size(); ++i) CHECK(before[i].id == after[i].id);

    CHECK_THROWS_AS(fx.make(store), StorageError);  // refuse overwrite
}

TEST_CASE("store tampering is detected") {
    Fixture fx;
    TempDir tmp;
    fs::path store = tmp.path / "s.cpst";
    Collection coll = fx.make(store);
    insert(coll, {{"name", "Alice"}}, fx.pk, fx.admin, fx.rng);

    std::ifstream in(store);
    std::string header, doc;
    std::getline(in, header);
    std::getline(in, doc);
    in.close();

    // flip the collection name inside the checksummed header
    std::string tampered = header;
    auto pos = tampered.find("employees");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 9, "emplOyees");
    {
        std::ofstream out(store, std::ios::trunc);
        out << tampered << '\n' << doc << '\n';
    }
    CHECK_THROWS_AS(load_collection(store), CorruptStore);

    {
        std::ofstream out(store, std::ios::trunc);
        out << "not json at all\n";
    }
    CHECK_THROWS_AS(load_collection(store), CorruptStore);

    std::string version_bumped = header;
    pos = version_bumped.find("\"version\":1");
    REQUIRE(pos != std::string::npos);
    version_bumped.replace(pos, 11, "\"version\":9");
    {
        std::ofstream out(store, std::ios::trunc);
        out << version_bumped << '\n';
    }
    // version check fires before the checksum comparison
    CHECK_THROWS_AS(load_collection(store), VersionUnsupported);
}

TEST_CASE("access-control soundness across a key/field matrix") {
    Fixture fx;
    Collection coll = fx.make();
    auto dataset = bench::gen_dataset(3, 10);
    insert_many(coll, dataset, fx.pk, fx.admin, fx.rng);

    PrivateKey both = keygen(fx.mk, fx.pk, {"analyst", "admin"}, fx.rng);
    struct Expectation {
        const PrivateKey* key;
        bool name_ok, salary_ok;
    };
    for (const Expectation& e : {Expectation{&fx.admin, true, true},
                                 Expectation{&fx.analyst, true, false},
                                 Expectation{&both, true, true}}) {
        for (const auto& d : find_all(coll, fx.pk, *e.key)) {
            CHECK((d.fields.at("name").state == DecodedField::State::kDecrypted) == e.name_ok);
            CHECK((d.fields.at("salary").state == DecodedField::State::kDecrypted) == e.salary_ok);
        }
    }
}
