#include "cpabe/policy.h"

#include <random>

#include "doctest.h"
#include "support/corpus.h"
#include "support/oracles.h"

using namespace cpabe;

TEST_CASE("single attribute parses to a lone leaf") {
    AccessTree t = parse_policy("a");
    CHECK(t.nodes.size() == 1);
    CHECK(t.node(t.root).kind == AccessNode::Kind::kLeaf);
    CHECK(t.node(t.root).attribute == "a");
    CHECK(t.node(t.root).threshold == 1);
}

TEST_CASE("hand-checked structure for the running example") {
    AccessTree t = parse_policy("(doctor and cardiology) or admin");
    const AccessNode& root = t.node(t.root);
    REQUIRE(root.kind == AccessNode::Kind::kGate);
    CHECK(root.threshold == 1);  // OR
    REQUIRE(root.children.size() == 2);

    const AccessNode& left = t.node(root.children[0]);
    REQUIRE(left.kind == AccessNode::Kind::kGate);
    CHECK(left.threshold == 2);  // AND
    REQUIRE(left.children.size() == 2);
    CHECK(t.node(left.children[0]).attribute == "doctor");
    CHECK(t.node(left.children[1]).attribute == "cardiology");

    CHECK(t.node(root.children[1]).attribute == "admin");
}

TEST_CASE("n-ary gates flatten and precedence holds") {
    AccessTree t = parse_policy("a and b and c");
    CHECK(t.node(t.root).threshold == 3);
    CHECK(t.node(t.root).children.size() == 3);

    // and binds tighter than or
    AccessTree t2 = parse_policy("a or b and c");
    const AccessNode& root = t2.node(t2.root);
    CHECK(root.threshold == 1);
    REQUIRE(root.children.size() == 2);
    CHECK(t2.node(root.children[0]).kind == AccessNode::Kind::kLeaf);
    CHECK(t2.node(root.children[1]).threshold == 2);
}

TEST_CASE("threshold gates") {
    AccessTree t = parse_policy("2 of (a, b, c)");
    CHECK(t.node(t.root).threshold == 2);
    CHECK(t.node(t.root).children.size() == 3);

    CHECK_THROWS_AS(parse_policy("3 of (a, b)"), ThresholdOutOfRange);
    CHECK_THROWS_AS(parse_policy("0 of (a, b)"), ThresholdOutOfRange);

    // nested policies inside the branch list
    AccessTree t2 = parse_policy("2 of (a, b and c, d or e)");
    CHECK(t2.node(t2.root).children.size() == 3);
}

TEST_CASE("keywords are case-insensitive, attributes case-sensitive") {
    AccessTree t = parse_policy("x AND y Or z");
    CHECK(t.node(t.root).threshold == 1);

    AccessTree t2 = parse_policy("Doctor or doctor");
    const AccessNode& root = t2.node(t2.root);
    CHECK(t2.node(root.children[0]).attribute == "Doctor");
    CHECK(t2.node(root.children[1]).attribute == "doctor");
}

TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_AS(parse_policy(""), SyntaxError);
    CHECK_THROWS_AS(parse_policy("a and"), SyntaxError);
    CHECK_THROWS_AS(parse_policy("(a"), SyntaxError);
    CHECK_THROWS_AS(parse_policy("a b"), SyntaxError);
    CHECK_THROWS_AS(parse_policy("1 of (a)"), SyntaxError);
    CHECK_THROWS_AS(parse_policy("a & b"), SyntaxError);
    CHECK_THROWS_AS(parse_policy("2 of"), SyntaxError);
    CHECK_THROWS_AS(parse_policy("and"), SyntaxError);

    try {
        parse_policy("a and !");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 6);
    }
}

TEST_CASE("satisfaction basics") {
    AccessTree t = parse_policy("(a and b) or c");
    CHECK(satisfies(t, {"c"}));
    CHECK_FALSE(satisfies(t, {"a"}));
    CHECK(satisfies(t, {"a", "b"}));
    CHECK_FALSE(satisfies(t, {}));

    AccessTree th = parse_policy("2 of (a, b, c)");
    CHECK(satisfies(th, {"a", "c"}));
    CHECK_FALSE(satisfies(th, {"b"}));
}

TEST_CASE("satisfaction matches the combination-search oracle over the corpus") {
    std::mt19937_64 rng(2024);
    auto subsets = testsupport::all_universe_subsets();
    for (int i = 0; i < 200; ++i) {
        AccessTree t = testsupport::gen_tree(rng);
        for (const auto& s : subsets) {
            CAPTURE(print_policy(t));
            CHECK(satisfies(t, s) == testsupport::satisfies_oracle(t, s));
        }
    }
}

TEST_CASE("monotonicity over the corpus") {
    std::mt19937_64 rng(77);
    auto subsets = testsupport::all_universe_subsets();
    for (int i = 0; i < 60; ++i) {
        AccessTree t = testsupport::gen_tree(rng);
        for (const auto& s : subsets) {
            if (!satisfies(t, s)) continue;
            for (const auto& attr : testsupport::corpus_universe()) {
                AttributeSet bigger = s;
                bigger.insert(attr);
                CHECK(satisfies(t, bigger));
            }
        }
    }
}

TEST_CASE("print/parse round trip is structure-preserving") {
    CHECK(print_policy(parse_policy("(doctor and cardiology) or admin")) ==
          "(doctor and cardiology) or admin");
    CHECK(print_policy(parse_policy("2 of (a, b and c, d)")) == "2 of (a, b and c, d)");

    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        AccessTree t = testsupport::gen_tree(rng);
        AccessTree round = parse_policy(print_policy(t));
        CHECK(structurally_equal(t, round));
        // and a second print is a fixed point
        CHECK(print_policy(round) == print_policy(t));
    }
}

TEST_CASE("duplicate attributes may appear on distinct leaves") {
    AccessTree t = parse_policy("a and a");
    CHECK(t.leaf_ids().size() == 2);
    CHECK(satisfies(t, {"a"}));
}

TEST_CASE("tree validation catches broken invariants") {
    AccessTree t;
    t.nodes.push_back({AccessNode::Kind::kGate, 1, {}, ""});
    CHECK_THROWS(t.validate());  // gate without children

    AccessTree t2;
    t2.nodes.push_back({AccessNode::Kind::kGate, 3, {1, 2}, ""});
    t2.nodes.push_back({AccessNode::Kind::kLeaf, 1, {}, "a"});
    t2.nodes.push_back({AccessNode::Kind::kLeaf, 1, {}, "b"});
    CHECK_THROWS(t2.validate());  // threshold above child count

    AccessTree t3;
    t3.nodes.push_back({AccessNode::Kind::kGate, 1, {1, 1}, ""});
    t3.nodes.push_back({AccessNode::Kind::kLeaf, 1, {}, "a"});
    CHECK_THROWS(t3.validate());  // shared child
}

TEST_CASE("attribute set validation") {
    CHECK_NOTHROW(validate_attribute_set({"doctor", "x_1"}));
    CHECK_THROWS_AS(validate_attribute_set({"bad token!"}), InvalidAttributeToken);
    CHECK_THROWS_AS(validate_attribute_set({"of"}), InvalidAttributeToken);
}
