#include "cpabe/sharing.h"

#include <random>

#include "doctest.h"
#include "support/corpus.h"
#include "support/oracles.h"

using namespace cpabe;

namespace {

GroupContext ctx() { return group_setup(128); }

// Reconstructs the shared secret from leaf shares along a satisfying
// selection, mirroring what decryption does in the exponent.
Fr reconstruct(const AccessTree& tree, const LeafShareMap& shares,
               const SatisfyingSelection& sel, NodeId id) {
    const AccessNode& n = tree.node(id);
    if (n.kind == AccessNode::Kind::kLeaf) return shares.at(id);
    const auto& chosen = sel.gate_children.at(id);
    std::vector<Fr> points;
    for (NodeId child : chosen) {
        for (size_t pos = 0; pos < n.children.size(); ++pos) {
            if (n.children[pos] == child) points.push_back(Fr::from_u64(pos + 1));
        }
    }
    Fr acc = Fr::zero();
    for (size_t i = 0; i < chosen.size(); ++i) {
        acc += lagrange_coeff(points[i], points) * reconstruct(tree, shares, sel, chosen[i]);
    }
    return acc;
}

}  // namespace

TEST_CASE("single leaf receives the secret itself") {
    SeededRandom rng(1);
    AccessTree t = parse_policy("a");
    Fr s = Fr::random(rng);
    LeafShareMap shares = share_secret(t, s, ctx(), rng);
    REQUIRE(shares.size() == 1);
    CHECK(shares.begin()->second == s);
}

TEST_CASE("two-of-two shares recombine as 2q(1) - q(2)") {
    SeededRandom rng(2);
    AccessTree t = parse_policy("a and b");
    auto leaves = t.leaf_ids();
    Fr s = Fr::random(rng);
    LeafShareMap shares = share_secret(t, s, ctx(), rng);
    Fr two = Fr::from_u64(2);
    CHECK(two * shares.at(leaves[0]) - shares.at(leaves[1]) == s);
}

TEST_CASE("any 2 of 3 shares reconstruct the secret") {
    SeededRandom rng(3);
    AccessTree t = parse_policy("2 of (a, b, c)");
    auto leaves = t.leaf_ids();
    Fr s = Fr::random(rng);
    LeafShareMap shares = share_secret(t, s, ctx(), rng);
    size_t pairs[][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& pr : pairs) {
        std::vector<Fr> pts = {Fr::from_u64(pr[0] + 1), Fr::from_u64(pr[1] + 1)};
        Fr got = lagrange_coeff(pts[0], pts) * shares.at(leaves[pr[0]]) +
                 lagrange_coeff(pts[1], pts) * shares.at(leaves[pr[1]]);
        CHECK(got == s);
    }
}

TEST_CASE("lagrange coefficients for the worked examples") {
    CHECK(lagrange_coeff(Fr::from_u64(1), {Fr::from_u64(1)}) == Fr::one());
    CHECK(lagrange_coeff(Fr::from_u64(1), {Fr::from_u64(1), Fr::from_u64(2)}) == Fr::from_u64(2));
    // Delta_2 at 0 over {1,2} is -1, i.e. p - 1
    CHECK(lagrange_coeff(Fr::from_u64(2), {Fr::from_u64(1), Fr::from_u64(2)}) == -Fr::one());
}

TEST_CASE("lagrange error contracts") {
    std::vector<Fr> pts = {Fr::from_u64(1), Fr::from_u64(2)};
    CHECK_THROWS_AS(lagrange_coeff(Fr::from_u64(3), pts), PointNotInSet);
    std::vector<Fr> dup = {Fr::from_u64(1), Fr::from_u64(1)};
    CHECK_THROWS_AS(lagrange_coeff(Fr::from_u64(1), dup), DegenerateSet);
    std::vector<Fr> withzero = {Fr::from_u64(0), Fr::from_u64(1)};
    CHECK_THROWS_AS(lagrange_coeff(Fr::from_u64(1), withzero), DegenerateSet);
}

TEST_CASE("interpolation recovers q(0) for random polynomials, small field and Fr") {
    std::mt19937_64 rng(4);
    // small-field cross-check of the coefficient formula itself
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> deg_pick(0, 4);
        int deg = deg_pick(rng);
        std::vector<std::int64_t> coeffs(deg + 1);
        std::uniform_int_distribution<std::int64_t> cf(0, testsupport::kSmallPrime - 1);
        for (auto& c : coeffs) c = cf(rng);
        std::vector<std::int64_t> points;
        for (int i = 1; i <= deg + 1; ++i) points.push_back(i + static_cast<int>(rng() % 3) * 7);
        // de-duplicate by construction: strictly increasing offsets
        for (size_t i = 1; i < points.size(); ++i) {
            if (points[i] <= points[i - 1]) points[i] = points[i - 1] + 1;
        }
        auto eval = [&](std::int64_t x) {
            std::int64_t acc = 0;
            for (int k = deg; k >= 0; --k) acc = testsupport::small_mod(acc * x + coeffs[k]);
            return acc;
        };
        std::int64_t sum = 0;
        for (auto p : points) {
            sum = testsupport::small_mod(sum +
                                         testsupport::small_lagrange_at_zero(p, points) * eval(p));
        }
        CHECK(sum == coeffs[0]);

        // the same polynomial in Fr through the library's coefficient
        std::vector<Fr> fr_points;
        for (auto p : points) fr_points.push_back(Fr::from_u64(static_cast<u64>(p)));
        Fr fr_sum = Fr::zero();
        for (size_t i = 0; i < points.size(); ++i) {
            Fr value = Fr::zero();
            for (int k = deg; k >= 0; --k) {
                value = value * fr_points[i] + Fr::from_u64(static_cast<u64>(coeffs[k]));
            }
            fr_sum += lagrange_coeff(fr_points[i], fr_points) * value;
        }
        CHECK(fr_sum == Fr::from_u64(static_cast<u64>(coeffs[0])));

        // library and oracle agree coefficient by coefficient
        for (auto p : points) {
            Fr lib = lagrange_coeff(Fr::from_u64(static_cast<u64>(p)), fr_points);
            std::int64_t want = testsupport::small_lagrange_at_zero(p, points);
            // compare through a small-field evaluation: reduce lib mod 1009 is
            // meaningless, so check via the defining product in Fr instead
            Fr prod = Fr::one();
            for (auto j : points) {
                if (j == p) continue;
                prod *= (-Fr::from_u64(static_cast<u64>(j)));
                prod *= (Fr::from_u64(static_cast<u64>(p)) - Fr::from_u64(static_cast<u64>(j))).inverse();
            }
            CHECK(lib == prod);
            (void)want;
        }
    }
}

TEST_CASE("minimal selection prefers the lowest indices") {
    AccessTree t = parse_policy("(a and b) or c");
    const AccessNode& root = t.node(t.root);

    SatisfyingSelection sel = min_satisfying_selection(t, {"a", "b", "c"});
    REQUIRE(sel.gate_children.at(t.root).size() == 1);
    CHECK(sel.gate_children.at(t.root)[0] == root.children[0]);  // the AND gate, index 1
    CHECK(sel.leaves.size() == 2);

    SatisfyingSelection sel2 = min_satisfying_selection(t, {"c"});
    CHECK(sel2.leaves.size() == 1);
    CHECK(t.node(sel2.leaves[0]).attribute == "c");

    CHECK_THROWS_AS(min_satisfying_selection(t, {"a"}), NotSatisfied);
}

TEST_CASE("selection-guided reconstruction recovers the secret over the corpus") {
    std::mt19937_64 gen(5);
    SeededRandom rng(6);
    auto subsets = testsupport::all_universe_subsets();
    GroupContext gctx = ctx();
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        AccessTree t = testsupport::gen_tree(gen);
        Fr s = Fr::random(rng);
        LeafShareMap shares = share_secret(t, s, gctx, rng);
        for (const auto& sub : subsets) {
            if (!satisfies(t, sub)) continue;
            SatisfyingSelection sel = min_satisfying_selection(t, sub);
            for (NodeId leaf : sel.leaves) {
                CHECK(sub.count(t.node(leaf).attribute) == 1);
            }
            CHECK(reconstruct(t, shares, sel, t.root) == s);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("non-satisfying share subsets look random") {
    SeededRandom rng(7);
    AccessTree t = parse_policy("a and b");
    auto leaves = t.leaf_ids();
    Fr s = Fr::random(rng);

    std::set<std::array<std::uint8_t, 32>> seen;
    int equal_to_secret = 0;
    for (int i = 0; i < 1000; ++i) {
        LeafShareMap shares = share_secret(t, s, ctx(), rng);
        Fr single = shares.at(leaves[0]);  // interpolating one point of a degree-1 poly
        seen.insert(single.to_bytes());
        if (single == s) ++equal_to_secret;
    }
    CHECK(seen.size() > 990);      // never constant
    CHECK(equal_to_secret <= 2);   // and essentially never the secret itself
}

TEST_CASE("sharing is deterministic given a seeded source") {
    AccessTree t = parse_policy("2 of (a, b, c) and d");
    Fr s = Fr::from_u64(1234567);
    SeededRandom r1(42);
    SeededRandom r2(42);
    CHECK(share_secret(t, s, ctx(), r1) == share_secret(t, s, ctx(), r2));
}
