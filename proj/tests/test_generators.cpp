#include <catch2/catch_amalgamated.hpp>

#include "fctp/generators.hpp"
#include "fctp/json_io.hpp"
#include "fctp/oracle.hpp"
#include "fctp/tree.hpp"
#include "helpers.hpp"

using namespace fctp;

TEST_CASE("gen_bipartite pins the degenerate case") {
    GenConfig cfg;  // n = 1, B = 1, r = 1
    Instance inst = gen_bipartite(cfg);
    REQUIRE(inst.num_nodes() == 2);
    REQUIRE(inst.num_arcs() == 1);
    REQUIRE(inst.node_cap(1) == 1);
    REQUIRE(inst.node_cap(2) == 1);
    REQUIRE(inst.arcs[0].p == 0);
    REQUIRE(inst.arcs[0].q >= 200);
    REQUIRE(inst.arcs[0].q <= 800);
    REQUIRE(inst.variant.sense_of(1) == Sense::LE);
    REQUIRE(inst.variant.sense_of(2) == Sense::EQ);
}

TEST_CASE("gen_bipartite meets the demand target exactly") {
    for (const char* ratio : {"1", "9/10", "19/20"}) {
        GenConfig cfg;
        cfg.n = 20;
        cfg.B = 20;
        cfg.r = parse_rational(ratio);
        cfg.seed = 5;
        Instance inst = gen_bipartite(cfg);
        REQUIRE(inst.num_arcs() == 400);
        Cap C = 0, D = 0;
        for (int i = 1; i <= 20; ++i) C += inst.node_cap(i);
        for (int j = 21; j <= 40; ++j) D += inst.node_cap(j);
        REQUIRE(Rational(D) == rational_ceil(cfg.r * Rational(C)));
        for (const Arc& arc : inst.arcs) {
            REQUIRE(arc.q >= 200);
            REQUIRE(arc.q <= 800);
            REQUIRE(is_integer(arc.q));
        }
    }
}

TEST_CASE("gen_bipartite is reproducible and seed-sensitive") {
    GenConfig cfg;
    cfg.n = 10;
    cfg.B = 8;
    cfg.r = Rational(3, 4);
    cfg.seed = 42;
    Instance a = gen_bipartite(cfg);
    Instance b = gen_bipartite(cfg);
    REQUIRE(instance_fingerprint(a) == instance_fingerprint(b));
    REQUIRE(a.provenance == b.provenance);
    REQUIRE(instance_to_document(a).dump(2) == instance_to_document(b).dump(2));
    cfg.seed = 43;
    REQUIRE(instance_fingerprint(a) != instance_fingerprint(gen_bipartite(cfg)));

    Json prov = Json::parse(a.provenance);
    REQUIRE(prov["generator"] == "bipartite");
    REQUIRE(prov["n"] == 10);
    REQUIRE(prov["r"] == "3/4");
    REQUIRE(prov["seed"] == 42);
}

TEST_CASE("gen_bipartite rejects bad configurations") {
    auto bad = [](auto mutate) {
        GenConfig cfg;
        cfg.n = 2;
        cfg.B = 3;
        mutate(cfg);
        return testutil::raised([&] { gen_bipartite(cfg); });
    };
    REQUIRE(bad([](GenConfig& c) { c.n = 0; }) == Errc::validation_error);
    REQUIRE(bad([](GenConfig& c) { c.B = 0; }) == Errc::validation_error);
    REQUIRE(bad([](GenConfig& c) { c.r = 0; }) == Errc::validation_error);
    REQUIRE(bad([](GenConfig& c) { c.r = 2; }) == Errc::validation_error);
    REQUIRE(bad([](GenConfig& c) { c.cost_lo = 9; c.cost_hi = 1; }) == Errc::validation_error);
}

TEST_CASE("gen_bipartite reports an unreachable target") {
    // B = 1 pins supplies and demands at 1, so r < 1 cannot pull D down.
    GenConfig cfg;
    cfg.n = 2;
    cfg.B = 1;
    cfg.r = Rational(1, 2);
    REQUIRE(testutil::raised([&] { gen_bipartite(cfg); }) == Errc::unreachable_target);
}

TEST_CASE("gen_tree yields connected trees in range") {
    Instance lone = gen_tree(1, 3, 9);
    REQUIRE(lone.num_nodes() == 1);
    REQUIRE(lone.num_arcs() == 0);

    Instance inst = gen_tree(8, 5, 9);
    REQUIRE(inst.num_nodes() == 8);
    REQUIRE(inst.num_arcs() == 7);
    REQUIRE(is_tree(inst));
    for (int v = 1; v <= 8; ++v) {
        REQUIRE(inst.node_cap(v) >= 0);
        REQUIRE(inst.node_cap(v) <= 5);
    }
    for (const Arc& arc : inst.arcs) {
        REQUIRE(arc.p >= -3);
        REQUIRE(arc.p <= 3);
        REQUIRE(arc.q >= 0);
        REQUIRE(arc.q <= 5);
    }
    REQUIRE(instance_fingerprint(inst) == instance_fingerprint(gen_tree(8, 5, 9)));
    REQUIRE(Json::parse(inst.provenance)["generator"] == "tree");
}

TEST_CASE("reduce_3partition builds the inequality reduction") {
    ThreePartitionInput inp;
    inp.numbers = {2, 2, 2};
    inp.b = 6;
    Instance inst = reduce_3partition(inp);
    REQUIRE(inst.num_nodes() == 4);
    REQUIRE(inst.num_arcs() == 3);
    REQUIRE(inst.node_cap(1) == 6);
    REQUIRE(inst.node_cap(3) == 2);
    for (const Arc& arc : inst.arcs) {
        REQUIRE(arc.p == -2);
        REQUIRE(arc.q == 1);
    }
    for (int v = 1; v <= 4; ++v) REQUIRE(inst.variant.sense_of(v) == Sense::LE);

    // yes-instance: optimum is -2nb + 3n with every supplier saturated
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == -9);
    REQUIRE(check_3partition(inp));
}

TEST_CASE("three-partition inputs outside the strict range are invalid") {
    auto code = [](std::vector<Cap> nums, Cap b) {
        ThreePartitionInput inp;
        inp.numbers = std::move(nums);
        inp.b = b;
        return testutil::raised([&] { validate(inp); });
    };
    REQUIRE(code({3, 4, 5}, 12) == Errc::invalid_three_partition);  // 4*3 = 12 not > b
    REQUIRE(code({2, 2, 2}, 5) == Errc::invalid_three_partition);   // wrong sum
    REQUIRE(code({2, 2, 2, 2}, 6) == Errc::invalid_three_partition);
    REQUIRE(code({}, 6) == Errc::invalid_three_partition);
    REQUIRE(code({2, 2, 2}, 0) == Errc::invalid_three_partition);
    REQUIRE(code({-2, 4, 4}, 6) == Errc::invalid_three_partition);
    REQUIRE(code({3, 3, 6}, 12) == Errc::invalid_three_partition);  // 2*6 = 12 not < b
}

TEST_CASE("check_3partition decides small instances") {
    ThreePartitionInput yes2;
    yes2.numbers = {2, 2, 2, 2, 2, 2};
    yes2.b = 6;
    REQUIRE(check_3partition(yes2));

    ThreePartitionInput no2;
    no2.numbers = {4, 4, 4, 6, 6, 6};
    no2.b = 15;
    REQUIRE_FALSE(check_3partition(no2));

    ThreePartitionInput shuffled;
    shuffled.numbers = {5, 6, 7, 7, 6, 5};
    shuffled.b = 18;
    REQUIRE(check_3partition(shuffled));

    ThreePartitionInput big;
    big.numbers = std::vector<Cap>(15, 0);
    for (std::size_t t = 0; t < 5; ++t) {
        big.numbers[3 * t] = 2;
        big.numbers[3 * t + 1] = 2;
        big.numbers[3 * t + 2] = 3;
    }
    big.b = 7;
    REQUIRE(testutil::raised([&] { check_3partition(big); }) == Errc::too_large);
}

TEST_CASE("a saturating bipartite optimum pays -2C + opens") {
    // one supplier of 12 against demands 3, 4, 5; all capacity moves
    std::vector<std::vector<Rational>> P{{Rational(-2), Rational(-2), Rational(-2)}};
    std::vector<std::vector<Rational>> Q{{Rational(1), Rational(1), Rational(1)}};
    Instance inst = bipartite_instance({12}, {3, 4, 5}, P, Q, Variant{});
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == -21);
    REQUIRE(sol.x == std::vector<Cap>{3, 4, 5});
}
