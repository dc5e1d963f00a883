#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "fctp/generators.hpp"
#include "fctp/oracle.hpp"
#include "helpers.hpp"

using namespace fctp;

namespace {

Instance eq_customer() {
    Variant v;
    v.node_sense = {Sense::LE, Sense::LE, Sense::EQ};
    return new_instance({1, 1, 1}, {{1, 3}, {2, 3}}, {Rational(0), Rational(0)},
                        {Rational(1), Rational(1)}, v);
}

}  // namespace

TEST_CASE("brute force finds the profitable saturation") {
    Instance inst = new_instance({2, 2}, {{1, 2}}, {Rational(-1)}, {Rational(1)});
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == -1);
    REQUIRE(sol.x == std::vector<Cap>{2});
    REQUIRE(sol.y == std::vector<int>{1});
    REQUIRE(validate_solution(inst, sol).empty());
}

TEST_CASE("brute force stays at zero when nothing pays") {
    Instance inst = new_instance({3, 2, 2}, {{1, 2}, {1, 3}}, {Rational(1), Rational(0)},
                                 {Rational(0), Rational(2)});
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == 0);
    REQUIRE(sol.x == std::vector<Cap>{0, 0});
}

TEST_CASE("ties resolve to the lexicographically smallest flow") {
    Instance inst = new_instance({1, 1, 1}, {{1, 2}, {2, 3}}, {Rational(-3), Rational(-3)},
                                 {Rational(1), Rational(1)});
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == -2);
    REQUIRE(sol.x == std::vector<Cap>{0, 1});
}

TEST_CASE("non-integer costs take the exact path") {
    Instance inst = new_instance({2, 2}, {{1, 2}}, {Rational(-1, 2)}, {Rational(0)});
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == -1);
    REQUIRE(sol.x == std::vector<Cap>{2});
}

TEST_CASE("an isolated node solves trivially") {
    Instance inst = new_instance({3}, {}, {}, {});
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == 0);
    REQUIRE(sol.x.empty());
    REQUIRE(enumerate_feasible(inst).size() == 1);
}

TEST_CASE("the state budget cuts off before any work") {
    Instance small = new_instance({2, 2}, {{1, 2}}, {Rational(-1)}, {Rational(1)});
    REQUIRE(testutil::raised([&] { brute_force_solve(small, 2); }) == Errc::budget_exceeded);

    GenConfig cfg;
    cfg.n = 20;
    cfg.B = 20;
    cfg.seed = 3;
    Instance big = gen_bipartite(cfg);
    REQUIRE(detail::state_bound(big) > kDefaultOracleBudget);
    REQUIRE(testutil::raised([&] { enumerate_feasible(big); }) == Errc::budget_exceeded);
}

TEST_CASE("enumeration covers the point set exactly once in order") {
    Instance inst = new_instance({1, 1}, {{1, 2}}, {Rational(-1)}, {Rational(1)});
    auto pts = enumerate_feasible(inst);
    REQUIRE(pts.size() == 3);
    REQUIRE(pts[0].x == std::vector<Cap>{0});
    REQUIRE(pts[0].y == std::vector<int>{0});
    REQUIRE(pts[1].y == std::vector<int>{1});  // y free at x = 0
    REQUIRE(pts[2].x == std::vector<Cap>{1});
    REQUIRE(pts[2].y == std::vector<int>{1});

    Variant linked;
    linked.link_lower = true;
    Instance tight = new_instance({1, 1}, {{1, 2}}, {Rational(-1)}, {Rational(1)}, linked);
    REQUIRE(enumerate_feasible(tight).size() == 2);  // (0,0) and (1,1)

    Instance closed = new_instance({0, 5}, {{1, 2}}, {Rational(-1)}, {Rational(1)});
    auto degen = enumerate_feasible(closed);
    REQUIRE(degen.size() == 2);  // x pinned to 0, y still free
    REQUIRE(degen[0].x == std::vector<Cap>{0});
    REQUIRE(degen[1].y == std::vector<int>{1});
}

TEST_CASE("enumeration respects equality senses") {
    Instance inst = eq_customer();
    auto pts = enumerate_feasible(inst);
    REQUIRE(pts.size() == 4);
    std::set<std::pair<std::vector<Cap>, std::vector<int>>> seen;
    for (const Solution& s : pts) {
        REQUIRE(validate_solution(inst, s).empty());
        REQUIRE(seen.insert({s.x, s.y}).second);
    }
    Solution sol = brute_force_solve(inst);
    REQUIRE(sol.objective == 1);  // one arc must open
    REQUIRE(sol.x == std::vector<Cap>{0, 1});
}

TEST_CASE("infeasible equalities are an error, not a zero") {
    Variant v;
    v.node_sense = {Sense::LE, Sense::EQ};
    Instance inst = new_instance({1, 2}, {{1, 2}}, {Rational(0)}, {Rational(1)}, v);
    REQUIRE(testutil::raised([&] { brute_force_solve(inst); }) == Errc::validation_error);
    REQUIRE(enumerate_feasible(inst).empty());
}

TEST_CASE("a path enumerates all eight feasible points") {
    Instance inst = new_instance({1, 1, 1}, {{1, 2}, {2, 3}}, {Rational(0), Rational(0)},
                                 {Rational(1), Rational(1)});
    auto pts = enumerate_feasible(inst);
    REQUIRE(pts.size() == 8);  // x in {00,01,10} with free closed arcs
    std::set<std::pair<std::vector<Cap>, std::vector<int>>> seen;
    for (const Solution& s : pts) {
        REQUIRE(validate_solution(inst, s).empty());
        REQUIRE(seen.insert({s.x, s.y}).second);
    }
}

TEST_CASE("brute force agrees with the enumeration minimum") {
    for (std::uint64_t seed : {4u, 5u, 6u}) {
        Instance inst = gen_tree(5, 3, seed);
        Solution sol = brute_force_solve(inst);
        auto pts = enumerate_feasible(inst);
        REQUIRE_FALSE(pts.empty());
        Rational best = pts[0].objective;
        for (const Solution& s : pts) best = std::min(best, s.objective);
        REQUIRE(sol.objective == best);
        REQUIRE(validate_solution(inst, sol).empty());
    }
}
