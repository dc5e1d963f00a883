#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fctp/formulations.hpp"
#include "fctp/generators.hpp"
#include "fctp/instance.hpp"
#include "fctp/json_io.hpp"
#include "fctp/liftings.hpp"
#include "fctp/lp_format.hpp"
#include "fctp/model.hpp"
#include "fctp/oracle.hpp"
#include "fctp/rng.hpp"
#include "fctp/tree.hpp"
#include "fctp/tree_dp.hpp"

namespace fctp {

struct SuiteReport {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;

    bool ok() const { return failures == 0; }
    void check(bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            ++failures;
            if (notes.size() < 16) notes.push_back(what);
        }
    }
    std::string summary() const {
        return name + ": " + std::to_string(checks - failures) + "/" + std::to_string(checks) +
               " checks passed";
    }
};

namespace verify_detail {

// Criterion-1 tree stream: |V| <= 8, b_max = 5, p in [-3,3], q in [0,5].
inline Instance trial_tree(int t, std::uint64_t seed) {
    return gen_tree(1 + t % 8, 5, seed + static_cast<std::uint64_t>(t));
}

inline std::vector<std::vector<Cap>> all_flows(const Instance& inst, std::int64_t limit) {
    std::vector<std::vector<Cap>> flows;
    for_each_feasible_flow(inst, limit, [&flows](const std::vector<Cap>& x) { flows.push_back(x); });
    return flows;
}

inline std::vector<std::vector<Cap>> spaced_subset(std::vector<std::vector<Cap>> flows,
                                                   std::size_t want) {
    if (flows.size() <= want) return flows;
    std::vector<std::vector<Cap>> out;
    for (std::size_t i = 0; i < want; ++i) out.push_back(flows[i * flows.size() / want]);
    return out;
}

inline Assignment midpoint(const Assignment& a, const Assignment& b) {
    Assignment out;
    for (const auto& [name, val] : a.values) out.values[name] += val / 2;
    for (const auto& [name, val] : b.values) out.values[name] += val / 2;
    for (auto it = out.values.begin(); it != out.values.end();)
        it = it->second == 0 ? out.values.erase(it) : std::next(it);
    return out;
}

inline bool assignments_equal(const Assignment& a, const Assignment& b) {
    return a.values == b.values;
}

}  // namespace verify_detail

// DP objective equals the exhaustive oracle on seeded random trees.
inline SuiteReport verify_dp_oracle(int trials = 200, std::uint64_t seed = 1) {
    SuiteReport rep{"dp-oracle"};
    for (int t = 0; t < trials; ++t) {
        Instance inst = verify_detail::trial_tree(t, seed);
        RootedTree rt = root_tree(inst);
        auto [tables, sol] = solve_tree(rt);
        Solution oracle = brute_force_solve(inst);
        std::string tag = "trial " + std::to_string(t);
        rep.check(sol.objective == oracle.objective,
                  tag + ": dp " + to_string(sol.objective) + " vs oracle " +
                      to_string(oracle.objective));
        rep.check(validate_solution(inst, sol).empty(), tag + ": dp solution infeasible");
        rep.check(tables.root_value == sol.objective, tag + ": root value mismatch");
    }
    return rep;
}

// encode_uv of the DP optimum is feasible in build_qdp with the DP value;
// the DP tables themselves satisfy the LP rows after sentinel substitution.
inline SuiteReport verify_certificates(int trials = 200, std::uint64_t seed = 1) {
    SuiteReport rep{"certificates"};
    for (int t = 0; t < trials; ++t) {
        Instance inst = verify_detail::trial_tree(t, seed);
        RootedTree rt = root_tree(inst);
        auto [tables, sol] = solve_tree(rt);
        DpCertificate cert = encode_uv(rt, sol.x);
        std::string tag = "trial " + std::to_string(t);
        rep.check(cert.objective == sol.objective, tag + ": certificate objective mismatch");
        Model qdp = build_qdp(rt);
        Assignment pt = certificate_assignment(rt, cert);
        rep.check(check_point(qdp, pt).empty(), tag + ": certificate violates a dual row");
        rep.check(objective_value(qdp, pt) == tables.root_value,
                  tag + ": dual objective mismatch");
        rep.check(dp_tables_lp_feasible(rt, tables), tag + ": tables not LP-feasible");
    }
    return rep;
}

// Sampled relaxation points lift into the unary expansion and project back.
inline SuiteReport verify_lift_z(int instances = 20, std::uint64_t seed = 1, int points = 100) {
    SuiteReport rep{"lift-z"};
    for (int t = 0; t < instances; ++t) {
        Instance inst;
        if (t % 2 == 0) {
            inst = gen_tree(2 + t % 6, 4, seed + static_cast<std::uint64_t>(t));
        } else {
            GenConfig cfg;
            cfg.n = 2 + t % 3;
            cfg.B = 3 + t % 4;
            cfg.r = 1;
            cfg.seed = seed + static_cast<std::uint64_t>(t);
            inst = with_default_variant(gen_bipartite(cfg));
        }
        Model ipz = build_ip_z(inst);
        Rng rng(seed * 7919 + static_cast<std::uint64_t>(t));
        for (int s = 0; s < points; ++s) {
            auto [x, y] = sample_p_point(inst, rng);
            LiftedPoint pt = lift_z(inst, x, y);
            std::string tag = "instance " + std::to_string(t) + " point " + std::to_string(s);
            auto viol = check_point(ipz, pt.values);
            rep.check(viol.empty(),
                      tag + (viol.empty() ? "" : ": violates " + viol.front().name));
            auto [px, py] = project(pt);
            rep.check(px == x && py == y, tag + ": projection differs from input");
        }
    }
    return rep;
}

// encode_f / pi_map chain: scan-space feasibility, dual-space feasibility,
// matching projections, and linearity of pi on midpoints.
inline SuiteReport verify_pi_chain(int trees = 20, std::uint64_t seed = 1, int flows_per_tree = 50,
                                   int midpoints = 20) {
    SuiteReport rep{"pi-chain"};
    for (int t = 0; t < trees; ++t) {
        Instance inst = gen_tree(2 + t % 7, 4, seed + 31 * static_cast<std::uint64_t>(t));
        RootedTree rt = root_tree(inst);
        Model qsn = build_qsn(rt, false);
        Model qsnz = build_qsn(rt, true);
        Model qdp = build_qdp(rt);
        auto flows = verify_detail::spaced_subset(
            verify_detail::all_flows(inst, kDefaultOracleBudget),
            static_cast<std::size_t>(flows_per_tree));
        std::vector<LiftedPoint> encoded;
        for (std::size_t s = 0; s < flows.size(); ++s) {
            const auto& x = flows[s];
            std::string tag = "tree " + std::to_string(t) + " flow " + std::to_string(s);
            LiftedPoint f = encode_f(rt, x);
            rep.check(check_point(qsn, f.values).empty(), tag + ": f not in the scan polyhedron");
            Assignment with_levels = f.values;
            for (const auto& [name, val] : induced_z(rt, f).values) with_levels.values[name] = val;
            rep.check(check_point(qsnz, with_levels).empty(), tag + ": f+z variant infeasible");
            LiftedPoint uv = pi_map(rt, f);
            rep.check(check_point(qdp, uv.values).empty(), tag + ": pi image not dual-feasible");
            bool proj_ok = true;
            for (std::size_t e = 0; e < x.size(); ++e) {
                proj_ok = proj_ok && f.x[e] == Rational(x[e]) && uv.x[e] == Rational(x[e]);
                proj_ok = proj_ok && f.y[e] == Rational(x[e] > 0 ? 1 : 0) && uv.y[e] == f.y[e];
            }
            auto [fx, fy] = project(f);
            proj_ok = proj_ok && fx == f.x && fy == f.y;
            rep.check(proj_ok, tag + ": projections disagree");
            encoded.push_back(std::move(f));
        }
        Rng rng(seed * 104729 + static_cast<std::uint64_t>(t));
        for (int s = 0; s < midpoints && encoded.size() >= 2; ++s) {
            const LiftedPoint& f1 =
                encoded[static_cast<std::size_t>(rng.uniform(0, static_cast<Cap>(encoded.size()) - 1))];
            const LiftedPoint& f2 =
                encoded[static_cast<std::size_t>(rng.uniform(0, static_cast<Cap>(encoded.size()) - 1))];
            LiftedPoint mid = f1;
            mid.values = verify_detail::midpoint(f1.values, f2.values);
            LiftedPoint img = pi_map(rt, mid);
            Assignment expect =
                verify_detail::midpoint(pi_map(rt, f1).values, pi_map(rt, f2).values);
            rep.check(verify_detail::assignments_equal(img.values, expect),
                      "tree " + std::to_string(t) + " midpoint " + std::to_string(s) +
                          ": pi is not linear");
        }
    }
    return rep;
}

// Fixed corpus for the hardness reduction; every entry satisfies the input
// invariants, mixing yes- and no-instances for n in {1, 2}.
inline std::vector<ThreePartitionInput> reduction_corpus() {
    return {
        {{2, 2, 2}, 6},          {{2, 2, 3}, 7},          {{3, 3, 3}, 9},
        {{3, 3, 4}, 10},         {{3, 4, 4}, 11},         {{4, 4, 4}, 12},
        {{4, 4, 5}, 13},         {{4, 5, 5}, 14},         {{4, 5, 6}, 15},
        {{5, 5, 5}, 15},         {{5, 5, 6}, 16},         {{5, 6, 6}, 17},
        {{5, 6, 7}, 18},         {{6, 6, 6}, 18},
        {{2, 2, 2, 2, 2, 2}, 6}, {{2, 2, 2, 2, 3, 3}, 7}, {{3, 3, 3, 3, 3, 3}, 9},
        {{3, 3, 3, 3, 4, 4}, 10}, {{3, 3, 4, 4, 4, 4}, 11}, {{3, 3, 3, 4, 4, 5}, 11},
        {{3, 3, 3, 3, 5, 5}, 11}, {{4, 4, 4, 4, 5, 5}, 13},
        {{4, 4, 4, 4, 4, 6}, 13}, {{4, 4, 4, 6, 6, 6}, 15},
    };
}

// check_3partition agrees with "reduced optimum hits -2nb + 3n", and every
// optimal solution saturates all suppliers.
inline SuiteReport verify_reduction(std::int64_t limit = 100'000'000'000) {
    SuiteReport rep{"reduction"};
    auto corpus = reduction_corpus();
    int yes_count = 0;
    for (std::size_t c = 0; c < corpus.size(); ++c) {
        const ThreePartitionInput& inp = corpus[c];
        std::string tag = "input " + std::to_string(c);
        bool yes = check_3partition(inp);
        yes_count += yes ? 1 : 0;
        Instance inst = reduce_3partition(inp);
        Solution best = brute_force_solve(inst, limit);
        Rational target = Rational(-2) * inp.n() * inp.b + 3 * inp.n();
        rep.check((best.objective == target) == yes,
                  tag + ": oracle says " + to_string(best.objective) + ", target " +
                      to_string(target) + ", decision " + (yes ? "yes" : "no"));

        const int n = inp.n();
        std::vector<Cap> pcost(inst.arcs.size()), qcost(inst.arcs.size());
        for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
            pcost[e] = to_cap(numerator(inst.arcs[e].p));
            qcost[e] = to_cap(numerator(inst.arcs[e].q));
        }
        Cap best_int = to_cap(numerator(best.objective));
        bool all_saturate = true;
        for_each_feasible_flow(inst, limit, [&](const std::vector<Cap>& x) {
            Cap cost = 0;
            for (std::size_t e = 0; e < x.size(); ++e)
                if (x[e] > 0) cost += pcost[e] * x[e] + qcost[e];
            if (cost != best_int) return;
            for (int i = 0; i < n; ++i) {
                Cap load = 0;
                for (std::size_t e = 0; e < inst.arcs.size(); ++e)
                    if (inst.arcs[e].i == i + 1) load += x[e];
                if (load != inp.b) all_saturate = false;
            }
        });
        rep.check(all_saturate, tag + ": an optimal solution leaves a supplier unsaturated");
    }
    rep.check(yes_count > 0 && yes_count < static_cast<int>(corpus.size()),
              "corpus must mix yes- and no-instances");
    return rep;
}

// The 27 published configurations, 3 seeds each: target identity, ranges,
// senses, and byte-identical regeneration.
inline SuiteReport verify_generator_contract() {
    SuiteReport rep{"generator-contract"};
    for (int n : {20, 30, 40}) {
        for (Cap B : {20, 40, 60}) {
            for (const char* rs : {"9/10", "19/20", "1"}) {
                for (std::uint64_t seed : {1u, 2u, 3u}) {
                    GenConfig cfg;
                    cfg.n = n;
                    cfg.B = B;
                    cfg.r = parse_rational(rs);
                    cfg.seed = seed;
                    Instance inst = gen_bipartite(cfg);
                    std::string tag = "n=" + std::to_string(n) + " B=" + std::to_string(B) +
                                      " r=" + rs + " seed=" + std::to_string(seed);
                    Cap C = 0, D = 0;
                    bool in_range = true;
                    for (int v = 1; v <= n; ++v) {
                        C += inst.node_cap(v);
                        in_range = in_range && inst.node_cap(v) >= 1 && inst.node_cap(v) <= B;
                    }
                    for (int v = n + 1; v <= 2 * n; ++v) {
                        D += inst.node_cap(v);
                        in_range = in_range && inst.node_cap(v) >= 1 && inst.node_cap(v) <= B;
                    }
                    rep.check(in_range, tag + ": capacity outside [1, B]");
                    rep.check(Rational(D) == rational_ceil(cfg.r * Rational(C)),
                              tag + ": total demand misses the target");
                    bool costs_ok = static_cast<int>(inst.arcs.size()) == n * n;
                    bool senses_ok = true;
                    for (const Arc& arc : inst.arcs)
                        costs_ok = costs_ok && arc.p == 0 && is_integer(arc.q) &&
                                   arc.q >= 200 && arc.q <= 800;
                    for (int v = 1; v <= n; ++v)
                        senses_ok = senses_ok && inst.variant.sense_of(v) == Sense::LE;
                    for (int v = n + 1; v <= 2 * n; ++v)
                        senses_ok = senses_ok && inst.variant.sense_of(v) == Sense::EQ;
                    rep.check(costs_ok, tag + ": cost contract violated");
                    rep.check(senses_ok, tag + ": sense contract violated");
                    Instance again = gen_bipartite(cfg);
                    rep.check(instance_to_document(inst).dump(2) ==
                                  instance_to_document(again).dump(2),
                              tag + ": regeneration differs");
                }
            }
        }
    }
    return rep;
}

// Unary-expansion count formula, LP byte-stability on the criterion-6
// corpus, and oracle solutions checked against (IP)/(IP+z) on small
// bipartite instances.
inline SuiteReport verify_counts_roundtrip() {
    SuiteReport rep{"counts-roundtrip"};
    for (int n : {20, 30, 40}) {
        for (Cap B : {20, 40, 60}) {
            for (const char* rs : {"9/10", "19/20", "1"}) {
                for (std::uint64_t seed : {1u, 2u, 3u}) {
                    GenConfig cfg;
                    cfg.n = n;
                    cfg.B = B;
                    cfg.r = parse_rational(rs);
                    cfg.seed = seed;
                    Instance inst = gen_bipartite(cfg);
                    std::string tag = "n=" + std::to_string(n) + " B=" + std::to_string(B) +
                                      " r=" + rs + " seed=" + std::to_string(seed);
                    Model ip = build_ip(inst);
                    Model ipz = build_ip_z(inst);
                    std::size_t levels = 0;
                    for (const Arc& arc : inst.arcs) levels += static_cast<std::size_t>(arc.a) + 1;
                    rep.check(ipz.variables.size() == 2 * inst.arcs.size() + levels,
                              tag + ": unary variable count formula fails");
                    for (const Model* m : {&ip, &ipz}) {
                        std::string once = write_model_lp(*m);
                        Model back = read_model_lp(once);
                        rep.check(write_model_lp(back) == once,
                                  tag + ": " + m->formulation + " LP not byte-stable");
                        rep.check(models_equal(*m, back),
                                  tag + ": " + m->formulation + " LP round-trip changed the model");
                    }
                }
            }
        }
    }
    for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u, 16u}) {
        GenConfig cfg;
        cfg.n = 2;
        cfg.B = 3;
        cfg.r = 1;
        cfg.seed = seed;
        Instance inst = gen_bipartite(cfg);
        std::string tag = "small seed " + std::to_string(seed);
        Solution sol = brute_force_solve(inst);
        Model ip = build_ip(inst);
        Model ipz = build_ip_z(inst);
        Assignment on_ip = solution_assignment(inst, sol, false);
        Assignment on_ipz = solution_assignment(inst, sol, true);
        rep.check(check_point(ip, on_ip).empty(), tag + ": oracle solution violates (IP)");
        rep.check(check_point(ipz, on_ipz).empty(), tag + ": oracle solution violates (IP+z)");
        rep.check(objective_value(ip, on_ip) == sol.objective &&
                      objective_value(ipz, on_ipz) == sol.objective,
                  tag + ": model objective differs from oracle");
    }
    return rep;
}

// Closed-form alpha/beta cell counts on the criterion-1 tree stream.
inline SuiteReport verify_state_counts(int trials = 200, std::uint64_t seed = 1) {
    SuiteReport rep{"state-counts"};
    for (int t = 0; t < trials; ++t) {
        Instance inst = verify_detail::trial_tree(t, seed);
        RootedTree rt = root_tree(inst);
        auto [tables, sol] = solve_tree(rt);
        std::size_t alpha_expect = 0;
        for (int node = 0; node < rt.num_nodes(); ++node) {
            std::size_t kids = rt.children[static_cast<std::size_t>(node)].size();
            alpha_expect += kids * static_cast<std::size_t>(rt.cap(node) + 1);
        }
        std::size_t beta_expect = 0;
        for (const Arc& arc : inst.arcs) beta_expect += static_cast<std::size_t>(arc.a) + 1;
        std::string tag = "trial " + std::to_string(t);
        rep.check(tables.alpha_cell_count() == alpha_expect, tag + ": alpha cell count");
        rep.check(tables.beta_cell_count() == beta_expect, tag + ": beta cell count");
    }
    return rep;
}

}  // namespace fctp
