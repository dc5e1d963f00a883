#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"

namespace fctp {

inline constexpr std::int64_t kDefaultOracleBudget = 10'000'000;

namespace detail {

// Product of (a_e + 1) saturated at 2^62, the enumeration-state upper bound.
inline std::int64_t state_bound(const Instance& inst) {
    const std::int64_t cap = std::int64_t{1} << 62;
    std::int64_t prod = 1;
    for (const Arc& arc : inst.arcs) {
        if (prod > cap / (arc.a + 1)) return cap;
        prod *= arc.a + 1;
    }
    return prod;
}

inline void check_budget(const Instance& inst, std::int64_t limit) {
    std::int64_t bound = state_bound(inst);
    if (bound > limit)
        raise(Errc::budget_exceeded,
              "state bound " + std::to_string(bound) + " exceeds limit " + std::to_string(limit));
}

// Depth-first scan over integer flow vectors in lexicographic arc order,
// aborting a branch as soon as a node load passes its capacity. EQ senses are
// checked once a full vector is assigned.
template <typename Fn>
void scan_flows(const Instance& inst, Fn&& fn) {
    const std::size_t m = inst.num_arcs();
    std::vector<Cap> x(m, 0);
    std::vector<Cap> load(static_cast<std::size_t>(inst.num_nodes()), 0);
    std::vector<bool> has_eq(static_cast<std::size_t>(inst.num_nodes()), false);
    bool any_eq = false;
    for (int v = 1; v <= inst.num_nodes(); ++v)
        if (inst.variant.sense_of(v) == Sense::EQ) {
            has_eq[static_cast<std::size_t>(v - 1)] = true;
            any_eq = true;
        }

    auto rec = [&](auto&& self, std::size_t e) -> void {
        if (e == m) {
            if (any_eq)
                for (int v = 1; v <= inst.num_nodes(); ++v)
                    if (has_eq[static_cast<std::size_t>(v - 1)] &&
                        load[static_cast<std::size_t>(v - 1)] != inst.node_cap(v))
                        return;
            fn(static_cast<const std::vector<Cap>&>(x));
            return;
        }
        const Arc& arc = inst.arcs[e];
        Cap& li = load[static_cast<std::size_t>(arc.i - 1)];
        Cap& lj = load[static_cast<std::size_t>(arc.j - 1)];
        for (Cap v = 0; v <= arc.a; ++v) {
            if (li + v > inst.node_cap(arc.i) || lj + v > inst.node_cap(arc.j)) break;
            x[e] = v;
            li += v;
            lj += v;
            self(self, e + 1);
            li -= v;
            lj -= v;
        }
        x[e] = 0;
    };
    rec(rec, 0);
}

}  // namespace detail

// Visits every feasible integer flow vector (minimal indicators implied) in
// lexicographic arc order.
template <typename Fn>
void for_each_feasible_flow(const Instance& inst, std::int64_t limit, Fn&& fn) {
    detail::check_budget(inst, limit);
    detail::scan_flows(inst, std::forward<Fn>(fn));
}

// Exhaustive exact optimum. Since q >= 0, y = 1{x > 0} is always optimal; the
// search enumerates flows only and returns the lexicographically smallest
// optimal x.
inline Solution brute_force_solve(const Instance& inst, std::int64_t limit = kDefaultOracleBudget) {
    detail::check_budget(inst, limit);

    // Integer fast path when all costs are integers (still exact).
    bool integral_costs = true;
    for (const Arc& arc : inst.arcs)
        if (!is_integer(arc.p) || !is_integer(arc.q) || abs(numerator(arc.p)) > (BigInt(1) << 40) ||
            numerator(arc.q) > (BigInt(1) << 40)) {
            integral_costs = false;
            break;
        }

    std::optional<std::vector<Cap>> best;

    if (integral_costs) {
        const std::size_t m = inst.num_arcs();
        std::vector<std::vector<std::int64_t>> cost(m);
        for (std::size_t e = 0; e < m; ++e) {
            const Arc& arc = inst.arcs[e];
            cost[e].assign(static_cast<std::size_t>(arc.a) + 1, 0);
            std::int64_t p = static_cast<std::int64_t>(numerator(arc.p));
            std::int64_t q = static_cast<std::int64_t>(numerator(arc.q));
            for (Cap v = 1; v <= arc.a; ++v) cost[e][static_cast<std::size_t>(v)] = v * p + q;
        }
        std::int64_t best_obj = 0;
        bool have = false;
        std::vector<Cap> x(m, 0);
        std::vector<Cap> load(static_cast<std::size_t>(inst.num_nodes()), 0);
        std::vector<bool> has_eq(static_cast<std::size_t>(inst.num_nodes()), false);
        bool any_eq = false;
        for (int v = 1; v <= inst.num_nodes(); ++v)
            if (inst.variant.sense_of(v) == Sense::EQ) {
                has_eq[static_cast<std::size_t>(v - 1)] = true;
                any_eq = true;
            }
        auto rec = [&](auto&& self, std::size_t e, std::int64_t obj) -> void {
            if (e == m) {
                if (any_eq)
                    for (int v = 1; v <= inst.num_nodes(); ++v)
                        if (has_eq[static_cast<std::size_t>(v - 1)] &&
                            load[static_cast<std::size_t>(v - 1)] != inst.node_cap(v))
                            return;
                if (!have || obj < best_obj) {
                    have = true;
                    best_obj = obj;
                    best = x;
                }
                return;
            }
            const Arc& arc = inst.arcs[e];
            Cap& li = load[static_cast<std::size_t>(arc.i - 1)];
            Cap& lj = load[static_cast<std::size_t>(arc.j - 1)];
            for (Cap v = 0; v <= arc.a; ++v) {
                if (li + v > inst.node_cap(arc.i) || lj + v > inst.node_cap(arc.j)) break;
                x[e] = v;
                li += v;
                lj += v;
                self(self, e + 1, obj + cost[e][static_cast<std::size_t>(v)]);
                li -= v;
                lj -= v;
            }
            x[e] = 0;
        };
        rec(rec, 0, 0);
        if (!best) raise(Errc::validation_error, "no feasible solution under the EQ senses");
        return solution_from_flows(inst, *best);
    }

    Rational best_obj = 0;
    bool have = false;
    detail::scan_flows(inst, [&](const std::vector<Cap>& x) {
        Rational obj = 0;
        for (std::size_t e = 0; e < x.size(); ++e)
            if (x[e] > 0) obj += inst.arcs[e].p * x[e] + inst.arcs[e].q;
        if (!have || obj < best_obj) {
            have = true;
            best_obj = obj;
            best = x;
        }
    });
    if (!best) raise(Errc::validation_error, "no feasible solution under the EQ senses");
    return solution_from_flows(inst, *best);
}

// Every integer-feasible (x, y) of the instance's variant, exactly once, in
// lexicographic (x, then y) order. y is free on arcs with x = 0 unless the
// variant links y below x.
template <typename Fn>
void for_each_feasible(const Instance& inst, std::int64_t limit, Fn&& fn) {
    detail::check_budget(inst, limit);
    const std::size_t m = inst.num_arcs();
    detail::scan_flows(inst, [&](const std::vector<Cap>& x) {
        std::vector<int> y(m);
        std::vector<std::size_t> free_slots;
        for (std::size_t e = 0; e < m; ++e) {
            if (x[e] > 0) {
                y[e] = 1;
            } else {
                y[e] = 0;
                if (!inst.variant.link_lower) free_slots.push_back(e);
            }
        }
        // odometer over the free indicators, rightmost slot fastest
        while (true) {
            fn(make_solution(inst, x, y));
            std::size_t k = free_slots.size();
            while (k > 0 && y[free_slots[k - 1]] == 1) y[free_slots[--k]] = 0;
            if (k == 0) break;
            y[free_slots[k - 1]] = 1;
        }
    });
}

inline std::vector<Solution> enumerate_feasible(const Instance& inst,
                                                std::int64_t limit = kDefaultOracleBudget) {
    std::vector<Solution> out;
    for_each_feasible(inst, limit, [&](Solution s) { out.push_back(std::move(s)); });
    return out;
}

}  // namespace fctp
