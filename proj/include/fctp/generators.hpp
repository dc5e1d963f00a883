#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"
#include "fctp/rational.hpp"
#include "fctp/rng.hpp"

namespace fctp {

struct GenConfig {
    int n = 1;              // suppliers = customers
    Cap B = 1;              // capacity cap
    Rational r = 1;         // demand/supply ratio, in (0, 1]
    std::uint64_t seed = 0;
    Cap cost_lo = 200;
    Cap cost_hi = 800;
    Rational variable_cost = 0;
};

inline void validate(const GenConfig& cfg) {
    if (cfg.n < 1) raise(Errc::validation_error, "n must be >= 1");
    if (cfg.B < 1) raise(Errc::validation_error, "B must be >= 1");
    if (cfg.r <= 0 || cfg.r > 1) raise(Errc::validation_error, "r must be in (0, 1]");
    if (cfg.cost_lo < 0 || cfg.cost_lo > cfg.cost_hi)
        raise(Errc::validation_error, "need 0 <= cost_lo <= cost_hi");
}

// Complete bipartite instance with uniform supplies/demands adjusted until
// total demand hits ceil(r * total supply) exactly, uniform integer fixed
// costs, constant variable cost, and equality rows on the customer side.
// Draw order: supplies, demands, then fixed costs row-major; adjustment
// happens before the cost draws.
inline Instance gen_bipartite(const GenConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    std::vector<Cap> c, d;
    for (int i = 0; i < cfg.n; ++i) c.push_back(rng.uniform(1, cfg.B));
    for (int j = 0; j < cfg.n; ++j) d.push_back(rng.uniform(1, cfg.B));

    auto total = [](const std::vector<Cap>& v) {
        Cap s = 0;
        for (Cap e : v) s = checked_add(s, e);
        return s;
    };
    Cap C = total(c);
    Cap D = total(d);
    auto target = [&cfg](Cap supply) {
        return to_cap(numerator(rational_ceil(cfg.r * Rational(supply))));
    };
    Cap T = target(C);
    while (D < T) {
        // Per-pass cyclic increments; eligible entries always exist since
        // T <= C <= n*B.
        for (int j = 0; j < cfg.n && D < T; ++j)
            if (d[static_cast<std::size_t>(j)] < cfg.B) {
                ++d[static_cast<std::size_t>(j)];
                ++D;
            }
    }
    while (D > T) {
        bool moved = false;
        for (int i = 0; i < cfg.n && D > T; ++i)
            if (c[static_cast<std::size_t>(i)] < cfg.B) {
                ++c[static_cast<std::size_t>(i)];
                ++C;
                T = target(C);
                moved = true;
            }
        if (!moved)
            raise(Errc::unreachable_target,
                  "supplies saturated at B with demand " + std::to_string(D) + " > target " +
                      std::to_string(T));
    }

    std::vector<std::vector<Rational>> P(static_cast<std::size_t>(cfg.n)),
        Q(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) {
        for (int j = 0; j < cfg.n; ++j) {
            P[static_cast<std::size_t>(i)].push_back(cfg.variable_cost);
            Q[static_cast<std::size_t>(i)].push_back(Rational(rng.uniform(cfg.cost_lo, cfg.cost_hi)));
        }
    }

    Variant variant;
    variant.node_sense.assign(static_cast<std::size_t>(2 * cfg.n), Sense::LE);
    for (int j = 0; j < cfg.n; ++j)
        variant.node_sense[static_cast<std::size_t>(cfg.n + j)] = Sense::EQ;

    Instance inst = bipartite_instance(c, d, P, Q, variant);
    inst.provenance = "{\"generator\":\"bipartite\",\"n\":" + std::to_string(cfg.n) +
                      ",\"B\":" + std::to_string(cfg.B) + ",\"r\":\"" + to_string(cfg.r) +
                      "\",\"seed\":" + std::to_string(cfg.seed) +
                      ",\"cost_lo\":" + std::to_string(cfg.cost_lo) +
                      ",\"cost_hi\":" + std::to_string(cfg.cost_hi) + ",\"variable_cost\":\"" +
                      to_string(cfg.variable_cost) + "\"}";
    return inst;
}

// Uniform random labeled tree by parent attachment, with small integer
// capacities and costs. Draw order: parents (node 2..n), capacities
// (node 1..n), then (p, q) per arc.
inline Instance gen_tree(int n, Cap b_max, std::uint64_t seed) {
    if (n < 1) raise(Errc::validation_error, "n must be >= 1");
    if (b_max < 0) raise(Errc::validation_error, "b_max must be >= 0");
    Rng rng(seed);
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 2; i <= n; ++i)
        parent[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform(1, i - 1));
    std::vector<Cap> b;
    for (int v = 1; v <= n; ++v) b.push_back(rng.uniform(0, b_max));
    std::vector<std::pair<int, int>> arcs;
    std::vector<Rational> p, q;
    for (int i = 2; i <= n; ++i) {
        arcs.emplace_back(parent[static_cast<std::size_t>(i)], i);
        p.emplace_back(rng.uniform(-3, 3));
        q.emplace_back(rng.uniform(0, 5));
    }
    Instance inst = new_instance(b, arcs, p, q, Variant{});
    inst.provenance = "{\"generator\":\"tree\",\"n\":" + std::to_string(n) +
                      ",\"b_max\":" + std::to_string(b_max) + ",\"seed\":" + std::to_string(seed) +
                      "}";
    return inst;
}

// 3-Partition input: 3n positive integers summing to n*b, each strictly
// between b/4 and b/2 (so every group summing to b has exactly three
// elements).
struct ThreePartitionInput {
    std::vector<Cap> numbers;
    Cap b = 0;

    int n() const { return static_cast<int>(numbers.size()) / 3; }
};

inline void validate(const ThreePartitionInput& inp) {
    if (inp.numbers.empty() || inp.numbers.size() % 3 != 0)
        raise(Errc::invalid_three_partition, "need 3n numbers");
    if (inp.b < 1) raise(Errc::invalid_three_partition, "b must be positive");
    Cap sum = 0;
    for (Cap a : inp.numbers) {
        if (a < 1) raise(Errc::invalid_three_partition, "numbers must be positive");
        if (4 * a <= inp.b || 2 * a >= inp.b)
            raise(Errc::invalid_three_partition,
                  std::to_string(a) + " outside (b/4, b/2) for b = " + std::to_string(inp.b));
        sum = checked_add(sum, a);
    }
    if (sum != checked_mul(static_cast<Cap>(inp.n()), inp.b))
        raise(Errc::invalid_three_partition, "numbers do not sum to n*b");
}

// Complete bipartite reduction: n suppliers of capacity b, one customer per
// number, p = -2 and q = 1 everywhere. The optimum is -2nb + 3n exactly on
// yes-instances; inequality capacities suffice.
inline Instance reduce_3partition(const ThreePartitionInput& inp) {
    validate(inp);
    int n = inp.n();
    std::vector<Cap> c(static_cast<std::size_t>(n), inp.b);
    std::vector<std::vector<Rational>> P(static_cast<std::size_t>(n)),
        Q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        P[static_cast<std::size_t>(i)].assign(inp.numbers.size(), Rational(-2));
        Q[static_cast<std::size_t>(i)].assign(inp.numbers.size(), Rational(1));
    }
    Instance inst = bipartite_instance(c, inp.numbers, P, Q, Variant{});
    std::string nums;
    for (std::size_t j = 0; j < inp.numbers.size(); ++j)
        nums += (j ? "," : "") + std::to_string(inp.numbers[j]);
    inst.provenance = "{\"generator\":\"three-partition\",\"n\":" + std::to_string(n) +
                      ",\"b\":" + std::to_string(inp.b) + ",\"numbers\":[" + nums + "]}";
    return inst;
}

namespace detail {

inline bool three_partition_rec(const std::vector<Cap>& a, std::vector<bool>& used, Cap b) {
    std::size_t first = 0;
    while (first < a.size() && used[first]) ++first;
    if (first == a.size()) return true;
    used[first] = true;
    for (std::size_t j = first + 1; j < a.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        for (std::size_t k = j + 1; k < a.size(); ++k) {
            if (used[k] || a[first] + a[j] + a[k] != b) continue;
            used[k] = true;
            if (three_partition_rec(a, used, b)) return true;
            used[k] = false;
        }
        used[j] = false;
    }
    used[first] = false;
    return false;
}

}  // namespace detail

// Exhaustive decision oracle over partitions into triples.
inline bool check_3partition(const ThreePartitionInput& inp) {
    validate(inp);
    if (inp.n() > 4) raise(Errc::too_large, "exhaustive check supports n <= 4");
    std::vector<bool> used(inp.numbers.size(), false);
    return detail::three_partition_rec(inp.numbers, used, inp.b);
}

}  // namespace fctp
