#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/rational.hpp"

namespace fctp {

enum class Sense { LE, EQ };

// Per-node constraint senses plus the optional y <= x lower link of the
// bipartite formulation. The default (all LE, no lower link) is the plain
// capacitated model every solver in this library supports.
struct Variant {
    std::vector<Sense> node_sense;  // empty means all LE
    bool link_lower = false;

    Sense sense_of(int node_1based) const {
        if (node_sense.empty()) return Sense::LE;
        return node_sense.at(static_cast<std::size_t>(node_1based - 1));
    }
    bool is_default() const {
        if (link_lower) return false;
        return std::all_of(node_sense.begin(), node_sense.end(),
                           [](Sense s) { return s == Sense::LE; });
    }
};

struct Arc {
    int i = 0;  // canonical i < j
    int j = 0;
    Rational p;  // per-unit cost, may be negative
    Rational q;  // fixed cost, >= 0
    Cap a = 0;   // min(b_i, b_j)
};

// Undirected graph with integer node capacities and per-arc costs. Nodes are
// 1..|V|. Immutable after construction; build through new_instance or
// bipartite_instance so the invariants hold.
struct Instance {
    std::vector<Cap> b;  // node capacities, b[v-1]
    std::vector<Arc> arcs;
    Variant variant;
    std::string provenance;  // optional generator echo, JSON text; not semantic

    int num_nodes() const { return static_cast<int>(b.size()); }
    std::size_t num_arcs() const { return arcs.size(); }
    Cap node_cap(int v) const { return b.at(static_cast<std::size_t>(v - 1)); }
};

inline Instance new_instance(std::vector<Cap> b, std::vector<std::pair<int, int>> arcs,
                             std::vector<Rational> p, std::vector<Rational> q,
                             Variant variant = {}) {
    const int n = static_cast<int>(b.size());
    if (arcs.size() != p.size() || arcs.size() != q.size())
        raise(Errc::validation_error, "arc/cost vector lengths differ");
    if (!variant.node_sense.empty() && static_cast<int>(variant.node_sense.size()) != n)
        raise(Errc::validation_error, "variant node_sense length differs from node count");
    for (int v = 1; v <= n; ++v)
        if (b[static_cast<std::size_t>(v - 1)] < 0)
            raise(Errc::non_integer_capacity, "node " + std::to_string(v) + " has negative capacity");

    Instance inst;
    inst.b = std::move(b);
    inst.variant = std::move(variant);
    inst.arcs.reserve(arcs.size());
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < arcs.size(); ++e) {
        auto [i, j] = arcs[e];
        if (i == j) raise(Errc::self_loop, "arc (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (i > j) std::swap(i, j);
        if (i < 1 || j > n) raise(Errc::validation_error, "arc endpoint out of range");
        if (!seen.insert({i, j}).second)
            raise(Errc::duplicate_arc, "arc (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (q[e] < 0)
            raise(Errc::negative_fixed_cost,
                  "arc (" + std::to_string(i) + "," + std::to_string(j) + ") has q = " + to_string(q[e]));
        Arc arc;
        arc.i = i;
        arc.j = j;
        arc.p = std::move(p[e]);
        arc.q = std::move(q[e]);
        arc.a = std::min(inst.b[static_cast<std::size_t>(i - 1)], inst.b[static_cast<std::size_t>(j - 1)]);
        inst.arcs.push_back(std::move(arc));
    }
    return inst;
}

// Complete bipartite instance: suppliers 1..n carry c, customers n+1..n+m
// carry d, arcs in row-major (supplier, customer) order.
inline Instance bipartite_instance(const std::vector<Cap>& c, const std::vector<Cap>& d,
                                   const std::vector<std::vector<Rational>>& p,
                                   const std::vector<std::vector<Rational>>& q,
                                   Variant variant = {}) {
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(d.size());
    if (n < 1 || m < 1) raise(Errc::validation_error, "bipartite instance needs n, m >= 1");
    if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != n)
        raise(Errc::validation_error, "cost matrix row count differs from n");
    std::vector<Cap> b = c;
    b.insert(b.end(), d.begin(), d.end());
    std::vector<std::pair<int, int>> arcs;
    std::vector<Rational> pv, qv;
    arcs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(p[static_cast<std::size_t>(i)].size()) != m ||
            static_cast<int>(q[static_cast<std::size_t>(i)].size()) != m)
            raise(Errc::validation_error, "cost matrix column count differs from m");
        for (int j = 0; j < m; ++j) {
            arcs.emplace_back(i + 1, n + j + 1);
            pv.push_back(p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            qv.push_back(q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    }
    return new_instance(std::move(b), std::move(arcs), std::move(pv), std::move(qv), std::move(variant));
}

// Same graph and costs with the default variant (all LE, no lower link).
inline Instance with_default_variant(Instance inst) {
    inst.variant = Variant{};
    return inst;
}

struct Solution {
    std::vector<Cap> x;   // per-arc integer flow
    std::vector<int> y;   // per-arc 0/1 indicator
    Rational objective;   // p.x + q.y, exact
};

inline Rational solution_cost(const Instance& inst, const std::vector<Cap>& x,
                              const std::vector<int>& y) {
    Rational obj = 0;
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        if (x[e] != 0) obj += inst.arcs[e].p * x[e];
        if (y[e] != 0) obj += inst.arcs[e].q;
    }
    return obj;
}

inline Solution make_solution(const Instance& inst, std::vector<Cap> x, std::vector<int> y) {
    Solution s;
    s.objective = solution_cost(inst, x, y);
    s.x = std::move(x);
    s.y = std::move(y);
    return s;
}

// Flow vector with the minimal indicators y = 1{x > 0}.
inline Solution solution_from_flows(const Instance& inst, std::vector<Cap> x) {
    std::vector<int> y(x.size());
    for (std::size_t e = 0; e < x.size(); ++e) y[e] = x[e] > 0 ? 1 : 0;
    return make_solution(inst, std::move(x), std::move(y));
}

struct Violation {
    std::string constraint;
    Rational lhs;
    Sense sense = Sense::LE;
    Rational rhs;
};

// Exact constraint check of (x, y) against the instance's variant. Empty
// result means the solution is feasible.
inline std::vector<Violation> validate_solution(const Instance& inst, const Solution& sol) {
    if (sol.x.size() != inst.arcs.size() || sol.y.size() != inst.arcs.size())
        raise(Errc::validation_error, "solution dimensions differ from instance");
    std::vector<Violation> out;
    std::vector<Cap> load(static_cast<std::size_t>(inst.num_nodes()), 0);
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        const std::string tag = std::to_string(arc.i) + "_" + std::to_string(arc.j);
        if (sol.y[e] != 0 && sol.y[e] != 1)
            out.push_back({"ybin_" + tag, Rational(sol.y[e]), Sense::EQ, Rational(0)});
        if (sol.x[e] < 0)
            out.push_back({"xnn_" + tag, Rational(sol.x[e]), Sense::LE, Rational(0)});
        if (sol.x[e] > arc.a * sol.y[e])
            out.push_back({"ub_" + tag, Rational(sol.x[e]), Sense::LE, Rational(arc.a * sol.y[e])});
        if (inst.variant.link_lower && sol.y[e] > sol.x[e])
            out.push_back({"lb_" + tag, Rational(sol.y[e]), Sense::LE, Rational(sol.x[e])});
        load[static_cast<std::size_t>(arc.i - 1)] = checked_add(load[static_cast<std::size_t>(arc.i - 1)], sol.x[e]);
        load[static_cast<std::size_t>(arc.j - 1)] = checked_add(load[static_cast<std::size_t>(arc.j - 1)], sol.x[e]);
    }
    for (int v = 1; v <= inst.num_nodes(); ++v) {
        Cap lhs = load[static_cast<std::size_t>(v - 1)];
        Cap rhs = inst.node_cap(v);
        Sense s = inst.variant.sense_of(v);
        bool bad = s == Sense::LE ? lhs > rhs : lhs != rhs;
        if (bad) out.push_back({"cap_" + std::to_string(v), Rational(lhs), s, Rational(rhs)});
    }
    return out;
}

}  // namespace fctp
