#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/formulations.hpp"
#include "fctp/instance.hpp"
#include "fctp/model.hpp"
#include "fctp/rng.hpp"
#include "fctp/tree.hpp"
#include "fctp/tree_dp.hpp"

namespace fctp {

enum class Space { Z, F, UV };

// A point in one of the lifted variable spaces, together with the arc list
// needed to evaluate its projection identity. arcs[e] holds the name pair
// used by that space for instance arc e: canonical (i, j) in Z space,
// (parent, child) in F and UV space.
struct LiftedPoint {
    Space space = Space::Z;
    Assignment values;
    std::vector<std::pair<int, int>> arcs;
    std::vector<Rational> x, y;  // stored projection
};

namespace detail {

struct ParsedName {
    char kind = '?';
    std::vector<long long> idx;
};

inline ParsedName parse_var_name(const std::string& name) {
    ParsedName out;
    if (name.empty()) raise(Errc::unknown_variable, "empty name");
    out.kind = name[0];
    std::size_t pos = 1;
    while (pos < name.size() && name[pos] == '_') {
        std::size_t end = name.find('_', pos + 1);
        if (end == std::string::npos) end = name.size();
        out.idx.push_back(std::stoll(name.substr(pos + 1, end - pos - 1)));
        pos = end;
    }
    return out;
}

}  // namespace detail

// Exact projection of a lifted point back to (x, y), via the identity of
// its space. Stored and recomputed projections must agree.
inline std::pair<std::vector<Rational>, std::vector<Rational>> project(const LiftedPoint& pt) {
    std::map<std::pair<int, int>, std::size_t> arc_at;
    for (std::size_t e = 0; e < pt.arcs.size(); ++e) arc_at[pt.arcs[e]] = e;
    std::vector<Rational> x(pt.arcs.size(), Rational(0)), y(pt.arcs.size(), Rational(0));
    for (const auto& [name, val] : pt.values.values) {
        detail::ParsedName p = detail::parse_var_name(name);
        switch (pt.space) {
            case Space::Z: {
                if (p.kind == 'z') {
                    auto it = arc_at.find({static_cast<int>(p.idx[0]), static_cast<int>(p.idx[1])});
                    if (it == arc_at.end()) raise(Errc::unknown_variable, name);
                    x[it->second] += Rational(p.idx[2]) * val;
                } else if (p.kind == 'y') {
                    auto it = arc_at.find({static_cast<int>(p.idx[0]), static_cast<int>(p.idx[1])});
                    if (it == arc_at.end()) raise(Errc::unknown_variable, name);
                    y[it->second] = val;
                } else if (p.kind != 'x') {
                    raise(Errc::unknown_variable, name);
                }
                break;
            }
            case Space::UV: {
                if (p.kind == 'v') {
                    auto it = arc_at.find({static_cast<int>(p.idx[0]), static_cast<int>(p.idx[1])});
                    if (it == arc_at.end()) break;  // pseudo-arc block
                    x[it->second] += Rational(p.idx[2]) * val;
                    if (p.idx[2] >= 1) y[it->second] += val;
                } else if (p.kind != 'u') {
                    raise(Errc::unknown_variable, name);
                }
                break;
            }
            case Space::F: {
                if (p.kind != 'f') raise(Errc::unknown_variable, name);
                // Parent-side block of the child endpoint carries the flow.
                auto it = arc_at.find({static_cast<int>(p.idx[1]), static_cast<int>(p.idx[0])});
                if (it == arc_at.end()) break;  // child block or root pseudo block
                long long l = p.idx[3] - p.idx[2];
                x[it->second] += Rational(l) * val;
                if (l >= 1) y[it->second] += val;
                break;
            }
        }
    }
    return {std::move(x), std::move(y)};
}

// Single-arc lift of a relaxation point: z_{ij,a_ij} = x_ij / a_ij,
// z_ij0 = 1 - x_ij / a_ij, all middle levels zero.
inline LiftedPoint lift_z(const Instance& inst, const std::vector<Rational>& x,
                          const std::vector<Rational>& y) {
    if (x.size() != inst.arcs.size() || y.size() != inst.arcs.size())
        raise(Errc::validation_error, "lift_z: wrong vector length");
    for (std::size_t e = 0; e < inst.arcs.size(); ++e)
        if (inst.arcs[e].a == 0 && x[e] != 0)
            raise(Errc::zero_capacity_arc_with_flow,
                  x_name(inst.arcs[e].i, inst.arcs[e].j) + " = " + to_string(x[e]));

    auto fail = [](const std::string& row) { raise(Errc::not_in_p, row); };
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        std::string suffix = std::to_string(arc.i) + "_" + std::to_string(arc.j);
        if (x[e] < 0) fail("lb:x_" + suffix);
        if (y[e] < 0) fail("lb:y_" + suffix);
        if (y[e] > 1) fail("ub:y_" + suffix);
        if (x[e] > Rational(arc.a) * y[e]) fail("ub_" + suffix);
        if (inst.variant.link_lower && y[e] > x[e]) fail("lb_" + suffix);
    }
    for (int v = 1; v <= inst.num_nodes(); ++v) {
        Rational load = 0;
        for (std::size_t e = 0; e < inst.arcs.size(); ++e)
            if (inst.arcs[e].i == v || inst.arcs[e].j == v) load += x[e];
        Sense s = inst.variant.sense_of(v);
        if (s == Sense::EQ ? load != inst.node_cap(v) : load > inst.node_cap(v))
            fail("cap_" + std::to_string(v));
    }

    LiftedPoint pt;
    pt.space = Space::Z;
    pt.x = x;
    pt.y = y;
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        pt.arcs.emplace_back(arc.i, arc.j);
        pt.values.set(x_name(arc.i, arc.j), x[e]);
        pt.values.set(y_name(arc.i, arc.j), y[e]);
        if (arc.a == 0) {
            pt.values.set(z_name(arc.i, arc.j, 0), 1);
        } else {
            Rational top = x[e] / Rational(arc.a);
            pt.values.set(z_name(arc.i, arc.j, arc.a), top);
            pt.values.set(z_name(arc.i, arc.j, 0), Rational(1) - top);
        }
    }
    return pt;
}

namespace detail {

// Integral tree flow within arc and node capacities (default variant).
inline void require_feasible_tree_flow(const RootedTree& rt, const std::vector<Cap>& x) {
    require_default_variant(rt, "encode_f");
    const Instance& inst = rt.instance;
    if (x.size() != inst.arcs.size()) raise(Errc::infeasible_flow, "wrong flow length");
    for (std::size_t e = 0; e < inst.arcs.size(); ++e)
        if (x[e] < 0 || x[e] > inst.arcs[e].a)
            raise(Errc::infeasible_flow, x_name(inst.arcs[e].i, inst.arcs[e].j) + " out of range");
    for (int v = 1; v <= inst.num_nodes(); ++v) {
        Cap load = 0;
        for (std::size_t e = 0; e < inst.arcs.size(); ++e)
            if (inst.arcs[e].i == v || inst.arcs[e].j == v) load += x[e];
        if (load > inst.node_cap(v))
            raise(Errc::infeasible_flow, "cap_" + std::to_string(v) + " exceeded");
    }
}

}  // namespace detail

// Indicator encoding of a feasible integral flow in the scan space: one f
// per scan step, set on the prefix-sum path of each node.
inline LiftedPoint encode_f(const RootedTree& rt, const std::vector<Cap>& x) {
    detail::require_feasible_tree_flow(rt, x);
    LiftedPoint pt;
    pt.space = Space::F;
    for (std::size_t e = 0; e < rt.instance.arcs.size(); ++e) {
        int child = rt.child_of_arc(static_cast<int>(e));
        pt.arcs.emplace_back(rt.orig_id(rt.parent[static_cast<std::size_t>(child)]),
                             rt.orig_id(child));
        pt.x.emplace_back(x[e]);
        pt.y.emplace_back(x[e] > 0 ? 1 : 0);
    }
    for (int node = 0; node < rt.num_nodes(); ++node) {
        int oi = rt.orig_id(node);
        Cap prefix = 0;
        for (int c : rt.children[static_cast<std::size_t>(node)]) {
            Cap next = prefix + x[static_cast<std::size_t>(rt.parent_arc[static_cast<std::size_t>(c)])];
            pt.values.set(f_name(oi, rt.orig_id(c), prefix, next), 1);
            prefix = next;
        }
        if (node == 0) {
            pt.values.set(f_name(oi, 0, prefix, prefix), 1);
        } else {
            int op = rt.orig_id(rt.parent[static_cast<std::size_t>(node)]);
            Cap up = x[static_cast<std::size_t>(rt.parent_arc[static_cast<std::size_t>(node)])];
            pt.values.set(f_name(oi, op, prefix, prefix + up), 1);
        }
    }
    return pt;
}

// Levels induced on each real arc by the parent-side scan block of an F
// point; z_{ij,l} sums the block's mass at increment l.
inline Assignment induced_z(const RootedTree& rt, const LiftedPoint& pt) {
    if (pt.space != Space::F) raise(Errc::validation_error, "induced_z wants an F point");
    Assignment z;
    for (const auto& [name, val] : pt.values.values) {
        detail::ParsedName p = detail::parse_var_name(name);
        if (p.idx[1] == 0) continue;
        int child = static_cast<int>(p.idx[0]);
        int par = static_cast<int>(p.idx[1]);
        if (rt.parent_of(child) != par) continue;
        int e = rt.arc_of(par, child);
        const Arc& arc = rt.arc(e);
        std::string key = z_name(arc.i, arc.j, p.idx[3] - p.idx[2]);
        z.values[key] += val;
        if (z.values[key] == 0) z.values.erase(key);
    }
    return z;
}

// Coordinate-wise linear map from the scan space onto the dual space:
// u_ijk'k = f_ijk'k, v_ijlk = f_{ji,k,k+l}, and v_{0,r,0,k} = f_{r,0,k,k}.
// The input must satisfy every row of the scan formulation.
inline LiftedPoint pi_map(const RootedTree& rt, const LiftedPoint& pt) {
    if (pt.space != Space::F) raise(Errc::validation_error, "pi_map wants an F point");
    Model qsn = build_qsn(rt, false);
    try {
        auto viol = check_point(qsn, pt.values);
        if (!viol.empty()) raise(Errc::not_in_qsn, viol.front().name);
    } catch (const Error& err) {
        if (err.code() == Errc::unknown_variable) raise(Errc::not_in_qsn, err.what());
        throw;
    }

    LiftedPoint out;
    out.space = Space::UV;
    out.arcs = pt.arcs;
    for (const auto& [name, val] : pt.values.values) {
        detail::ParsedName p = detail::parse_var_name(name);
        int a = static_cast<int>(p.idx[0]);
        int b = static_cast<int>(p.idx[1]);
        if (b == 0) {
            out.values.set(v_name(0, a, 0, p.idx[2]), val);
        } else if (rt.parent_of(b) == a) {
            out.values.set(u_name(a, b, p.idx[2], p.idx[3]), val);
        } else {
            out.values.set(v_name(b, a, p.idx[3] - p.idx[2], p.idx[2]), val);
        }
    }
    auto [px, py] = project(out);
    out.x = std::move(px);
    out.y = std::move(py);
    return out;
}

// Random point of the relaxation polytope: scale an integral pseudo-flow
// into the node capacities, set y = x / a, then push y toward 1. All-LE
// variants only; inflation is skipped when the lower link row is present.
inline std::pair<std::vector<Rational>, std::vector<Rational>> sample_p_point(const Instance& inst,
                                                                              Rng& rng) {
    for (int v = 1; v <= inst.num_nodes(); ++v)
        if (inst.variant.sense_of(v) == Sense::EQ)
            raise(Errc::unsupported_variant, "sampler needs inequality capacities");
    std::vector<Cap> w;
    w.reserve(inst.arcs.size());
    for (const Arc& arc : inst.arcs) w.push_back(rng.uniform(0, arc.a));
    std::vector<Rational> load(static_cast<std::size_t>(inst.num_nodes()) + 1, Rational(0));
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        load[static_cast<std::size_t>(inst.arcs[e].i)] += w[e];
        load[static_cast<std::size_t>(inst.arcs[e].j)] += w[e];
    }
    std::vector<Rational> x, y;
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        Rational s = 1;
        for (int v : {arc.i, arc.j}) {
            const Rational& lv = load[static_cast<std::size_t>(v)];
            if (lv > inst.node_cap(v)) s = std::min(s, Rational(inst.node_cap(v)) / lv);
        }
        x.push_back(Rational(w[e]) * s);
        Rational ye = arc.a > 0 ? x.back() / Rational(arc.a) : Rational(0);
        if (!inst.variant.link_lower && arc.a > 0) {
            Rational theta = Rational(rng.uniform(0, 4)) / 4;
            ye += theta * (Rational(1) - ye);
        }
        y.push_back(std::move(ye));
    }
    return {std::move(x), std::move(y)};
}

}  // namespace fctp
